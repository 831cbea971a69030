//! Run artifacts: plain-text report, machine-readable JSON twin, samples
//! and curve CSVs, and the case-study comparison table.

use serde::Serialize;

use crate::bn::Summary;
use crate::fixtures::PaperReference;
use crate::project::{
    assess, DeterministicResult, ProjectPlan, ProjectResult, StatusCurvePoint, Verdict,
};

/// One column per node per release (`r<k>.<node>`), then the per-draw total
/// days; one row per draw. Column order is fixed: release order, node ids
/// lexicographic within a release.
pub fn samples_csv(result: &ProjectResult) -> String {
    let mut header: Vec<String> = Vec::new();
    for (k, outcome) in result.per_release.iter().enumerate() {
        for id in outcome.samples.node_ids() {
            header.push(format!("r{}.{}", k + 1, id));
        }
    }
    header.push("total_days".to_string());

    let n = result.total_days_samples.len();
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..n {
        let mut row: Vec<String> = Vec::with_capacity(header.len());
        for outcome in &result.per_release {
            for id in outcome.samples.node_ids() {
                row.push(outcome.samples.samples(id).unwrap()[i].to_string());
            }
        }
        row.push(result.total_days_samples[i].to_string());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn curve_csv(curve: &[StatusCurvePoint]) -> String {
    let mut out = String::from("day,completed_story_points\n");
    for p in curve {
        out.push_str(&format!("{},{}\n", p.day, p.completed_story_points));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ReleaseReport {
    pub estimated_days: Summary,
    pub defected_story_points: Summary,
    pub estimated_kloc: Summary,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub project: String,
    pub samples: usize,
    pub seed: u64,
    pub per_release: Vec<ReleaseReport>,
    pub carried_points: Vec<f64>,
    /// Sum of per-release mean days (mean-coupled figure).
    pub total_days_mean_coupled: f64,
    /// Distribution of the per-draw sum of release days.
    pub total_days: Summary,
    pub deadline_days: Option<f64>,
    pub success_probability: Option<f64>,
    pub verdict: Verdict,
}

pub fn run_report(plan: &ProjectPlan, result: &ProjectResult, n: usize, seed: u64) -> RunReport {
    RunReport {
        project: plan.name.clone(),
        samples: n,
        seed,
        per_release: result
            .per_release
            .iter()
            .map(|r| ReleaseReport {
                estimated_days: r.estimated_days,
                defected_story_points: r.defected_story_points,
                estimated_kloc: r.estimated_kloc,
            })
            .collect(),
        carried_points: result.carried_points.clone(),
        total_days_mean_coupled: result.per_release.iter().map(|r| r.estimated_days.mean).sum(),
        total_days: result.total_days,
        deadline_days: plan.deadline_days,
        success_probability: result.success_probability,
        verdict: assess(result, plan),
    }
}

pub fn render_report(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("Project: {}\n", report.project));
    out.push_str(&format!("Samples: {}  Seed: {}\n\n", report.samples, report.seed));
    for (k, r) in report.per_release.iter().enumerate() {
        out.push_str(&format!("Release {}\n", k + 1));
        out.push_str(&format!(
            "  estimated days          mean {:.3}  sd {:.3}  p5 {:.3}  p50 {:.3}  p95 {:.3}\n",
            r.estimated_days.mean,
            r.estimated_days.sd,
            r.estimated_days.p5,
            r.estimated_days.p50,
            r.estimated_days.p95
        ));
        out.push_str(&format!(
            "  defected story points   mean {:.3}  sd {:.3}  p5 {:.3}  p50 {:.3}  p95 {:.3}\n",
            r.defected_story_points.mean,
            r.defected_story_points.sd,
            r.defected_story_points.p5,
            r.defected_story_points.p50,
            r.defected_story_points.p95
        ));
        out.push_str(&format!(
            "  estimated KLOC          mean {:.3}  sd {:.3}  p5 {:.3}  p50 {:.3}  p95 {:.3}\n",
            r.estimated_kloc.mean,
            r.estimated_kloc.sd,
            r.estimated_kloc.p5,
            r.estimated_kloc.p50,
            r.estimated_kloc.p95
        ));
    }
    if !report.carried_points.is_empty() {
        let carried: Vec<String> = report.carried_points.iter().map(|c| format!("{c:.3}")).collect();
        out.push_str(&format!("\nCarried story points at boundaries: [{}]\n", carried.join(", ")));
    }
    out.push_str(&format!(
        "\nTotal days (sum of per-release means): {:.3}\n",
        report.total_days_mean_coupled
    ));
    out.push_str(&format!(
        "Total days (per-draw sum)            : mean {:.3}  sd {:.3}  p5 {:.3}  p50 {:.3}  p95 {:.3}\n",
        report.total_days.mean,
        report.total_days.sd,
        report.total_days.p5,
        report.total_days.p50,
        report.total_days.p95
    ));
    match (report.deadline_days, report.success_probability) {
        (Some(deadline), Some(p)) => {
            out.push_str(&format!(
                "Deadline: {deadline} days  P(finish by deadline) = {p:.4}\nVerdict: {:?}\n",
                report.verdict
            ));
        }
        _ => out.push_str("No deadline set.\n"),
    }
    out
}

#[derive(Debug, Serialize)]
pub struct DeterministicReleaseReport {
    pub workload: f64,
    pub team_velocity: f64,
    pub estimated_days: f64,
    pub estimated_kloc: f64,
    pub defected_story_points: f64,
}

#[derive(Debug, Serialize)]
pub struct DeterministicReport {
    pub project: String,
    pub per_release: Vec<DeterministicReleaseReport>,
    pub carried_points: Vec<f64>,
    pub total_days: f64,
    pub deadline_days: Option<f64>,
    pub meets_deadline: Option<bool>,
}

pub fn deterministic_report(plan: &ProjectPlan, result: &DeterministicResult) -> DeterministicReport {
    DeterministicReport {
        project: plan.name.clone(),
        per_release: result
            .per_release
            .iter()
            .map(|r| DeterministicReleaseReport {
                workload: r.workload,
                team_velocity: r.team_velocity,
                estimated_days: r.estimated_days,
                estimated_kloc: r.estimated_kloc,
                defected_story_points: r.defected_story_points,
            })
            .collect(),
        carried_points: result.carried_points.clone(),
        total_days: result.total_days,
        deadline_days: plan.deadline_days,
        meets_deadline: result.meets_deadline,
    }
}

pub fn render_deterministic_report(report: &DeterministicReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("Project: {} (deterministic, at distribution means)\n\n", report.project));
    for (k, r) in report.per_release.iter().enumerate() {
        out.push_str(&format!("Release {}\n", k + 1));
        out.push_str(&format!("  workload              {:.3} SP\n", r.workload));
        out.push_str(&format!("  team velocity         {:.3} SP/day\n", r.team_velocity));
        out.push_str(&format!("  estimated days        {:.3}\n", r.estimated_days));
        out.push_str(&format!("  estimated KLOC        {:.3}\n", r.estimated_kloc));
        out.push_str(&format!("  defected story points {:.3}\n", r.defected_story_points));
    }
    out.push_str(&format!("\nTotal days: {:.3}\n", report.total_days));
    match (report.deadline_days, report.meets_deadline) {
        (Some(deadline), Some(ok)) => {
            out.push_str(&format!(
                "Deadline: {deadline} days  meets deadline: {}\n",
                if ok { "yes" } else { "no" }
            ));
        }
        _ => out.push_str("No deadline set.\n"),
    }
    out
}

/// Three-column comparison: this artifact's predictions next to the
/// published experiment and real-project figures, which are reference data,
/// not expected outputs.
#[derive(Debug, Serialize)]
pub struct Comparison {
    pub case: String,
    pub ours_days: f64,
    pub ours_defected_story_points: f64,
    pub ours_kloc: f64,
    pub reference: PaperReference,
}

pub fn comparison(case: &str, result: &ProjectResult, reference: PaperReference) -> Comparison {
    Comparison {
        case: case.to_string(),
        ours_days: result.per_release.iter().map(|r| r.estimated_days.mean).sum(),
        ours_defected_story_points: result
            .per_release
            .iter()
            .map(|r| r.defected_story_points.mean)
            .sum(),
        ours_kloc: result.per_release.iter().map(|r| r.estimated_kloc.mean).sum(),
        reference,
    }
}

pub fn render_comparison(c: &Comparison) -> String {
    let mut out = String::new();
    out.push_str(&format!("Case study: {}\n", c.case));
    out.push_str("(published columns are reference data from the original study)\n\n");
    out.push_str(&format!(
        "{:<24} {:>14} {:>22} {:>16}\n",
        "Metric", "this artifact", "published experiment", "published real"
    ));
    out.push_str(&format!(
        "{:<24} {:>14.2} {:>22} {:>16}\n",
        "Number of days", c.ours_days, c.reference.experiment_days, c.reference.real_days
    ));
    out.push_str(&format!(
        "{:<24} {:>14.2} {:>22} {:>16}\n",
        "Defected story points",
        c.ours_defected_story_points,
        c.reference.experiment_defected_story_points,
        c.reference.real_defected_story_points
    ));
    out.push_str(&format!(
        "{:<24} {:>14.2} {:>22} {:>16}\n",
        "KLOC", c.ours_kloc, c.reference.experiment_kloc, c.reference.real_kloc
    ));
    out
}
