//! Whole-project simulation: releases run in order, each one's mean defect
//! output becoming carried workload for the next, and its mean duration
//! advancing the skill clock.

use serde::Serialize;

use crate::bn::Summary;
use crate::rng::release_seed;
use crate::xp::{
    self, build_release_network, ModelParams, ReleaseInputs, ReleaseOutcome, ReleaseSpec,
    TeamProfile,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectPlan {
    pub name: String,
    pub releases: Vec<ReleaseSpec>,
    pub team: TeamProfile,
    pub params: ModelParams,
    pub deadline_days: Option<f64>,
    /// Minimum probability of finishing by the deadline for a Success verdict.
    pub success_threshold: f64,
}

impl ProjectPlan {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN inputs must fail validation
    pub fn validate(&self) -> Result<()> {
        if self.releases.is_empty() {
            return Err(Error::InvalidPlan {
                reason: "plan must contain at least one release".into(),
            });
        }
        if let Some(d) = self.deadline_days {
            if !(d > 0.0) {
                return Err(Error::InvalidPlan {
                    reason: "deadline_days must be > 0".into(),
                });
            }
        }
        if !(self.success_threshold > 0.0 && self.success_threshold <= 1.0) {
            return Err(Error::InvalidPlan {
                reason: "success_threshold must lie in (0, 1]".into(),
            });
        }
        self.params.validate()
    }
}

/// One point of the cumulative progress curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatusCurvePoint {
    pub day: f64,
    pub completed_story_points: f64,
}

#[derive(Debug, Clone)]
pub struct ProjectResult {
    pub per_release: Vec<ReleaseOutcome>,
    pub total_days: Summary,
    /// Per-draw sums of release days, aligned across releases.
    pub total_days_samples: Vec<f64>,
    /// Mean defected story points carried over each release boundary.
    pub carried_points: Vec<f64>,
    pub curve: Vec<StatusCurvePoint>,
    pub success_probability: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Success,
    Failure,
    NoDeadline,
}

/// Runs every release in order. Release boundaries are mean-coupled: the
/// next release receives the predecessor's mean defected points as carried
/// workload and the cumulative mean days as its skill clock. Total days is
/// additionally summed draw-by-draw.
pub fn simulate_project(plan: &ProjectPlan, n: usize, seed: u64) -> Result<ProjectResult> {
    plan.validate()?;
    if n == 0 {
        return Err(Error::InvalidPlan {
            reason: "sample count must be >= 1".into(),
        });
    }

    let mut per_release = Vec::with_capacity(plan.releases.len());
    let mut carried_points = Vec::new();
    let mut added = 0.0;
    let mut working_days = 0.0;
    let mut total_days_samples = vec![0.0f64; n];

    for (k, spec) in plan.releases.iter().enumerate() {
        let inputs = ReleaseInputs {
            spec: spec.clone(),
            added_story_points: added,
            project_working_days: working_days,
            team: plan.team,
            params: plan.params.clone(),
        };
        let net = build_release_network(&inputs)?;
        let samples = net.sample(n, release_seed(seed, k))?;
        let summaries = samples.summarize();
        let outcome = ReleaseOutcome {
            estimated_days: summaries[xp::node::ESTIMATED_DAYS],
            defected_story_points: summaries[xp::node::DEFECTED_STORY_POINTS],
            estimated_kloc: summaries[xp::node::ESTIMATED_KLOC],
            samples,
        };

        for (total, d) in total_days_samples
            .iter_mut()
            .zip(outcome.samples.samples(xp::node::ESTIMATED_DAYS).unwrap())
        {
            *total += d;
        }
        added = outcome.defected_story_points.mean;
        working_days += outcome.estimated_days.mean;
        if k + 1 < plan.releases.len() {
            carried_points.push(added);
        }
        per_release.push(outcome);
    }

    let total_days = Summary::from_samples(&total_days_samples);
    let success_probability = plan.deadline_days.map(|deadline| {
        total_days_samples.iter().filter(|&&d| d <= deadline).count() as f64 / n as f64
    });

    let mut result = ProjectResult {
        per_release,
        total_days,
        total_days_samples,
        carried_points,
        curve: Vec::new(),
        success_probability,
    };
    result.curve = status_curve(&result, plan);
    Ok(result)
}

/// Piecewise-linear cumulative completed story points against elapsed mean
/// days: release k rises by its workload (planned plus carried points) over
/// its mean duration, sampled at the boundaries plus 10 interior points.
pub fn status_curve(result: &ProjectResult, plan: &ProjectPlan) -> Vec<StatusCurvePoint> {
    const INTERIOR_POINTS: usize = 10;
    let mut curve = vec![StatusCurvePoint { day: 0.0, completed_story_points: 0.0 }];
    let mut day = 0.0;
    let mut completed = 0.0;
    for (k, (spec, outcome)) in plan.releases.iter().zip(&result.per_release).enumerate() {
        let carried = if k == 0 { 0.0 } else { result.carried_points[k - 1] };
        let workload = xp::release_workload(spec, carried);
        let duration = outcome.estimated_days.mean;
        if duration <= 0.0 {
            continue;
        }
        for step in 1..=INTERIOR_POINTS + 1 {
            let frac = step as f64 / (INTERIOR_POINTS + 1) as f64;
            curve.push(StatusCurvePoint {
                day: day + frac * duration,
                completed_story_points: completed + frac * workload,
            });
        }
        day += duration;
        completed += workload;
        // Pin the boundary exactly; the loop above lands on it up to rounding.
        let last = curve.last_mut().unwrap();
        last.day = day;
        last.completed_story_points = completed;
    }
    curve
}

pub fn assess(result: &ProjectResult, plan: &ProjectPlan) -> Verdict {
    match result.success_probability {
        None => Verdict::NoDeadline,
        Some(p) if p >= plan.success_threshold => Verdict::Success,
        Some(_) => Verdict::Failure,
    }
}

/// Deterministic single pass: every release evaluated at distribution means.
#[derive(Debug, Clone)]
pub struct DeterministicRelease {
    pub workload: f64,
    pub team_velocity: f64,
    pub estimated_days: f64,
    pub estimated_kloc: f64,
    pub defected_story_points: f64,
}

#[derive(Debug, Clone)]
pub struct DeterministicResult {
    pub per_release: Vec<DeterministicRelease>,
    pub total_days: f64,
    pub carried_points: Vec<f64>,
    pub curve: Vec<StatusCurvePoint>,
    pub meets_deadline: Option<bool>,
}

pub fn evaluate_project(plan: &ProjectPlan) -> Result<DeterministicResult> {
    plan.validate()?;
    let mut per_release = Vec::with_capacity(plan.releases.len());
    let mut carried_points = Vec::new();
    let mut added = 0.0;
    let mut working_days = 0.0;

    for (k, spec) in plan.releases.iter().enumerate() {
        let inputs = ReleaseInputs {
            spec: spec.clone(),
            added_story_points: added,
            project_working_days: working_days,
            team: plan.team,
            params: plan.params.clone(),
        };
        let values = build_release_network(&inputs)?.evaluate_at_means()?;
        let release = DeterministicRelease {
            workload: values[xp::node::WORKLOAD],
            team_velocity: values[xp::node::TEAM_VELOCITY],
            estimated_days: values[xp::node::ESTIMATED_DAYS],
            estimated_kloc: values[xp::node::ESTIMATED_KLOC],
            defected_story_points: values[xp::node::DEFECTED_STORY_POINTS],
        };
        added = release.defected_story_points;
        working_days += release.estimated_days;
        if k + 1 < plan.releases.len() {
            carried_points.push(added);
        }
        per_release.push(release);
    }

    let total_days = working_days;
    let meets_deadline = plan.deadline_days.map(|d| total_days <= d);

    const INTERIOR_POINTS: usize = 10;
    let mut curve = vec![StatusCurvePoint { day: 0.0, completed_story_points: 0.0 }];
    let mut day = 0.0;
    let mut completed = 0.0;
    for release in &per_release {
        if release.estimated_days <= 0.0 {
            continue;
        }
        for step in 1..=INTERIOR_POINTS + 1 {
            let frac = step as f64 / (INTERIOR_POINTS + 1) as f64;
            curve.push(StatusCurvePoint {
                day: day + frac * release.estimated_days,
                completed_story_points: completed + frac * release.workload,
            });
        }
        day += release.estimated_days;
        completed += release.workload;
        let last = curve.last_mut().unwrap();
        last.day = day;
        last.completed_story_points = completed;
    }
    Ok(DeterministicResult {
        per_release,
        total_days,
        carried_points,
        curve,
        meets_deadline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::Dist;
    use crate::xp::{PracticeLevel, PracticeUsage};
    use approx::assert_relative_eq;

    fn point_params() -> ModelParams {
        ModelParams::default().at_means()
    }

    fn repo_usage() -> PracticeUsage {
        PracticeUsage {
            pair_programming: PracticeLevel::AboutHalf,
            tdd: PracticeLevel::AboutHalf,
            onsite_customer: PracticeLevel::Never,
        }
    }

    fn single_release_plan(params: ModelParams) -> ProjectPlan {
        ProjectPlan {
            name: "test".into(),
            releases: vec![ReleaseSpec {
                planned_user_stories: 15,
                avg_story_points_per_story: 15.0,
                usage: repo_usage(),
            }],
            team: TeamProfile { team_size: 4 },
            params,
            deadline_days: None,
            success_threshold: 0.5,
        }
    }

    #[test]
    fn empty_plan_is_rejected() {
        let mut plan = single_release_plan(point_params());
        plan.releases.clear();
        assert!(matches!(
            simulate_project(&plan, 10, 1),
            Err(Error::InvalidPlan { .. })
        ));
    }

    #[test]
    fn deterministic_single_release_matches_hand_chain() {
        // Force the paper's nominal means rather than the truncated ones.
        let mut params = point_params();
        params.dev_initial_velocity = Dist::Point(4.0);
        params.dev_productivity = Dist::Point(40.0);
        params.defect_injection_ratio = Dist::Point(20.0);
        let plan = single_release_plan(params);
        let result = simulate_project(&plan, 8, 42).unwrap();

        let dev_velocity = 4.0 + 5.5f64.log10();
        let velocity = 4.0 * dev_velocity * 1.115 * 0.84;
        let days = 225.0 / velocity;
        assert_relative_eq!(result.total_days.mean, days, max_relative = 1e-12);
        assert_relative_eq!(result.total_days.mean, 12.67, epsilon = 5e-3);
        assert!(result.carried_points.is_empty());
    }

    #[test]
    fn zero_defect_injection_carries_nothing() {
        let mut params = point_params();
        params.defect_injection_ratio = Dist::Point(0.0);
        let mut plan = single_release_plan(params);
        plan.releases.push(plan.releases[0].clone());
        let result = simulate_project(&plan, 16, 7).unwrap();
        assert_eq!(result.carried_points, vec![0.0]);
        // Release 2's workload is its own planned points only.
        let r2 = &result.per_release[1];
        assert!(r2.samples.samples(xp::node::WORKLOAD).unwrap().iter().all(|&w| w == 225.0));
    }

    #[test]
    fn deadline_above_deterministic_total_gives_certain_success() {
        let mut plan = single_release_plan(point_params());
        let total = simulate_project(&plan, 4, 1).unwrap().total_days.mean;
        plan.deadline_days = Some(total + 1.0);
        let result = simulate_project(&plan, 64, 1).unwrap();
        assert_eq!(result.success_probability, Some(1.0));
        assert_eq!(assess(&result, &plan), Verdict::Success);
    }

    #[test]
    fn verdicts() {
        let mut plan = single_release_plan(point_params());
        let result = simulate_project(&plan, 4, 1).unwrap();
        assert_eq!(assess(&result, &plan), Verdict::NoDeadline);

        plan.deadline_days = Some(0.5);
        let result = simulate_project(&plan, 64, 1).unwrap();
        assert_eq!(result.success_probability, Some(0.0));
        assert_eq!(assess(&result, &plan), Verdict::Failure);
    }

    #[test]
    fn total_days_is_per_draw_sum() {
        let mut plan = single_release_plan(ModelParams::default());
        plan.releases.push(plan.releases[0].clone());
        let n = 500;
        let result = simulate_project(&plan, n, 11).unwrap();
        for i in 0..n {
            let sum: f64 = result
                .per_release
                .iter()
                .map(|r| r.samples.samples(xp::node::ESTIMATED_DAYS).unwrap()[i])
                .sum();
            assert_relative_eq!(result.total_days_samples[i], sum, max_relative = 1e-12);
        }
    }

    #[test]
    fn curve_closure() {
        let mut plan = single_release_plan(ModelParams::default());
        plan.releases.push(ReleaseSpec {
            planned_user_stories: 14,
            avg_story_points_per_story: 15.0,
            usage: repo_usage(),
        });
        let result = simulate_project(&plan, 2_000, 5).unwrap();
        let last = result.curve.last().unwrap();
        let expected_points = 225.0 + 14.0 * 15.0 + result.carried_points[0];
        assert_relative_eq!(last.completed_story_points, expected_points, max_relative = 1e-12);
        let expected_day: f64 = result.per_release.iter().map(|r| r.estimated_days.mean).sum();
        assert_relative_eq!(last.day, expected_day, max_relative = 1e-12);

        // Monotone in both coordinates, strictly in day.
        for pair in result.curve.windows(2) {
            assert!(pair[1].day > pair[0].day);
            assert!(pair[1].completed_story_points >= pair[0].completed_story_points);
        }
    }

    #[test]
    fn single_release_curve_is_linear() {
        let plan = single_release_plan(point_params());
        let result = simulate_project(&plan, 4, 1).unwrap();
        let last = *result.curve.last().unwrap();
        assert_relative_eq!(last.completed_story_points, 225.0, max_relative = 1e-12);
        for p in &result.curve {
            let expected = 225.0 * p.day / last.day;
            assert_relative_eq!(p.completed_story_points, expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_workload_release_adds_no_curve_segment() {
        let mut plan = single_release_plan(point_params());
        plan.releases.insert(
            0,
            ReleaseSpec {
                planned_user_stories: 0,
                avg_story_points_per_story: 1.0,
                usage: PracticeUsage {
                    pair_programming: PracticeLevel::Never,
                    tdd: PracticeLevel::Never,
                    onsite_customer: PracticeLevel::Never,
                },
            },
        );
        let result = simulate_project(&plan, 4, 1).unwrap();
        assert_eq!(result.curve[0], StatusCurvePoint { day: 0.0, completed_story_points: 0.0 });
        for pair in result.curve.windows(2) {
            assert!(pair[1].day > pair[0].day);
        }
    }

    #[test]
    fn deterministic_and_sampled_point_runs_agree() {
        let mut plan = single_release_plan(point_params());
        plan.releases.push(plan.releases[0].clone());
        let sampled = simulate_project(&plan, 4, 9).unwrap();
        let det = evaluate_project(&plan).unwrap();
        assert_relative_eq!(sampled.total_days.mean, det.total_days, max_relative = 1e-12);
        assert_relative_eq!(
            sampled.carried_points[0],
            det.carried_points[0],
            max_relative = 1e-12
        );
    }

    #[test]
    fn later_releases_are_faster_for_identical_specs() {
        // Skill growth makes deterministic days non-increasing across releases.
        let mut plan = single_release_plan(point_params());
        plan.params.defect_injection_ratio = Dist::Point(0.0);
        plan.releases.push(plan.releases[0].clone());
        plan.releases.push(plan.releases[0].clone());
        let det = evaluate_project(&plan).unwrap();
        assert!(det.per_release[1].estimated_days < det.per_release[0].estimated_days);
        assert!(det.per_release[2].estimated_days < det.per_release[1].estimated_days);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(proptest::test_runner::Config::with_cases(16))]

            // A later deadline never lowers the success probability.
            #[test]
            fn deadline_response_is_monotone(
                d1 in 1.0f64..40.0,
                extra in 0.0f64..40.0,
                seed in any::<u64>(),
            ) {
                let mut plan = single_release_plan(ModelParams::default());
                plan.deadline_days = Some(d1);
                let p1 = simulate_project(&plan, 400, seed).unwrap().success_probability.unwrap();
                plan.deadline_days = Some(d1 + extra);
                let p2 = simulate_project(&plan, 400, seed).unwrap().success_probability.unwrap();
                prop_assert!(p2 >= p1);
            }

            // Carried points are never negative.
            #[test]
            fn carry_is_non_negative(seed in any::<u64>(), releases in 1usize..4) {
                let mut plan = single_release_plan(ModelParams::default());
                for _ in 1..releases {
                    plan.releases.push(plan.releases[0].clone());
                }
                let result = simulate_project(&plan, 200, seed).unwrap();
                prop_assert!(result.carried_points.iter().all(|&c| c >= 0.0));
            }
        }
    }
}
