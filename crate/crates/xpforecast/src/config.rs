//! JSON project descriptions.
//!
//! The schema is strict: unknown keys fail loading, practice levels must be
//! one of the five scale strings, and every model parameter is optional with
//! the built-in defaults applied where omitted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bn::Dist;
use crate::project::ProjectPlan;
use crate::xp::{ModelParams, PracticeLevel, PracticeUsage, ReleaseSpec, TeamProfile};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfigFile {
    pub project: ProjectSection,
    pub team: TeamSection,
    #[serde(default, skip_serializing_if = "ParamsSection::is_empty")]
    pub params: ParamsSection,
    pub releases: Vec<ReleaseSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectSection {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deadline_days: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_threshold: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeamSection {
    pub size: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReleaseSection {
    pub planned_user_stories: u32,
    pub avg_story_points_per_story: f64,
    /// One of: never, occasionally, about_half, frequently, almost_used.
    pub pair_programming: String,
    pub tdd: String,
    pub onsite_customer: String,
}

/// Distribution syntax: `{"dist": "normal", "mean": 4, "sd": 1}`,
/// `{"dist": "uniform", "low": 1, "high": 10}`, `{"dist": "point", "value": 3}`,
/// `{"dist": "truncated_normal", "mean": 4, "sd": 1, "low": 0.1}` (omitted
/// bounds are unbounded).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistSection {
    Point {
        value: f64,
    },
    Uniform {
        low: f64,
        high: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    TruncatedNormal {
        mean: f64,
        sd: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        low: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        high: Option<f64>,
    },
}

impl From<&DistSection> for Dist {
    fn from(section: &DistSection) -> Dist {
        match *section {
            DistSection::Point { value } => Dist::Point(value),
            DistSection::Uniform { low, high } => Dist::Uniform { low, high },
            DistSection::Normal { mean, sd } => Dist::Normal { mean, sd },
            DistSection::TruncatedNormal { mean, sd, low, high } => Dist::TruncatedNormal {
                mean,
                sd,
                low: low.unwrap_or(f64::NEG_INFINITY),
                high: high.unwrap_or(f64::INFINITY),
            },
        }
    }
}

impl From<&Dist> for DistSection {
    fn from(dist: &Dist) -> DistSection {
        match *dist {
            Dist::Point(value) => DistSection::Point { value },
            Dist::Uniform { low, high } => DistSection::Uniform { low, high },
            Dist::Normal { mean, sd } => DistSection::Normal { mean, sd },
            Dist::TruncatedNormal { mean, sd, low, high } => DistSection::TruncatedNormal {
                mean,
                sd,
                low: (low != f64::NEG_INFINITY).then_some(low),
                high: (high != f64::INFINITY).then_some(high),
            },
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dev_initial_skills: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dev_initial_velocity: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_coefficient: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skill_log_base: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pp_velocity_impact: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tdd_velocity_impact: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dev_productivity: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_injection_ratio: Option<DistSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub osc_defect_reduction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tdd_defect_reduction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_to_story_point_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_floor: Option<f64>,
}

impl ParamsSection {
    fn is_empty(&self) -> bool {
        serde_json::to_value(self).map(|v| v == serde_json::json!({})).unwrap_or(false)
    }

    fn apply(&self, base: ModelParams) -> ModelParams {
        let dist = |o: &Option<DistSection>, d: Dist| o.as_ref().map(Dist::from).unwrap_or(d);
        ModelParams {
            dev_initial_skills: dist(&self.dev_initial_skills, base.dev_initial_skills),
            dev_initial_velocity: dist(&self.dev_initial_velocity, base.dev_initial_velocity),
            learning_coefficient: self.learning_coefficient.unwrap_or(base.learning_coefficient),
            skill_log_base: self.skill_log_base.unwrap_or(base.skill_log_base),
            pp_velocity_impact: dist(&self.pp_velocity_impact, base.pp_velocity_impact),
            tdd_velocity_impact: dist(&self.tdd_velocity_impact, base.tdd_velocity_impact),
            dev_productivity: dist(&self.dev_productivity, base.dev_productivity),
            defect_injection_ratio: dist(&self.defect_injection_ratio, base.defect_injection_ratio),
            osc_defect_reduction: self.osc_defect_reduction.unwrap_or(base.osc_defect_reduction),
            tdd_defect_reduction: self.tdd_defect_reduction.unwrap_or(base.tdd_defect_reduction),
            defect_to_story_point_ratio: self
                .defect_to_story_point_ratio
                .unwrap_or(base.defect_to_story_point_ratio),
            velocity_floor: self.velocity_floor.unwrap_or(base.velocity_floor),
        }
    }
}

pub fn parse_config(text: &str) -> Result<ProjectPlan> {
    let file: ProjectConfigFile = serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        } else {
            Error::Schema { message: e.to_string() }
        }
    })?;
    plan_from_config(&file)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ProjectPlan> {
    parse_config(&std::fs::read_to_string(path)?)
}

pub fn plan_from_config(file: &ProjectConfigFile) -> Result<ProjectPlan> {
    let releases = file
        .releases
        .iter()
        .map(|r| {
            Ok(ReleaseSpec {
                planned_user_stories: r.planned_user_stories,
                avg_story_points_per_story: r.avg_story_points_per_story,
                usage: PracticeUsage {
                    pair_programming: r.pair_programming.parse::<PracticeLevel>()?,
                    tdd: r.tdd.parse()?,
                    onsite_customer: r.onsite_customer.parse()?,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let plan = ProjectPlan {
        name: file.project.name.clone(),
        releases,
        team: TeamProfile { team_size: file.team.size },
        params: file.params.apply(ModelParams::default()),
        deadline_days: file.project.deadline_days,
        success_threshold: file.project.success_threshold.unwrap_or(0.5),
    };
    plan.validate()?;
    Ok(plan)
}

/// Full (no-defaults-elided) config for a plan; inverse of `plan_from_config`.
pub fn write_config(plan: &ProjectPlan) -> ProjectConfigFile {
    let p = &plan.params;
    ProjectConfigFile {
        project: ProjectSection {
            name: plan.name.clone(),
            deadline_days: plan.deadline_days,
            success_threshold: Some(plan.success_threshold),
        },
        team: TeamSection { size: plan.team.team_size },
        params: ParamsSection {
            dev_initial_skills: Some((&p.dev_initial_skills).into()),
            dev_initial_velocity: Some((&p.dev_initial_velocity).into()),
            learning_coefficient: Some(p.learning_coefficient),
            skill_log_base: Some(p.skill_log_base),
            pp_velocity_impact: Some((&p.pp_velocity_impact).into()),
            tdd_velocity_impact: Some((&p.tdd_velocity_impact).into()),
            dev_productivity: Some((&p.dev_productivity).into()),
            defect_injection_ratio: Some((&p.defect_injection_ratio).into()),
            osc_defect_reduction: Some(p.osc_defect_reduction),
            tdd_defect_reduction: Some(p.tdd_defect_reduction),
            defect_to_story_point_ratio: Some(p.defect_to_story_point_ratio),
            velocity_floor: Some(p.velocity_floor),
        },
        releases: plan
            .releases
            .iter()
            .map(|r| ReleaseSection {
                planned_user_stories: r.planned_user_stories,
                avg_story_points_per_story: r.avg_story_points_per_story,
                pair_programming: r.usage.pair_programming.as_str().to_string(),
                tdd: r.usage.tdd.as_str().to_string(),
                onsite_customer: r.usage.onsite_customer.as_str().to_string(),
            })
            .collect(),
    }
}

pub fn config_to_string(file: &ProjectConfigFile) -> String {
    serde_json::to_string_pretty(file).expect("config serializes")
}
