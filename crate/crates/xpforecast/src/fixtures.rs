//! Built-in case studies and the published figures they are compared against.

use std::str::FromStr;

use serde::Serialize;

use crate::project::ProjectPlan;
use crate::xp::{ModelParams, PracticeLevel, PracticeUsage, ReleaseSpec, TeamProfile};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStudy {
    Repo,
    Abrahamsson,
}

impl CaseStudy {
    pub fn name(self) -> &'static str {
        match self {
            CaseStudy::Repo => "repo",
            CaseStudy::Abrahamsson => "abrahamsson",
        }
    }

    pub fn plan(self) -> ProjectPlan {
        match self {
            CaseStudy::Repo => repo_margining_plan(),
            CaseStudy::Abrahamsson => abrahamsson_plan(),
        }
    }

    pub fn reference(self) -> PaperReference {
        match self {
            CaseStudy::Repo => REPO_REFERENCE,
            CaseStudy::Abrahamsson => ABRAHAMSSON_REFERENCE,
        }
    }
}

impl FromStr for CaseStudy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "repo" => Ok(CaseStudy::Repo),
            "abrahamsson" => Ok(CaseStudy::Abrahamsson),
            other => Err(Error::UnknownCase { name: other.to_string() }),
        }
    }
}

/// Figures published for a case study: what the original experiment
/// predicted and what the real project measured.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PaperReference {
    pub experiment_days: f64,
    pub experiment_defected_story_points: f64,
    pub experiment_kloc: f64,
    pub real_days: f64,
    pub real_defected_story_points: f64,
    pub real_kloc: f64,
}

pub const REPO_REFERENCE: PaperReference = PaperReference {
    experiment_days: 65.0,
    experiment_defected_story_points: 200.0,
    experiment_kloc: 8.6,
    real_days: 60.0,
    real_defected_story_points: 319.0,
    real_kloc: 9.8,
};

pub const ABRAHAMSSON_REFERENCE: PaperReference = PaperReference {
    experiment_days: 11.0,
    experiment_defected_story_points: 11.0,
    experiment_kloc: 1.3,
    real_days: 12.0,
    real_defected_story_points: 9.0,
    real_kloc: 4.2,
};

/// Repo Margining System: two releases of 15 and 14 stories at 15 SP each,
/// team of four, PP and TDD about half, no on-site customer.
pub fn repo_margining_plan() -> ProjectPlan {
    let usage = PracticeUsage {
        pair_programming: PracticeLevel::AboutHalf,
        tdd: PracticeLevel::AboutHalf,
        onsite_customer: PracticeLevel::Never,
    };
    ProjectPlan {
        name: "Repo Margining System".into(),
        releases: vec![
            ReleaseSpec {
                planned_user_stories: 15,
                avg_story_points_per_story: 15.0,
                usage,
            },
            ReleaseSpec {
                planned_user_stories: 14,
                avg_story_points_per_story: 15.0,
                usage,
            },
        ],
        team: TeamProfile { team_size: 4 },
        params: ModelParams::default(),
        deadline_days: None,
        success_threshold: 0.5,
    }
}

/// Abrahamsson controlled case study: 5 stories at 10 SP then 8 at 8 SP,
/// heavy pair programming, occasional on-site customer.
pub fn abrahamsson_plan() -> ProjectPlan {
    ProjectPlan {
        name: "Abrahamsson Case Study".into(),
        releases: vec![
            ReleaseSpec {
                planned_user_stories: 5,
                avg_story_points_per_story: 10.0,
                usage: PracticeUsage {
                    pair_programming: PracticeLevel::AlmostUsed,
                    tdd: PracticeLevel::AboutHalf,
                    onsite_customer: PracticeLevel::Occasionally,
                },
            },
            ReleaseSpec {
                planned_user_stories: 8,
                avg_story_points_per_story: 8.0,
                usage: PracticeUsage {
                    pair_programming: PracticeLevel::Frequently,
                    tdd: PracticeLevel::AboutHalf,
                    onsite_customer: PracticeLevel::Occasionally,
                },
            },
        ],
        team: TeamProfile { team_size: 4 },
        params: ModelParams::default(),
        deadline_days: None,
        success_threshold: 0.5,
    }
}
