//! The XP release model: practice-usage mapping, team velocity formation
//! under Pair Programming / Test-Driven Development, and defect generation
//! under TDD / On-site Customer, assembled as one network per release.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bn::{DetFn, Dist, Network, SampleSet, Summary};
use crate::{Error, Result};

/// Five-step ordinal scale for how consistently a team applies a practice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PracticeLevel {
    Never,
    Occasionally,
    AboutHalf,
    Frequently,
    AlmostUsed,
}

impl PracticeLevel {
    pub const ALL: [PracticeLevel; 5] = [
        PracticeLevel::Never,
        PracticeLevel::Occasionally,
        PracticeLevel::AboutHalf,
        PracticeLevel::Frequently,
        PracticeLevel::AlmostUsed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PracticeLevel::Never => "never",
            PracticeLevel::Occasionally => "occasionally",
            PracticeLevel::AboutHalf => "about_half",
            PracticeLevel::Frequently => "frequently",
            PracticeLevel::AlmostUsed => "almost_used",
        }
    }
}

impl FromStr for PracticeLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PracticeLevel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Level { value: s.to_string() })
    }
}

/// Usage fraction for a practice level.
pub fn level_to_fraction(level: PracticeLevel) -> f64 {
    match level {
        PracticeLevel::Never => 0.0,
        PracticeLevel::Occasionally => 0.25,
        PracticeLevel::AboutHalf => 0.5,
        PracticeLevel::Frequently => 0.75,
        PracticeLevel::AlmostUsed => 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PracticeUsage {
    pub pair_programming: PracticeLevel,
    pub tdd: PracticeLevel,
    pub onsite_customer: PracticeLevel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReleaseSpec {
    pub planned_user_stories: u32,
    pub avg_story_points_per_story: f64,
    pub usage: PracticeUsage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamProfile {
    pub team_size: u32,
}

/// All model constants and distributions in one overridable record.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub dev_initial_skills: Dist,
    /// Story points per developer per day.
    pub dev_initial_velocity: Dist,
    pub learning_coefficient: f64,
    pub skill_log_base: f64,
    /// Percent change in velocity from full pair-programming usage.
    pub pp_velocity_impact: Dist,
    /// Percent change in velocity from full TDD usage.
    pub tdd_velocity_impact: Dist,
    /// Lines of code per developer per day.
    pub dev_productivity: Dist,
    /// Defects per KLOC.
    pub defect_injection_ratio: Dist,
    pub osc_defect_reduction: f64,
    pub tdd_defect_reduction: f64,
    pub defect_to_story_point_ratio: f64,
    pub velocity_floor: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            dev_initial_skills: Dist::Uniform { low: 1.0, high: 10.0 },
            dev_initial_velocity: Dist::TruncatedNormal {
                mean: 4.0,
                sd: 1.0,
                low: 0.1,
                high: f64::INFINITY,
            },
            learning_coefficient: 0.009,
            skill_log_base: 10.0,
            pp_velocity_impact: Dist::Normal { mean: 23.0, sd: 20.0 },
            tdd_velocity_impact: Dist::Normal { mean: -32.0, sd: 42.0 },
            dev_productivity: Dist::TruncatedNormal {
                mean: 40.0,
                sd: 20.0,
                low: 1.0,
                high: f64::INFINITY,
            },
            defect_injection_ratio: Dist::TruncatedNormal {
                mean: 20.0,
                sd: 5.0,
                low: 0.0,
                high: f64::INFINITY,
            },
            osc_defect_reduction: 0.8,
            tdd_defect_reduction: 0.4,
            defect_to_story_point_ratio: 1.0,
            velocity_floor: 0.05,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidPlan { reason: reason.to_string() })
            }
        };
        check(self.learning_coefficient > 0.0, "learning_coefficient must be > 0")?;
        check(self.skill_log_base > 1.0, "skill_log_base must be > 1")?;
        check(
            (0.0..=1.0).contains(&self.osc_defect_reduction),
            "osc_defect_reduction must lie in [0, 1]",
        )?;
        check(
            (0.0..=1.0).contains(&self.tdd_defect_reduction),
            "tdd_defect_reduction must lie in [0, 1]",
        )?;
        check(self.velocity_floor > 0.0, "velocity_floor must be > 0")?;
        check(
            self.defect_to_story_point_ratio > 0.0,
            "defect_to_story_point_ratio must be > 0",
        )?;
        Ok(())
    }

    /// Copy with every distribution collapsed to a point mass at its mean.
    pub fn at_means(&self) -> ModelParams {
        let point = |d: &Dist| Dist::Point(d.mean());
        ModelParams {
            dev_initial_skills: point(&self.dev_initial_skills),
            dev_initial_velocity: point(&self.dev_initial_velocity),
            pp_velocity_impact: point(&self.pp_velocity_impact),
            tdd_velocity_impact: point(&self.tdd_velocity_impact),
            dev_productivity: point(&self.dev_productivity),
            defect_injection_ratio: point(&self.defect_injection_ratio),
            ..self.clone()
        }
    }
}

/// Everything one release needs: its spec plus the state carried in from
/// earlier releases.
#[derive(Debug, Clone)]
pub struct ReleaseInputs {
    pub spec: ReleaseSpec,
    /// Story points carried from the prior release's defects.
    pub added_story_points: f64,
    /// Cumulative estimated days of all prior releases.
    pub project_working_days: f64,
    pub team: TeamProfile,
    pub params: ModelParams,
}

/// Sampled outputs of one release.
#[derive(Debug, Clone)]
pub struct ReleaseOutcome {
    pub estimated_days: Summary,
    pub defected_story_points: Summary,
    pub estimated_kloc: Summary,
    pub samples: SampleSet,
}

/// Skill bonus accrued by `project_working_days` of practice:
/// log_base(initial_skills + days * LC).
pub fn dev_skills(initial_skills: f64, project_working_days: f64, params: &ModelParams) -> f64 {
    (initial_skills + project_working_days * params.learning_coefficient).ln()
        / params.skill_log_base.ln()
}

/// Story points per day for the whole team. Practice impacts are percentages;
/// the floor keeps the result positive even when a sampled impact wipes out
/// the base velocity.
pub fn team_velocity(
    team: TeamProfile,
    usage: PracticeUsage,
    dev_velocity: f64,
    pp_impact: f64,
    tdd_impact: f64,
    params: &ModelParams,
) -> f64 {
    let pp_frac = level_to_fraction(usage.pair_programming);
    let tdd_frac = level_to_fraction(usage.tdd);
    let raw = team.team_size as f64
        * dev_velocity
        * (1.0 + pp_frac * pp_impact / 100.0)
        * (1.0 + tdd_frac * tdd_impact / 100.0);
    raw.max(params.velocity_floor)
}

/// Planned story points plus defect points carried from the prior release.
pub fn release_workload(spec: &ReleaseSpec, added_story_points: f64) -> f64 {
    spec.planned_user_stories as f64 * spec.avg_story_points_per_story + added_story_points
}

/// Development-session time only; continuous days, no rounding.
pub fn estimated_release_days(workload: f64, velocity: f64) -> f64 {
    workload / velocity
}

pub fn estimated_release_kloc(productivity: f64, team: TeamProfile, days: f64) -> f64 {
    productivity * team.team_size as f64 * days / 1000.0
}

/// Defect output converted to story points after the OSC and TDD
/// reduction factors.
pub fn defected_story_points(
    kloc: f64,
    injection_ratio: f64,
    usage: PracticeUsage,
    params: &ModelParams,
) -> f64 {
    let osc_frac = level_to_fraction(usage.onsite_customer);
    let tdd_frac = level_to_fraction(usage.tdd);
    kloc * injection_ratio
        * (1.0 - params.osc_defect_reduction * osc_frac)
        * (1.0 - params.tdd_defect_reduction * tdd_frac)
        * params.defect_to_story_point_ratio
}

pub mod node {
    //! Node ids of a release network.
    pub const DEV_INITIAL_SKILLS: &str = "dev_initial_skills";
    pub const DEV_INITIAL_VELOCITY: &str = "dev_initial_velocity";
    pub const PP_VELOCITY_IMPACT: &str = "pp_velocity_impact";
    pub const TDD_VELOCITY_IMPACT: &str = "tdd_velocity_impact";
    pub const DEV_PRODUCTIVITY: &str = "dev_productivity";
    pub const DEFECT_INJECTION_RATIO: &str = "defect_injection_ratio";
    pub const DEV_SKILLS: &str = "dev_skills";
    pub const DEV_VELOCITY: &str = "dev_velocity";
    pub const TEAM_INITIAL_VELOCITY: &str = "team_initial_velocity";
    pub const TEAM_VELOCITY: &str = "team_velocity";
    pub const WORKLOAD: &str = "workload";
    pub const ESTIMATED_DAYS: &str = "estimated_days";
    pub const ESTIMATED_KLOC: &str = "estimated_kloc";
    pub const DEFECT_RATE: &str = "defect_rate";
    pub const DEFECTED_STORY_POINTS: &str = "defected_story_points";
}

/// Wires one release: 6 stochastic input nodes feeding the velocity and
/// defect chains (9 deterministic nodes).
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN inputs must fail validation
pub fn build_release_network(inputs: &ReleaseInputs) -> Result<Network> {
    if inputs.added_story_points < 0.0 {
        return Err(Error::InvalidPlan {
            reason: "added_story_points must be >= 0".into(),
        });
    }
    if inputs.project_working_days < 0.0 {
        return Err(Error::InvalidPlan {
            reason: "project_working_days must be >= 0".into(),
        });
    }
    if inputs.team.team_size < 1 {
        return Err(Error::InvalidPlan { reason: "team_size must be >= 1".into() });
    }
    if !(inputs.spec.avg_story_points_per_story > 0.0) {
        return Err(Error::InvalidPlan {
            reason: "avg_story_points_per_story must be > 0".into(),
        });
    }
    inputs.params.validate()?;

    let params = inputs.params.clone();
    let usage = inputs.spec.usage;
    let team = inputs.team;
    let pwd = inputs.project_working_days;
    let workload = release_workload(&inputs.spec, inputs.added_story_points);

    let mut net = Network::new();
    net.add_stochastic(node::DEV_INITIAL_SKILLS, params.dev_initial_skills.clone());
    net.add_stochastic(node::DEV_INITIAL_VELOCITY, params.dev_initial_velocity.clone());
    net.add_stochastic(node::PP_VELOCITY_IMPACT, params.pp_velocity_impact.clone());
    net.add_stochastic(node::TDD_VELOCITY_IMPACT, params.tdd_velocity_impact.clone());
    net.add_stochastic(node::DEV_PRODUCTIVITY, params.dev_productivity.clone());
    net.add_stochastic(node::DEFECT_INJECTION_RATIO, params.defect_injection_ratio.clone());

    {
        let p = params.clone();
        net.add_deterministic(
            node::DEV_SKILLS,
            &[node::DEV_INITIAL_SKILLS],
            DetFn::new("dev_skills", move |a| dev_skills(a[0], pwd, &p)),
        );
    }
    net.add_deterministic(
        node::DEV_VELOCITY,
        &[node::DEV_INITIAL_VELOCITY, node::DEV_SKILLS],
        DetFn::new("sum", |a| a[0] + a[1]),
    );
    net.add_deterministic(
        node::TEAM_INITIAL_VELOCITY,
        &[node::DEV_VELOCITY],
        DetFn::new("scale_by_team_size", move |a| a[0] * team.team_size as f64),
    );
    {
        let p = params.clone();
        net.add_deterministic(
            node::TEAM_VELOCITY,
            &[
                node::TEAM_INITIAL_VELOCITY,
                node::PP_VELOCITY_IMPACT,
                node::TDD_VELOCITY_IMPACT,
            ],
            DetFn::new("team_velocity", move |a| {
                // a[0] is already team_size * dev_velocity.
                let pp_frac = level_to_fraction(usage.pair_programming);
                let tdd_frac = level_to_fraction(usage.tdd);
                (a[0] * (1.0 + pp_frac * a[1] / 100.0) * (1.0 + tdd_frac * a[2] / 100.0))
                    .max(p.velocity_floor)
            }),
        );
    }
    net.add_deterministic(
        node::WORKLOAD,
        &[],
        DetFn::new("workload", move |_| workload),
    );
    net.add_deterministic(
        node::ESTIMATED_DAYS,
        &[node::WORKLOAD, node::TEAM_VELOCITY],
        DetFn::new("days", |a| estimated_release_days(a[0], a[1])),
    );
    net.add_deterministic(
        node::ESTIMATED_KLOC,
        &[node::DEV_PRODUCTIVITY, node::ESTIMATED_DAYS],
        DetFn::new("kloc", move |a| estimated_release_kloc(a[0], team, a[1])),
    );
    net.add_deterministic(
        node::DEFECT_RATE,
        &[node::ESTIMATED_KLOC, node::DEFECT_INJECTION_RATIO],
        DetFn::new("product", |a| a[0] * a[1]),
    );
    {
        let p = params;
        net.add_deterministic(
            node::DEFECTED_STORY_POINTS,
            &[node::DEFECT_RATE],
            DetFn::new("defected_story_points", move |a| {
                let osc_frac = level_to_fraction(usage.onsite_customer);
                let tdd_frac = level_to_fraction(usage.tdd);
                a[0] * (1.0 - p.osc_defect_reduction * osc_frac)
                    * (1.0 - p.tdd_defect_reduction * tdd_frac)
                    * p.defect_to_story_point_ratio
            }),
        );
    }

    net.validate()?;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn all(level: PracticeLevel) -> PracticeUsage {
        PracticeUsage {
            pair_programming: level,
            tdd: level,
            onsite_customer: level,
        }
    }

    #[test]
    fn level_fractions() {
        assert_eq!(level_to_fraction(PracticeLevel::Never), 0.0);
        assert_eq!(level_to_fraction(PracticeLevel::Occasionally), 0.25);
        assert_eq!(level_to_fraction(PracticeLevel::AboutHalf), 0.5);
        assert_eq!(level_to_fraction(PracticeLevel::Frequently), 0.75);
        assert_eq!(level_to_fraction(PracticeLevel::AlmostUsed), 1.0);
    }

    #[test]
    fn level_parsing() {
        assert_eq!(
            "about_half".parse::<PracticeLevel>().unwrap(),
            PracticeLevel::AboutHalf
        );
        assert!(matches!(
            "sometimes".parse::<PracticeLevel>(),
            Err(crate::Error::Level { .. })
        ));
    }

    #[test]
    fn skill_bonus_examples() {
        let p = ModelParams::default();
        assert_eq!(dev_skills(1.0, 0.0, &p), 0.0);
        assert_relative_eq!(dev_skills(10.0, 0.0, &p), 1.0, epsilon = 1e-12);
        assert_relative_eq!(dev_skills(5.5, 0.0, &p), 5.5f64.log10(), epsilon = 1e-12);
        assert_relative_eq!(dev_skills(5.5, 0.0, &p), 0.7404, epsilon = 1e-4);
    }

    #[test]
    fn skill_bonus_grows_with_time() {
        let p = ModelParams::default();
        let mut last = dev_skills(5.5, 0.0, &p);
        for days in [10.0, 100.0, 1000.0] {
            let next = dev_skills(5.5, days, &p);
            assert!(next > last);
            last = next;
        }
    }

    #[test]
    fn velocity_with_no_practices_is_team_initial_velocity() {
        let p = ModelParams::default();
        let v = team_velocity(
            TeamProfile { team_size: 4 },
            all(PracticeLevel::Never),
            4.5,
            23.0,
            -32.0,
            &p,
        );
        assert_eq!(v, 18.0);
    }

    #[test]
    fn velocity_at_distribution_means() {
        let p = ModelParams::default();
        let dev_velocity = 4.0 + dev_skills(5.5, 0.0, &p);
        let usage = PracticeUsage {
            pair_programming: PracticeLevel::AboutHalf,
            tdd: PracticeLevel::AboutHalf,
            onsite_customer: PracticeLevel::Never,
        };
        let v = team_velocity(TeamProfile { team_size: 4 }, usage, dev_velocity, 23.0, -32.0, &p);
        assert_relative_eq!(v, 4.0 * dev_velocity * 1.115 * 0.84, epsilon = 1e-12);
        assert_relative_eq!(v, 17.759, epsilon = 1e-3);
    }

    #[test]
    fn velocity_floor_applies_when_impacts_cancel_the_base() {
        let p = ModelParams::default();
        let usage = PracticeUsage {
            pair_programming: PracticeLevel::AlmostUsed,
            tdd: PracticeLevel::Never,
            onsite_customer: PracticeLevel::Never,
        };
        let v = team_velocity(TeamProfile { team_size: 1 }, usage, 4.0, -100.0, 0.0, &p);
        assert_eq!(v, 0.05);
    }

    #[test]
    fn workload_examples() {
        let usage = all(PracticeLevel::Never);
        let spec = |stories, avg| ReleaseSpec {
            planned_user_stories: stories,
            avg_story_points_per_story: avg,
            usage,
        };
        assert_eq!(release_workload(&spec(15, 15.0), 0.0), 225.0);
        assert_eq!(release_workload(&spec(0, 1.0), 40.0), 40.0);
        assert_eq!(release_workload(&spec(8, 8.0), 11.0), 75.0);
    }

    #[test]
    fn days_and_kloc_examples() {
        assert_relative_eq!(estimated_release_days(225.0, 17.759), 12.67, epsilon = 1e-2);
        assert_eq!(estimated_release_days(0.0, 5.0), 0.0);
        assert_relative_eq!(estimated_release_days(50.0, 19.591), 2.552, epsilon = 1e-3);

        let team = TeamProfile { team_size: 4 };
        assert_relative_eq!(estimated_release_kloc(40.0, team, 12.67), 2.027, epsilon = 1e-3);
        assert_eq!(estimated_release_kloc(40.0, team, 0.0), 0.0);
        assert_relative_eq!(estimated_release_kloc(40.0, team, 65.0), 10.4, epsilon = 1e-12);
    }

    #[test]
    fn defect_examples() {
        let p = ModelParams::default();
        assert_eq!(defected_story_points(2.0, 20.0, all(PracticeLevel::Never), &p), 40.0);

        let full = PracticeUsage {
            pair_programming: PracticeLevel::Never,
            tdd: PracticeLevel::AlmostUsed,
            onsite_customer: PracticeLevel::AlmostUsed,
        };
        assert_relative_eq!(defected_story_points(5.0, 20.0, full, &p), 12.0, epsilon = 1e-12);

        let repo = PracticeUsage {
            pair_programming: PracticeLevel::AboutHalf,
            tdd: PracticeLevel::AboutHalf,
            onsite_customer: PracticeLevel::Never,
        };
        assert_relative_eq!(
            defected_story_points(2.027, 20.0, repo, &p),
            32.43,
            epsilon = 1e-2
        );
    }

    fn repo_release1_inputs() -> ReleaseInputs {
        ReleaseInputs {
            spec: ReleaseSpec {
                planned_user_stories: 15,
                avg_story_points_per_story: 15.0,
                usage: PracticeUsage {
                    pair_programming: PracticeLevel::AboutHalf,
                    tdd: PracticeLevel::AboutHalf,
                    onsite_customer: PracticeLevel::Never,
                },
            },
            added_story_points: 0.0,
            project_working_days: 0.0,
            team: TeamProfile { team_size: 4 },
            params: ModelParams::default().at_means(),
        }
    }

    #[test]
    fn release_network_has_expected_shape() {
        let net = build_release_network(&repo_release1_inputs()).unwrap();
        assert_eq!(net.len(), 15);
        let stochastic = net
            .node_ids()
            .filter(|id| {
                matches!(
                    net.node(id).unwrap().kind,
                    crate::bn::NodeKind::Stochastic(_)
                )
            })
            .count();
        assert_eq!(stochastic, 6);
        assert_eq!(net.len() - stochastic, 9);
    }

    #[test]
    fn release_network_means_match_hand_computation() {
        let net = build_release_network(&repo_release1_inputs()).unwrap();
        let values = net.evaluate_at_means().unwrap();
        assert_relative_eq!(values[node::ESTIMATED_DAYS], 12.67, epsilon = 5e-3);

        let mut abrahamsson = repo_release1_inputs();
        abrahamsson.spec = ReleaseSpec {
            planned_user_stories: 5,
            avg_story_points_per_story: 10.0,
            usage: PracticeUsage {
                pair_programming: PracticeLevel::AlmostUsed,
                tdd: PracticeLevel::AboutHalf,
                onsite_customer: PracticeLevel::Occasionally,
            },
        };
        let values = build_release_network(&abrahamsson)
            .unwrap()
            .evaluate_at_means()
            .unwrap();
        assert_relative_eq!(values[node::ESTIMATED_DAYS], 2.552, epsilon = 1e-3);
    }

    #[test]
    fn zero_usage_identities() {
        let p = ModelParams::default();
        let usage = all(PracticeLevel::Never);
        let team = TeamProfile { team_size: 3 };
        for dev_velocity in [0.5, 2.0, 6.25] {
            let v = team_velocity(team, usage, dev_velocity, 23.0, -32.0, &p);
            assert_eq!(v, (3.0 * dev_velocity).max(p.velocity_floor));
        }
        for rate in [0.0, 7.5, 40.0] {
            assert_eq!(defected_story_points(rate, 1.0, usage, &p), rate);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn level() -> impl Strategy<Value = PracticeLevel> {
            prop::sample::select(PracticeLevel::ALL.to_vec())
        }

        proptest! {
            // Raising TDD or OSC usage never increases defect output.
            #[test]
            fn defects_monotone_in_practice_usage(
                kloc in 0.0f64..50.0,
                ratio in 0.0f64..60.0,
                pp in level(),
            ) {
                let p = ModelParams::default();
                let levels = PracticeLevel::ALL;
                for pair in levels.windows(2) {
                    for &other in &levels {
                        let lo = |tdd, osc| PracticeUsage {
                            pair_programming: pp,
                            tdd,
                            onsite_customer: osc,
                        };
                        prop_assert!(
                            defected_story_points(kloc, ratio, lo(pair[1], other), &p)
                                <= defected_story_points(kloc, ratio, lo(pair[0], other), &p) + 1e-12
                        );
                        prop_assert!(
                            defected_story_points(kloc, ratio, lo(other, pair[1]), &p)
                                <= defected_story_points(kloc, ratio, lo(other, pair[0]), &p) + 1e-12
                        );
                    }
                }
            }

            // At the default means, PP raises velocity and TDD lowers it.
            #[test]
            fn velocity_sign_structure(dev_velocity in 0.5f64..10.0) {
                let p = ModelParams::default();
                let team = TeamProfile { team_size: 4 };
                let levels = PracticeLevel::ALL;
                for pair in levels.windows(2) {
                    let with_pp = |pp| PracticeUsage {
                        pair_programming: pp,
                        tdd: PracticeLevel::Never,
                        onsite_customer: PracticeLevel::Never,
                    };
                    prop_assert!(
                        team_velocity(team, with_pp(pair[1]), dev_velocity, 23.0, -32.0, &p)
                            > team_velocity(team, with_pp(pair[0]), dev_velocity, 23.0, -32.0, &p)
                    );
                    let with_tdd = |tdd| PracticeUsage {
                        pair_programming: PracticeLevel::Never,
                        tdd,
                        onsite_customer: PracticeLevel::Never,
                    };
                    prop_assert!(
                        team_velocity(team, with_tdd(pair[1]), dev_velocity, 23.0, -32.0, &p)
                            < team_velocity(team, with_tdd(pair[0]), dev_velocity, 23.0, -32.0, &p)
                    );
                }
            }

            // Velocity is linear in team size whenever the floor is not hit.
            #[test]
            fn velocity_scales_with_team_size(
                dev_velocity in 0.5f64..10.0,
                pp in level(),
                tdd in level(),
                size in 1u32..20,
            ) {
                let p = ModelParams::default();
                let usage = PracticeUsage {
                    pair_programming: pp,
                    tdd,
                    onsite_customer: PracticeLevel::Never,
                };
                let single = team_velocity(TeamProfile { team_size: size }, usage, dev_velocity, 23.0, -32.0, &p);
                let double = team_velocity(TeamProfile { team_size: 2 * size }, usage, dev_velocity, 23.0, -32.0, &p);
                if single > p.velocity_floor {
                    prop_assert!((double - 2.0 * single).abs() <= 1e-9 * double.abs());
                }
            }

            // Deterministic sampling of a release always yields positive,
            // finite days when there is work to do.
            #[test]
            fn sampled_days_are_positive_and_finite(
                stories in 1u32..40,
                avg in 1.0f64..25.0,
                pp in level(),
                tdd in level(),
                osc in level(),
                seed in any::<u64>(),
            ) {
                let inputs = ReleaseInputs {
                    spec: ReleaseSpec {
                        planned_user_stories: stories,
                        avg_story_points_per_story: avg,
                        usage: PracticeUsage {
                            pair_programming: pp,
                            tdd,
                            onsite_customer: osc,
                        },
                    },
                    added_story_points: 0.0,
                    project_working_days: 0.0,
                    team: TeamProfile { team_size: 4 },
                    params: ModelParams::default(),
                };
                let net = build_release_network(&inputs).unwrap();
                let ss = net.sample(64, seed).unwrap();
                for &d in ss.samples(node::ESTIMATED_DAYS).unwrap() {
                    prop_assert!(d.is_finite() && d > 0.0);
                }
            }
        }
    }
}
