//! Monte-Carlo forecasting of finish time and defect output for iterative
//! (XP-style) software projects.
//!
//! The crate is layered bottom-up:
//!
//! - [`bn`] — a generic DAG of stochastic and deterministic nodes with seeded
//!   ancestral sampling and summary statistics.
//! - [`xp`] — the XP release model: practice-usage mapping, the team-velocity
//!   formula and the defected-story-points formula, expressed as builders that
//!   emit one [`bn::Network`] per release.
//! - [`project`] — chains per-release networks into a whole-project run,
//!   carrying defected story points forward and producing the status curve.
//! - [`config`] / [`report`] / [`fixtures`] — JSON project descriptions, CSV
//!   and report emission, and the two built-in case studies.

pub mod bn;
pub mod config;
mod error;
pub mod fixtures;
pub mod project;
pub mod report;
pub mod rng;
pub mod xp;

pub use error::{Error, Result};
