//! Independent oracles for cross-checking the main computations, and the
//! fixture suite of known pairs.

mod census;
mod fixtures;
mod forms_alt;

use thiserror::Error;

pub use census::{brute_force_curve_census, Census, CENSUS_LIMIT, EXHAUSTIVE_LIMIT};
pub use fixtures::{load_fixtures, run_fixture_suite, FixtureCase, FixtureOutcome, GraphFacts};
pub use forms_alt::class_number_alt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0}^{1} is not a prime power")]
    NotPrimePower(u64, u32),
    #[error("{0}^{1} exceeds the census limit")]
    FieldTooLarge(u64, u32),
    #[error("fixture file: {0}")]
    Fixtures(String),
}
