//! Truncated characteristic series (Â, Ch, Ch_φ) with exact Laurent coefficients in ℏ,
//! and the index density built from them.

mod classes;
mod series;

use thiserror::Error;

pub use classes::{
    a_hat_coefficients, generating_function_check, index_density, series_a_hat, series_a_hat_hbar, series_ch,
    series_ch_phi, CurvatureData, GeneratingCheck, IndexDensity, TraceFunctional,
};
pub use series::{GradedSeries, Homogeneous, Laurent, LinearForm, SYMBOL_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharClassError {
    #[error("moment m_{0} is required but was not supplied")]
    MissingMoment(usize),
    #[error("trace functional must satisfy m_0 = 1, got {0}")]
    NotNormalized(String),
    #[error("truncation order {order} is below the required degree {needed}")]
    TruncationTooLow { order: usize, needed: usize },
    #[error("expected {expected} tangent roots, got {got}")]
    RootCount { expected: usize, got: usize },
    #[error("the two spellings of the index density disagree")]
    SpellingMismatch,
    #[error("{0}")]
    Parse(String),
}
