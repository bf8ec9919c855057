//! Hochschild dimension profiles, trace-space bounds and orbifold fixed-point data.

mod orbifold;
mod profile;

use thiserror::Error;

pub use orbifold::{
    euler_characteristics, euler_report, orbifold_hypercohomology, ClassEntry, EulerReport, FixedComponent,
    HypercohomologyTable, OrbifoldDescriptor, DEGREE_CONVENTION,
};
pub use profile::{
    convolve_profiles, hochschild_profile, shifted_profile, trace_space_lower_bound, ClassFixedData,
    HomologyProfile, TraceBoundReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("malformed orbifold descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("Euler characteristic identity fails: chi_hh = {chi_hh} but |G|*chi_top = {scaled_chi_top}")]
    IdentityViolation { chi_hh: i64, scaled_chi_top: String },
}
