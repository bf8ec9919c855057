//! Exact arithmetic in cyclotomic fields `Q(ζ_e)` and dense linear algebra over them.

pub mod field;
pub mod literal;
pub mod matrix;
pub mod number;
pub mod poly;

pub use field::euler_totient;
pub use literal::{parse_cyclotomic, parse_rational, LiteralError};
pub use matrix::{dot, sparse_rank, CycloMatrix, Echelon};
pub use number::{int, is_nonneg_integer, lcm, rat, CyclotomicNumber, Rational};
pub use poly::CycloPoly;

/// Reduce a raw coefficient sequence at conductor `e`.
pub fn reduce(raw: &[Rational], conductor: u32) -> CyclotomicNumber {
    CyclotomicNumber::reduce(raw, conductor)
}

/// Exact right-kernel basis of `m`.
pub fn kernel_basis(m: &CycloMatrix) -> Vec<Vec<CyclotomicNumber>> {
    m.kernel_basis()
}

/// `det(1 - t·g)`.
pub fn char_det(g: &CycloMatrix) -> CycloPoly {
    g.char_det()
}
