//! Dunkl operators on truncated polynomial algebras and the rational Cherednik relations.

mod checks;
mod dunkl;
mod operator;
mod poly;

pub use checks::{pbw_spot_check, verify_commutation_relations, CommutationReport, KappaFit, PbwReport, RelationCheck};
pub use dunkl::{dunkl_operator, DunklError, DunklRep, ReflectionClass};
pub use operator::{count_upto, LinearOperator};
pub use poly::{monomials_of_degree, Exponent, MonomialBasis, Poly, Truncated, TruncatedPolynomialAlgebra};
