//! Normalized Hochschild chains over small structure-constant algebras.

mod algebra;
mod chain;

use thiserror::Error;

pub use algebra::{parse_algebra, CappedWeyl, Element, StructureConstantAlgebra};
pub use chain::{fundamental_cycle, group_algebra_hh0, hochschild_boundary, ChainDisplay, HochschildChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("product {0} * {1} leaves the degree cap")]
    Overflow(String, String),
    #[error("unit axiom fails on basis element {0}")]
    UnitAxiom(String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { cap: usize, order: usize },
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
