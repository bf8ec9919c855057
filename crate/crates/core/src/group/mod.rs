//! Finite matrix groups over cyclotomic fields and their reflection structure.

pub mod catalog;
mod classes;
mod decompose;
mod reflections;
mod regular;
mod report;
mod structure;
mod wellgen;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::cyclo::{lcm, CycloMatrix};

pub use classes::ConjugacyClass;
pub use decompose::{Decomposition, IrreducibleComponent};
pub use reflections::{ReflectionData, ReflectionSet};
pub use regular::RegularElement;
pub use report::GroupReport;
pub use structure::{degree_excess, Irreducibility, SupportData};
pub use wellgen::WellGeneration;

pub const DEFAULT_ORDER_CAP: usize = 20_000;
const MUL_TABLE_LIMIT: usize = 1500;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the order cap {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("generators must be square matrices of one size: {0}")]
    DimensionMismatch(String),
    #[error("no generators supplied")]
    NoGenerators,
    #[error("Molien series is not of the form Π 1/(1-t^d): {0}")]
    NotReflectionGroup(String),
    #[error("Coxeter number (N + N*)/rank = {numerator}/{rank} is not an integer")]
    NonIntegral { numerator: usize, rank: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no Coxeter element found although the hypotheses hold")]
    CoxeterElementMissing,
}

/// A finite subgroup of `GL_n(Q(ζ_e))`, fully enumerated.
///
/// Element 0 is the identity; the remaining elements appear in breadth-first
/// order of the closure. The conductor is `lcm(input conductor, exponent)`, so
/// every eigenvalue of every element lives in the ambient field.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    dim: usize,
    conductor: u32,
    elements: Vec<CycloMatrix>,
    index: HashMap<CycloMatrix, usize>,
    mul_table: Option<Vec<u32>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    exponent: u32,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of `generators`.
    pub fn generate(generators: &[CycloMatrix], cap: usize) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let n = first.rows();
        let e_in = generators.iter().map(CycloMatrix::conductor).fold(1, lcm);
        let gens: Vec<CycloMatrix> = generators.iter().map(|g| g.embed(e_in)).collect();
        for (i, g) in gens.iter().enumerate() {
            if !g.is_square() || g.rows() != n {
                return Err(GroupError::DimensionMismatch(format!(
                    "generator {i} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.determinant().is_zero() {
                return Err(GroupError::NotInvertible { index: i });
            }
        }

        let mut elements = vec![CycloMatrix::identity(n, e_in)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = &elements[x] * g;
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let mut group = Self {
            dim: n,
            conductor: e_in,
            generators: gens.iter().map(|g| index[g]).collect(),
            elements,
            index,
            mul_table: None,
            inverses: Vec::new(),
            exponent: 1,
        };
        group.finish_tables();
        let exponent = (0..group.order()).map(|i| group.element_order(i) as u32).fold(1, lcm);
        group.exponent = exponent;
        let target = lcm(e_in, exponent);
        if target != e_in {
            group.lift_conductor(target);
        }
        Ok(group)
    }

    fn finish_tables(&mut self) {
        let n = self.order();
        if n <= MUL_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let p = &self.elements[i] * &self.elements[j];
                    table[i * n + j] = self.index[&p] as u32;
                }
            }
            self.mul_table = Some(table);
        }
        self.inverses = (0..n)
            .map(|i| {
                let inv = self.elements[i].inverse().expect("group elements are invertible");
                self.index[&inv]
            })
            .collect();
    }

    fn lift_conductor(&mut self, target: u32) {
        self.conductor = target;
        self.elements = self.elements.iter().map(|m| m.embed(target)).collect();
        self.index = self.elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn elements(&self) -> &[CycloMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CycloMatrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Index of a matrix in the group, if present (entries are embedded first).
    pub fn index_of(&self, m: &CycloMatrix) -> Option<usize> {
        if !self.conductor.is_multiple_of(m.conductor()) {
            return None;
        }
        self.index.get(&m.embed(self.conductor)).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&(&self.elements[i] * &self.elements[j])],
        }
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(cur, i);
            k += 1;
        }
        k
    }

    /// Element indices of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Pointwise stabilizer of a vector: `{g : g v = v}`.
    pub fn stabilizer(&self, v: &[crate::cyclo::CyclotomicNumber]) -> Vec<usize> {
        let v: Vec<_> = v.iter().map(|x| x.embed(self.conductor)).collect();
        (0..self.order()).filter(|&i| self.elements[i].apply(&v) == v).collect()
    }
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("dim", &self.dim)
            .field("conductor", &self.conductor)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closure of `generators` with the default order cap.
pub fn generate_group(generators: &[CycloMatrix], cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    FiniteMatrixGroup::generate(generators, cap)
}
