//! A small library of explicit generating sets used by tests, examples and the CLI.

use super::{FiniteMatrixGroup, DEFAULT_ORDER_CAP};
use crate::cyclo::{CycloMatrix, CyclotomicNumber};

fn build(gens: Vec<CycloMatrix>) -> FiniteMatrixGroup {
    FiniteMatrixGroup::generate(&gens, DEFAULT_ORDER_CAP).expect("catalog generators close")
}

pub fn trivial_generators(n: usize) -> Vec<CycloMatrix> {
    vec![CycloMatrix::identity(n, 1)]
}

/// `Z_m = ⟨diag(ζ_m)⟩` on `C^1`.
pub fn cyclic_generators(m: u32) -> Vec<CycloMatrix> {
    vec![CycloMatrix::diagonal(&[CyclotomicNumber::zeta_pow(1, m)])]
}

/// Symmetric group `S_n` permuting the coordinates of `C^n`, generated by `(12)` and `(12…n)`.
pub fn symmetric_permutation_generators(n: usize) -> Vec<CycloMatrix> {
    let mut swap = CycloMatrix::zero(n, n, 1);
    let mut cycle = CycloMatrix::zero(n, n, 1);
    for i in 0..n {
        let j = match i {
            0 => 1,
            1 => 0,
            _ => i,
        };
        swap.set(j, i, CyclotomicNumber::one(1));
        cycle.set((i + 1) % n, i, CyclotomicNumber::one(1));
    }
    vec![swap, cycle]
}

/// Simple reflections of type `A_{n}` acting on the root lattice (Cartan matrix form).
pub fn type_a_reflection_generators(rank: usize) -> Vec<CycloMatrix> {
    (0..rank)
        .map(|i| {
            let mut s = CycloMatrix::identity(rank, 1);
            // s_i(α_j) = α_j - a_ij α_i; column j holds the image of α_j.
            for j in 0..rank {
                let a_ij: i64 = if i == j {
                    2
                } else if i.abs_diff(j) == 1 {
                    -1
                } else {
                    0
                };
                let v = s.get(i, j) - &CyclotomicNumber::from_int(a_ij, 1);
                s.set(i, j, v);
            }
            s
        })
        .collect()
}

pub fn klein_four_generators() -> Vec<CycloMatrix> {
    vec![CycloMatrix::from_ints(&[&[-1, 0], &[0, 1]], 1), CycloMatrix::from_ints(&[&[1, 0], &[0, -1]], 1)]
}

pub fn trivial(n: usize) -> FiniteMatrixGroup {
    build(trivial_generators(n))
}

pub fn z2() -> FiniteMatrixGroup {
    build(vec![CycloMatrix::from_ints(&[&[-1]], 1)])
}

pub fn cyclic(m: u32) -> FiniteMatrixGroup {
    build(cyclic_generators(m))
}

/// `S_3` on `C^3` by permutation matrices.
pub fn s3_perm3() -> FiniteMatrixGroup {
    build(symmetric_permutation_generators(3))
}

/// `S_3` reflection representation on the 2-dim root space.
pub fn s3_refl() -> FiniteMatrixGroup {
    build(type_a_reflection_generators(2))
}

/// `S_4` reflection representation on the 3-dim root space.
pub fn s4_refl() -> FiniteMatrixGroup {
    build(type_a_reflection_generators(3))
}

pub fn klein4() -> FiniteMatrixGroup {
    build(klein_four_generators())
}

/// Block-diagonal product of two generator sets (each factor acting on its own block).
pub fn direct_product_generators(a: &[CycloMatrix], b: &[CycloMatrix]) -> Vec<CycloMatrix> {
    let e = a.iter().chain(b).map(CycloMatrix::conductor).fold(1, crate::cyclo::lcm);
    let (na, nb) = (a[0].rows(), b[0].rows());
    let block = |m: &CycloMatrix, offset: usize| {
        let n = na + nb;
        let mut out = CycloMatrix::identity(n, e);
        let m = m.embed(e);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(offset + i, offset + j, m.get(i, j).clone());
            }
        }
        out
    };
    a.iter().map(|m| block(m, 0)).chain(b.iter().map(|m| block(m, na))).collect()
}
