use num_traits::{One, Signed, Zero};

use crate::cyclo::{int, is_nonneg_integer, CycloMatrix, CyclotomicNumber, Rational};

use super::reflections::ReflectionSet;
use super::{FiniteMatrixGroup, GroupError, DEFAULT_ORDER_CAP};

#[derive(Clone, Debug)]
pub struct SupportData {
    /// Basis of `supp(G)`, the span of all roots.
    pub support: Vec<Vec<CyclotomicNumber>>,
    pub rank: usize,
    /// Basis of the fixed space `h^G`.
    pub fixed_space: Vec<Vec<CyclotomicNumber>>,
    /// Whether `G` is generated by its reflections.
    pub generated_by_reflections: bool,
    /// `dim h^G + rank == dim h`; only meaningful for reflection groups.
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// `⟨χ, χ⟩ = (1/|G|) Σ tr(g) tr(g^{-1})`.
    pub character_norm: Rational,
}

impl FiniteMatrixGroup {
    /// Basis of `{v : g v = v for all g}`.
    pub fn fixed_space(&self) -> Vec<Vec<CyclotomicNumber>> {
        let n = self.dim();
        let e = self.conductor();
        let id = CycloMatrix::identity(n, e);
        let gens = self.generator_indices();
        let mut stacked = CycloMatrix::zero(n * gens.len().max(1), n, e);
        for (b, &g) in gens.iter().enumerate() {
            let m = self.element(g) - &id;
            for i in 0..n {
                for j in 0..n {
                    stacked.set(b * n + i, j, m.get(i, j).clone());
                }
            }
        }
        stacked.kernel_basis()
    }

    pub fn support_and_rank(&self, refl: &ReflectionSet) -> SupportData {
        let n = self.dim();
        let e = self.conductor();
        let roots: Vec<Vec<CyclotomicNumber>> = refl.reflections.iter().map(|r| r.root.clone()).collect();
        let support = if roots.is_empty() {
            Vec::new()
        } else {
            CycloMatrix::from_columns(n, &roots, e).column_space_basis()
        };
        let rank = support.len();
        let fixed_space = self.fixed_space();
        let generated_by_reflections = self.generated_subgroup(&refl.element_indices()).len() == self.order();
        let splits = fixed_space.len() + rank == n;
        SupportData { support, rank, fixed_space, generated_by_reflections, splits }
    }

    pub fn is_irreducible(&self) -> Irreducibility {
        let e = self.conductor();
        let mut acc = CyclotomicNumber::zero(e);
        for i in 0..self.order() {
            let a = self.element(i).trace();
            let b = self.element(self.inverse(i)).trace();
            acc += &(&a * &b);
        }
        let norm = acc
            .to_rational()
            .expect("character inner product is rational")
            / int(self.order() as i64);
        assert!(is_nonneg_integer(&norm), "character norm {norm} is not a nonnegative integer");
        Irreducibility { irreducible: norm.is_one(), character_norm: norm }
    }

    /// Molien series `(1/|G|) Σ_g 1/det(1 - t g)` through `t^order`.
    pub fn molien_series(&self, order: usize) -> Vec<Rational> {
        let mut acc = vec![CyclotomicNumber::zero(self.conductor()); order + 1];
        for class in self.conjugacy_classes() {
            let series = self.element(class.representative).char_det().inverse_series(order);
            let weight = CyclotomicNumber::from_int(class.size() as i64, self.conductor());
            for (a, s) in acc.iter_mut().zip(&series) {
                *a += &(&weight * s);
            }
        }
        let g = int(self.order() as i64);
        acc.into_iter()
            .map(|c| c.to_rational().expect("Molien coefficients are rational") / &g)
            .collect()
    }

    /// Degrees `d_1 <= … <= d_n` read off the Molien series.
    ///
    /// Repeatedly multiplies the truncated series by `(1 - t^d)` for the lowest
    /// order `d` at which it differs from 1; exactly `dim` steps must reach
    /// `1 + O(t^cutoff)` with `cutoff >= Σ d_i + dim`.
    pub fn molien_degrees(&self, refl: &ReflectionSet) -> Result<Vec<usize>, GroupError> {
        let n = self.dim();
        let mut cutoff = refl.count() + 2 * n;
        loop {
            let degrees = extract_degrees(self.molien_series(cutoff), n, cutoff)?;
            let needed = degrees.iter().sum::<usize>() + n;
            if needed > cutoff {
                cutoff = needed;
                continue;
            }
            let product: usize = degrees.iter().product();
            if product != self.order() {
                return Err(GroupError::NotReflectionGroup(format!(
                    "product of degrees {product} differs from |G| = {}",
                    self.order()
                )));
            }
            return Ok(degrees);
        }
    }

    /// `h = (N + N*) / rank`.
    pub fn coxeter_number(&self, refl: &ReflectionSet, rank: usize) -> Result<usize, GroupError> {
        if rank == 0 {
            return Err(GroupError::HypothesisViolated("rank 0 group has no Coxeter number".into()));
        }
        let numerator = refl.count() + refl.hyperplane_count();
        if !numerator.is_multiple_of(rank) {
            return Err(GroupError::NonIntegral { numerator, rank });
        }
        Ok(numerator / rank)
    }

    /// Matrices of the action on a `G`-stable subspace with the given basis.
    pub fn restricted_action(&self, basis: &[Vec<CyclotomicNumber>]) -> Vec<CycloMatrix> {
        let n = self.dim();
        let e = self.conductor();
        let b = CycloMatrix::from_columns(n, basis, e);
        let badj = b.adjoint();
        let gram_inv = (&badj * &b).inverse().expect("basis is linearly independent");
        let left = &gram_inv * &badj;
        self.elements()
            .iter()
            .map(|g| {
                let m = &left * &(g * &b);
                debug_assert!(&b * &m == g * &b, "subspace is not G-stable");
                m
            })
            .collect()
    }

    /// The image group of the action on a `G`-stable subspace.
    pub fn restrict_to(&self, basis: &[Vec<CyclotomicNumber>]) -> Result<FiniteMatrixGroup, GroupError> {
        if basis.is_empty() {
            return Err(GroupError::HypothesisViolated("cannot restrict to the zero subspace".into()));
        }
        let mats = self.restricted_action(basis);
        let gens: Vec<CycloMatrix> = self.generator_indices().iter().map(|&g| mats[g].clone()).collect();
        FiniteMatrixGroup::generate(&gens, DEFAULT_ORDER_CAP.max(self.order()))
    }

    /// `true` when `span(basis)` is mapped into itself by every generator.
    pub fn is_stable(&self, basis: &[Vec<CyclotomicNumber>]) -> bool {
        let n = self.dim();
        let e = self.conductor();
        let b = CycloMatrix::from_columns(n, basis, e);
        let r = b.rank();
        self.generator_indices().iter().all(|&g| {
            let img = self.element(g) * &b;
            let mut both = basis.to_vec();
            both.extend((0..img.cols()).map(|j| img.column(j)));
            CycloMatrix::from_columns(n, &both, e).rank() == r
        })
    }
}

/// `Σ (d_i - 1)` for a degree list.
pub fn degree_excess(degrees: &[usize]) -> usize {
    degrees.iter().map(|d| d - 1).sum()
}

fn extract_degrees(mut series: Vec<Rational>, n: usize, cutoff: usize) -> Result<Vec<usize>, GroupError> {
    let mut degrees = Vec::with_capacity(n);
    for _ in 0..n {
        let Some(d) = (1..=cutoff).find(|&k| !series[k].is_zero()) else {
            return Err(GroupError::NotReflectionGroup(format!(
                "only {} degrees found below t^{cutoff}",
                degrees.len()
            )));
        };
        if series[d].is_negative() {
            return Err(GroupError::NotReflectionGroup(format!("negative coefficient at t^{d}")));
        }
        for k in (d..=cutoff).rev() {
            let lower = series[k - d].clone();
            series[k] -= lower;
        }
        degrees.push(d);
    }
    if let Some(k) = (1..=cutoff).find(|&k| !series[k].is_zero()) {
        return Err(GroupError::NotReflectionGroup(format!("remainder nonzero at t^{k} after {n} degrees")));
    }
    Ok(degrees)
}
