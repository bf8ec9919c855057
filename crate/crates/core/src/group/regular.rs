use crate::cyclo::{dot, lcm, CycloMatrix, CyclotomicNumber};

use super::reflections::ReflectionSet;
use super::{FiniteMatrixGroup, GroupError};

/// A `ζ`-regular element: an eigenvector for `ζ` avoiding every reflecting hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularElement {
    pub element: usize,
    pub eigenvector: Vec<CyclotomicNumber>,
}

impl FiniteMatrixGroup {
    /// Rewrite a root of unity from any cyclotomic field into this group's field.
    ///
    /// Returns `None` when `ζ` is not a root of unity or its order does not
    /// divide the conductor (then no element can have it as an eigenvalue).
    pub fn coerce_root_of_unity(&self, zeta: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        let e = self.conductor();
        if zeta.conductor() == e {
            return zeta.root_order().map(|_| zeta.clone());
        }
        let m = zeta.root_order()?;
        if !e.is_multiple_of(m) {
            return None;
        }
        let big = lcm(e, zeta.conductor());
        let target = zeta.embed(big);
        (0..m as i64)
            .map(|k| CyclotomicNumber::root_of_unity(m, k, e).expect("m divides e"))
            .find(|cand| cand.embed(big) == target)
    }

    /// Eigenspace basis of element `i` for eigenvalue `lambda`.
    pub fn eigenspace(&self, i: usize, lambda: &CyclotomicNumber) -> Vec<Vec<CyclotomicNumber>> {
        let n = self.dim();
        let m = self.element(i) - &CycloMatrix::identity(n, self.conductor()).scale(lambda);
        m.kernel_basis()
    }

    /// First element (by index) with a `ζ`-eigenvector off every reflecting hyperplane.
    pub fn find_regular_element(&self, refl: &ReflectionSet, zeta: &CyclotomicNumber) -> Option<RegularElement> {
        let zeta = self.coerce_root_of_unity(zeta)?;
        (0..self.order()).find_map(|i| {
            let space = self.eigenspace(i, &zeta);
            if space.is_empty() {
                return None;
            }
            let avoids_all = refl
                .hyperplanes
                .iter()
                .all(|form| space.iter().any(|v| !dot(form, v).is_zero()));
            if !avoids_all {
                return None;
            }
            let eigenvector = regular_witness(&space, &refl.hyperplanes);
            Some(RegularElement { element: i, eigenvector })
        })
    }

    /// A `ζ_h`-regular element for an irreducible well-generated reflection group.
    pub fn find_coxeter_element(&self, refl: &ReflectionSet) -> Result<RegularElement, GroupError> {
        let support = self.support_and_rank(refl);
        if !support.generated_by_reflections {
            return Err(GroupError::HypothesisViolated("group is not generated by reflections".into()));
        }
        let decomposition = self.decompose_reflection_group(refl)?;
        if decomposition.components.len() != 1 {
            return Err(GroupError::HypothesisViolated(format!(
                "group has {} irreducible components",
                decomposition.components.len()
            )));
        }
        if !self.is_well_generated(refl, support.rank).well_generated {
            return Err(GroupError::HypothesisViolated("group is not well-generated".into()));
        }
        let h = self.coxeter_number(refl, support.rank)?;
        let zeta_h = CyclotomicNumber::root_of_unity(h as u32, 1, self.conductor())
            .ok_or(GroupError::CoxeterElementMissing)?;
        let found = self.find_regular_element(refl, &zeta_h).ok_or(GroupError::CoxeterElementMissing)?;
        // no eigenvalue 1 on the support: the fixed space of c is exactly h^G
        let fixed = self.eigenspace(found.element, &CyclotomicNumber::one(self.conductor()));
        if fixed.len() != support.fixed_space.len() {
            return Err(GroupError::CoxeterElementMissing);
        }
        Ok(found)
    }
}

/// Deterministic vector `Σ_j k^j v_j` (k = 1, 2, …) with every form nonzero on it.
///
/// Each form vanishes on a proper subspace of the span, and a polynomial in `k`
/// of degree `< dim` has finitely many roots, so the search terminates.
pub fn regular_witness(
    basis: &[Vec<CyclotomicNumber>],
    forms: &[Vec<CyclotomicNumber>],
) -> Vec<CyclotomicNumber> {
    let e = basis[0][0].conductor();
    for k in 1i64.. {
        let mut v = vec![CyclotomicNumber::zero(e); basis[0].len()];
        let mut coef = CyclotomicNumber::one(e);
        let kk = CyclotomicNumber::from_int(k, e);
        for b in basis {
            for (slot, x) in v.iter_mut().zip(b) {
                *slot += &(&coef * x);
            }
            coef = &coef * &kk;
        }
        if forms.iter().all(|f| !dot(f, &v).is_zero()) {
            return v;
        }
    }
    unreachable!("witness search always terminates")
}

#[cfg(test)]
mod tests {
    use super::super::catalog::*;
    use super::*;

    #[test]
    fn cyclic_generator_is_regular() {
        for m in 2..8u32 {
            let g = cyclic(m);
            let r = g.find_reflections();
            let zeta = CyclotomicNumber::zeta_pow(1, m);
            let found = g.find_regular_element(&r, &zeta).unwrap();
            assert_eq!(g.element(found.element).get(0, 0), &zeta);
            let c = g.find_coxeter_element(&r).unwrap();
            assert_eq!(g.element_order(c.element), m as usize);
        }
    }

    #[test]
    fn s3_three_cycle_is_coxeter() {
        let g = s3_refl();
        let r = g.find_reflections();
        let zeta3 = CyclotomicNumber::zeta_pow(1, 3);
        let found = g.find_regular_element(&r, &zeta3).unwrap();
        assert_eq!(g.element_order(found.element), 3);
        let c = g.find_coxeter_element(&r).unwrap();
        assert_eq!(g.element_order(c.element), 3);
        let z5 = CyclotomicNumber::zeta_pow(1, 5);
        assert!(g.find_regular_element(&r, &z5).is_none());
    }

    #[test]
    fn s4_coxeter_is_four_cycle() {
        let g = s4_refl();
        let r = g.find_reflections();
        let c = g.find_coxeter_element(&r).unwrap();
        assert_eq!(g.element_order(c.element), 4);
        assert!(g.eigenspace(c.element, &CyclotomicNumber::one(g.conductor())).is_empty());
    }

    #[test]
    fn reducible_input_violates_hypothesis() {
        let g = klein4();
        assert!(matches!(g.find_coxeter_element(&g.find_reflections()), Err(GroupError::HypothesisViolated(_))));
    }
}
