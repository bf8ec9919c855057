use crate::cyclo::CyclotomicNumber;
use crate::group::{FiniteMatrixGroup, GroupError};

/// Fixed-space data of one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFixedData {
    pub representative: usize,
    pub size: usize,
    /// `m_g = dim ker(g - 1)` on `h`.
    pub fixed_dim: usize,
    /// `l_g = n - m_g`.
    pub codim: usize,
}

/// Counts `a_j = #{classes : dim (h ⊕ h*)^g = j}` for `j = 0..=2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub n: usize,
    pub classes: Vec<ClassFixedData>,
    pub a: Vec<usize>,
}

impl HomologyProfile {
    /// `dim HH_j` for `j = 0..=2n`; equal to `a_j`.
    pub fn hochschild_dims(&self) -> &[usize] {
        &self.a
    }

    /// `dim HH^j = a_{2n-j}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.a.iter().rev().copied().collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn a0(&self) -> usize {
        self.a[0]
    }
}

pub fn hochschild_profile(group: &FiniteMatrixGroup) -> HomologyProfile {
    let n = group.dim();
    let one = CyclotomicNumber::one(group.conductor());
    let classes: Vec<ClassFixedData> = group
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let fixed_dim = group.eigenspace(c.representative, &one).len();
            ClassFixedData { representative: c.representative, size: c.size(), fixed_dim, codim: n - fixed_dim }
        })
        .collect();
    let mut a = vec![0usize; 2 * n + 1];
    for c in &classes {
        a[2 * c.fixed_dim] += 1;
    }
    HomologyProfile { n, classes, a }
}

/// `dim HH_m` of the rank-`l` stratum algebra inside an `n`-dimensional ambient space:
/// the profile of `H` (acting on `C^l`, `l = base.n`) shifted up by `2n - 2l`.
pub fn shifted_profile(base: &HomologyProfile, n: usize) -> Result<Vec<usize>, GroupError> {
    let l = base.n;
    if l > n {
        return Err(GroupError::HypothesisViolated(format!("stratum rank {l} exceeds ambient dimension {n}")));
    }
    let shift = 2 * n - 2 * l;
    let mut out = vec![0usize; 2 * n + 1];
    for (j, &v) in base.a.iter().enumerate() {
        out[j + shift] = v;
    }
    Ok(out)
}

impl HomologyProfile {
    /// Profile of the trivial group acting on the zero space (`l = 0`).
    pub fn point() -> Self {
        let classes = vec![ClassFixedData { representative: 0, size: 1, fixed_dim: 0, codim: 0 }];
        Self { n: 0, classes, a: vec![1] }
    }
}

/// Convolution of two `a`-profiles (profile of a block-diagonal product).
pub fn convolve_profiles(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Outcome of the `dim HH_0 >= 1` check for well-generated groups with `h^G = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceBoundReport {
    pub hg_zero: bool,
    pub well_generated: bool,
    /// Product of Coxeter elements of the irreducible factors (an element index).
    pub witness: Option<usize>,
    pub a0: usize,
    pub bound_holds: bool,
    pub failed_hypothesis: Option<String>,
}

pub fn trace_space_lower_bound(group: &FiniteMatrixGroup) -> Result<TraceBoundReport, GroupError> {
    let profile = hochschild_profile(group);
    let a0 = profile.a0();
    let refl = group.find_reflections();
    let support = group.support_and_rank(&refl);
    let hg_zero = support.fixed_space.is_empty();
    let wg = group.is_well_generated(&refl, support.rank);
    let mut report = TraceBoundReport {
        hg_zero,
        well_generated: wg.well_generated,
        witness: None,
        a0,
        bound_holds: a0 >= 1,
        failed_hypothesis: None,
    };
    if !hg_zero {
        report.failed_hypothesis = Some(format!("h^G has dimension {}", support.fixed_space.len()));
        return Ok(report);
    }
    if !wg.well_generated {
        report.failed_hypothesis = Some("group is not well-generated".into());
        return Ok(report);
    }

    let decomposition = group.decompose_reflection_group(&refl)?;
    let mut c = group.identity_index();
    for comp in &decomposition.components {
        let sub_elems = group.generated_subgroup(&comp.reflections);
        let gens: Vec<_> = sub_elems.iter().map(|&i| group.element(i).clone()).collect();
        let sub = FiniteMatrixGroup::generate(&gens, gens.len())?;
        let sub_refl = sub.find_reflections();
        let ci = sub.find_coxeter_element(&sub_refl)?;
        let idx = group.index_of(sub.element(ci.element)).expect("subgroup element lies in G");
        c = group.mul(c, idx);
    }
    let fixed = group.eigenspace(c, &CyclotomicNumber::one(group.conductor()));
    if !fixed.is_empty() {
        return Err(GroupError::CoxeterElementMissing);
    }
    report.witness = Some(c);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;

    #[test]
    fn profiles_of_small_groups() {
        let t = hochschild_profile(&trivial(3));
        assert_eq!(t.a, vec![0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(hochschild_profile(&z2()).a, vec![1, 0, 1]);
        assert_eq!(hochschild_profile(&s3_refl()).a, vec![1, 0, 1, 0, 1]);
        assert_eq!(hochschild_profile(&cyclic(5)).a, vec![4, 0, 1]);
        assert_eq!(hochschild_profile(&s3_perm3()).a, vec![0, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn shifted_examples() {
        let z = hochschild_profile(&z2());
        assert_eq!(shifted_profile(&z, 1).unwrap(), z.a);
        assert_eq!(shifted_profile(&z, 2).unwrap(), vec![0, 0, 1, 0, 1]);
        assert!(shifted_profile(&hochschild_profile(&s3_refl()), 1).is_err());
    }

    #[test]
    fn trivial_stratum_profile_sits_at_top() {
        for n in 0..4 {
            let out = shifted_profile(&HomologyProfile::point(), n).unwrap();
            let mut want = vec![0; 2 * n + 1];
            want[2 * n] = 1;
            assert_eq!(out, want);
        }
    }

    #[test]
    fn kunneth_on_klein_four() {
        let k = hochschild_profile(&klein4());
        let z = hochschild_profile(&z2());
        assert_eq!(k.a, convolve_profiles(&z.a, &z.a));
    }

    #[test]
    fn trace_bound_examples() {
        let r = trace_space_lower_bound(&cyclic(5)).unwrap();
        assert!(r.bound_holds && r.witness.is_some());
        assert_eq!(r.a0, 4);
        let g = s3_refl();
        let r = trace_space_lower_bound(&g).unwrap();
        assert_eq!(r.a0, 1);
        assert_eq!(g.element_order(r.witness.unwrap()), 3);
        let r = trace_space_lower_bound(&s3_perm3()).unwrap();
        assert!(!r.hg_zero && r.failed_hypothesis.is_some());
        assert_eq!(r.a0, 0);
        let r = trace_space_lower_bound(&klein4()).unwrap();
        assert!(r.bound_holds);
        assert_eq!(klein4().element(r.witness.unwrap()), &crate::cyclo::CycloMatrix::from_ints(&[&[-1, 0], &[0, -1]], 2));
    }
}
