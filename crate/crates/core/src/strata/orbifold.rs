//! Fixed-point descriptors of a finite group action and the hypercohomology /
//! Euler characteristic data they determine.

use num_traits::Zero;

use crate::cyclo::{int, Rational};
use crate::group::FiniteMatrixGroup;

use super::profile::hochschild_profile;
use super::StrataError;

/// One connected component `X_i^g` of a fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// Complex codimension `l` in `X`.
    pub codim: usize,
    /// Centralizer-invariant Betti numbers `b_0..b_{2(n-l)}`; missing tail entries are zero.
    pub betti: Vec<u64>,
}

impl FixedComponent {
    pub fn betti_at(&self, k: usize) -> u64 {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    /// Element index of the class representative in the group.
    pub representative: usize,
    pub components: Vec<FixedComponent>,
}

/// Per-conjugacy-class fixed-point data of `G` acting on a complex `n`-fold `X`.
///
/// Entries are per class: the `G`-orbit of components over a class collapses
/// onto its representative. Classes without an entry have empty fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldDescriptor {
    pub ambient_dim: usize,
    pub classes: Vec<ClassEntry>,
}

/// Descriptor entry resolved against the group's classes.
struct ResolvedEntry<'a> {
    class_size: usize,
    components: &'a [FixedComponent],
}

impl OrbifoldDescriptor {
    /// The linear action on `h` itself: one contractible component of codimension `l_g` per class.
    pub fn linear(group: &FiniteMatrixGroup) -> Self {
        let profile = hochschild_profile(group);
        let n = group.dim();
        let classes = profile
            .classes
            .iter()
            .map(|c| {
                let mut betti = vec![0u64; 2 * (n - c.codim) + 1];
                betti[0] = 1;
                ClassEntry { representative: c.representative, components: vec![FixedComponent { codim: c.codim, betti }] }
            })
            .collect();
        Self { ambient_dim: n, classes }
    }

    fn resolve<'a>(&'a self, group: &FiniteMatrixGroup) -> Result<Vec<ResolvedEntry<'a>>, StrataError> {
        let n = self.ambient_dim;
        let classes = group.conjugacy_classes();
        let lookup = group.class_lookup(&classes);
        let mut used = vec![false; classes.len()];
        let mut out = Vec::with_capacity(self.classes.len());
        let mut identity_ok = false;
        for entry in &self.classes {
            if entry.representative >= group.order() {
                return Err(StrataError::MalformedDescriptor(format!(
                    "class representative {} out of range (|G| = {})",
                    entry.representative,
                    group.order()
                )));
            }
            let ci = lookup[entry.representative];
            if std::mem::replace(&mut used[ci], true) {
                return Err(StrataError::MalformedDescriptor(format!(
                    "conjugacy class of element {} listed twice",
                    entry.representative
                )));
            }
            for comp in &entry.components {
                if comp.codim > n {
                    return Err(StrataError::MalformedDescriptor(format!(
                        "component codimension {} exceeds ambient dimension {n}",
                        comp.codim
                    )));
                }
                let top = 2 * (n - comp.codim);
                if comp.betti.is_empty() || comp.betti.len() > top + 1 {
                    return Err(StrataError::MalformedDescriptor(format!(
                        "component of codimension {} needs 1..={} Betti numbers, got {}",
                        comp.codim,
                        top + 1,
                        comp.betti.len()
                    )));
                }
            }
            if ci == lookup[group.identity_index()] && entry.components.iter().any(|c| c.codim == 0) {
                identity_ok = true;
            }
            out.push(ResolvedEntry { class_size: classes[ci].size(), components: &entry.components });
        }
        if !identity_ok {
            return Err(StrataError::MalformedDescriptor(
                "identity class needs at least one codimension-0 component".into(),
            ));
        }
        Ok(out)
    }
}

/// `dim H^{-k}` for `k = 0..=2n` and the matching Chen–Ruan dimensions.
///
/// Degree convention: a component of codimension `l` contributes `b_{2n-2l-k}`
/// to `H^{-k}`, and `H_CR^{2n-k}` carries the same number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercohomologyTable {
    pub n: usize,
    /// `hyper[k] = dim H^{-k}`.
    pub hyper: Vec<u64>,
    /// `chen_ruan[j] = dim H_CR^j`.
    pub chen_ruan: Vec<u64>,
}

pub const DEGREE_CONVENTION: &str = "2n-2l-k reindexing (Chen-Ruan degree 2n-k)";

pub fn orbifold_hypercohomology(
    d: &OrbifoldDescriptor,
    group: &FiniteMatrixGroup,
) -> Result<HypercohomologyTable, StrataError> {
    let entries = d.resolve(group)?;
    let n = d.ambient_dim;
    let mut hyper = vec![0u64; 2 * n + 1];
    for entry in &entries {
        for comp in entry.components {
            let top = 2 * (n - comp.codim);
            for (k, slot) in hyper.iter_mut().enumerate().take(top + 1) {
                *slot += comp.betti_at(top - k);
            }
        }
    }
    let chen_ruan = hyper.iter().rev().copied().collect();
    Ok(HypercohomologyTable { n, hyper, chen_ruan })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `(1/|G|) Σ_g Σ_i χ(X_i^g)`, class entries weighted by class size.
    pub chi_top: Rational,
    /// `Σ_k (-1)^k dim H^{-k}`.
    pub chi_hh: i64,
    pub group_order: usize,
    pub identity_check: bool,
}

/// Both Euler characteristics, without judging the identity.
pub fn euler_report(d: &OrbifoldDescriptor, group: &FiniteMatrixGroup) -> Result<EulerReport, StrataError> {
    let entries = d.resolve(group)?;
    let table = orbifold_hypercohomology(d, group)?;
    let mut total = Rational::zero();
    for entry in &entries {
        for comp in entry.components {
            total += int(entry.class_size as i64 * comp.euler());
        }
    }
    let order = group.order();
    let chi_top = total / int(order as i64);
    let chi_hh: i64 = table
        .hyper
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum();
    let identity_check = int(chi_hh) == &chi_top * int(order as i64);
    Ok(EulerReport { chi_top, chi_hh, group_order: order, identity_check })
}

/// Euler characteristics with the identity `chi_hh = |G| chi_top` enforced.
pub fn euler_characteristics(d: &OrbifoldDescriptor, group: &FiniteMatrixGroup) -> Result<EulerReport, StrataError> {
    let report = euler_report(d, group)?;
    if !report.identity_check {
        return Err(StrataError::IdentityViolation {
            chi_hh: report.chi_hh,
            scaled_chi_top: (&report.chi_top * int(report.group_order as i64)).to_string(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;

    fn comp(codim: usize, betti: &[u64]) -> FixedComponent {
        FixedComponent { codim, betti: betti.to_vec() }
    }

    #[test]
    fn sphere_with_trivial_group() {
        let g = trivial(1);
        let d = OrbifoldDescriptor { ambient_dim: 1, classes: vec![ClassEntry { representative: 0, components: vec![comp(0, &[1, 0, 1])] }] };
        let t = orbifold_hypercohomology(&d, &g).unwrap();
        assert_eq!(t.hyper, vec![1, 0, 1]);
        let e = euler_characteristics(&d, &g).unwrap();
        assert_eq!((e.chi_top.clone(), e.chi_hh), (int(2), 2));
        assert!(e.identity_check);
    }

    #[test]
    fn z2_linear_descriptor() {
        let g = z2();
        let d = OrbifoldDescriptor {
            ambient_dim: 1,
            classes: vec![
                ClassEntry { representative: 0, components: vec![comp(0, &[1, 0, 0])] },
                ClassEntry { representative: 1, components: vec![comp(1, &[1])] },
            ],
        };
        assert_eq!(d, OrbifoldDescriptor::linear(&g));
        let t = orbifold_hypercohomology(&d, &g).unwrap();
        assert_eq!(t.hyper, vec![1, 0, 1]);
        assert_eq!(t.chen_ruan, vec![1, 0, 1]);
        let e = euler_characteristics(&d, &g).unwrap();
        assert_eq!((e.chi_top, e.chi_hh), (int(1), 2));
    }

    #[test]
    fn identity_only_descriptor() {
        let g = z2();
        let d = OrbifoldDescriptor { ambient_dim: 1, classes: vec![ClassEntry { representative: 0, components: vec![comp(0, &[1, 0, 1])] }] };
        assert_eq!(orbifold_hypercohomology(&d, &g).unwrap().hyper, vec![1, 0, 1]);
    }

    #[test]
    fn malformed_descriptors() {
        let g = z2();
        let no_identity = OrbifoldDescriptor { ambient_dim: 1, classes: vec![ClassEntry { representative: 1, components: vec![comp(1, &[1])] }] };
        assert!(matches!(orbifold_hypercohomology(&no_identity, &g), Err(StrataError::MalformedDescriptor(_))));
        let too_many = OrbifoldDescriptor { ambient_dim: 1, classes: vec![ClassEntry { representative: 0, components: vec![comp(0, &[1, 0, 0, 1])] }] };
        assert!(orbifold_hypercohomology(&too_many, &g).is_err());
        let dup = OrbifoldDescriptor {
            ambient_dim: 1,
            classes: vec![
                ClassEntry { representative: 0, components: vec![comp(0, &[1])] },
                ClassEntry { representative: 0, components: vec![comp(0, &[1])] },
            ],
        };
        assert!(orbifold_hypercohomology(&dup, &g).is_err());
    }

    #[test]
    fn nonabelian_linear_descriptor_breaks_the_identity() {
        // Per-class hypercohomology counts classes (3) while |G|·χ(X/G) counts elements (6).
        let g = s3_refl();
        let d = OrbifoldDescriptor::linear(&g);
        let r = euler_report(&d, &g).unwrap();
        assert_eq!((r.chi_hh, r.chi_top.clone()), (3, int(1)));
        assert!(matches!(euler_characteristics(&d, &g), Err(StrataError::IdentityViolation { chi_hh: 3, .. })));
    }
}
