use crate::cyclo::{CycloMatrix, CyclotomicNumber};

use super::reflections::ReflectionSet;
use super::{FiniteMatrixGroup, GroupError};

#[derive(Clone, Debug)]
pub struct IrreducibleComponent {
    /// Basis of `h_i`, the span of this component's roots.
    pub basis: Vec<Vec<CyclotomicNumber>>,
    /// Element indices of the reflections with roots in `h_i`; they generate `G_i`.
    pub reflections: Vec<usize>,
    /// `G_i` acts irreducibly on `h_i` (checked through the character norm).
    pub irreducible: bool,
}

/// `h = h^G ⊕ h_1 ⊕ … ⊕ h_m`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub fixed_space: Vec<Vec<CyclotomicNumber>>,
    pub components: Vec<IrreducibleComponent>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.basis.len()).collect()
    }
}

impl FiniteMatrixGroup {
    /// `G`-invariant positive Hermitian form `Σ_g g* g` (unnormalized).
    pub fn invariant_hermitian_form(&self) -> CycloMatrix {
        let n = self.dim();
        let mut acc = CycloMatrix::zero(n, n, self.conductor());
        for g in self.elements() {
            acc = &acc + &(&g.adjoint() * g);
        }
        acc
    }

    /// Split `h` into the fixed space and irreducible reflection subgroups.
    ///
    /// Roots are joined when they are not orthogonal for the invariant Hermitian
    /// form; each connected class spans one irreducible summand.
    pub fn decompose_reflection_group(&self, refl: &ReflectionSet) -> Result<Decomposition, GroupError> {
        let n = self.dim();
        let e = self.conductor();
        let form = self.invariant_hermitian_form();
        let k = refl.reflections.len();
        let pairing = |a: &[CyclotomicNumber], b: &[CyclotomicNumber]| {
            let conj_a: Vec<CyclotomicNumber> = a.iter().map(CyclotomicNumber::conj).collect();
            crate::cyclo::dot(&conj_a, &form.apply(b))
        };

        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in 0..k {
            for b in a + 1..k {
                if !pairing(&refl.reflections[a].root, &refl.reflections[b].root).is_zero() {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[rb.max(ra)] = rb.min(ra);
                    }
                }
            }
        }

        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for a in 0..k {
            let r = find(&mut parent, a);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, v)) => v.push(a),
                None => groups.push((r, vec![a])),
            }
        }

        let mut components = Vec::new();
        for (_, members) in groups {
            let roots: Vec<Vec<CyclotomicNumber>> = members.iter().map(|&p| refl.reflections[p].root.clone()).collect();
            let basis = CycloMatrix::from_columns(n, &roots, e).column_space_basis();
            let reflections: Vec<usize> = members.iter().map(|&p| refl.reflections[p].element).collect();
            let sub = self.generated_subgroup(&reflections);
            let gens: Vec<CycloMatrix> = sub.iter().map(|&i| self.element(i).clone()).collect();
            let sub_group = FiniteMatrixGroup::generate(&gens, gens.len().max(1))?;
            let restricted = sub_group.restrict_to(&basis)?;
            let irreducible = restricted.is_irreducible().irreducible;
            components.push(IrreducibleComponent { basis, reflections, irreducible });
        }
        Ok(Decomposition { fixed_space: self.fixed_space(), components })
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::*;
    use super::*;

    fn check_direct_sum(g: &FiniteMatrixGroup, d: &Decomposition) {
        let mut all = d.fixed_space.clone();
        for c in &d.components {
            assert!(g.is_stable(&c.basis));
            assert!(c.irreducible);
            all.extend(c.basis.iter().cloned());
        }
        assert_eq!(all.len(), g.dim());
        assert_eq!(CycloMatrix::from_columns(g.dim(), &all, g.conductor()).rank(), g.dim());
    }

    #[test]
    fn klein_four_splits_into_lines() {
        let g = klein4();
        let d = g.decompose_reflection_group(&g.find_reflections()).unwrap();
        assert_eq!(d.dims(), vec![1, 1]);
        check_direct_sum(&g, &d);
    }

    #[test]
    fn s3_natural_has_fixed_line() {
        let g = s3_perm3();
        let d = g.decompose_reflection_group(&g.find_reflections()).unwrap();
        assert_eq!(d.fixed_space.len(), 1);
        assert_eq!(d.dims(), vec![2]);
        check_direct_sum(&g, &d);
    }

    #[test]
    fn irreducible_inputs_give_one_piece() {
        for g in [s3_refl(), s4_refl(), cyclic(4)] {
            let d = g.decompose_reflection_group(&g.find_reflections()).unwrap();
            assert_eq!(d.components.len(), 1);
            check_direct_sum(&g, &d);
        }
    }

    #[test]
    fn product_of_s3_and_z3() {
        let gens = direct_product_generators(&type_a_reflection_generators(2), &cyclic_generators(3));
        let g = FiniteMatrixGroup::generate(&gens, 100).unwrap();
        assert_eq!(g.order(), 18);
        let d = g.decompose_reflection_group(&g.find_reflections()).unwrap();
        let mut dims = d.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2]);
        check_direct_sum(&g, &d);
    }
}
