use crate::cyclo::{CycloMatrix, CyclotomicNumber};

use super::reflections::ReflectionSet;
use super::FiniteMatrixGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellGeneration {
    pub well_generated: bool,
    /// Element indices of `rank` reflections generating `G`, when one exists.
    pub witness: Option<Vec<usize>>,
    pub subsets_tested: usize,
}

impl FiniteMatrixGroup {
    /// Search for `rank` reflections generating the whole group.
    ///
    /// Partial subsets with linearly dependent roots are pruned (a generating
    /// set of `rank` reflections must have independent roots), and the first
    /// reflection ranges over one representative per conjugacy class.
    pub fn is_well_generated(&self, refl: &ReflectionSet, rank: usize) -> WellGeneration {
        if rank == 0 {
            let ok = self.order() == 1;
            return WellGeneration { well_generated: ok, witness: ok.then(Vec::new), subsets_tested: 0 };
        }
        let n = self.dim();
        let e = self.conductor();
        let classes = self.conjugacy_classes();
        let class_of = self.class_lookup(&classes);
        let mut first_choices = Vec::new();
        let mut seen_class = Vec::new();
        for (pos, r) in refl.reflections.iter().enumerate() {
            let c = class_of[r.element];
            if !seen_class.contains(&c) {
                seen_class.push(c);
                first_choices.push(pos);
            }
        }

        let mut search = Search { group: self, refl, rank, n, e, tested: 0, chosen: Vec::new() };
        for &first in &first_choices {
            search.chosen = vec![first];
            if let Some(w) = search.extend(0) {
                return WellGeneration { well_generated: true, witness: Some(w), subsets_tested: search.tested };
            }
        }
        WellGeneration { well_generated: false, witness: None, subsets_tested: search.tested }
    }
}

struct Search<'a> {
    group: &'a FiniteMatrixGroup,
    refl: &'a ReflectionSet,
    rank: usize,
    n: usize,
    e: u32,
    tested: usize,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn roots_independent(&self) -> bool {
        let roots: Vec<Vec<CyclotomicNumber>> =
            self.chosen.iter().map(|&p| self.refl.reflections[p].root.clone()).collect();
        CycloMatrix::from_columns(self.n, &roots, self.e).rank() == roots.len()
    }

    fn extend(&mut self, start: usize) -> Option<Vec<usize>> {
        if !self.roots_independent() {
            return None;
        }
        if self.chosen.len() == self.rank {
            self.tested += 1;
            let elems: Vec<usize> = self.chosen.iter().map(|&p| self.refl.reflections[p].element).collect();
            return (self.group.generated_subgroup(&elems).len() == self.group.order()).then_some(elems);
        }
        for next in start..self.refl.reflections.len() {
            if self.chosen.contains(&next) {
                continue;
            }
            self.chosen.push(next);
            let found = self.extend(next + 1);
            self.chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::*;

    #[test]
    fn well_generated_examples() {
        for m in 2..7 {
            let g = cyclic(m);
            let w = g.is_well_generated(&g.find_reflections(), 1);
            assert!(w.well_generated);
            assert_eq!(g.generated_subgroup(w.witness.as_ref().unwrap()).len(), m as usize);
        }
        let g = s3_refl();
        let w = g.is_well_generated(&g.find_reflections(), 2);
        assert!(w.well_generated);
        assert_eq!(w.witness.unwrap().len(), 2);
        let g = klein4();
        assert!(g.is_well_generated(&g.find_reflections(), 2).well_generated);
        let g = s4_refl();
        assert!(g.is_well_generated(&g.find_reflections(), 3).well_generated);
    }

    #[test]
    fn non_reflection_group_is_not_well_generated() {
        use crate::cyclo::CycloMatrix;
        let gens = [
            CycloMatrix::from_ints(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 1),
            CycloMatrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]], 1),
        ];
        let g = super::FiniteMatrixGroup::generate(&gens, 10).unwrap();
        let r = g.find_reflections();
        assert_eq!(r.count(), 1);
        assert!(!g.is_well_generated(&r, 1).well_generated);
    }
}
