use crate::cyclo::{CyclotomicNumber, Rational};

use super::{FiniteMatrixGroup, GroupError};

/// Summary of the reflection structure of a group.
#[derive(Clone, Debug)]
pub struct GroupReport {
    pub dim: usize,
    pub conductor: u32,
    pub order: usize,
    pub class_count: usize,
    /// `N`
    pub reflections: usize,
    /// `N*`
    pub hyperplanes: usize,
    pub rank: usize,
    pub fixed_dim: usize,
    pub support: Vec<Vec<CyclotomicNumber>>,
    pub generated_by_reflections: bool,
    pub irreducible: bool,
    pub character_norm: Rational,
    pub component_dims: Vec<usize>,
    pub degrees: Result<Vec<usize>, GroupError>,
    /// Present when the group is irreducible on its support.
    pub coxeter_number: Option<Result<usize, GroupError>>,
    pub well_generated: bool,
    pub well_generated_witness: Option<Vec<usize>>,
    pub coxeter_element: Option<Result<usize, GroupError>>,
}

impl FiniteMatrixGroup {
    pub fn report(&self) -> Result<GroupReport, GroupError> {
        let refl = self.find_reflections();
        let support = self.support_and_rank(&refl);
        let irr = self.is_irreducible();
        let decomposition = self.decompose_reflection_group(&refl)?;
        let wg = self.is_well_generated(&refl, support.rank);
        let single = support.generated_by_reflections && decomposition.components.len() == 1;
        let coxeter_number = single.then(|| self.coxeter_number(&refl, support.rank));
        let coxeter_element = (single && wg.well_generated).then(|| self.find_coxeter_element(&refl).map(|c| c.element));
        Ok(GroupReport {
            dim: self.dim(),
            conductor: self.conductor(),
            order: self.order(),
            class_count: self.conjugacy_classes().len(),
            reflections: refl.count(),
            hyperplanes: refl.hyperplane_count(),
            rank: support.rank,
            fixed_dim: support.fixed_space.len(),
            support: support.support,
            generated_by_reflections: support.generated_by_reflections,
            irreducible: irr.irreducible,
            character_norm: irr.character_norm,
            component_dims: decomposition.dims(),
            degrees: self.molien_degrees(&refl),
            coxeter_number,
            well_generated: wg.well_generated,
            well_generated_witness: wg.witness,
            coxeter_element,
        })
    }
}
