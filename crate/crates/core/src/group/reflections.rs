use crate::cyclo::{dot, CycloMatrix, CyclotomicNumber};

use super::FiniteMatrixGroup;

/// A complex reflection `s` together with its root line and reflecting hyperplane.
///
/// `root` is a column vector in `h` spanning `image(s - 1)`; `coroot` is a row
/// (linear form on `h`) whose kernel is the fixed hyperplane, scaled so that
/// `coroot · root = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionData {
    pub element: usize,
    /// Eigenvalue of `s` on the linear form `coroot` under the contragredient action
    /// (the conormal eigenvalue).
    pub eigenvalue: CyclotomicNumber,
    /// Eigenvalue of `s` on `root`; the inverse of `eigenvalue`.
    pub root_eigenvalue: CyclotomicNumber,
    pub root: Vec<CyclotomicNumber>,
    pub coroot: Vec<CyclotomicNumber>,
    pub hyperplane: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ReflectionSet {
    pub reflections: Vec<ReflectionData>,
    /// One canonical linear form per reflecting hyperplane (first nonzero entry 1).
    pub hyperplanes: Vec<Vec<CyclotomicNumber>>,
}

impl ReflectionSet {
    /// `N`, the number of reflections.
    pub fn count(&self) -> usize {
        self.reflections.len()
    }

    /// `N*`, the number of reflecting hyperplanes.
    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn element_indices(&self) -> Vec<usize> {
        self.reflections.iter().map(|r| r.element).collect()
    }

    pub fn by_element(&self, element: usize) -> Option<&ReflectionData> {
        self.reflections.iter().find(|r| r.element == element)
    }
}

fn first_nonzero(v: &[CyclotomicNumber]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Scale a nonzero vector so that its first nonzero entry is 1.
pub(crate) fn canonical_line(v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let k = first_nonzero(v).expect("nonzero vector");
    let inv = v[k].inv().expect("nonzero");
    v.iter().map(|x| x * &inv).collect()
}

fn row_times(row: &[CyclotomicNumber], m: &CycloMatrix) -> Vec<CyclotomicNumber> {
    m.transpose().apply(row)
}

impl FiniteMatrixGroup {
    /// All elements with `rank(g - 1) = 1`, in element order, with deduplicated hyperplanes.
    pub fn find_reflections(&self) -> ReflectionSet {
        let e = self.conductor();
        let id = CycloMatrix::identity(self.dim(), e);
        let mut set = ReflectionSet::default();
        for (i, g) in self.elements().iter().enumerate().skip(1) {
            let m = g - &id;
            if m.rank() != 1 {
                continue;
            }
            let col = (0..m.cols()).find(|&j| m.column(j).iter().any(|x| !x.is_zero())).expect("rank one");
            let root = m.column(col);
            let rowi = (0..m.rows()).find(|&r| m.row(r).iter().any(|x| !x.is_zero())).expect("rank one");
            let form = m.row(rowi).to_vec();
            let pairing = dot(&form, &root);
            let scale = &CyclotomicNumber::from_int(2, e) * &pairing.inv().expect("root off its hyperplane");
            let coroot: Vec<CyclotomicNumber> = form.iter().map(|x| x * &scale).collect();

            let image = g.apply(&root);
            let k = first_nonzero(&root).expect("nonzero root");
            let root_eigenvalue = &image[k] * &root[k].inv().expect("nonzero");
            let eigenvalue = root_eigenvalue.inv().expect("root of unity");

            let key = canonical_line(&coroot);
            let hyperplane = match set.hyperplanes.iter().position(|h| *h == key) {
                Some(p) => p,
                None => {
                    set.hyperplanes.push(key);
                    set.hyperplanes.len() - 1
                }
            };
            set.reflections.push(ReflectionData { element: i, eigenvalue, root_eigenvalue, root, coroot, hyperplane });
        }
        set
    }

    /// `true` if the eigenvalue recorded for the coroot matches `coroot · s^{-1}`.
    pub fn coroot_eigen_consistent(&self, r: &ReflectionData) -> bool {
        let sinv = self.element(self.inverse(r.element));
        let w = row_times(&r.coroot, sinv);
        w.iter().zip(&r.coroot).all(|(a, b)| *a == b * &r.eigenvalue)
    }
}
