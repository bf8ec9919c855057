use super::FiniteMatrixGroup;

/// A conjugacy class, represented by its smallest element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl FiniteMatrixGroup {
    /// Conjugacy classes ordered by minimal member index.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = true;
            }
            classes.push(ConjugacyClass { representative: x, centralizer_order: n / members.len(), members });
        }
        classes
    }

    /// `class_of[i]` is the position of element `i`'s class in `classes`.
    pub fn class_lookup(&self, classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.order()];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                out[m] = ci;
            }
        }
        out
    }

    /// `{g : g x = x g}`.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }
}
