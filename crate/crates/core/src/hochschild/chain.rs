use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cyclo::Rational;
use crate::group::FiniteMatrixGroup;

use super::algebra::{rational_rank, Element, StructureConstantAlgebra};
use super::HochschildError;

/// A Hochschild `p`-chain `Σ c · a_0 ⊗ … ⊗ a_p` on basis indices.
#[derive(Clone, PartialEq, Eq)]
pub struct HochschildChain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
    normalized: bool,
}

impl HochschildChain {
    pub fn zero(degree: usize, normalized: bool) -> Self {
        Self { degree, terms: BTreeMap::new(), normalized }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tensor: Vec<usize>, c: Rational) {
        assert_eq!(tensor.len(), self.degree + 1, "tensor length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(tensor.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&tensor);
        }
    }

    /// Pass to the normalized complex: drop tensors with the unit in a position `≥ 1`.
    pub fn normalize(&self, unit: usize) -> Self {
        let terms = self.terms.iter().filter(|(t, _)| !t[1..].contains(&unit)).map(|(t, c)| (t.clone(), c.clone())).collect();
        Self { degree: self.degree, terms, normalized: true }
    }

    pub fn display<'a>(&'a self, alg: &'a StructureConstantAlgebra) -> ChainDisplay<'a> {
        ChainDisplay { chain: self, alg }
    }
}

impl fmt::Debug for HochschildChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}{}{:?}", self.degree, if self.normalized { "n" } else { "" }, self.terms)
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a HochschildChain,
    alg: &'a StructureConstantAlgebra,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .chain
            .terms
            .iter()
            .map(|(t, c)| {
                let tensor: Vec<&str> = t.iter().map(|&i| self.alg.label(i)).collect();
                format!("{c}*{}", tensor.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `b(a_0⊗…⊗a_p) = Σ_{i<p} (-1)^i …⊗a_i a_{i+1}⊗… + (-1)^p a_p a_0⊗…⊗a_{p-1}`.
///
/// Degree-0 chains have zero boundary. A normalized input yields a normalized output.
pub fn hochschild_boundary(ch: &HochschildChain, alg: &StructureConstantAlgebra) -> Result<HochschildChain, HochschildError> {
    let p = ch.degree;
    if p == 0 {
        return Ok(HochschildChain::zero(0, ch.normalized));
    }
    let mut out = HochschildChain::zero(p - 1, false);
    let product = |i: usize, j: usize| -> Result<&Element, HochschildError> {
        alg.basis_product(i, j).ok_or_else(|| HochschildError::Overflow(alg.label(i).to_string(), alg.label(j).to_string()))
    };
    for (t, c) in &ch.terms {
        for i in 0..p {
            let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
            for (k, ck) in product(t[i], t[i + 1])? {
                let mut nt = Vec::with_capacity(p);
                nt.extend_from_slice(&t[..i]);
                nt.push(*k);
                nt.extend_from_slice(&t[i + 2..]);
                out.add_term(nt, &sign * ck);
            }
        }
        let sign = if p.is_multiple_of(2) { c.clone() } else { -c.clone() };
        for (k, ck) in product(t[p], t[0])? {
            let mut nt = Vec::with_capacity(p);
            nt.push(*k);
            nt.extend_from_slice(&t[1..p]);
            out.add_term(nt, &sign * ck);
        }
    }
    Ok(if ch.normalized { out.normalize(alg.unit()) } else { out })
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each swap flips the sign.
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    out.push((a.clone(), even));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `Σ_{σ ∈ S_{2k}} ε(σ) · 1 ⊗ u_{σ(1)} ⊗ … ⊗ u_{σ(2k)}` with `u_{2i-1} = ∂_i`, `u_{2i} = x_i`.
///
/// `signed = false` gives the variant with every `ε(σ) = 1`.
pub fn fundamental_cycle(
    weyl: &super::algebra::CappedWeyl,
    k: usize,
    signed: bool,
) -> Result<HochschildChain, HochschildError> {
    if k > weyl.generators {
        return Err(HochschildError::Malformed(format!("cycle needs {k} generators, algebra has {}", weyl.generators)));
    }
    let unit = weyl.algebra.unit();
    let u: Vec<usize> = (0..k).flat_map(|i| [weyl.d(i), weyl.x(i)]).collect();
    let mut chain = HochschildChain::zero(2 * k, false);
    for (perm, even) in permutations(2 * k) {
        let mut t = Vec::with_capacity(2 * k + 1);
        t.push(unit);
        t.extend(perm.iter().map(|&p| u[p]));
        let c = if even || !signed { Rational::one() } else { -Rational::one() };
        chain.add_term(t, c);
    }
    Ok(chain)
}

/// `dim Q[G]/[Q[G], Q[G]]`, by exact rank of `span{gh - hg}`.
pub fn group_algebra_hh0(group: &FiniteMatrixGroup, cap: usize) -> Result<usize, HochschildError> {
    let n = group.order();
    if n > cap {
        return Err(HochschildError::CapExceeded { cap, order: n });
    }
    let mut rows: Vec<Element> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for g in 0..n {
        for h in g + 1..n {
            let (a, b) = (group.mul(g, h), group.mul(h, g));
            if a != b && seen.insert((a.min(b), a.max(b))) {
                rows.push(Element::from([(a, Rational::one()), (b, -Rational::one())]));
            }
        }
    }
    Ok(n - rational_rank(&rows, n))
}

#[cfg(test)]
mod tests {
    use super::super::algebra::CappedWeyl;
    use super::*;
    use crate::group::catalog::*;

    #[test]
    fn degree_one_boundary_is_commutator() {
        let a = StructureConstantAlgebra::matrix_algebra(2);
        let (e12, e21) = (a.index_of("E12").unwrap(), a.index_of("E21").unwrap());
        let mut ch = HochschildChain::zero(1, false);
        ch.add_term(vec![e12, e21], Rational::one());
        let b = hochschild_boundary(&ch, &a).unwrap();
        // E12 E21 - E21 E12 = E11 - E22 = 2 E11 - 1 in this basis.
        let e11 = a.index_of("E11").unwrap();
        let mut want = HochschildChain::zero(0, false);
        want.add_term(vec![e11], Rational::from_integer(2.into()));
        want.add_term(vec![a.unit()], -Rational::one());
        assert_eq!(b, want);
    }

    #[test]
    fn weyl_cycle_k1() {
        let w = CappedWeyl::new(1, 2).unwrap();
        let c = fundamental_cycle(&w, 1, true).unwrap();
        assert_eq!(c.len(), 2);
        let b = hochschild_boundary(&c, &w.algebra).unwrap();
        let mut want = HochschildChain::zero(1, false);
        want.add_term(vec![w.algebra.unit(), w.algebra.unit()], -Rational::one());
        assert_eq!(b, want);
        assert!(hochschild_boundary(&c.normalize(w.algebra.unit()), &w.algebra).unwrap().is_zero());
        let unsigned = fundamental_cycle(&w, 1, false).unwrap().normalize(w.algebra.unit());
        assert!(!hochschild_boundary(&unsigned, &w.algebra).unwrap().is_zero());
    }

    #[test]
    fn weyl_cycle_k2_and_k0() {
        let w = CappedWeyl::new(2, 2).unwrap();
        let c = fundamental_cycle(&w, 2, true).unwrap();
        assert_eq!(c.len(), 24);
        assert!(hochschild_boundary(&c.normalize(w.algebra.unit()), &w.algebra).unwrap().is_zero());
        let c0 = fundamental_cycle(&w, 0, true).unwrap();
        assert_eq!(c0.degree(), 0);
        assert!(hochschild_boundary(&c0, &w.algebra).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_reported() {
        let w = CappedWeyl::new(1, 1).unwrap();
        let mut ch = HochschildChain::zero(1, false);
        ch.add_term(vec![w.d(0), w.x(0)], Rational::one());
        assert!(matches!(hochschild_boundary(&ch, &w.algebra), Err(HochschildError::Overflow(..))));
    }

    #[test]
    fn normalization_is_idempotent() {
        let w = CappedWeyl::new(1, 2).unwrap();
        let c = fundamental_cycle(&w, 1, true).unwrap();
        let b = hochschild_boundary(&c, &w.algebra).unwrap();
        let n1 = b.normalize(w.algebra.unit());
        assert!(n1.is_zero());
        assert_eq!(n1.normalize(w.algebra.unit()), n1);
    }

    #[test]
    fn class_counts() {
        assert_eq!(group_algebra_hh0(&z2(), 100).unwrap(), 2);
        assert_eq!(group_algebra_hh0(&s3_refl(), 100).unwrap(), 3);
        assert_eq!(group_algebra_hh0(&s4_refl(), 100).unwrap(), 5);
        assert!(matches!(group_algebra_hh0(&s4_refl(), 10), Err(HochschildError::CapExceeded { .. })));
    }
}
