use crate::cyclo::{CycloMatrix, CyclotomicNumber};

use super::poly::{MonomialBasis, Poly};

/// Number of monomials of degree `≤ k` in `n` variables.
pub fn count_upto(n: usize, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let k = k as u128;
    let mut c: u128 = 1;
    for i in 1..=n as u128 {
        c = c * (k + i) / i;
    }
    c as usize
}

/// A linear map `C[h]_{≤domain} → C[h]_{≤codomain}` stored on the graded monomial basis.
///
/// `shift` bounds the degree change: images of degree-`k` inputs lie in degree
/// `≤ k + shift`. Columns cover exactly the inputs on which the map is honest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    vars: usize,
    matrix: CycloMatrix,
    domain_degree: i64,
    codomain_degree: i64,
    shift: i64,
}

impl LinearOperator {
    pub fn new(vars: usize, matrix: CycloMatrix, domain_degree: i64, codomain_degree: i64, shift: i64) -> Self {
        assert_eq!(matrix.cols(), count_upto(vars, domain_degree), "column count");
        assert_eq!(matrix.rows(), count_upto(vars, codomain_degree), "row count");
        Self { vars, matrix, domain_degree, codomain_degree, shift }
    }

    /// Tabulate `f` on every basis monomial of degree `≤ domain_degree`.
    ///
    /// Images must have degree `≤ domain + shift`; a larger image is reported as an error.
    pub fn from_fn<E>(
        basis: &MonomialBasis,
        conductor: u32,
        domain_degree: i64,
        shift: i64,
        mut f: impl FnMut(&Poly) -> Result<Poly, E>,
        too_big: impl Fn(usize) -> E,
    ) -> Result<Self, E> {
        let n = basis.vars();
        let codomain = (domain_degree + shift).max(-1);
        let cols = count_upto(n, domain_degree);
        let rows = count_upto(n, codomain);
        let mut m = CycloMatrix::zero(rows, cols, conductor);
        for j in 0..cols {
            let input = Poly::monomial(basis.monomials()[j].clone(), CyclotomicNumber::one(conductor));
            let image = f(&input)?;
            let v = image.to_vector(basis, rows).ok_or_else(|| too_big(j))?;
            for (i, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        Ok(Self::new(n, m, domain_degree, codomain, shift))
    }

    pub fn identity(vars: usize, degree: i64, conductor: u32) -> Self {
        let k = count_upto(vars, degree);
        Self::new(vars, CycloMatrix::identity(k, conductor), degree, degree, 0)
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    pub fn domain_degree(&self) -> i64 {
        self.domain_degree
    }

    pub fn codomain_degree(&self) -> i64 {
        self.codomain_degree
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn conductor(&self) -> u32 {
        self.matrix.conductor()
    }

    /// Same map, restricted to inputs of degree `≤ d` and reshaped to codomain degree `c`.
    pub fn reshape(&self, d: i64, c: i64) -> Self {
        let d = d.min(self.domain_degree);
        let rows = count_upto(self.vars, c);
        let cols = count_upto(self.vars, d);
        let mut m = CycloMatrix::zero(rows, cols, self.conductor());
        for i in 0..rows.min(self.matrix.rows()) {
            for j in 0..cols {
                let v = self.matrix.get(i, j);
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        Self { vars: self.vars, matrix: m, domain_degree: d, codomain_degree: c, shift: self.shift }
    }

    /// `self ∘ other`, on the inputs where both factors are honest.
    pub fn compose(&self, other: &Self) -> Self {
        let d = other.domain_degree.min(self.domain_degree - other.shift);
        let inner = other.reshape(d, self.domain_degree);
        let matrix = &self.matrix * &inner.matrix;
        Self { vars: self.vars, matrix, domain_degree: d, codomain_degree: self.codomain_degree, shift: self.shift + other.shift }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let d = self.domain_degree.min(other.domain_degree);
        let c = self.codomain_degree.max(other.codomain_degree);
        (self.reshape(d, c), other.reshape(d, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self { matrix: &a.matrix + &b.matrix, shift: a.shift.max(b.shift), ..a }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self { matrix: &a.matrix - &b.matrix, shift: a.shift.max(b.shift), ..a }
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Self {
        Self { matrix: self.matrix.scale(s), ..self.clone() }
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Equality on the common honest domain.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Column-major flattening of the reshaped matrix.
    pub fn flatten(&self, d: i64, c: i64) -> Vec<CyclotomicNumber> {
        let r = self.reshape(d, c);
        let mut out = Vec::with_capacity(r.matrix.rows() * r.matrix.cols());
        for j in 0..r.matrix.cols() {
            out.extend(r.matrix.column(j));
        }
        out
    }
}
