use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cyclo::{CycloMatrix, CyclotomicNumber};

pub type Exponent = Vec<u32>;

/// All exponent vectors of total degree exactly `k` in `n` variables, lex-descending.
pub fn monomials_of_degree(n: usize, k: usize) -> Vec<Exponent> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(n, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Graded monomial basis of `C[h]_{≤D}`. Degree-`≤k` monomials form a prefix.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    max_degree: usize,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    /// `prefix[k]` = number of monomials of degree `< k`.
    prefix: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let mut monomials = Vec::new();
        let mut prefix = vec![0];
        for k in 0..=max_degree {
            monomials.extend(monomials_of_degree(n, k));
            prefix.push(monomials.len());
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { n, max_degree, monomials, index, prefix }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    /// Number of monomials of degree `≤ k`; zero for negative `k`.
    pub fn count_upto(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.prefix[(k as usize).min(self.max_degree) + 1]
        }
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A polynomial on `h` with coefficients in `Q(ζ_e)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    conductor: u32,
    terms: BTreeMap<Exponent, CyclotomicNumber>,
}

impl Poly {
    pub fn zero(n: usize, conductor: u32) -> Self {
        Self { n, conductor, terms: BTreeMap::new() }
    }

    pub fn constant(c: CyclotomicNumber, n: usize) -> Self {
        let mut p = Self::zero(n, c.conductor());
        p.add_term(vec![0; n], c);
        p
    }

    pub fn monomial(exp: Exponent, coeff: CyclotomicNumber) -> Self {
        let mut p = Self::zero(exp.len(), coeff.conductor());
        p.add_term(exp, coeff);
        p
    }

    pub fn variable(i: usize, n: usize, conductor: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, CyclotomicNumber::one(conductor))
    }

    /// The linear form `Σ form[j] x_j`.
    pub fn linear(form: &[CyclotomicNumber], conductor: u32) -> Self {
        let n = form.len();
        let mut p = Self::zero(n, conductor);
        for (j, c) in form.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, CyclotomicNumber> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> CyclotomicNumber {
        self.terms.get(exp).cloned().unwrap_or_else(|| CyclotomicNumber::zero(self.conductor))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).max()
    }

    pub fn add_term(&mut self, exp: Exponent, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Self {
        let mut out = Self::zero(self.n, self.conductor);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.conductor);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(CyclotomicNumber::one(self.conductor), self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, self.conductor);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c.scale(&crate::cyclo::int(e[i] as i64)));
        }
        out
    }

    /// `∂_y f = Σ y_i ∂f/∂x_i`.
    pub fn directional(&self, y: &[CyclotomicNumber]) -> Self {
        let mut out = Self::zero(self.n, self.conductor);
        for (i, yi) in y.iter().enumerate() {
            if !yi.is_zero() {
                out = out.add(&self.partial(i).scale(yi));
            }
        }
        out
    }

    /// Substitute `x_i ↦ Σ_j m[i][j] x_j`.
    pub fn substitute(&self, m: &CycloMatrix) -> Self {
        let images: Vec<Poly> = (0..self.n).map(|i| Poly::linear(m.row(i), self.conductor)).collect();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|l| vec![Poly::constant(CyclotomicNumber::one(self.conductor), self.n), l.clone()]).collect();
        let mut out = Self::zero(self.n, self.conductor);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone(), self.n);
            for (i, &a) in e.iter().enumerate() {
                while powers[i].len() <= a as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][a as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn div_linear(&self, form: &[CyclotomicNumber]) -> Option<Self> {
        let p = form.iter().position(|c| !c.is_zero())?;
        let lead_inv = form[p].inv()?;
        let alpha = Poly::linear(form, self.conductor);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n, self.conductor);
        while let Some((e, c)) = rem.terms.iter().filter(|(e, _)| e[p] > 0).max_by_key(|(e, _)| e[p]).map(|(e, c)| (e.clone(), c.clone())) {
            let mut q = e;
            q[p] -= 1;
            let step = Poly::monomial(q, &c * &lead_inv);
            rem = rem.sub(&step.mul(&alpha));
            quot = quot.add(&step);
        }
        rem.is_zero().then_some(quot)
    }

    /// Coefficient vector on the first `len` basis monomials; `None` if a term falls outside.
    pub fn to_vector(&self, basis: &MonomialBasis, len: usize) -> Option<Vec<CyclotomicNumber>> {
        let mut v = vec![CyclotomicNumber::zero(self.conductor); len];
        for (e, c) in &self.terms {
            let i = basis.index_of(e).filter(|&i| i < len)?;
            v[i] = c.clone();
        }
        Some(v)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `C[x_1..x_n]` cut off above total degree `D`.
#[derive(Clone, Debug)]
pub struct TruncatedPolynomialAlgebra {
    basis: MonomialBasis,
    conductor: u32,
}

/// Result of a truncated product; `overflow` is set when terms above the cap were dropped.
#[derive(Clone, Debug)]
pub struct Truncated {
    pub value: Poly,
    pub overflow: bool,
}

impl TruncatedPolynomialAlgebra {
    pub fn new(n: usize, cap: usize, conductor: u32) -> Self {
        Self { basis: MonomialBasis::new(n, cap), conductor }
    }

    pub fn cap(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn vars(&self) -> usize {
        self.basis.vars()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.monomials().len()
    }

    pub fn truncate(&self, p: &Poly) -> Truncated {
        let mut value = Poly::zero(p.vars(), p.conductor());
        let mut overflow = false;
        for (e, c) in p.terms() {
            if e.iter().sum::<u32>() as usize > self.cap() {
                overflow = true;
            } else {
                value.add_term(e.clone(), c.clone());
            }
        }
        Truncated { value, overflow }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Truncated {
        self.truncate(&a.mul(b))
    }

    pub fn basis_element(&self, i: usize) -> Poly {
        Poly::monomial(self.basis.monomials()[i].clone(), CyclotomicNumber::one(self.conductor))
    }
}
