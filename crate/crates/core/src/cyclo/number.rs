use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{self, FieldTables};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element of `Q(ζ_e)` in the reduced power basis `1, ζ, …, ζ^{φ(e)-1}`.
///
/// The representation is canonical, so derived equality and hashing agree with
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Reduce a raw coefficient sequence `Σ raw[k] ζ^k` (any length) into canonical form.
    pub fn reduce(raw: &[Rational], conductor: u32) -> Self {
        let t = field::tables(conductor);
        Self { conductor, coeffs: reduce_with(&t, raw.iter().enumerate()) }
    }

    pub fn zero(conductor: u32) -> Self {
        Self { conductor, coeffs: vec![Rational::zero(); field::tables(conductor).degree] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(Rational::one(), conductor)
    }

    pub fn from_rational(q: Rational, conductor: u32) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: i64, conductor: u32) -> Self {
        Self::from_rational(int(n), conductor)
    }

    /// `ζ_e^k` for any integer `k`.
    pub fn zeta_pow(k: i64, conductor: u32) -> Self {
        let t = field::tables(conductor);
        let k = k.rem_euclid(conductor as i64) as usize;
        Self { conductor, coeffs: t.powers[k].iter().map(|&c| int(c)).collect() }
    }

    /// The primitive `m`-th root of unity `ζ_m = ζ_e^{e/m}`; requires `m | e`.
    pub fn root_of_unity(m: u32, k: i64, conductor: u32) -> Option<Self> {
        if m == 0 || !conductor.is_multiple_of(m) {
            return None;
        }
        Some(Self::zeta_pow(k * (conductor / m) as i64, conductor))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this number lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let t = field::tables(self.conductor);
        let e = self.conductor as i64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (((i as i64) * k).rem_euclid(e) as usize, c));
        Self { conductor: self.conductor, coeffs: reduce_with(&t, terms) }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Re-express this number in `Q(ζ_f)` for a multiple `f` of the conductor.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.conductor), "conductor {} does not divide {}", self.conductor, target);
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let t = field::tables(target);
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| ((i * step) % target as usize, c));
        Self { conductor: target, coeffs: reduce_with(&t, terms) }
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for k in self.other_conjugate_exponents() {
            acc = &acc * &self.galois(k);
        }
        acc.to_rational().expect("field norm is rational")
    }

    fn other_conjugate_exponents(&self) -> Vec<i64> {
        field::tables(self.conductor)
            .units
            .iter()
            .filter(|&&k| k as i64 % self.conductor as i64 != 1 % self.conductor as i64)
            .map(|&k| k as i64)
            .collect()
    }

    /// Multiplicative inverse via the product of the remaining Galois conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(q.recip(), self.conductor));
        }
        let mut others = Self::one(self.conductor);
        for k in self.other_conjugate_exponents() {
            others = &others * &self.galois(k);
        }
        let n = (&others * self).to_rational().expect("field norm is rational");
        Some(others.scale(&n.recip()))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Smallest `m >= 1` with `self^m = 1`, searched among divisors of `2e`.
    pub fn root_order(&self) -> Option<u32> {
        let bound = 2 * self.conductor;
        (1..=bound)
            .filter(|m| bound.is_multiple_of(*m))
            .find(|&m| self.pow(m as u64).is_one())
    }

    /// Display-only complex approximation.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let e = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * k as f64 / e;
            (re + v * a.cos(), im + v * a.sin())
        })
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "mixed conductors in cyclotomic arithmetic");
    }
}

fn reduce_with<'a>(t: &FieldTables, terms: impl Iterator<Item = (usize, &'a Rational)>) -> Vec<Rational> {
    let e = t.conductor as usize;
    let mut out = vec![Rational::zero(); t.degree];
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        for (slot, &p) in out.iter_mut().zip(&t.powers[k % e]) {
            if p != 0 {
                *slot += c * BigInt::from(p);
            }
        }
    }
    out
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_same(rhs);
        let d = self.coeffs.len();
        if d == 1 {
            return CyclotomicNumber { conductor: self.conductor, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicNumber::zero(self.conductor);
        }
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                raw[i + j] += a * b;
            }
        }
        let t = field::tables(self.conductor);
        CyclotomicNumber { conductor: self.conductor, coeffs: reduce_with(&t, raw.iter().enumerate()) }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Literal form `a*z^0 + b/c*z^k`, omitting zero terms; `0` when empty.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*z^{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|e={}]", self, self.conductor)
    }
}

/// Least common multiple helper for conductors.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// `true` when `q` is a nonnegative rational integer.
pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}
