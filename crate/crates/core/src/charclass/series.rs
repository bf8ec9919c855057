use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cyclo::{int, parse_rational, Rational};

use super::CharClassError;

/// A Laurent polynomial in `ℏ` with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent(BTreeMap<i32, Rational>);

impl Laurent {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    /// `q ℏ^k`.
    pub fn monomial(q: Rational, k: i32) -> Self {
        let mut m = BTreeMap::new();
        if !q.is_zero() {
            m.insert(k, q);
        }
        Self(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.0
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.0.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_power(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    fn add_term(&mut self, k: i32, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.0 {
            out.add_term(*k, q.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|(k, q)| (*k, -q)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.0 {
            for (b, q) in &other.0 {
                out.add_term(a + b, p * q);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.0 {
            out.add_term(*k, c * q);
        }
        out
    }

    /// Multiply by `ℏ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self(self.0.iter().map(|(p, q)| (p + k, q.clone())).collect())
    }

    /// Parse `q`, `q*hbar^k`, or a `+`-separated sum of those.
    pub fn parse(s: &str) -> Result<Self, CharClassError> {
        let bad = || CharClassError::Parse(format!("bad Laurent polynomial `{s}`"));
        let mut out = Self::zero();
        let normalized = s.replace(" - ", " + -");
        for term in normalized.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.split_once('*') {
                Some((c, h)) => {
                    let h = h.trim();
                    let k = if h == "hbar" {
                        1
                    } else {
                        h.strip_prefix("hbar^").and_then(|p| p.trim_matches(|c| c == '(' || c == ')').parse().ok()).ok_or_else(bad)?
                    };
                    (parse_rational(c.trim()).map_err(|_| bad())?, k)
                }
                None if term == "hbar" => (Rational::one(), 1),
                None => (parse_rational(term).map_err(|_| bad())?, 0),
            };
            out.add_term(power, coef);
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, q)| format!("{q}*hbar^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear combination of degree-2 symbols, e.g. `t1 - 2*t2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm(pub BTreeMap<String, Rational>);

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(name: &str) -> Self {
        Self(BTreeMap::from([(name.to_string(), Rational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self(self.0.iter().filter(|_| !q.is_zero()).map(|(k, v)| (k.clone(), v * q)).collect())
    }

    /// Parse `0`, `t`, `-t`, `3/2*t`, `t1 - t2`, `t1 + 2*t2`.
    pub fn parse(s: &str) -> Result<Self, CharClassError> {
        let bad = |why: &str| CharClassError::Parse(format!("bad linear form `{s}`: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut spaced = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                spaced.push(' ');
                spaced.push(ch);
            } else {
                spaced.push(ch);
            }
        }
        let mut out = BTreeMap::new();
        for raw in spaced.split(' ').filter(|t| !t.is_empty()) {
            let term = raw.strip_prefix('+').unwrap_or(raw).trim();
            if term.is_empty() {
                continue;
            }
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (parse_rational(c).map_err(|_| bad("coefficient"))?, n.to_string()),
                None => match term.strip_prefix('-') {
                    Some(n) if !n.starts_with(|c: char| c.is_ascii_digit()) => (-Rational::one(), n.to_string()),
                    _ if term.starts_with(|c: char| c.is_ascii_digit() || c == '-') => {
                        let q = parse_rational(term).map_err(|_| bad("coefficient"))?;
                        if q.is_zero() {
                            continue;
                        }
                        return Err(bad("a nonzero constant has no degree-2 symbol"));
                    }
                    _ => (Rational::one(), term.to_string()),
                },
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') || name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(bad("symbol names are alphanumeric and start with a letter"));
            }
            if name == "hbar" {
                return Err(bad("`hbar` is reserved"));
            }
            let slot = out.entry(name.clone()).or_insert_with(Rational::zero);
            *slot += coef;
            if slot.is_zero() {
                out.remove(&name);
            }
        }
        Ok(Self(out))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (name, q) in &self.0 {
            let sign = if q.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = q.abs();
            let body = if mag.is_one() { name.clone() } else { format!("{mag}*{name}") };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A truncated power series in commuting degree-2 symbols with Laurent coefficients.
///
/// `order` bounds the polynomial degree; products drop every term above it.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    vars: Vec<String>,
    order: usize,
    terms: BTreeMap<Vec<u32>, Laurent>,
}

/// Form degree carried by every symbol.
pub const SYMBOL_DEGREE: u32 = 2;

impl GradedSeries {
    pub fn zero(vars: &[String], order: usize) -> Self {
        let mut v = vars.to_vec();
        v.sort();
        v.dedup();
        Self { vars: v, order, terms: BTreeMap::new() }
    }

    pub fn constant(c: Laurent, vars: &[String], order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        let n = s.vars.len();
        s.add_term(vec![0; n], c);
        s
    }

    pub fn one(vars: &[String], order: usize) -> Self {
        Self::constant(Laurent::one(), vars, order)
    }

    /// The linear form as a degree-1 series (zero when `order = 0`).
    pub fn linear(form: &LinearForm, order: usize) -> Self {
        let vars: Vec<String> = form.symbols().cloned().collect();
        let mut s = Self::zero(&vars, order);
        if order == 0 {
            return s;
        }
        for (name, q) in &form.0 {
            let mut e = vec![0; s.vars.len()];
            e[s.var_index(name).expect("own symbol")] = 1;
            s.add_term(e, Laurent::constant(q.clone()));
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Laurent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Laurent) {
        if c.is_zero() || e.iter().sum::<u32>() as usize > self.order {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Re-express over a larger sorted symbol list.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        let mut out = Self::zero(vars, self.order);
        let map: Vec<usize> = self.vars.iter().map(|v| out.var_index(v).expect("superset of symbols")).collect();
        for (e, c) in &self.terms {
            let mut ne = vec![0; out.vars.len()];
            for (i, &a) in e.iter().enumerate() {
                ne[map[i]] = a;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let set: BTreeSet<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        set.into_iter().collect()
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut out = Self::zero(&self.vars, order);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let vars = self.union_vars(other);
        let order = self.order.min(other.order);
        let mut out = self.with_vars(&vars).with_order(order);
        for (e, c) in other.with_vars(&vars).terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero(&self.vars, self.order);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let vars = self.union_vars(other);
        let order = self.order.min(other.order);
        let (a, b) = (self.with_vars(&vars), other.with_vars(&vars));
        let mut out = Self::zero(&vars, order);
        for (ea, ca) in &a.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &b.terms {
                if (da + eb.iter().sum::<u32>()) as usize > order {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(&self.vars, self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The homogeneous component of polynomial degree `k` (form degree `2k`).
    pub fn homogeneous(&self, k: usize) -> Homogeneous {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() as usize == k).map(|(e, c)| (e.clone(), c.clone())).collect();
        Homogeneous { vars: self.vars.clone(), degree: k, terms }
    }

    pub fn constant_term(&self) -> Laurent {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_default()
    }

    /// Coefficient of a monomial given as `(symbol, exponent)` pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Laurent {
        let mut e = vec![0; self.vars.len()];
        for (name, a) in monomial {
            match self.var_index(name) {
                Some(i) => e[i] += a,
                None if *a == 0 => {}
                None => return Laurent::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Multiply the degree-`k` part by `ℏ^k` (the substitution `X ↦ ℏX`).
    pub fn hbar_rescale(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.order);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.shift(e.iter().sum::<u32>() as i32));
        }
        out
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries(order {}, vars {:?}, {:?})", self.order, self.vars, self.terms)
    }
}

/// A homogeneous polynomial in the symbols with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub vars: Vec<String>,
    pub degree: usize,
    pub terms: BTreeMap<Vec<u32>, Laurent>,
}

impl Homogeneous {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply every coefficient by `ℏ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shift(k))).collect(), ..self.clone() }
    }

    /// Lowest `ℏ` power present; `None` for zero.
    pub fn min_hbar_power(&self) -> Option<i32> {
        self.terms.values().filter_map(Laurent::min_power).min()
    }

    pub fn monomial_name(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.vars)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, v)| if a == 1 { v.clone() } else { format!("{v}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// `coeff * monomial * hbar^j`, one line per monomial and power of `ℏ`.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let name = self.monomial_name(e);
            for (k, q) in c.terms() {
                out.push(format!("{q} * {name} * hbar^{k}"));
            }
        }
        out
    }

    /// Coefficient of the monomial given as `(symbol, exponent)` pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Laurent {
        let mut e = vec![0; self.vars.len()];
        for (name, a) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] += a,
                None => return Laurent::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Re-express over a larger sorted symbol list.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        let mut out = Self { vars: vars.to_vec(), degree: self.degree, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &a) in e.iter().enumerate() {
                ne[vars.iter().position(|v| *v == self.vars[i]).expect("superset")] = a;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }
}

pub(crate) fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn laurent_arithmetic_and_parse() {
        let a = Laurent::parse("1 + 2*hbar^-1").unwrap();
        let b = Laurent::monomial(int(3), 1);
        assert_eq!(a.mul(&b), Laurent::parse("3*hbar + 6").unwrap());
        assert_eq!(a.min_power(), Some(-1));
        assert!(a.sub(&a).is_zero());
        assert!(Laurent::parse("x").is_err());
    }

    #[test]
    fn linear_form_parse() {
        let f = LinearForm::parse("t1 - 2*t2").unwrap();
        assert_eq!(f.0["t1"], int(1));
        assert_eq!(f.0["t2"], int(-2));
        assert!(LinearForm::parse("0").unwrap().is_zero());
        assert_eq!(LinearForm::parse("-th").unwrap().0["th"], int(-1));
        assert_eq!(LinearForm::parse("1/2*t").unwrap().0["t"], rat(1, 2));
        assert!(LinearForm::parse("3").is_err());
        assert!(LinearForm::parse("hbar").is_err());
        assert_eq!(f.to_string(), "t1 - 2*t2");
    }

    #[test]
    fn truncated_products() {
        let x = GradedSeries::linear(&LinearForm::symbol("x"), 3);
        let one_plus = GradedSeries::one(&[], 3).add(&x);
        let cube = one_plus.pow(4);
        assert_eq!(cube.coeff(&[("x", 3)]), Laurent::constant(int(4)));
        assert!(cube.coeff(&[("x", 4)]).is_zero());
        let y = GradedSeries::linear(&LinearForm::symbol("y"), 3);
        let xy = x.mul(&y);
        assert_eq!(xy.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(xy.homogeneous(2).lines(), vec!["1 * x*y * hbar^0".to_string()]);
    }
}
