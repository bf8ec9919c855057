use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::cyclo::{int, Rational};

use super::series::{factorial, GradedSeries, Homogeneous, Laurent, LinearForm};
use super::CharClassError;

/// Coefficients `a_0, a_1, …` of `(x/2)/sinh(x/2) = Σ a_k x^k`, up to `x^order`.
///
/// With `hbar` set, `x` is replaced by `ℏx`, so `a_k` carries `ℏ^k`.
pub fn a_hat_coefficients(order: usize, hbar: bool) -> Vec<Laurent> {
    // sinh(x/2)/(x/2) = Σ_k x^{2k} / (4^k (2k+1)!)
    let s: Vec<Laurent> = (0..=order)
        .map(|m| {
            if m % 2 == 1 {
                return Laurent::zero();
            }
            let k = m / 2;
            let q = Rational::one() / (factorial(2 * k + 1) * int(4i64.pow(k as u32)));
            Laurent::monomial(q, if hbar { m as i32 } else { 0 })
        })
        .collect();
    let mut b = vec![Laurent::one()];
    for m in 1..=order {
        let mut acc = Laurent::zero();
        for j in 1..=m {
            acc = acc.add(&s[j].mul(&b[m - j]));
        }
        b.push(acc.neg());
    }
    b
}

fn union_symbols<'a>(forms: impl IntoIterator<Item = &'a LinearForm>) -> Vec<String> {
    let set: BTreeSet<String> = forms.into_iter().flat_map(|f| f.symbols().cloned()).collect();
    set.into_iter().collect()
}

/// `Σ_k c_k f^k` truncated at `order`.
fn substitute(coeffs: &[Laurent], form: &LinearForm, vars: &[String], order: usize) -> GradedSeries {
    let x = GradedSeries::linear(form, order).with_vars(vars);
    let mut power = GradedSeries::one(vars, order);
    let mut out = GradedSeries::zero(vars, order);
    for (k, c) in coeffs.iter().enumerate().take(order + 1) {
        if k > 0 {
            power = power.mul(&x);
        }
        out = out.add(&power.scale(c));
    }
    out
}

/// `Π_i (r_i/2)/sinh(r_i/2)` for Chern roots `r_i`.
pub fn series_a_hat(roots: &[LinearForm], order: usize) -> GradedSeries {
    a_hat_product(roots, order, false)
}

/// `Â_ℏ(X) = Â(ℏX)`.
pub fn series_a_hat_hbar(roots: &[LinearForm], order: usize) -> GradedSeries {
    a_hat_product(roots, order, true)
}

fn a_hat_product(roots: &[LinearForm], order: usize, hbar: bool) -> GradedSeries {
    let vars = union_symbols(roots);
    let coeffs = a_hat_coefficients(order, hbar);
    roots.iter().fold(GradedSeries::one(&vars, order), |acc, r| acc.mul(&substitute(&coeffs, r, &vars, order)))
}

fn exp_coefficients(order: usize, hbar_power: i32) -> Vec<Laurent> {
    (0..=order).map(|k| Laurent::monomial(Rational::one() / factorial(k), hbar_power * k as i32)).collect()
}

/// `Σ_r exp(r)`.
pub fn series_ch(roots: &[LinearForm], order: usize) -> GradedSeries {
    let vars = union_symbols(roots);
    let coeffs = exp_coefficients(order, 0);
    roots.iter().fold(GradedSeries::zero(&vars, order), |acc, r| acc.add(&substitute(&coeffs, r, &vars, order)))
}

/// Moments `m_k = φ(Z^k)` of a normalized trace, `m_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFunctional {
    moments: Vec<Laurent>,
}

impl TraceFunctional {
    pub fn new(moments: Vec<Laurent>) -> Result<Self, CharClassError> {
        match moments.first() {
            Some(m0) if *m0 == Laurent::one() => Ok(Self { moments }),
            Some(m0) => Err(CharClassError::NotNormalized(m0.to_string())),
            None => Err(CharClassError::MissingMoment(0)),
        }
    }

    pub fn from_rationals(moments: &[Rational]) -> Result<Self, CharClassError> {
        Self::new(moments.iter().cloned().map(Laurent::constant).collect())
    }

    /// `φ = Σ_j λ_j tr_j` with eigenvalue `μ_j` on the normal symbol: `m_k = Σ_j λ_j μ_j^k`, `m_0 := 1`.
    pub fn from_weights(weights: &[Rational], eigenvalues: &[Rational], order: usize) -> Result<Self, CharClassError> {
        if weights.len() != eigenvalues.len() {
            return Err(CharClassError::Parse("weights and eigenvalues differ in length".into()));
        }
        let mut moments = vec![Laurent::one()];
        for k in 1..=order {
            let m = weights.iter().zip(eigenvalues).fold(Rational::zero(), |acc, (l, mu)| acc + l * num_traits::pow(mu.clone(), k));
            moments.push(Laurent::constant(m));
        }
        Ok(Self { moments })
    }

    /// `φ(id) = 1` and `φ(Z^k) = 0` for `k > 0`.
    pub fn trivial(order: usize) -> Self {
        let mut moments = vec![Laurent::zero(); order + 1];
        moments[0] = Laurent::one();
        Self { moments }
    }

    pub fn moments(&self) -> &[Laurent] {
        &self.moments
    }

    pub fn moment(&self, k: usize) -> Result<&Laurent, CharClassError> {
        self.moments.get(k).ok_or(CharClassError::MissingMoment(k))
    }
}

/// `φ(exp(Z)) = Σ_k m_k Z^k / k!` for the normal symbol `Z`.
pub fn series_ch_phi(tf: &TraceFunctional, symbol: &LinearForm, order: usize) -> Result<GradedSeries, CharClassError> {
    ch_phi_scaled(tf, symbol, order, 0)
}

/// `φ(exp(Z ℏ^p))`.
fn ch_phi_scaled(tf: &TraceFunctional, symbol: &LinearForm, order: usize, hbar_power: i32) -> Result<GradedSeries, CharClassError> {
    let vars = union_symbols([symbol]);
    let top = if symbol.is_zero() { 0 } else { order };
    let coeffs: Vec<Laurent> = (0..=top)
        .map(|k| Ok(tf.moment(k)?.scale(&(Rational::one() / factorial(k))).shift(hbar_power * k as i32)))
        .collect::<Result<_, CharClassError>>()?;
    Ok(substitute(&coeffs, symbol, &vars, order))
}

/// Curvature symbols entering the index density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    /// Chern roots of `R_T`; `n - l` of them.
    pub tangent_roots: Vec<LinearForm>,
    /// The central form `Θ`.
    pub theta: LinearForm,
    /// Normal curvature symbol fed to `φ`; `None` means `Ch_φ = φ(id) = 1`.
    pub normal: Option<LinearForm>,
    /// Rank multiplying `Ch`.
    pub rank: usize,
}

impl CurvatureData {
    pub fn new(tangent_roots: Vec<LinearForm>, theta: LinearForm) -> Self {
        Self { tangent_roots, theta, normal: None, rank: 1 }
    }

    fn symbols(&self) -> Vec<String> {
        union_symbols(self.tangent_roots.iter().chain([&self.theta]).chain(self.normal.iter()))
    }
}

/// The degree-`(n - l)` component of the index density, computed along both spellings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexDensity {
    pub degree: usize,
    /// `ℏ^{n-l} (Â(R_T) Ch(-Θ/ℏ) Ch_φ(R_N/ℏ))_{n-l}`.
    pub component: Homogeneous,
    /// `(Â_ℏ(R_T) Ch(-Θ) Ch_φ(R_N))_{n-l}`.
    pub rescaled: Homogeneous,
}

impl IndexDensity {
    pub fn spellings_agree(&self) -> bool {
        self.component == self.rescaled
    }

    /// No negative total power of `ℏ`.
    pub fn nonnegative_order(&self) -> bool {
        self.component.min_hbar_power().is_none_or(|p| p >= 0)
    }
}

/// `ℏ^{n-l}(Â(R_T) Ch(-Θ/ℏ) Ch_φ(R_N/ℏ))_{n-l}`, with series truncated at `order` (default `n - l`).
pub fn index_density(
    cd: &CurvatureData,
    n: usize,
    l: usize,
    tf: &TraceFunctional,
    order: Option<usize>,
) -> Result<IndexDensity, CharClassError> {
    if l > n {
        return Err(CharClassError::Parse(format!("l = {l} exceeds n = {n}")));
    }
    let d = n - l;
    let order = order.unwrap_or(d);
    if order < d {
        return Err(CharClassError::TruncationTooLow { order, needed: d });
    }
    if cd.tangent_roots.len() != d {
        return Err(CharClassError::RootCount { expected: d, got: cd.tangent_roots.len() });
    }
    let vars = cd.symbols();
    let rank = Laurent::constant(int(cd.rank as i64));
    let minus_theta = cd.theta.scale(&-Rational::one());
    let normal = cd.normal.clone().unwrap_or_default();

    let ch_over_hbar = substitute(&exp_coefficients(order, -1), &minus_theta, &vars, order).scale(&rank);
    let phi_over_hbar = ch_phi_scaled(tf, &normal, order, -1)?;
    let product = series_a_hat(&cd.tangent_roots, order).mul(&ch_over_hbar).mul(&phi_over_hbar).with_vars(&vars);
    let component = product.homogeneous(d).shift(d as i32);

    let ch_plain = substitute(&exp_coefficients(order, 0), &minus_theta, &vars, order).scale(&rank);
    let phi_plain = ch_phi_scaled(tf, &normal, order, 0)?;
    let rescaled_product = series_a_hat_hbar(&cd.tangent_roots, order).mul(&ch_plain).mul(&phi_plain).with_vars(&vars);
    let rescaled = rescaled_product.homogeneous(d);

    let out = IndexDensity { degree: d, component, rescaled };
    if !out.spellings_agree() {
        return Err(CharClassError::SpellingMismatch);
    }
    Ok(out)
}

/// Per-degree comparison of the two assembly paths for `Â_ℏ(Y) Ch(gl) Ch_φ(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingCheck {
    pub order: usize,
    /// `(k, product-then-truncate, assembled from homogeneous pieces)`.
    pub tables: Vec<(usize, Homogeneous, Homogeneous)>,
}

impl GeneratingCheck {
    pub fn passed(&self) -> bool {
        self.tables.iter().all(|(_, a, b)| a == b)
    }
}

/// Homogeneous pieces `H_k` of each factor, computed from closed forms without truncated products.
fn closed_form_pieces(
    y_roots: &[LinearForm],
    gl_roots: &[LinearForm],
    z: &LinearForm,
    tf: &TraceFunctional,
    order: usize,
    vars: &[String],
) -> Result<[Vec<Homogeneous>; 3], CharClassError> {
    let power = |f: &LinearForm, k: usize| GradedSeries::linear(f, k.max(1)).with_vars(vars).with_order(k).pow(k).homogeneous(k);
    let zero = |k: usize| Homogeneous { vars: vars.to_vec(), degree: k, terms: BTreeMap::new() };
    let add = |a: &Homogeneous, b: &Homogeneous| -> Homogeneous {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            let v = out.terms.get(e).cloned().unwrap_or_default().add(c);
            if v.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    };
    let scale = |a: &Homogeneous, c: &Laurent| Homogeneous {
        terms: a.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).filter(|(_, v)| !v.is_zero()).collect(),
        ..a.clone()
    };
    let times = |a: &Homogeneous, b: &Homogeneous| -> Homogeneous {
        let mut out = zero(a.degree + b.degree);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let v = out.terms.get(&e).cloned().unwrap_or_default().add(&ca.mul(cb));
                if v.is_zero() {
                    out.terms.remove(&e);
                } else {
                    out.terms.insert(e, v);
                }
            }
        }
        out
    };

    // Â_ℏ: the degree-k piece of a product is a sum over compositions of k.
    let a = a_hat_coefficients(order, true);
    let unit = power(&LinearForm::zero(), 0);
    let mut a_hat: Vec<Homogeneous> = (0..=order).map(|k| if k == 0 { unit.clone() } else { zero(k) }).collect();
    for r in y_roots {
        let single: Vec<Homogeneous> = (0..=order).map(|k| scale(&power(r, k), &a[k])).collect();
        let mut next: Vec<Homogeneous> = (0..=order).map(zero).collect();
        for i in 0..=order {
            for j in 0..=order - i {
                next[i + j] = add(&next[i + j], &times(&a_hat[i], &single[j]));
            }
        }
        a_hat = next;
    }
    let ch: Vec<Homogeneous> = (0..=order)
        .map(|k| gl_roots.iter().fold(zero(k), |acc, r| add(&acc, &scale(&power(r, k), &Laurent::constant(Rational::one() / factorial(k))))))
        .collect();
    let phi: Vec<Homogeneous> = (0..=order)
        .map(|k| {
            if z.is_zero() && k > 0 {
                return Ok(zero(k));
            }
            Ok(scale(&power(z, k), &tf.moment(k)?.scale(&(Rational::one() / factorial(k)))))
        })
        .collect::<Result<_, CharClassError>>()?;
    Ok([a_hat, ch, phi])
}

pub fn generating_function_check(
    y_roots: &[LinearForm],
    gl_roots: &[LinearForm],
    z: &LinearForm,
    tf: &TraceFunctional,
    order: usize,
) -> Result<GeneratingCheck, CharClassError> {
    let vars = union_symbols(y_roots.iter().chain(gl_roots).chain([z]));
    let product = series_a_hat_hbar(y_roots, order)
        .mul(&series_ch(gl_roots, order))
        .mul(&series_ch_phi(tf, z, order)?)
        .with_vars(&vars);
    let [a_hat, ch, phi] = closed_form_pieces(y_roots, gl_roots, z, tf, order, &vars)?;
    let mut tables = Vec::new();
    for k in 0..=order {
        let mut assembled = Homogeneous { vars: vars.clone(), degree: k, terms: BTreeMap::new() };
        for i in 0..=k {
            for j in 0..=k - i {
                let m = k - i - j;
                for (ea, ca) in &a_hat[i].terms {
                    for (eb, cb) in &ch[j].terms {
                        for (ec, cc) in &phi[m].terms {
                            let e: Vec<u32> = ea.iter().zip(eb).zip(ec).map(|((x, y), z)| x + y + z).collect();
                            let v = assembled.terms.get(&e).cloned().unwrap_or_default().add(&ca.mul(cb).mul(cc));
                            if v.is_zero() {
                                assembled.terms.remove(&e);
                            } else {
                                assembled.terms.insert(e, v);
                            }
                        }
                    }
                }
            }
        }
        tables.push((k, product.homogeneous(k), assembled));
    }
    Ok(GeneratingCheck { order, tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    fn sym(s: &str) -> LinearForm {
        LinearForm::parse(s).unwrap()
    }

    fn q(r: Rational) -> Laurent {
        Laurent::constant(r)
    }

    /// Bernoulli numbers from the recurrence `Σ_{j<m+1} C(m+1, j) B_j = 0`.
    fn bernoulli(n: usize) -> Vec<Rational> {
        let binom = |n: usize, k: usize| factorial(n) / (factorial(k) * factorial(n - k));
        let mut b = vec![Rational::one()];
        for m in 1..=n {
            let s = (0..m).fold(Rational::zero(), |acc, j| acc + binom(m + 1, j) * &b[j]);
            b.push(-s / int(m as i64 + 1));
        }
        b
    }

    #[test]
    fn a_hat_one_root_matches_bernoulli_oracle() {
        let b = bernoulli(8);
        let s = series_a_hat(&[sym("x")], 8);
        for k in 0..=4usize {
            // (x/2)/sinh(x/2) = Σ (2 - 2^{2k}) B_{2k} x^{2k} / ((2k)! 4^k)
            let want = (int(2) - int(1 << (2 * k))) * &b[2 * k] / (factorial(2 * k) * int(1 << (2 * k)));
            assert_eq!(s.coeff(&[("x", 2 * k as u32)]), q(want), "x^{}", 2 * k);
            assert!(s.coeff(&[("x", 2 * k as u32 + 1)]).is_zero());
        }
        assert_eq!(s.coeff(&[("x", 2)]), q(rat(-1, 24)));
        assert_eq!(s.coeff(&[("x", 4)]), q(rat(7, 5760)));
        assert_eq!(series_a_hat(&[sym("x")], 0), GradedSeries::one(&["x".into()], 0));
    }

    #[test]
    fn a_hat_is_multiplicative_and_symmetric() {
        let ab = series_a_hat(&[sym("a"), sym("b")], 6);
        let ba = series_a_hat(&[sym("b"), sym("a")], 6);
        assert_eq!(ab, ba);
        assert_eq!(ab, series_a_hat(&[sym("a")], 6).mul(&series_a_hat(&[sym("b")], 6)));
        assert!(ab.homogeneous(1).is_zero());
        assert!(series_a_hat(&[sym("a - b"), sym("2*c")], 5).homogeneous(1).is_zero());
    }

    #[test]
    fn a_hat_hbar_is_rescaling() {
        let roots = [sym("a"), sym("b - a")];
        assert_eq!(series_a_hat_hbar(&roots, 6), series_a_hat(&roots, 6).hbar_rescale());
    }

    #[test]
    fn chern_character_examples() {
        assert!(series_ch(&[], 3).is_zero());
        let one = series_ch(&[sym("x")], 2);
        assert_eq!(one.constant_term(), Laurent::one());
        assert_eq!(one.coeff(&[("x", 1)]), Laurent::one());
        assert_eq!(one.coeff(&[("x", 2)]), q(rat(1, 2)));
        let pm = series_ch(&[sym("th"), sym("-th")], 2);
        assert_eq!(pm.constant_term(), q(int(2)));
        assert!(pm.coeff(&[("th", 1)]).is_zero());
        assert_eq!(pm.coeff(&[("th", 2)]), Laurent::one());
        let sum = series_ch(&[sym("a"), sym("b")], 4);
        assert_eq!(sum, series_ch(&[sym("a")], 4).add(&series_ch(&[sym("b")], 4)));
    }

    #[test]
    fn twisted_chern_character() {
        let z = sym("z");
        let trivial = TraceFunctional::trivial(3);
        assert_eq!(series_ch_phi(&trivial, &LinearForm::zero(), 3).unwrap().constant_term(), Laurent::one());
        let ones = TraceFunctional::from_rationals(&vec![int(1); 5]).unwrap();
        assert_eq!(series_ch_phi(&ones, &z, 4).unwrap(), series_ch(std::slice::from_ref(&z), 4));
        let (lambda, mu) = (rat(2, 3), int(-2));
        let tf = TraceFunctional::from_weights(std::slice::from_ref(&lambda), std::slice::from_ref(&mu), 4).unwrap();
        let s = series_ch_phi(&tf, &z, 4).unwrap();
        assert_eq!(s.constant_term(), Laurent::one());
        for k in 1..=4u32 {
            let want = &lambda * num_traits::pow(mu.clone(), k as usize) / factorial(k as usize);
            assert_eq!(s.coeff(&[("z", k)]), q(want));
        }
        assert_eq!(series_ch_phi(&trivial, &z, 5), Err(CharClassError::MissingMoment(4)));
        assert!(matches!(TraceFunctional::from_rationals(&[int(2)]), Err(CharClassError::NotNormalized(_))));
    }

    #[test]
    fn index_density_examples() {
        let tf = TraceFunctional::trivial(2);
        let point = index_density(&CurvatureData::new(vec![], sym("th")), 2, 2, &tf, None).unwrap();
        assert_eq!(point.component.lines(), vec!["1 * 1 * hbar^0".to_string()]);

        let theta_only = index_density(&CurvatureData::new(vec![LinearForm::zero()], sym("th")), 1, 0, &tf, None).unwrap();
        assert_eq!(theta_only.component.lines(), vec!["-1 * th * hbar^0".to_string()]);

        let mut cd = CurvatureData::new(vec![sym("t"), LinearForm::zero()], LinearForm::zero());
        cd.rank = 3;
        let tangent = index_density(&cd, 2, 0, &tf, Some(4)).unwrap();
        assert_eq!(tangent.component.coeff(&[("t", 2)]), Laurent::monomial(rat(-3, 24), 2));
        assert_eq!(tangent.component.terms.len(), 1);
        assert!(tangent.nonnegative_order());

        assert_eq!(
            index_density(&CurvatureData::new(vec![LinearForm::zero()], sym("th")), 1, 0, &tf, Some(0)),
            Err(CharClassError::TruncationTooLow { order: 0, needed: 1 })
        );
    }

    #[test]
    fn index_density_symmetry_and_untwisted_limit() {
        let tf = TraceFunctional::from_weights(&[rat(1, 2)], &[int(3)], 3).unwrap();
        let mut a = CurvatureData::new(vec![sym("t1"), sym("t2"), sym("t3")], sym("th"));
        a.normal = Some(sym("r"));
        let mut b = a.clone();
        b.tangent_roots.rotate_left(1);
        let da = index_density(&a, 5, 2, &tf, None).unwrap();
        assert_eq!(da, index_density(&b, 5, 2, &tf, None).unwrap());
        assert!(da.nonnegative_order());

        let roots = vec![sym("t1"), sym("t2")];
        let mut cd = CurvatureData::new(roots.clone(), LinearForm::zero());
        cd.normal = Some(sym("r"));
        cd.rank = 2;
        let d = index_density(&cd, 2, 0, &TraceFunctional::trivial(2), None).unwrap();
        let a_hat = series_a_hat(&roots, 2).homogeneous(2).shift(2);
        let mut want = a_hat.with_vars(&d.component.vars);
        for v in want.terms.values_mut() {
            *v = v.scale(&int(2));
        }
        assert_eq!(d.component, want);
    }

    #[test]
    fn hbar_bookkeeping() {
        let s = series_a_hat(&[sym("a"), sym("b")], 4).mul(&series_ch(&[sym("a + b")], 4));
        let scaled = s.hbar_rescale();
        for k in 0..=4 {
            assert_eq!(scaled.homogeneous(k), s.homogeneous(k).shift(k as i32));
        }
    }

    #[test]
    fn generating_function_paths_agree() {
        let tf = TraceFunctional::from_weights(&[rat(1, 3), rat(2, 3)], &[int(2), rat(-1, 2)], 6).unwrap();
        let check = generating_function_check(&[sym("y")], &[sym("g")], &sym("z"), &tf, 6).unwrap();
        assert!(check.passed());
        assert_eq!(check.tables.len(), 7);
        let zero = generating_function_check(&[sym("y")], &[sym("g1"), sym("g2")], &sym("z"), &tf, 0).unwrap();
        assert!(zero.passed());
        assert_eq!(zero.tables[0].1.coeff(&[]), q(int(2)));
        let two = generating_function_check(&[sym("y1"), sym("y2")], &[sym("g")], &sym("z"), &tf, 2).unwrap();
        assert!(two.passed());
    }
}
