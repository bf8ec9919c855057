use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::cyclo::{int, parse_rational, Rational};

use super::HochschildError;

/// Sparse vector on the basis of an algebra.
pub type Element = BTreeMap<usize, Rational>;

fn add_into(acc: &mut Element, k: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(k).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

/// A finite-dimensional algebra over `Q` given by structure constants.
///
/// `table[i][j]` is `e_i e_j`, or `None` when the product leaves a degree cap.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Option<Element>>>,
    unit: usize,
    grading: Option<Vec<i64>>,
    /// Basis triples whose associativity could not be tested because a product overflowed.
    unverified_triples: usize,
}

impl StructureConstantAlgebra {
    /// Build and verify the unit axioms and associativity on every basis triple.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<Option<Element>>>,
        unit: usize,
        grading: Option<Vec<i64>>,
    ) -> Result<Self, HochschildError> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) || unit >= n {
            return Err(HochschildError::Malformed(format!("table must be {n}x{n} with a unit index below {n}")));
        }
        if grading.as_ref().is_some_and(|g| g.len() != n) {
            return Err(HochschildError::Malformed("grading length differs from basis size".into()));
        }
        let mut alg = Self { labels, table, unit, grading, unverified_triples: 0 };
        alg.verify()?;
        Ok(alg)
    }

    fn verify(&mut self) -> Result<(), HochschildError> {
        let n = self.dim();
        for i in 0..n {
            let basis = Element::from([(i, Rational::one())]);
            for (l, r) in [(self.unit, i), (i, self.unit)] {
                if self.table[l][r].as_ref() != Some(&basis) {
                    return Err(HochschildError::UnitAxiom(self.labels[i].clone()));
                }
            }
        }
        let mut unverified = 0;
        for i in 0..n {
            for j in 0..n {
                let Some(ij) = &self.table[i][j] else {
                    unverified += n;
                    continue;
                };
                for k in 0..n {
                    let Some(jk) = &self.table[j][k] else {
                        unverified += 1;
                        continue;
                    };
                    let left = self.mul(ij, &Element::from([(k, Rational::one())]));
                    let right = self.mul(&Element::from([(i, Rational::one())]), jk);
                    match (left, right) {
                        (Some(l), Some(r)) if l != r => {
                            return Err(HochschildError::NotAssociative(
                                self.labels[i].clone(),
                                self.labels[j].clone(),
                                self.labels[k].clone(),
                            ))
                        }
                        (Some(_), Some(_)) => {}
                        _ => unverified += 1,
                    }
                }
            }
        }
        self.unverified_triples = unverified;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn unverified_triples(&self) -> usize {
        self.unverified_triples
    }

    pub fn has_overflow(&self) -> bool {
        self.table.iter().flatten().any(Option::is_none)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Option<&Element> {
        self.table[i][j].as_ref()
    }

    /// Product of two elements; `None` if any needed basis product overflows.
    pub fn mul(&self, a: &Element, b: &Element) -> Option<Element> {
        let mut out = Element::new();
        for (i, ca) in a {
            for (j, cb) in b {
                let p = self.table[*i][*j].as_ref()?;
                let s = ca * cb;
                for (k, ck) in p {
                    add_into(&mut out, *k, &s * ck);
                }
            }
        }
        Some(out)
    }

    /// Tensor product `A ⊗ B` with labels `a|b`.
    pub fn tensor(&self, other: &Self) -> Result<Self, HochschildError> {
        let (n, m) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * m + j;
        let labels = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| format!("{}|{}", self.labels[i], other.labels[j])).collect();
        let mut table = vec![vec![None; n * m]; n * m];
        for (i1, j1) in (0..n).flat_map(|i| (0..m).map(move |j| (i, j))) {
            for (i2, j2) in (0..n).flat_map(|i| (0..m).map(move |j| (i, j))) {
                let (Some(p), Some(q)) = (&self.table[i1][i2], &other.table[j1][j2]) else {
                    continue;
                };
                let mut out = Element::new();
                for (a, ca) in p {
                    for (b, cb) in q {
                        add_into(&mut out, idx(*a, *b), ca * cb);
                    }
                }
                table[idx(i1, j1)][idx(i2, j2)] = Some(out);
            }
        }
        let grading = match (&self.grading, &other.grading) {
            (Some(g), Some(h)) => Some((0..n * m).map(|k| g[k / m] + h[k % m]).collect()),
            _ => None,
        };
        Self::new(labels, table, idx(self.unit, other.unit), grading)
    }

    /// `Q[x]/(x^m)`.
    pub fn truncated_polynomial(m: usize) -> Self {
        assert!(m >= 1);
        let labels = (0..m).map(|k| if k == 0 { "1".to_string() } else { format!("x^{k}") }).collect();
        let table = (0..m)
            .map(|i| (0..m).map(|j| Some(if i + j < m { Element::from([(i + j, Rational::one())]) } else { Element::new() })).collect())
            .collect();
        Self::new(labels, table, 0, Some((0..m as i64).collect())).expect("polynomial quotient is associative")
    }

    /// Full matrix algebra `M_n(Q)` on matrix units `E_ij`.
    pub fn matrix_algebra(n: usize) -> Self {
        Self::matrix_units(n, |_, _| true)
    }

    /// Upper triangular `n×n` matrices.
    pub fn upper_triangular(n: usize) -> Self {
        Self::matrix_units(n, |i, j| i <= j)
    }

    fn matrix_units(n: usize, keep: impl Fn(usize, usize) -> bool) -> Self {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
        let pos: HashMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let mut labels: Vec<String> = units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        // The identity is adjoined as a basis element and the diagonal unit E_nn is dropped.
        let last = pos[&(n - 1, n - 1)];
        let dim = units.len();
        let express = |m: &BTreeMap<(usize, usize), Rational>| -> Element {
            let mut out = Element::new();
            for (&(i, j), c) in m {
                if (i, j) == (n - 1, n - 1) {
                    add_into(&mut out, last, c.clone());
                    for d in 0..n - 1 {
                        add_into(&mut out, pos[&(d, d)], -c.clone());
                    }
                } else {
                    add_into(&mut out, pos[&(i, j)], c.clone());
                }
            }
            out
        };
        let as_matrix = |k: usize| -> BTreeMap<(usize, usize), Rational> {
            if k == last {
                (0..n).map(|d| ((d, d), Rational::one())).collect()
            } else {
                BTreeMap::from([(units[k], Rational::one())])
            }
        };
        labels[last] = "1".into();
        let mut table = vec![vec![None; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let (ma, mb) = (as_matrix(a), as_matrix(b));
                let mut prod = BTreeMap::new();
                for (&(i, j), ca) in &ma {
                    for (&(k, l), cb) in &mb {
                        if j == k {
                            *prod.entry((i, l)).or_insert_with(Rational::zero) += ca * cb;
                        }
                    }
                }
                prod.retain(|_, v: &mut Rational| !v.is_zero());
                table[a][b] = Some(express(&prod));
            }
        }
        Self::new(labels, table, last, None).expect("matrix units are associative")
    }

    /// Group algebra `Q[G]` from a multiplication table.
    pub fn from_multiplication_table(mul: impl Fn(usize, usize) -> usize, order: usize, identity: usize) -> Result<Self, HochschildError> {
        let labels = (0..order).map(|i| format!("g{i}")).collect();
        let table = (0..order).map(|i| (0..order).map(|j| Some(Element::from([(mul(i, j), Rational::one())]))).collect()).collect();
        Self::new(labels, table, identity, None)
    }

    /// `dim A/[A, A]`.
    pub fn hh0_dimension(&self) -> Result<usize, HochschildError> {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (Some(ij), Some(ji)) = (&self.table[i][j], &self.table[j][i]) else {
                    return Err(HochschildError::Overflow(self.labels[i].clone(), self.labels[j].clone()));
                };
                let mut v = ij.clone();
                for (k, c) in ji {
                    add_into(&mut v, *k, -c.clone());
                }
                if !v.is_empty() {
                    rows.push(v);
                }
            }
        }
        Ok(n - rational_rank(&rows, n))
    }
}

/// Rank of sparse rational row vectors, by elimination against reduced pivots.
pub(crate) fn rational_rank(rows: &[Element], _width: usize) -> usize {
    let mut pivots: BTreeMap<usize, Element> = BTreeMap::new();
    for row in rows {
        let mut v = row.clone();
        while let Some((&lead, c)) = v.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = c.clone();
                    for (k, pc) in p {
                        add_into(&mut v, *k, -(&f * pc));
                    }
                }
                None => {
                    let inv = Rational::one() / c.clone();
                    let normalized: Element = v.iter().map(|(k, x)| (*k, x * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `A_k` truncated to monomials `x^a ∂^b` with `|a| + |b| ≤ cap`.
#[derive(Clone, Debug)]
pub struct CappedWeyl {
    pub algebra: StructureConstantAlgebra,
    pub generators: usize,
    pub cap: usize,
    monomials: Vec<(Vec<u32>, Vec<u32>)>,
}

fn falling(c: u32, j: u32) -> Rational {
    (0..j).fold(Rational::one(), |acc, t| acc * int((c - t) as i64))
}

fn binom(b: u32, j: u32) -> Rational {
    falling(b, j) / falling(j, j)
}

impl CappedWeyl {
    pub fn new(k: usize, cap: usize) -> Result<Self, HochschildError> {
        let exps = crate::cherednik::monomials_of_degree;
        let mut monomials = Vec::new();
        for deg in 0..=cap {
            for e in exps(2 * k, deg) {
                monomials.push((e[..k].to_vec(), e[k..].to_vec()));
            }
        }
        let index: HashMap<(Vec<u32>, Vec<u32>), usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let labels: Vec<String> = monomials.iter().map(|(a, b)| weyl_label(a, b)).collect();
        let grading = monomials.iter().map(|(a, b)| (a.iter().chain(b).sum::<u32>()) as i64).collect();
        let n = monomials.len();
        let mut table = vec![vec![None; n]; n];
        for (i, (a, b)) in monomials.iter().enumerate() {
            for (j, (c, d)) in monomials.iter().enumerate() {
                table[i][j] = weyl_product(a, b, c, d, &index);
            }
        }
        let unit = index[&(vec![0; k], vec![0; k])];
        let algebra = StructureConstantAlgebra::new(labels, table, unit, Some(grading))?;
        Ok(Self { algebra, generators: k, cap, monomials })
    }

    fn find(&self, a: Vec<u32>, b: Vec<u32>) -> usize {
        self.monomials.iter().position(|(ma, mb)| *ma == a && *mb == b).expect("generator within cap")
    }

    /// Basis index of `x_i` (0-based `i`).
    pub fn x(&self, i: usize) -> usize {
        let mut a = vec![0; self.generators];
        a[i] = 1;
        self.find(a, vec![0; self.generators])
    }

    /// Basis index of `∂_i`.
    pub fn d(&self, i: usize) -> usize {
        let mut b = vec![0; self.generators];
        b[i] = 1;
        self.find(vec![0; self.generators], b)
    }
}

fn weyl_label(a: &[u32], b: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in a.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{e}", i + 1)),
        }
    }
    for (i, &e) in b.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("d{}", i + 1)),
            _ => parts.push(format!("d{}^{e}", i + 1)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `x^a ∂^b · x^c ∂^d` via `∂^b x^c = Π_i Σ_j C(b_i, j) c_i!/(c_i - j)! x^{c_i - j} ∂^{b_i - j}`.
fn weyl_product(a: &[u32], b: &[u32], c: &[u32], d: &[u32], index: &HashMap<(Vec<u32>, Vec<u32>), usize>) -> Option<Element> {
    let k = a.len();
    let mut terms: Vec<(Vec<u32>, Vec<u32>, Rational)> = vec![(a.to_vec(), d.to_vec(), Rational::one())];
    for i in 0..k {
        let mut next = Vec::new();
        for (xa, db, coef) in &terms {
            for j in 0..=b[i].min(c[i]) {
                let w = binom(b[i], j) * falling(c[i], j);
                let mut xa2 = xa.clone();
                xa2[i] += c[i] - j;
                let mut db2 = db.clone();
                db2[i] += b[i] - j;
                next.push((xa2, db2, coef * w));
            }
        }
        terms = next;
    }
    let mut out = Element::new();
    for (xa, db, coef) in terms {
        let idx = index.get(&(xa, db))?;
        add_into(&mut out, *idx, coef);
    }
    Some(out)
}

/// Parse the textual structure-constant format.
///
/// ```text
/// basis 1 a b ab
/// unit 1
/// grading 0 1 1 2
/// a b -> ab
/// b a -> -1*ab
/// a ab -> overflow
/// ```
/// Products not listed are zero, except those with the unit.
pub fn parse_algebra(text: &str) -> Result<StructureConstantAlgebra, HochschildError> {
    let err = |line: usize, msg: String| HochschildError::Parse { line, msg };
    let mut labels: Option<Vec<String>> = None;
    let mut unit: Option<usize> = None;
    let mut grading = None;
    let mut entries: Vec<(usize, String, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("basis ") {
            labels = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("unit ") {
            let ls = labels.as_ref().ok_or_else(|| err(line_no, "unit before basis".into()))?;
            unit = Some(ls.iter().position(|l| l == rest.trim()).ok_or_else(|| err(line_no, format!("unknown label {rest}")))?);
        } else if let Some(rest) = line.strip_prefix("grading ") {
            let g: Result<Vec<i64>, _> = rest.split_whitespace().map(str::parse).collect();
            grading = Some(g.map_err(|e| err(line_no, format!("bad grading: {e}")))?);
        } else if let Some((lhs, rhs)) = line.split_once("->") {
            let mut it = lhs.split_whitespace();
            let (Some(l), Some(r), None) = (it.next(), it.next(), it.next()) else {
                return Err(err(line_no, "expected `<label> <label> -> <sum>`".into()));
            };
            entries.push((line_no, l.to_string(), r.to_string(), rhs.trim().to_string()));
        } else {
            return Err(err(line_no, format!("unrecognised line `{line}`")));
        }
    }
    let labels = labels.ok_or_else(|| err(0, "missing basis line".into()))?;
    let unit = unit.ok_or_else(|| err(0, "missing unit line".into()))?;
    let n = labels.len();
    let lookup = |line: usize, s: &str| labels.iter().position(|l| l == s).ok_or_else(|| err(line, format!("unknown label {s}")));
    let mut table: Vec<Vec<Option<Element>>> = vec![vec![Some(Element::new()); n]; n];
    for i in 0..n {
        table[unit][i] = Some(Element::from([(i, Rational::one())]));
        table[i][unit] = Some(Element::from([(i, Rational::one())]));
    }
    for (line, l, r, rhs) in entries {
        let (i, j) = (lookup(line, &l)?, lookup(line, &r)?);
        table[i][j] = if rhs == "overflow" { None } else { Some(parse_sum(line, &rhs, &lookup)?) };
    }
    StructureConstantAlgebra::new(labels, table, unit, grading)
}

fn parse_sum(
    line: usize,
    s: &str,
    lookup: &impl Fn(usize, &str) -> Result<usize, HochschildError>,
) -> Result<Element, HochschildError> {
    let mut out = Element::new();
    if s == "0" {
        return Ok(out);
    }
    let normalized = s.replace(" - ", " + -");
    for term in normalized.split(" + ") {
        let term = term.trim();
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => (parse_rational(c.trim()).map_err(|e| HochschildError::Parse { line, msg: e.to_string() })?, l.trim()),
            None => match term.strip_prefix('-') {
                Some(l) => (-Rational::one(), l.trim()),
                None => (Rational::one(), term),
            },
        };
        add_into(&mut out, lookup(line, label)?, coef);
    }
    Ok(out)
}
