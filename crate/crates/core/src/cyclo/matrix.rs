use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::number::CyclotomicNumber;
use super::poly::CycloPoly;

/// Dense matrix over `Q(ζ_e)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CyclotomicNumber>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: CycloMatrix,
    pub pivots: Vec<usize>,
}

impl CycloMatrix {
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        Self { rows, cols, conductor, entries: vec![CyclotomicNumber::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            m.set(i, i, CyclotomicNumber::one(conductor));
        }
        m
    }

    pub fn diagonal(diag: &[CyclotomicNumber]) -> Self {
        let e = diag[0].conductor();
        let mut m = Self::zero(diag.len(), diag.len(), e);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicNumber>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let conductor = rows.first().and_then(|row| row.first()).map_or(1, CyclotomicNumber::conductor);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, conductor, entries: rows.into_iter().flatten().collect() }
    }

    /// Build an integer matrix (convenience for tests and fixtures).
    pub fn from_ints(rows: &[&[i64]], conductor: u32) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| CyclotomicNumber::from_int(v, conductor)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of equal length `n`).
    pub fn from_columns(n: usize, cols: &[Vec<CyclotomicNumber>], conductor: u32) -> Self {
        let mut m = Self::zero(n, cols.len(), conductor);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CyclotomicNumber> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Conjugate transpose with respect to `ζ ↦ ζ^{-1}`.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    pub fn embed(&self, target: u32) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: target,
            entries: self.entries.iter().map(|v| v.embed(target)).collect(),
        }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.conductor);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn apply(&self, v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CyclotomicNumber::zero(self.conductor);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Keep the leading `rows x cols` block.
    pub fn top_left(&self, rows: usize, cols: usize) -> Self {
        let mut m = Self::zero(rows, cols, self.conductor);
        for i in 0..rows.min(self.rows) {
            for j in 0..cols.min(self.cols) {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form, first-nonzero pivoting.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Exact basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<CyclotomicNumber>> {
        let Echelon { matrix, pivots } = self.echelon();
        let e = self.conductor;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CyclotomicNumber::zero(e); self.cols];
                v[f] = CyclotomicNumber::one(e);
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    /// One exact solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[CyclotomicNumber]) -> Option<Vec<CyclotomicNumber>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = CycloMatrix::zero(self.rows, self.cols + 1, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![CyclotomicNumber::zero(self.conductor); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_space_basis(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.echelon().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn determinant(&self) -> CyclotomicNumber {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = CyclotomicNumber::one(self.conductor);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return CyclotomicNumber::zero(self.conductor);
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CyclotomicNumber::one(self.conductor));
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zero(n, n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, ech.matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// `det(1 - t·M)` as a polynomial in `t`, via Faddeev–LeVerrier.
    pub fn char_det(&self) -> CycloPoly {
        assert!(self.is_square(), "char_det needs a square matrix");
        let n = self.rows;
        let e = self.conductor;
        // c[k] is the coefficient of x^{n-k} in det(x I - M); det(1 - tM) = Σ c[k] t^k.
        let mut c = vec![CyclotomicNumber::one(e)];
        let mut aux = Self::zero(n, n, e);
        for k in 1..=n {
            aux = &(self * &aux) + &Self::identity(n, e).scale(&c[k - 1]);
            let tr = (self * &aux).trace();
            let ck = tr.scale(&super::number::rat(-1, k as i64));
            c.push(ck);
        }
        CycloPoly::new(c, e)
    }

    pub fn to_rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Mul for &CycloMatrix {
    type Output = CycloMatrix;
    fn mul(self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        assert_eq!(self.conductor, rhs.conductor, "mixed conductors in matrix product");
        let mut out = CycloMatrix::zero(self.rows, rhs.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        out
    }
}

impl Add for &CycloMatrix {
    type Output = CycloMatrix;
    fn add(self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloMatrix {
    type Output = CycloMatrix;
    fn sub(self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix {}x{} (e={})", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join("; "))?;
        }
        Ok(())
    }
}

/// Row-vector form `v^T`, handy for linear forms.
/// Rank of a sparse matrix given as rows of `(column, value)` pairs.
///
/// Forward elimination only, sparsest rows first, pivoting on the smallest column of each row.
pub fn sparse_rank(rows: &[Vec<(usize, CyclotomicNumber)>]) -> usize {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, CyclotomicNumber>> = BTreeMap::new();
    let mut order: Vec<&Vec<(usize, CyclotomicNumber)>> = rows.iter().collect();
    order.sort_by_key(|r| r.len());
    for row in order {
        let mut r: BTreeMap<usize, CyclotomicNumber> = BTreeMap::new();
        for (c, v) in row {
            let slot = r.entry(*c).or_insert_with(|| CyclotomicNumber::zero(v.conductor()));
            *slot += v;
        }
        r.retain(|_, v| !v.is_zero());
        while let Some((&lead, coef)) = r.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = coef.clone();
                    for (c, v) in p {
                        let slot = r.entry(*c).or_insert_with(|| CyclotomicNumber::zero(v.conductor()));
                        *slot -= &(&f * v);
                        if slot.is_zero() {
                            r.remove(c);
                        }
                    }
                }
                None => {
                    let inv = coef.inv().expect("nonzero leading entry");
                    let normalized = r.iter().map(|(c, v)| (*c, v * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub fn dot(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
    let e = a.first().or(b.first()).map_or(1, CyclotomicNumber::conductor);
    let mut acc = CyclotomicNumber::zero(e);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::number::{int, rat};
    use super::*;

    fn z(k: i64, e: u32) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(k, e)
    }

    #[test]
    fn kernel_of_zero_and_reflection() {
        assert_eq!(CycloMatrix::zero(2, 2, 1).kernel_basis().len(), 2);
        let s = CycloMatrix::from_ints(&[&[-1, 0], &[0, 1]], 1);
        let m = &CycloMatrix::identity(2, 1) - &s;
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![CyclotomicNumber::from_int(0, 1), CyclotomicNumber::from_int(1, 1)]);
    }

    #[test]
    fn invertible_over_q_zeta3_has_trivial_kernel() {
        let e = 3;
        let m = CycloMatrix::from_rows(vec![
            vec![z(1, e), CyclotomicNumber::from_int(2, e), CyclotomicNumber::zero(e)],
            vec![CyclotomicNumber::one(e), z(2, e), CyclotomicNumber::from_int(-1, e)],
            vec![CyclotomicNumber::zero(e), z(1, e), &z(1, e) + &CyclotomicNumber::one(e)],
        ]);
        assert!(!m.determinant().is_zero());
        assert!(m.kernel_basis().is_empty());
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn char_det_examples() {
        let id = CycloMatrix::identity(2, 1);
        assert_eq!(id.char_det().coeffs(), &[int(1), int(-2), int(1)].map(|q| CyclotomicNumber::from_rational(q, 1)));
        let g = CycloMatrix::diagonal(&[z(1, 3), z(2, 3)]);
        let p = g.char_det();
        assert!(p.coeffs().iter().all(|c| c.is_one()));
        assert_eq!(p.coeffs().len(), 3);
        let m = CycloMatrix::from_ints(&[&[-1]], 1);
        assert_eq!(m.char_det().coeffs(), &[int(1), int(1)].map(|q| CyclotomicNumber::from_rational(q, 1)));
    }

    #[test]
    fn rank_nullity_on_rectangular() {
        let m = CycloMatrix::from_rows(vec![
            vec![CyclotomicNumber::from_rational(rat(1, 2), 1), CyclotomicNumber::from_int(1, 1), CyclotomicNumber::from_int(0, 1)],
            vec![CyclotomicNumber::from_int(1, 1), CyclotomicNumber::from_int(2, 1), CyclotomicNumber::from_int(0, 1)],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 2);
        for v in m.kernel_basis() {
            assert!(m.apply(&v).iter().all(CyclotomicNumber::is_zero));
        }
    }
}
