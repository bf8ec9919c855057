use std::fmt;

use super::number::CyclotomicNumber;

/// Univariate polynomial in `t` with cyclotomic coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloPoly {
    coeffs: Vec<CyclotomicNumber>,
    conductor: u32,
}

impl CycloPoly {
    pub fn new(mut coeffs: Vec<CyclotomicNumber>, conductor: u32) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(CyclotomicNumber::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(CyclotomicNumber::zero(conductor));
        }
        Self { coeffs, conductor }
    }

    pub fn coeffs(&self) -> &[CyclotomicNumber] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> CyclotomicNumber {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CyclotomicNumber::zero(self.conductor))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![CyclotomicNumber::zero(self.conductor); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out, self.conductor)
    }

    /// Power series `1 / p(t)` through `t^order`; requires `p(0) = 1`.
    pub fn inverse_series(&self, order: usize) -> Vec<CyclotomicNumber> {
        assert!(self.coeffs[0].is_one(), "series inversion needs constant term 1");
        let e = self.conductor;
        let mut q = vec![CyclotomicNumber::zero(e); order + 1];
        q[0] = CyclotomicNumber::one(e);
        for k in 1..=order {
            let mut acc = CyclotomicNumber::zero(e);
            for j in 1..=k.min(self.degree()) {
                acc += &(&self.coeffs[j] * &q[k - j]);
            }
            q[k] = -acc;
        }
        q
    }
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}
