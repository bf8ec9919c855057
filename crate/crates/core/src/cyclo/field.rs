//! Per-conductor reduction tables for `Q(ζ_e)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

/// Reduction data for one conductor `e`.
///
/// `powers[k]` holds the power-basis coordinates of `ζ^k` for `0 <= k < e`,
/// so any raw polynomial in `ζ` reduces by a single linear pass.
#[derive(Debug)]
pub struct FieldTables {
    pub conductor: u32,
    pub degree: usize,
    pub cyclotomic_poly: Vec<i64>,
    pub powers: Vec<Vec<i64>>,
    /// Exponents `k` in `1..e` coprime to `e`, i.e. the Galois group.
    pub units: Vec<u32>,
}

static TABLES: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();

/// Shared tables for conductor `e`, computed on first use.
pub fn tables(conductor: u32) -> Arc<FieldTables> {
    assert!(conductor >= 1, "conductor must be positive");
    let cache = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("field cache poisoned").get(&conductor) {
        return Arc::clone(t);
    }
    let built = Arc::new(build(conductor));
    cache
        .write()
        .expect("field cache poisoned")
        .entry(conductor)
        .or_insert(built)
        .clone()
}

pub fn euler_totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Φ_d with d a proper divisor of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn build(conductor: u32) -> FieldTables {
    let poly = cyclotomic_polynomial(conductor);
    let degree = poly.len() - 1;
    let mut powers = Vec::with_capacity(conductor as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..conductor {
        powers.push(cur.clone());
        // multiply by ζ, then fold ζ^degree back using the monic relation
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
        for (i, slot) in next.iter_mut().enumerate() {
            *slot -= top * poly[i];
        }
        cur = next;
    }
    let units = (1..=conductor).filter(|k| k.gcd(&conductor) == 1).map(|k| k % conductor.max(1)).collect();
    FieldTables { conductor, degree, cyclotomic_poly: poly, powers, units }
}
