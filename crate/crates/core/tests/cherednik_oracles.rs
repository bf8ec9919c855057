use std::collections::HashMap;

use cherlab::cherednik::{pbw_spot_check, verify_commutation_relations, DunklRep};
use cherlab::cyclo::{int, rat, CyclotomicNumber};
use cherlab::group::catalog::{cyclic, s3_refl, z2};
use cherlab::group::FiniteMatrixGroup;

const P: i64 = 1_000_003;

type IntPoly = HashMap<(u32, u32), i64>;

fn monomials(max: u32) -> Vec<(u32, u32)> {
    (0..=max).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect()
}

fn add(p: &mut IntPoly, k: (u32, u32), c: i64) {
    let v = p.entry(k).or_insert(0);
    *v = (*v + c).rem_euclid(P);
    if *v == 0 {
        p.remove(&k);
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (&(i, j), &c) in a {
        for (&(k, l), &d) in b {
            add(&mut out, (i + k, j + l), c * d % P);
        }
    }
    out
}

fn pow(a: &IntPoly, k: u32) -> IntPoly {
    (0..k).fold(IntPoly::from([((0, 0), 1)]), |acc, _| mul(&acc, a))
}

/// `f(m v)` for an integer 2x2 matrix `m`.
fn substitute(f: &IntPoly, m: [[i64; 2]; 2]) -> IntPoly {
    let lin = |r: [i64; 2]| IntPoly::from_iter([((1, 0), r[0].rem_euclid(P)), ((0, 1), r[1].rem_euclid(P))].into_iter().filter(|x| x.1 != 0));
    let (y1, y2) = (lin(m[0]), lin(m[1]));
    let mut out = IntPoly::new();
    for (&(i, j), &c) in f {
        for (k, v) in mul(&pow(&y1, i), &pow(&y2, j)) {
            add(&mut out, k, c * v % P);
        }
    }
    out
}

fn deriv(f: &IntPoly, var: usize) -> IntPoly {
    let mut out = IntPoly::new();
    for (&(i, j), &c) in f {
        let (e, k) = if var == 0 { (i, (i.wrapping_sub(1), j)) } else { (j, (i, j.wrapping_sub(1))) };
        if e > 0 {
            add(&mut out, k, c * e as i64 % P);
        }
    }
    out
}

fn rank_mod_p(rows: Vec<HashMap<usize, i64>>) -> usize {
    let mut pivots: HashMap<usize, HashMap<usize, i64>> = HashMap::new();
    let inv = |a: i64| {
        let (mut r, mut b, mut e) = (1i64, a.rem_euclid(P), P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    for mut r in rows {
        while let Some(&lead) = r.keys().min() {
            if let Some(p) = pivots.get(&lead) {
                let f = r[&lead];
                for (&c, &v) in p {
                    let slot = r.entry(c).or_insert(0);
                    *slot = (*slot - f * v).rem_euclid(P);
                    if *slot == 0 {
                        r.remove(&c);
                    }
                }
            } else {
                let s = inv(r[&lead]);
                pivots.insert(lead, r.iter().map(|(&c, &v)| (c, v * s % P)).collect());
                break;
            }
        }
    }
    pivots.len()
}

/// Rank of `{x^a ∂^b g}` on polynomials of degree `≤ cap` in two variables, modulo a prime.
fn oracle_rank(group: &[[[i64; 2]; 2]], cap: u32, level: u32) -> usize {
    let inputs: Vec<IntPoly> = monomials(cap).into_iter().map(|m| IntPoly::from([(m, 1)])).collect();
    let ds = monomials(level);
    let xs = monomials(cap - level);
    let mut cols: HashMap<(usize, (u32, u32)), usize> = HashMap::new();
    let mut rows = Vec::new();
    for ginv in group {
        let moved: Vec<IntPoly> = inputs.iter().map(|f| substitute(f, *ginv)).collect();
        for &(b1, b2) in &ds {
            let applied: Vec<IntPoly> = moved
                .iter()
                .map(|f| {
                    let f = (0..b1).fold(f.clone(), |acc, _| deriv(&acc, 0));
                    (0..b2).fold(f, |acc, _| deriv(&acc, 1))
                })
                .collect();
            for &a in &xs {
                let xa = IntPoly::from([(a, 1)]);
                let mut row = HashMap::new();
                for (j, f) in applied.iter().enumerate() {
                    for (m, c) in mul(f, &xa) {
                        let next = cols.len();
                        let col = *cols.entry((j, m)).or_insert(next);
                        row.insert(col, c);
                    }
                }
                rows.push(row);
            }
        }
    }
    rank_mod_p(rows)
}

fn integer_inverses(g: &FiniteMatrixGroup) -> Vec<[[i64; 2]; 2]> {
    (0..g.order())
        .map(|i| {
            let m = g.element(g.inverse(i));
            let at = |r, c| {
                let q = m.get(r, c).to_rational().expect("rational entries");
                assert!(q.is_integer());
                i64::try_from(q.to_integer()).unwrap()
            };
            [[at(0, 0), at(0, 1)], [at(1, 0), at(1, 1)]]
        })
        .collect()
}

#[test]
fn pbw_baseline_ranks_match_modular_oracle() {
    let g = s3_refl();
    let inv = integer_inverses(&g);
    assert_eq!(oracle_rank(&inv, 5, 0), 126);
    assert_eq!(oracle_rank(&inv, 5, 1), 269);
    assert_eq!(oracle_rank(&inv, 6, 1), 378);

    let rep = DunklRep::uniform(&g, int(1), int(0), 5);
    assert_eq!(pbw_spot_check(&rep, 0).unwrap().rank, oracle_rank(&inv, 5, 0));
    let r1 = pbw_spot_check(&rep, 1).unwrap();
    assert_eq!(r1.rank, 269);
    assert_eq!(r1.predicted, 270);
}

#[test]
fn pbw_rank_is_flat_in_c_for_s3() {
    let g = s3_refl();
    let rep = DunklRep::uniform(&g, int(1), int(1), 5);
    let r = pbw_spot_check(&rep, 1).unwrap();
    assert_eq!(r.baseline_rank, 269);
    assert!(r.flat(), "{r:?}");
    assert!(!r.matches());
}

#[test]
fn kappa_ratio_is_minus_one_on_complex_reflections() {
    for m in [3u32, 4] {
        let g = cyclic(m);
        let rep = DunklRep::uniform(&g, int(1), rat(1, 2), 5);
        let r = verify_commutation_relations(&rep).unwrap();
        assert!(r.all_passed(), "Z_{m}: {r:?}");
        for k in &r.kappa {
            assert_eq!(k.ratio.clone().unwrap(), CyclotomicNumber::from_int(-1, g.conductor()), "Z_{m}");
        }
    }
}

#[test]
fn z2_dunkl_closed_form_on_odd_powers() {
    // D x^{2k+1} = (2k + 1 - 2c) x^{2k}, D x^{2k} = 2k x^{2k-1} for t = 1.
    let g = z2();
    let c = rat(2, 7);
    let rep = DunklRep::uniform(&g, int(1), c.clone(), 7);
    let op = rep.dunkl_operator(&[CyclotomicNumber::one(g.conductor())]).unwrap();
    for k in 1..=7usize {
        let want = if k % 2 == 1 { int(k as i64) - &c * int(2) } else { int(k as i64) };
        let got = op.matrix().get(k - 1, k).to_rational().unwrap();
        assert_eq!(got, want, "degree {k}");
    }
}
