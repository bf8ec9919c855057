use cherlab::cyclo::{char_det, int, CycloMatrix, CyclotomicNumber, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn number(e: u32) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-6i64..=6, 1i64..=4), e as usize)
        .prop_map(move |raw| {
            let raw: Vec<Rational> = raw.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
            CyclotomicNumber::reduce(&raw, e)
        })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 12])
}

fn triple() -> impl Strategy<Value = (u32, CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    conductor().prop_flat_map(|e| (Just(e), number(e), number(e), number(e)))
}

fn matrix(rows: usize, cols: usize, e: u32) -> impl Strategy<Value = CycloMatrix> {
    prop::collection::vec(number(e), rows * cols)
        .prop_map(move |v| CycloMatrix::from_rows(v.chunks(cols).map(|c| c.to_vec()).collect()))
}

/// `det(1 - t·m)` by the Leibniz expansion, coefficients listed by power of `t`.
fn leibniz_char_det(m: &CycloMatrix) -> Vec<CyclotomicNumber> {
    let n = m.rows();
    let e = m.conductor();
    let zero = CyclotomicNumber::zero(e);
    // entry (i, j) of 1 - t·m as a degree-1 polynomial
    let entry = |i: usize, j: usize| -> [CyclotomicNumber; 2] {
        let c0 = if i == j { CyclotomicNumber::one(e) } else { zero.clone() };
        [c0, -m.get(i, j).clone()]
    };
    let mut total = vec![zero.clone(); n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut poly = vec![CyclotomicNumber::one(e)];
        for (i, &pi) in p.iter().enumerate() {
            let f = entry(i, pi);
            let mut next = vec![zero.clone(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] += &(c * &f[0]);
                next[k + 1] += &(c * &f[1]);
            }
            poly = next;
        }
        for (k, c) in poly.iter().enumerate() {
            if inversions % 2 == 0 {
                total[k] += c;
            } else {
                total[k] -= c;
            }
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((_e, a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverses((e, a, _b, _c) in triple()) {
        match a.inv() {
            Some(i) => prop_assert_eq!(&a * &i, CyclotomicNumber::one(e)),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn galois_is_a_ring_automorphism((e, a, b, _c) in triple(), k in 1i64..40) {
        prop_assume!(k.gcd(&(e as i64)) == 1);
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!(CyclotomicNumber::zeta_pow(1, e).galois(k), CyclotomicNumber::zeta_pow(k, e));
    }

    #[test]
    fn norm_is_product_of_conjugates((e, a, _b, _c) in triple()) {
        let mut prod = CyclotomicNumber::one(e);
        for k in (1..=e as i64).filter(|k| k.gcd(&(e as i64)) == 1) {
            prod = &prod * &a.galois(k);
        }
        prop_assert_eq!(prod.to_rational(), Some(a.norm()));
    }

    #[test]
    fn embedding_is_a_homomorphism((e, a, b, _c) in triple(), m in 1u32..4) {
        let t = e * m;
        prop_assert_eq!((&a * &b).embed(t), &a.embed(t) * &b.embed(t));
        prop_assert_eq!((&a + &b).embed(t), &a.embed(t) + &b.embed(t));
    }

    #[test]
    fn rank_nullity(m in (1usize..4, 1usize..5, conductor()).prop_flat_map(|(r, c, e)| matrix(r, c, e))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(CyclotomicNumber::is_zero));
        }
    }

    #[test]
    fn low_rank_products_have_kernels(
        (a, b) in (2usize..4, conductor()).prop_flat_map(|(n, e)| (matrix(n, 1, e), matrix(1, n, e)))
    ) {
        let m = &a * &b;
        prop_assert!(m.rank() <= 1);
        prop_assert!(m.kernel_basis().len() + 1 >= m.cols());
    }

    #[test]
    fn char_det_matches_leibniz(m in (1usize..4, conductor()).prop_flat_map(|(n, e)| matrix(n, n, e))) {
        let fast = char_det(&m);
        let slow = leibniz_char_det(&m);
        for (k, c) in slow.iter().enumerate() {
            prop_assert_eq!(&fast.coeff(k), c, "t^{}", k);
        }
        prop_assert!(fast.degree() <= m.rows());
    }

    #[test]
    fn inverse_and_determinant(m in (1usize..4, conductor()).prop_flat_map(|(n, e)| matrix(n, n, e))) {
        let det = m.determinant();
        match m.inverse() {
            Some(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert!((&m * &inv).is_identity());
            }
            None => prop_assert!(det.is_zero()),
        }
    }
}

#[test]
fn root_of_unity_sums_vanish() {
    for e in 2..=12u32 {
        let mut s = CyclotomicNumber::zero(e);
        for k in 0..e as i64 {
            s += &CyclotomicNumber::zeta_pow(k, e);
        }
        assert!(s.is_zero(), "e = {e}");
    }
    let third = CyclotomicNumber::zeta_pow(1, 3);
    assert_eq!(&(&third * &third) + &third, CyclotomicNumber::from_rational(int(-1), 3));
}
