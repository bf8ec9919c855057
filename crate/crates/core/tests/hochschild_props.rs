use cherlab::cyclo::Rational;
use cherlab::group::catalog::s3_refl;
use cherlab::hochschild::{hochschild_boundary, parse_algebra, HochschildChain, StructureConstantAlgebra};
use proptest::prelude::*;

fn stock() -> Vec<StructureConstantAlgebra> {
    let g = s3_refl();
    vec![
        StructureConstantAlgebra::truncated_polynomial(3),
        StructureConstantAlgebra::matrix_algebra(2),
        StructureConstantAlgebra::upper_triangular(3),
        StructureConstantAlgebra::truncated_polynomial(2).tensor(&StructureConstantAlgebra::matrix_algebra(2)).unwrap(),
        StructureConstantAlgebra::from_multiplication_table(|a, b| g.mul(a, b), g.order(), 0).unwrap(),
        parse_algebra("basis 1 a b ab\nunit 1\na b -> ab\nb a -> -1*ab\n").unwrap(),
    ]
}

fn chain_strategy() -> impl Strategy<Value = (usize, usize, Vec<(Vec<usize>, i64)>)> {
    (0usize..6, 1usize..5).prop_flat_map(|(which, degree)| {
        let terms = prop::collection::vec((prop::collection::vec(0usize..64, degree + 1), -5i64..=5), 1..6);
        (Just(which), Just(degree), terms)
    })
}

fn build(alg: &StructureConstantAlgebra, degree: usize, terms: &[(Vec<usize>, i64)], normalized: bool) -> HochschildChain {
    let mut ch = HochschildChain::zero(degree, false);
    for (t, c) in terms {
        ch.add_term(t.iter().map(|i| i % alg.dim()).collect(), Rational::from_integer((*c).into()));
    }
    if normalized {
        ch.normalize(alg.unit())
    } else {
        ch
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boundary_squares_to_zero((which, degree, terms) in chain_strategy(), normalized in any::<bool>()) {
        let algebras = stock();
        let alg = &algebras[which];
        let ch = build(alg, degree, &terms, normalized);
        let b = hochschild_boundary(&ch, alg).unwrap();
        prop_assert_eq!(b.degree() + 1, degree);
        let bb = hochschild_boundary(&b, alg).unwrap();
        prop_assert!(bb.is_zero(), "b∘b = {:?}", bb);
    }

    #[test]
    fn boundary_is_linear((which, degree, terms) in chain_strategy(), k in -3i64..=3) {
        let algebras = stock();
        let alg = &algebras[which];
        let ch = build(alg, degree, &terms, false);
        let scaled: Vec<(Vec<usize>, i64)> = terms.iter().map(|(t, c)| (t.clone(), c * k)).collect();
        let lhs = hochschild_boundary(&build(alg, degree, &scaled, false), alg).unwrap();
        let mut rhs = HochschildChain::zero(degree - 1, false);
        for (t, c) in hochschild_boundary(&ch, alg).unwrap().terms() {
            rhs.add_term(t.clone(), c * Rational::from_integer(k.into()));
        }
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn commutative_degree_one_boundaries_vanish() {
    let alg = StructureConstantAlgebra::truncated_polynomial(4);
    for i in 0..4 {
        for j in 0..4 {
            let mut ch = HochschildChain::zero(1, false);
            ch.add_term(vec![i, j], Rational::from_integer(1.into()));
            assert!(hochschild_boundary(&ch, &alg).unwrap().is_zero());
        }
    }
}

#[test]
fn hh0_of_stock_algebras() {
    // Q[x]/x^3 is commutative; M_2 has HH_0 = Q; upper triangular 3x3 has HH_0 = Q^3.
    assert_eq!(StructureConstantAlgebra::truncated_polynomial(3).hh0_dimension().unwrap(), 3);
    assert_eq!(StructureConstantAlgebra::matrix_algebra(2).hh0_dimension().unwrap(), 1);
    assert_eq!(StructureConstantAlgebra::upper_triangular(3).hh0_dimension().unwrap(), 3);
}
