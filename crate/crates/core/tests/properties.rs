use mean_transform::generators::{generate, GenKind, GenSpec};
use mean_transform::io::{matrix_to_string, parse_matrix};
use mean_transform::matrix_core::{fro_norm, loewner_compare, numerical_rank, scale, CMatrix, C64};
use mean_transform::polar::{polar_decompose, PolarFactorization};
use mean_transform::tolerance::ToleranceContext;
use mean_transform::transforms::{aluthge_transform, mean_transform};
use proptest::prelude::*;

fn tol() -> ToleranceContext {
    ToleranceContext::default()
}

fn kind() -> impl Strategy<Value = GenKind> {
    prop_oneof![
        Just(GenKind::Ginibre),
        Just(GenKind::Normal),
        Just(GenKind::Unitary),
        Just(GenKind::Positive),
        Just(GenKind::SquareZero),
        Just(GenKind::BinormalWeightedPerm),
        Just(GenKind::SelfAdjointPolar),
        Just(GenKind::Singular(1)),
        Just(GenKind::PartialIsometry(1)),
    ]
}

fn matrix() -> impl Strategy<Value = CMatrix> {
    (kind(), 2usize..7, any::<u64>()).prop_map(|(k, n, seed)| generate(&GenSpec::new(k, n, seed)).unwrap())
}

fn unitary() -> impl Strategy<Value = CMatrix> {
    (2usize..7, any::<u64>()).prop_map(|(n, seed)| generate(&GenSpec::new(GenKind::Unitary, n, seed)).unwrap())
}

fn bound(t: &CMatrix) -> f64 {
    1e-9 * scale(t) * t.nrows() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_identities_hold(t in matrix()) {
        let parts = polar_decompose(&t, &tol()).unwrap();
        let r = parts.residuals(&t).unwrap();
        prop_assert!(r.holds(scale(&t), &tol()), "{r:?}");
        prop_assert!(fro_norm(&(parts.compose() - &t)) <= bound(&t));
    }

    #[test]
    fn mean_transform_has_the_same_kernel(t in matrix()) {
        let m = mean_transform(&t, &tol()).unwrap();
        prop_assert_eq!(numerical_rank(&m, &tol()).unwrap(), numerical_rank(&t, &tol()).unwrap());
    }

    #[test]
    fn mean_transform_is_unitarily_covariant(t in matrix(), seed in any::<u64>()) {
        let u = generate(&GenSpec::new(GenKind::Unitary, t.nrows(), seed)).unwrap();
        let lhs = mean_transform(&(&u * &t * u.adjoint()), &tol()).unwrap();
        let rhs = &u * mean_transform(&t, &tol()).unwrap() * u.adjoint();
        prop_assert!(fro_norm(&(lhs - rhs)) <= bound(&t));
    }

    #[test]
    fn mean_transform_is_homogeneous(t in matrix(), r in 0.1f64..10.0, phase in -3.0f64..3.0) {
        let c = C64::from_polar(r, phase);
        let lhs = mean_transform(&t.map(|z| z * c), &tol()).unwrap();
        let rhs = mean_transform(&t, &tol()).unwrap().map(|z| z * c);
        prop_assert!(fro_norm(&(lhs - rhs)) <= bound(&t) * r.max(1.0));
    }

    #[test]
    fn normal_matrices_are_fixed(n in 1usize..7, seed in any::<u64>()) {
        let t = generate(&GenSpec::new(GenKind::Normal, n, seed)).unwrap();
        let m = mean_transform(&t, &tol()).unwrap();
        prop_assert!(fro_norm(&(m - &t)) <= bound(&t));
    }

    #[test]
    fn unitaries_are_fixed_by_aluthge(u in unitary()) {
        let a = aluthge_transform(&u, &tol()).unwrap();
        prop_assert!(fro_norm(&(a - &u)) <= bound(&u));
    }

    #[test]
    fn aluthge_preserves_spectrum_of_invertibles(n in 2usize..6, seed in any::<u64>()) {
        let t = generate(&GenSpec::new(GenKind::Ginibre, n, seed)).unwrap();
        let f = PolarFactorization::new(&t, &tol()).unwrap();
        prop_assume!(f.sigma_min() > 1e-3 * scale(&t));
        let a = aluthge_transform(&t, &tol()).unwrap();
        let (dt, da) = (t.determinant(), a.determinant());
        prop_assert!((dt - da).norm() <= 1e-8 * dt.norm().max(1.0));
        prop_assert!((t.trace() - a.trace()).norm() <= bound(&t));
    }

    #[test]
    fn adding_a_positive_matrix_is_loewner_larger(n in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = generate(&GenSpec::new(GenKind::IndefiniteHermitian, n.max(2), s1)).unwrap();
        let p = generate(&GenSpec::new(GenKind::Positive, n.max(2), s2)).unwrap();
        let order = loewner_compare(&(&a + &p), &a, &tol()).unwrap();
        prop_assert!(order.is_ge(), "{order:?}");
    }

    #[test]
    fn matrix_text_round_trips_exactly(t in matrix()) {
        let text = matrix_to_string(&t);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(matrix_to_string(&back), text);
    }
}
