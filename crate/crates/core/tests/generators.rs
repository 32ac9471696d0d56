use mean_transform::generators::{certify, generate, random_shift_weights, GenKind, GenSpec};
use mean_transform::tolerance::ToleranceContext;

fn kinds(n: usize) -> Vec<GenKind> {
    let mut k = vec![
        GenKind::Ginibre,
        GenKind::Unitary,
        GenKind::Normal,
        GenKind::Positive,
        GenKind::PositiveRidge,
        GenKind::BinormalWeightedPerm,
        GenKind::SquareZero,
        GenKind::OppositeFreeUnitary,
        GenKind::IndefiniteHermitian,
        GenKind::SelfAdjointPolar,
        GenKind::PartialIsometry(n - 1),
        GenKind::PartialIsometry(n),
        GenKind::Singular(n - 1),
        GenKind::Singular(1),
    ];
    let (a, b) = random_shift_weights(n as u64);
    k.push(GenKind::ShiftLike(a, b));
    k
}

#[test]
fn every_sample_is_certified() {
    let tol = ToleranceContext::default();
    let mut failures = Vec::new();
    for n in 2..=8 {
        for kind in kinds(n) {
            for seed in 0..100 {
                let spec = GenSpec::new(kind, n, seed);
                let t = generate(&spec).unwrap();
                assert_eq!(t.shape(), (n, n));
                if !certify(&spec, &t, &tol).unwrap() {
                    failures.push(format!("{kind} n={n} seed={seed}"));
                }
            }
        }
    }
    assert!(failures.is_empty(), "uncertified samples: {failures:?}");
}

#[test]
fn same_seed_same_matrix() {
    for kind in kinds(4) {
        let spec = GenSpec::new(kind, 4, 123);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{kind}");
    }
}

#[test]
fn kind_names_round_trip() {
    for kind in kinds(5) {
        let back: GenKind = kind.to_string().parse().unwrap();
        assert_eq!(back, kind);
    }
    assert!("WHATEVER".parse::<GenKind>().is_err());
    assert!("SINGULAR(x)".parse::<GenKind>().is_err());
}

#[test]
fn bad_dimensions_are_rejected() {
    assert!(generate(&GenSpec::new(GenKind::Ginibre, 0, 0)).is_err());
    assert!(generate(&GenSpec::new(GenKind::Singular(5), 4, 0)).is_err());
    assert!(generate(&GenSpec::new(GenKind::IndefiniteHermitian, 1, 0)).is_err());
    assert!(generate(&GenSpec::new(GenKind::ShiftLike(1.0, 2.0), 1, 0)).is_err());
    assert!(generate(&GenSpec::new(GenKind::ShiftLike(1.0, 1.0), 2, 0)).is_err());
}
