use proptest::prelude::*;
use solvmanifold::rootsystem::{
    cartan_matrix, generate_positive_roots, is_trivial_subset, parse_type, positive_roots_by_reflection,
    spanned_roots, validate_cartan, Root,
};

const SMALL_TYPES: &[(char, usize)] = &[
    ('A', 1),
    ('A', 2),
    ('A', 3),
    ('A', 4),
    ('B', 2),
    ('B', 3),
    ('B', 4),
    ('C', 3),
    ('C', 4),
    ('D', 4),
    ('F', 4),
    ('G', 2),
];

#[test]
fn positive_root_counts_match_the_classification() {
    let expected = [
        (('A', 1), 1),
        (('A', 4), 10),
        (('A', 7), 28),
        (('B', 3), 9),
        (('B', 5), 25),
        (('C', 4), 16),
        (('D', 4), 12),
        (('D', 6), 30),
        (('E', 6), 36),
        (('E', 7), 63),
        (('E', 8), 120),
        (('F', 4), 24),
        (('G', 2), 6),
    ];
    for ((s, r), count) in expected {
        let rsd = generate_positive_roots(&cartan_matrix(s, r).unwrap());
        assert_eq!(rsd.positive_roots.len(), count, "{s}{r}");
    }
}

#[test]
fn root_strings_agree_with_reflection_closure() {
    for &(s, r) in SMALL_TYPES {
        let cm = cartan_matrix(s, r).unwrap();
        assert_eq!(generate_positive_roots(&cm).positive_roots, positive_roots_by_reflection(&cm), "{s}{r}");
    }
    let e8 = cartan_matrix('E', 8).unwrap();
    assert_eq!(generate_positive_roots(&e8).positive_roots, positive_roots_by_reflection(&e8));
}

#[test]
fn known_highest_roots() {
    let cases: &[(&str, &[i64])] = &[
        ("A3", &[1, 1, 1]),
        ("B3", &[1, 2, 2]),
        ("C3", &[2, 2, 1]),
        ("D4", &[1, 2, 1, 1]),
        ("F4", &[2, 3, 4, 2]),
        ("G2", &[3, 2]),
        ("E6", &[1, 2, 2, 3, 2, 1]),
        ("E8", &[2, 3, 4, 6, 5, 4, 3, 2]),
    ];
    for (spec, coeffs) in cases {
        let rsd = generate_positive_roots(&parse_type(spec).unwrap());
        assert_eq!(rsd.highest_roots, vec![Root::new(coeffs.to_vec())], "{spec}");
    }
}

#[test]
fn highest_root_dominates_its_component() {
    for spec in ["A2+G2", "B3+A1", "F4", "C4"] {
        let rsd = generate_positive_roots(&parse_type(spec).unwrap());
        assert_eq!(rsd.highest_roots.len(), rsd.components.len());
        for (comp, top) in rsd.components.iter().zip(&rsd.highest_roots) {
            for root in &rsd.positive_roots {
                if root.support().iter().all(|i| comp.contains(i)) {
                    assert!(top.dominates(root), "{spec}: {top} vs {root}");
                }
            }
        }
    }
}

#[test]
fn reducible_sums_are_block_diagonal() {
    let cm = parse_type("A1+A1").unwrap();
    assert_eq!(cm.entries(), &[vec![2, 0], vec![0, 2]]);
    let rsd = generate_positive_roots(&cm);
    assert_eq!(rsd.components, vec![vec![0], vec![1]]);
    assert!(is_trivial_subset(&cm, &[0]));
    assert!(!is_trivial_subset(&parse_type("B2").unwrap(), &[1]));
}

#[test]
fn transposed_builtins_are_accepted() {
    for &(s, r) in SMALL_TYPES {
        let cm = cartan_matrix(s, r).unwrap();
        let n = cm.rank();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cm.get(j, i)).collect()).collect();
        let back = validate_cartan(t).unwrap();
        assert_eq!(generate_positive_roots(&back).positive_roots.len(), generate_positive_roots(&cm).positive_roots.len());
    }
}

proptest! {
    #[test]
    fn spanned_roots_have_supports_in_the_subset(idx in 0usize..12, mask in 0u32..16) {
        let (s, r) = SMALL_TYPES[idx];
        let rsd = generate_positive_roots(&cartan_matrix(s, r).unwrap());
        let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let spanned = spanned_roots(&rsd, &subset).unwrap();
        let half = spanned.len() / 2;
        for (p, m) in spanned[..half].iter().zip(&spanned[half..]) {
            prop_assert!(p.is_positive());
            prop_assert_eq!(&p.neg(), m);
            prop_assert!(p.support().iter().all(|i| subset.contains(i)));
        }
        let count = rsd.positive_roots.iter().filter(|a| a.support().iter().all(|i| subset.contains(i))).count();
        prop_assert_eq!(half, count);
    }

    #[test]
    fn validated_rank_three_matrices_enumerate_consistently(
        a in -3i64..=0, b in -3i64..=0, c in -3i64..=0, d in -3i64..=0, e in -3i64..=0, f in -3i64..=0,
    ) {
        let m = vec![vec![2, a, b], vec![c, 2, d], vec![e, f, 2]];
        if let Ok(cm) = validate_cartan(m) {
            let roots = positive_roots_by_reflection(&cm);
            prop_assert!(roots.len() <= 9);
            prop_assert_eq!(generate_positive_roots(&cm).positive_roots, roots);
        }
    }
}
