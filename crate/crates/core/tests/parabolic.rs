use proptest::prelude::*;
use solvmanifold::error::Error;
use solvmanifold::linalg::{self, Matrix};
use solvmanifold::parabolic::{
    attached_solvmanifold, characteristic_element, gradation, iwasawa_type_check, langlands, nilpotency_degree,
    rank_one_reduction, SubsetSelection,
};
use solvmanifold::curvature::{einstein_check, ricci_besse};
use solvmanifold::realization::{build_realization, RealForm, Realization};
use solvmanifold::rootsystem::{all_subsets, generate_positive_roots, parse_type, Root};
use solvmanifold::scalar::{q, qi, Q};

fn build(spec: &str, form: RealForm) -> Realization {
    build_realization(&generate_positive_roots(&parse_type(spec).unwrap()), form).unwrap()
}

fn subset(r: &Realization, idx: &[usize]) -> SubsetSelection {
    SubsetSelection::new(r.rank(), idx).unwrap()
}

#[test]
fn characteristic_element_values() {
    let r = build("A2", RealForm::Split);
    let z = characteristic_element(&r, &subset(&r, &[0])).unwrap();
    assert_eq!(z, r.dual_basis().unwrap().vectors[1]);
    assert_eq!(r.root_eval(&Root::new(vec![1, 0]), &z), qi(0));
    assert_eq!(r.root_eval(&Root::new(vec![0, 1]), &z), qi(1));
    assert!(matches!(SubsetSelection::new(2, &[0, 1]), Err(Error::Input(_))));
}

#[test]
fn gradation_of_a1() {
    let r = build("A1", RealForm::Split);
    let z = characteristic_element(&r, &subset(&r, &[])).unwrap();
    let g = gradation(&r, &z).unwrap();
    assert_eq!(g.kind, 1);
    // basis (h, e, f)
    assert_eq!(g.layer(1), &[1]);
    assert_eq!(g.layer(0), &[0]);
    assert_eq!(g.layer(-1), &[2]);
}

#[test]
fn langlands_dimensions() {
    let cases: &[(&str, RealForm, &[usize], (usize, usize, usize))] = &[
        ("A2", RealForm::Split, &[0], (3, 1, 2)),
        ("A2", RealForm::Split, &[], (0, 2, 3)),
        ("A1", RealForm::Complexified, &[], (1, 1, 2)),
    ];
    for (spec, form, idx, dims) in cases {
        let r = build(spec, *form);
        let l = langlands(&r, &subset(&r, idx)).unwrap();
        assert_eq!((l.m_basis.len(), l.a_basis.len(), l.n_basis.len()), *dims, "{spec} {form}");
        assert!(l.checks.iter().all(|c| c.passed), "{:?}", l.checks);
    }
}

#[test]
fn a1_attached_solvmanifold_in_the_h_e_basis() {
    let r = build("A1", RealForm::Split);
    let s = attached_solvmanifold(&r, &subset(&r, &[])).unwrap();
    let t = Matrix::from_rows(vec![vec![qi(2), qi(0)], vec![qi(0), qi(1)]]);
    let m = s.algebra.change_basis(&t).unwrap();
    assert_eq!(m.gram(), &Matrix::from_rows(vec![vec![qi(16), qi(0)], vec![qi(0), qi(4)]]));
    assert_eq!(m.bracket().coefficient(0, 1, 1), qi(2));
    let report = iwasawa_type_check(&s);
    assert!(report.passed());
    assert!(report.checks.iter().all(|c| c.residual == 0.0));
}

#[test]
fn iwasawa_eigenvalues_on_a2_with_alpha1() {
    let r = build("A2", RealForm::Split);
    let s = attached_solvmanifold(&r, &subset(&r, &[0])).unwrap();
    assert_eq!(s.algebra.dim(), 3);
    assert!(iwasawa_type_check(&s).passed());
    let ad = s.algebra.bracket().ad_basis(0);
    for i in s.n_indices() {
        assert_eq!(ad[(i, i)], qi(1));
    }
}

#[test]
fn nilpotency_spot_values() {
    for (spec, idx, want) in [("A2", &[][..], 2), ("A2", &[0][..], 1), ("G2", &[][..], 5), ("F4", &[][..], 11)] {
        let r = build(spec, RealForm::Split);
        let s = attached_solvmanifold(&r, &subset(&r, idx)).unwrap();
        assert_eq!(nilpotency_degree(&r, &s), (want as usize, want), "{spec} {idx:?}");
    }
}

#[test]
fn rank_one_reductions() {
    let r = build("A1", RealForm::Split);
    let s = attached_solvmanifold(&r, &subset(&r, &[])).unwrap();
    let reduced = rank_one_reduction(&s, &s.algebra.mean_curvature()).unwrap();
    assert_eq!(reduced.dim(), s.algebra.dim());
    let r = build("A2", RealForm::Split);
    let s = attached_solvmanifold(&r, &subset(&r, &[])).unwrap();
    let reduced = rank_one_reduction(&s, &s.algebra.mean_curvature()).unwrap();
    assert_eq!(reduced.dim(), 4);
    let e = einstein_check(&ricci_besse(&reduced).matrix, reduced.gram(), 0.0).unwrap();
    assert!(e.is_einstein);
    assert_eq!(e.constant, q(-1, 4));
}

#[test]
fn trivial_subset_gives_the_complementary_factor() {
    let sum = build("A1+A2", RealForm::Split);
    let s = attached_solvmanifold(&sum, &subset(&sum, &[1, 2])).unwrap();
    let a1 = build("A1", RealForm::Split);
    let t = attached_solvmanifold(&a1, &subset(&a1, &[])).unwrap();
    assert_eq!(s.algebra.gram(), t.algebra.gram());
    assert_eq!(s.algebra.bracket(), t.algebra.bracket());

    let s = attached_solvmanifold(&sum, &subset(&sum, &[0])).unwrap();
    let a2 = build("A2", RealForm::Split);
    let t = attached_solvmanifold(&a2, &subset(&a2, &[])).unwrap();
    assert_eq!(s.algebra.gram(), t.algebra.gram());
    assert_eq!(s.algebra.bracket(), t.algebra.bracket());
}

#[test]
fn sub_gram_restricts_the_ambient_gram() {
    for spec in ["B3", "G2", "A1+B2"] {
        let r = build(spec, RealForm::Split);
        let amb = attached_solvmanifold(&r, &subset(&r, &[])).unwrap();
        for idx in all_subsets(r.rank()) {
            let Ok(sel) = SubsetSelection::new(r.rank(), &idx) else { continue };
            let s = attached_solvmanifold(&r, &sel).unwrap();
            assert_eq!(&amb.algebra.gram().submatrix(&s.embedding, &s.embedding), s.algebra.gram());
            for (i, b) in s.ambient_basis.iter().enumerate() {
                assert_eq!(&amb.ambient_basis[s.embedding[i]], b);
            }
        }
    }
}

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1+A2", "D4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gradation_layers_are_ad_z_eigenspaces(idx in 0usize..9, coeffs in prop::collection::vec(0i64..4, 4), complexified: bool) {
        let form = if complexified && idx < 7 { RealForm::Complexified } else { RealForm::Split };
        let r = build(TYPES[idx], form);
        let dual = r.dual_basis().unwrap();
        let mut z = linalg::zero_vec::<Q>(r.dim());
        for (c, h) in coeffs.iter().zip(&dual.vectors) {
            linalg::axpy(&mut z, &qi(*c), h);
        }
        let g = gradation(&r, &z).unwrap();
        prop_assert!(g.checks(&r).iter().all(|c| c.passed));
        for root in r.all_roots() {
            let want: i64 = root.coeffs.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
            for &x in r.root_space(&root) {
                prop_assert_eq!(g.grade_of[x], want);
            }
        }
        let top = g.layers.keys().map(|k| k.abs()).max().unwrap();
        prop_assert_eq!(g.kind, top);
    }

    #[test]
    fn attached_dimension_formula(idx in 0usize..9, mask in 0u32..16) {
        let r = build(TYPES[idx], RealForm::Split);
        let chosen: Vec<usize> = (0..r.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let Ok(sel) = SubsetSelection::new(r.rank(), &chosen) else { return Ok(()) };
        let s = attached_solvmanifold(&r, &sel).unwrap();
        let z = characteristic_element(&r, &sel).unwrap();
        let n: usize = r.roots().positive_roots.iter()
            .filter(|a| r.root_eval(a, &z) > qi(0))
            .map(|a| r.root_space(a).len())
            .sum();
        prop_assert_eq!(s.algebra.dim(), r.rank() - chosen.len() + n);
        let l = langlands(&r, &sel).unwrap();
        prop_assert!(l.checks.iter().all(|c| c.passed));
        prop_assert!(iwasawa_type_check(&s).passed());
    }
}
