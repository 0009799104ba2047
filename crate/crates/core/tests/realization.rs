use num_traits::{One, Zero};
use solvmanifold::linalg;
use solvmanifold::realization::{build_realization, RealForm, Realization};
use solvmanifold::rootsystem::{generate_positive_roots, parse_type, Root};
use solvmanifold::scalar::{qi, Q};

const SMALL: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"];

fn build(spec: &str, form: RealForm) -> Realization {
    build_realization(&generate_positive_roots(&parse_type(spec).unwrap()), form).unwrap()
}

#[test]
fn every_small_split_realization_validates() {
    for spec in SMALL {
        let r = build(spec, RealForm::Split);
        r.validate().unwrap_or_else(|e| panic!("{spec}: {e}"));
        let npos = r.roots().positive_roots.len();
        assert_eq!(r.dim(), r.rank() + 2 * npos, "{spec}");
        assert!(r.k0_indices().is_empty());
    }
}

#[test]
fn complexified_realizations_validate() {
    for spec in ["A1", "A2", "A3", "B2", "G2"] {
        let r = build(spec, RealForm::Complexified);
        r.validate().unwrap_or_else(|e| panic!("{spec}: {e}"));
        let npos = r.roots().positive_roots.len();
        assert_eq!(r.dim(), 2 * (r.rank() + 2 * npos), "{spec}");
        assert_eq!(r.k0_indices().len(), r.rank());
        for root in r.all_roots() {
            assert_eq!(r.root_space(&root).len(), 2);
        }
    }
}

#[test]
fn reducible_realization_validates() {
    build("A1+A2", RealForm::Split).validate().unwrap();
    build("A1+A1", RealForm::Complexified).validate().unwrap();
}

#[test]
fn root_vectors_satisfy_their_defining_equations() {
    for spec in ["A2", "B3", "G2", "C3"] {
        for form in [RealForm::Split, RealForm::Complexified] {
            let r = build(spec, form);
            let n = r.dim();
            for root in r.all_roots() {
                let h = r.root_vector(&root).unwrap();
                // H_α ∈ a
                for x in 0..n {
                    if !r.a_indices().contains(&x) {
                        assert!(h.coordinates[x].is_zero());
                    }
                }
                for &ak in r.a_indices() {
                    let e = linalg::unit_vec::<Q>(n, ak);
                    assert_eq!(linalg::inner(r.bsigma(), &h.coordinates, &e), r.root_eval(&root, &e));
                }
                assert_eq!(r.root_vector(&root.neg()).unwrap().coordinates, linalg::scaled(&h.coordinates, &qi(-1)));
                // H_α = [σX, X] for a B_σ-unit X ∈ g_α; X is a coordinate vector up to scale
                let x = r.root_space(&root)[0];
                let e = linalg::unit_vec::<Q>(n, x);
                let norm = r.bsigma()[(x, x)].clone();
                let v = r.bracket().bracket(&r.apply_involution(&e), &e);
                assert_eq!(linalg::scaled(&v, &(Q::one() / norm)), h.coordinates, "{spec} {root}");
            }
        }
    }
}

#[test]
fn dual_basis_is_dual() {
    for spec in SMALL {
        let r = build(spec, RealForm::Split);
        let d = r.dual_basis().unwrap();
        for i in 0..r.rank() {
            for (j, hj) in d.vectors.iter().enumerate() {
                let want = if i == j { qi(1) } else { qi(0) };
                assert_eq!(r.root_eval(&Root::simple(r.rank(), i), hj), want);
            }
        }
    }
}

#[test]
fn sigma_swaps_opposite_root_spaces() {
    let r = build("B3", RealForm::Split);
    let n = r.dim();
    for root in r.all_roots() {
        let target: Vec<Vec<Q>> = r.root_space(&root.neg()).iter().map(|&y| linalg::unit_vec(n, y)).collect();
        for &x in r.root_space(&root) {
            assert!(linalg::in_span(&target, &r.involution().column(x)));
        }
    }
}

#[test]
fn k_and_p_split_the_algebra() {
    let r = build("A2", RealForm::Split);
    let (k, p) = (r.k_basis(), r.p_basis());
    assert_eq!(k.len(), 3);
    assert_eq!(p.len(), 5);
    let all: Vec<Vec<Q>> = k.iter().chain(&p).cloned().collect();
    assert_eq!(linalg::rank(&all), 8);
    let a = build("A2", RealForm::Complexified);
    // k = su(3) inside sl(3, C)
    assert_eq!(a.k_basis().len(), 8);
}
