use solvmanifold::parabolic::SubsetSelection;
use solvmanifold::realization::{build_realization, RealForm, Realization};
use solvmanifold::rootsystem::{all_subsets, generate_positive_roots, parse_type};
use solvmanifold::scalar::{q, Q};
use solvmanifold::verify::{prepare_ambient, verify_subset, VerifyOptions};

fn build(spec: &str, form: RealForm) -> Realization {
    build_realization(&generate_positive_roots(&parse_type(spec).unwrap()), form).unwrap()
}

fn proper_subsets(rank: usize) -> Vec<SubsetSelection> {
    all_subsets(rank).iter().filter_map(|s| SubsetSelection::new(rank, s).ok()).collect()
}

#[test]
fn every_check_passes_exactly_on_small_cases() {
    for (spec, form) in [
        ("A1", RealForm::Split),
        ("A2", RealForm::Split),
        ("B2", RealForm::Split),
        ("G2", RealForm::Split),
        ("A1+A1", RealForm::Split),
        ("A2", RealForm::Complexified),
    ] {
        let r = build(spec, form);
        let ambient = prepare_ambient::<Q>(&r).unwrap();
        let opts = VerifyOptions::for_dim(r.dim());
        for subset in proper_subsets(r.rank()) {
            let out = verify_subset(&r, &ambient, &subset, &opts).unwrap();
            let failed: Vec<_> = out.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "{spec} {form} {subset}: {failed:?}");
            assert_eq!(out.einstein.constant, q(-1, 4));
        }
    }
}
