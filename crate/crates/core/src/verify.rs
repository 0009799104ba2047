//! The full per-subset verification pipeline.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::curvature::{
    einstein_check, ricci_besse, ricci_definition, ricci_nilpotent, ricci_wolter, second_fundamental_form,
    EinsteinReport, MetricLieAlgebra,
};
use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::parabolic::{
    attached_solvmanifold, iwasawa_type_check, langlands, mean_curvature_via_involution, nilpotency_degree,
    rank_one_reduction, AttachedSolvmanifold, SubsetSelection,
};
use crate::realization::Realization;
use crate::rootsystem::{is_trivial_subset, Root};
use crate::scalar::{q, Scalar, Q};

/// Relative tolerance used in floating mode unless overridden.
pub fn default_tolerance(dim: usize) -> f64 {
    if dim > 100 {
        1e-8
    } else {
        1e-9
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Relative tolerance for floating mode; ignored in exact mode.
    pub tol: f64,
    /// Also evaluate the definition route and compare it with the others.
    pub definition_route: bool,
    /// Check the nilpotent Ricci difference identity.
    pub lemma: bool,
}

impl VerifyOptions {
    pub fn for_dim(dim: usize) -> Self {
        VerifyOptions {
            tol: default_tolerance(dim),
            definition_route: true,
            lemma: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub g: usize,
    pub a: usize,
    pub n: usize,
    pub m: usize,
}

/// Combinatorial data of a subset, without curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub subset: SubsetSelection,
    pub dims: Dimensions,
    pub kind: i64,
    pub nilpotency: (usize, i64),
    pub trivial_subset: bool,
}

pub fn enumerate_subset(r: &Realization, subset: &SubsetSelection) -> Result<Enumeration> {
    let l = langlands(r, subset)?;
    let s = attached_solvmanifold(r, subset)?;
    Ok(Enumeration {
        subset: subset.clone(),
        dims: Dimensions {
            g: r.dim(),
            a: l.a_basis.len(),
            n: l.n_basis.len(),
            m: l.m_basis.len(),
        },
        kind: l.gradation.kind,
        nilpotency: nilpotency_degree(r, &s),
        trivial_subset: is_trivial_subset(&r.roots().cartan, subset.indices()),
    })
}

/// The `Λ' = ∅` data shared by every subset of one realization.
#[derive(Debug, Clone)]
pub struct Ambient<S> {
    pub solvmanifold: AttachedSolvmanifold,
    pub algebra: MetricLieAlgebra<S>,
    pub ricci: Matrix<S>,
    /// `Ric^{n_∅}` as an operator on `n_∅` (columns are images).
    pub nil_ricci_operator: Matrix<S>,
    /// Index inside `n_∅` of each realization coordinate (`usize::MAX` off `n_∅`).
    n_position: Vec<usize>,
}

pub fn prepare_ambient<S: Scalar>(r: &Realization) -> Result<Ambient<S>> {
    let s = attached_solvmanifold(r, &SubsetSelection::empty(r.rank())?)?;
    let algebra = s.algebra.to_scalar::<S>();
    let ricci = ricci_besse(&algebra).matrix;
    let nil = algebra.coordinate_subalgebra(&s.n_indices())?;
    let nil_ricci_operator = ricci_operator(&nil)?;
    let mut n_position = vec![usize::MAX; r.dim()];
    for (p, &x) in s.n_coordinates.iter().enumerate() {
        n_position[x] = p;
    }
    Ok(Ambient {
        solvmanifold: s,
        algebra,
        ricci,
        nil_ricci_operator,
        n_position,
    })
}

/// `Ric` with `ric(X, Y) = ⟨Ric X, Y⟩`, i.e. `G⁻¹ ric`.
fn ricci_operator<S: Scalar>(nil: &MetricLieAlgebra<S>) -> Result<Matrix<S>> {
    let ric = ricci_nilpotent(nil)?.matrix;
    Ok(nil.gram_inv().mul(&ric))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IwasawaFlags {
    pub standard: bool,
    pub symmetric: bool,
    pub positive: bool,
}

/// Everything verified about one subset.
#[derive(Debug, Clone)]
pub struct SubsetOutcome<S> {
    pub subset: SubsetSelection,
    pub dims: Dimensions,
    pub kind: i64,
    pub nilpotency: (usize, i64),
    pub einstein: EinsteinReport<S>,
    pub iwasawa: IwasawaFlags,
    pub is_minimal: bool,
    pub is_totally_geodesic: bool,
    pub trivial_subset: bool,
    pub ricci_restriction: bool,
    pub checks: Vec<Check>,
}

impl<S> SubsetOutcome<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn to_s<S: Scalar>(v: &[Q]) -> Vec<S> {
    v.iter().map(S::from_rational).collect()
}

pub fn verify_subset<S: Scalar>(
    r: &Realization,
    ambient: &Ambient<S>,
    subset: &SubsetSelection,
    opts: &VerifyOptions,
) -> Result<SubsetOutcome<S>> {
    let tol = opts.tol;
    let l = langlands(r, subset)?;
    let mut checks = l.checks.clone();
    let s = attached_solvmanifold(r, subset)?;
    let trivial = is_trivial_subset(&r.roots().cartan, subset.indices());
    let dims = Dimensions {
        g: r.dim(),
        a: s.a_dim,
        n: s.n_dim(),
        m: l.m_basis.len(),
    };
    checks.push(Check::flag(
        "dim s = |Λ∖Λ'| + dim n",
        dims.a + dims.n == s.algebra.dim() && dims.n == l.n_basis.len(),
    ));
    let amb_q = &ambient.solvmanifold.algebra;
    let restricted = amb_q.gram().submatrix(&s.embedding, &s.embedding);
    checks.push(Check::zero_matrix("sub Gram restricts ambient", &restricted.sub(s.algebra.gram()), 1.0));

    let iw = iwasawa_type_check(&s);
    checks.extend(iw.checks.iter().cloned());
    let nilpotency = nilpotency_degree(r, &s);
    checks.push(Check::flag("nilpotency degree", nilpotency.0 as i64 == nilpotency.1));

    // Ricci tensors
    let m = s.algebra.to_scalar::<S>();
    let ric = ricci_besse(&m).matrix;
    let scale = ric.max_abs().max(m.gram().max_abs());
    checks.push(Check::within_matrix("ricci symmetric", &ric.sub(&ric.transpose()), scale, tol));
    if opts.definition_route {
        let def = ricci_definition(&m).matrix;
        checks.push(Check::within_matrix("definition route = besse route", &def.sub(&ric), scale, tol));
    }
    let wolter = ricci_wolter(&m)?.matrix;
    checks.push(Check::within_matrix("wolter route = besse route", &wolter.sub(&ric), scale, tol));
    let einstein = einstein_check(&ric, m.gram(), tol)?;
    checks.push(Check::new("einstein", einstein.is_einstein, einstein.residual));
    let quarter = S::from_rational(&q(1, 4));
    checks.push(Check::within(
        "einstein constant -1/4",
        &[einstein.constant.clone() + quarter.clone()],
        1.0,
        tol,
    ));

    // mean curvature
    let h0 = m.mean_curvature();
    let h0_inv = mean_curvature_via_involution(r, &s.n_coordinates);
    let mut h0_real = linalg::zero_vec::<S>(r.dim());
    for (c, b) in h0.iter().zip(&s.ambient_basis) {
        linalg::axpy(&mut h0_real, c, &to_s(b));
    }
    let h_scale = linalg::max_abs_vec(&h0_inv).max(1.0);
    checks.push(Check::within(
        "H0 formulas agree",
        &linalg::vec_sub(&h0_real, &to_s(&h0_inv)),
        h_scale,
        tol,
    ));
    // components along a_∅ ⊖ a_{Λ'} = span{H_{α_j} : j ∈ Λ'} and off a
    let mut off: Vec<Q> = subset
        .indices()
        .iter()
        .map(|&j| r.root_eval(&Root::simple(r.rank(), j), &h0_inv))
        .collect();
    off.extend((0..r.dim()).filter(|x| !r.a_indices().contains(x)).map(|x| h0_inv[x].clone()));
    checks.push(Check::zero_vec("H0 in a_{Λ'}", &off, 1.0));

    // second fundamental form
    let report = second_fundamental_form(&m, &ambient.algebra, &s.embedding)?;
    let sub_scale = m.gram().max_abs();
    for c in &report.checks {
        if c.name == "h normal-valued" || c.name == "mean curvature from H0" {
            checks.push(c.clone());
        }
    }
    checks.push(Check::within("minimal", &report.mean_curvature, sub_scale, tol));
    let nonzero_root_h = s.n_indices().into_iter().any(|i| {
        report
            .h(i, i)
            .iter()
            .any(|x| if S::EXACT { !x.is_zero() } else { x.abs_f64() > tol * sub_scale.max(1.0) })
    });
    let geodesic_ok = if trivial {
        report.h_tensor.iter().flatten().all(|x| if S::EXACT { x.is_zero() } else { x.abs_f64() <= tol * sub_scale.max(1.0) })
    } else {
        nonzero_root_h
    };
    checks.push(Check::flag("totally geodesic iff trivial", geodesic_ok));

    // Ricci restriction
    let restricted = ambient.ricci.submatrix(&s.embedding, &s.embedding);
    let restriction = Check::within_matrix("ricci restriction", &restricted.sub(&ric), scale, tol);
    let ricci_restriction = restriction.passed;
    checks.push(restriction);

    if opts.lemma {
        checks.extend(lemma_checks(r, ambient, &s, &m, tol)?);
    }

    // rank one reduction ℝH₀ ⊕ n, with H₀ = Σ α_i(H₀) H^i
    let mut h0_s = linalg::zero_vec::<Q>(s.algebra.dim());
    for (p, i) in subset.complement().into_iter().enumerate() {
        h0_s[p] = r.root_eval(&Root::simple(r.rank(), i), &h0_inv);
    }
    let reduced = rank_one_reduction(&s, &h0_s)?.to_scalar::<S>();
    let reduced_ric = ricci_besse(&reduced).matrix;
    let reduced_einstein = einstein_check(&reduced_ric, reduced.gram(), tol)?;
    checks.push(Check::within(
        "rank one reduction einstein -1/4",
        &[reduced_einstein.constant + quarter],
        1.0,
        tol,
    ));
    checks.push(Check::new("rank one reduction einstein", reduced_einstein.is_einstein, reduced_einstein.residual));

    Ok(SubsetOutcome {
        subset: subset.clone(),
        dims,
        kind: l.gradation.kind,
        nilpotency,
        einstein,
        iwasawa: IwasawaFlags {
            standard: iw.standard,
            symmetric: iw.symmetric,
            positive: iw.positive,
        },
        is_minimal: report.is_minimal,
        is_totally_geodesic: report.is_totally_geodesic,
        trivial_subset: trivial,
        ricci_restriction,
        checks,
    })
}

/// `Ric^{n_∅}(X) - Ric^{n_{Λ'}}(X) = [H₀^⊥, X]` on a basis of `n_{Λ'}`, and
/// the nilpotent route against the trace formula on `n_{Λ'}`.
fn lemma_checks<S: Scalar>(
    r: &Realization,
    ambient: &Ambient<S>,
    s: &AttachedSolvmanifold,
    m: &MetricLieAlgebra<S>,
    tol: f64,
) -> Result<Vec<Check>> {
    let nil = m.coordinate_subalgebra(&s.n_indices())?;
    let nil_ric = ricci_nilpotent(&nil)?.matrix;
    let besse = ricci_besse(&nil).matrix;
    let scale = besse.max_abs().max(nil.gram().max_abs());
    let route = Check::within_matrix("nilpotent route = besse route on n", &nil_ric.sub(&besse), scale, tol);
    let op = nil.gram_inv().mul(&nil_ric);

    let inside: std::collections::BTreeSet<usize> = s.n_coordinates.iter().copied().collect();
    let perp: Vec<usize> = ambient
        .solvmanifold
        .n_coordinates
        .iter()
        .copied()
        .filter(|x| !inside.contains(x))
        .collect();
    let h_perp = mean_curvature_via_involution(r, &perp);
    let full = &ambient.nil_ricci_operator;
    let n_full = full.rows();
    let mut diff: Vec<S> = Vec::new();
    let mut stays_in_n = true;
    for (p, &x) in s.n_coordinates.iter().enumerate() {
        let px = ambient.n_position[x];
        let mut lhs = full.column(px);
        for (qi, &y) in s.n_coordinates.iter().enumerate() {
            lhs[ambient.n_position[y]] -= &op[(qi, p)];
        }
        let bracket = r.bracket().bracket(&h_perp, &linalg::unit_vec(r.dim(), x));
        let mut rhs = linalg::zero_vec::<S>(n_full);
        for (y, c) in bracket.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match ambient.n_position[y] {
                usize::MAX => stays_in_n = false,
                py => rhs[py] = S::from_rational(c),
            }
        }
        diff.extend(linalg::vec_sub(&lhs, &rhs));
    }
    let mut lemma = Check::within("nilpotent ricci difference", &diff, full.max_abs().max(1.0), tol);
    lemma.passed &= stays_in_n;
    Ok(vec![route, lemma])
}
