//! Parabolic subalgebras from subsets of simple roots, and the metric
//! solvable Lie algebras attached to them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::check::Check;
use crate::curvature::{IwasawaReport, MetricLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::realization::Realization;
use crate::rootsystem::{spanned_roots, Root};
use crate::scalar::{qi, rational_to_i64, Q};

/// A proper subset `Λ'` of the simple roots, by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSelection {
    rank: usize,
    indices: Vec<usize>,
}

impl SubsetSelection {
    pub fn new(rank: usize, indices: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        if set.len() != indices.len() {
            return Err(Error::input("subset lists an index twice"));
        }
        if let Some(&i) = set.iter().find(|&&i| i >= rank) {
            return Err(Error::input(format!("simple root index {i} out of range for rank {rank}")));
        }
        if set.len() == rank {
            return Err(Error::input("the full set of simple roots is not a proper subset"));
        }
        Ok(SubsetSelection {
            rank,
            indices: set.into_iter().collect(),
        })
    }

    pub fn empty(rank: usize) -> Result<Self> {
        SubsetSelection::new(rank, &[])
    }

    /// Parses `"0,2"`; the empty string is `∅`.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let indices = if text.is_empty() || text == "{}" {
            Vec::new()
        } else {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::input(format!("bad subset index {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        SubsetSelection::new(rank, &indices)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// `Λ ∖ Λ'`, sorted.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| !self.contains(i)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for SubsetSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `Z = Σ_{i ∉ Λ'} H^i`.
pub fn characteristic_element(r: &Realization, subset: &SubsetSelection) -> Result<Vec<Q>> {
    if subset.rank() != r.rank() {
        return Err(Error::input("subset rank differs from the realization rank"));
    }
    let dual = r.dual_basis()?;
    let mut z = linalg::zero_vec::<Q>(r.dim());
    for i in subset.complement() {
        linalg::axpy(&mut z, &Q::one(), &dual.vectors[i]);
    }
    Ok(z)
}

/// Eigenspace decomposition of `ad_Z`, by basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradation {
    pub characteristic: Vec<Q>,
    /// Grade `k` to the coordinates spanning `gᵏ`, each sorted.
    pub layers: BTreeMap<i64, Vec<usize>>,
    /// `ν = max |k|` over occupied layers.
    pub kind: i64,
    /// Grade of each coordinate.
    pub grade_of: Vec<i64>,
}

impl Gradation {
    pub fn layer(&self, k: i64) -> &[usize] {
        self.layers.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Coordinates of positive grade, in root order.
    pub fn positive_coordinates(&self, r: &Realization) -> Vec<usize> {
        let mut out = Vec::new();
        for root in &r.roots().positive_roots {
            for &x in r.root_space(root) {
                if self.grade_of[x] > 0 {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Eigenvector identity `[Z, b_x] = k b_x`, the partition of the basis
    /// into layers, and the law `[gⁱ, gʲ] ⊆ g^{i+j}`.
    pub fn checks(&self, r: &Realization) -> Vec<Check> {
        let n = r.dim();
        let mut eigen_residual: Vec<Q> = Vec::new();
        for x in 0..n {
            let e = linalg::unit_vec::<Q>(n, x);
            let v = r.bracket().bracket(&self.characteristic, &e);
            let want = linalg::scaled(&e, &qi(self.grade_of[x]));
            eigen_residual.extend(linalg::vec_sub(&v, &want));
        }
        let covered: usize = self.layers.values().map(Vec::len).sum();
        let mut law_ok = true;
        for x in 0..n {
            for y in 0..n {
                let k = self.grade_of[x] + self.grade_of[y];
                for (l, c) in r.bracket().basis_bracket(x, y) {
                    if !c.is_zero() && self.grade_of[*l] != k {
                        law_ok = false;
                    }
                }
            }
        }
        vec![
            Check::zero_vec("ad_Z eigenspaces", &eigen_residual, 1.0),
            Check::flag("layers partition g", covered == n),
            Check::flag("gradation law", law_ok),
        ]
    }
}

/// The gradation defined by `Z = Σ cᵢ Hⁱ`, `cᵢ` non-negative integers.
pub fn gradation(r: &Realization, z: &[Q]) -> Result<Gradation> {
    let n = r.dim();
    if z.len() != n {
        return Err(Error::input("characteristic element has the wrong length"));
    }
    let a: BTreeSet<usize> = r.a_indices().iter().copied().collect();
    if (0..n).any(|x| !a.contains(&x) && !z[x].is_zero()) {
        return Err(Error::input("characteristic element must lie in a"));
    }
    for i in 0..r.rank() {
        let c = r.root_eval(&Root::simple(r.rank(), i), z);
        match rational_to_i64(&c) {
            Some(v) if v >= 0 => {}
            _ => {
                return Err(Error::input(format!(
                    "simple root {i} takes the value {c} on Z; expected a non-negative integer"
                )))
            }
        }
    }
    let mut grade_of = vec![0i64; n];
    for root in r.all_roots() {
        let k = rational_to_i64(&r.root_eval(&root, z)).expect("integral on simple roots");
        for &x in r.root_space(&root) {
            grade_of[x] = k;
        }
    }
    let mut layers: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (x, &k) in grade_of.iter().enumerate() {
        layers.entry(k).or_default().push(x);
    }
    let kind = layers.keys().map(|k| k.abs()).max().unwrap_or(0);
    Ok(Gradation {
        characteristic: z.to_vec(),
        layers,
        kind,
        grade_of,
    })
}

/// `q_{Λ'} = m_{Λ'} ⊕ a_{Λ'} ⊕ n_{Λ'}`, with vectors in the realization's
/// coordinates.
#[derive(Debug, Clone)]
pub struct LanglandsDecomposition {
    pub subset: SubsetSelection,
    pub gradation: Gradation,
    pub m_basis: Vec<Vec<Q>>,
    /// `H^i` for `i ∉ Λ'`.
    pub a_basis: Vec<Vec<Q>>,
    /// Coordinates of positive grade, in root order.
    pub n_basis: Vec<usize>,
    /// Coordinates of non-negative grade, sorted.
    pub q_coordinates: Vec<usize>,
    pub checks: Vec<Check>,
}

pub fn langlands(r: &Realization, subset: &SubsetSelection) -> Result<LanglandsDecomposition> {
    let n = r.dim();
    let z = characteristic_element(r, subset)?;
    let grad = gradation(r, &z)?;
    let dual = r.dual_basis()?;
    let a_basis: Vec<Vec<Q>> = subset.complement().iter().map(|&i| dual.vectors[i].clone()).collect();
    let unit = |x: usize| linalg::unit_vec::<Q>(n, x);
    let g0: Vec<Vec<Q>> = grad.layer(0).iter().map(|&x| unit(x)).collect();
    let m_basis = linalg::orthogonal_complement(r.bsigma(), &g0, &a_basis);
    let n_basis = grad.positive_coordinates(r);
    let q_coordinates: Vec<usize> = (0..n).filter(|&x| grad.grade_of[x] >= 0).collect();

    let mut checks = grad.checks(r);

    // a_{Λ'} as the common kernel of the β ∈ ⟨Λ'⟩
    let a_full: Vec<Vec<Q>> = r.a_indices().iter().map(|&x| unit(x)).collect();
    let spanned = spanned_roots(r.roots(), subset.indices())?;
    let half = spanned.len() / 2;
    let h_betas = spanned[..half]
        .iter()
        .map(|b| r.root_vector(b).map(|v| v.coordinates))
        .collect::<Result<Vec<_>>>()?;
    let a_kernel = linalg::orthogonal_complement(r.bsigma(), &a_full, &h_betas);
    checks.push(Check::flag("a constructions agree", linalg::same_span(&a_kernel, &a_basis)));

    // q from the gradation versus q from Δ⁺ ∪ ⟨Λ'⟩
    let mut q_roots: BTreeSet<usize> = r.g0_indices().into_iter().collect();
    for root in r.roots().positive_roots.iter().chain(&spanned) {
        q_roots.extend(r.root_space(root));
    }
    let q_set: BTreeSet<usize> = q_coordinates.iter().copied().collect();
    checks.push(Check::flag("q constructions agree", q_roots == q_set));

    let n_set: BTreeSet<usize> = n_basis.iter().copied().collect();
    let ideal = q_coordinates.iter().all(|&x| {
        n_basis
            .iter()
            .all(|&y| r.bracket().basis_bracket(x, y).iter().all(|(l, _)| n_set.contains(l)))
    });
    checks.push(Check::flag("n ideal of q", ideal));
    let n_vecs: Vec<Vec<Q>> = n_basis.iter().map(|&x| unit(x)).collect();
    let lcs = r.bracket().lower_central_series(&n_vecs);
    checks.push(Check::flag("n nilpotent", lcs.last() == Some(&0)));

    let mut am: Vec<Q> = Vec::new();
    for a in &a_basis {
        for m in &m_basis {
            am.extend(r.bracket().bracket(a, m));
        }
        for b in &a_basis {
            am.extend(r.bracket().bracket(a, b));
        }
    }
    checks.push(Check::zero_vec("[a, m] = 0 and a abelian", &am, 1.0));
    let mut orth: Vec<Q> = Vec::new();
    for a in &a_basis {
        for m in &m_basis {
            orth.push(linalg::inner(r.bsigma(), a, m));
        }
    }
    checks.push(Check::zero_vec("m orthogonal to a", &orth, 1.0));
    let mut all: Vec<Vec<Q>> = m_basis.clone();
    all.extend(a_basis.iter().cloned());
    all.extend(n_vecs);
    let sum_ok = m_basis.len() + a_basis.len() + n_basis.len() == q_coordinates.len()
        && linalg::rank(&all) == q_coordinates.len()
        && all.iter().all(|v| (0..n).all(|x| v[x].is_zero() || q_set.contains(&x)));
    checks.push(Check::flag("q = m + a + n", sum_ok));

    Ok(LanglandsDecomposition {
        subset: subset.clone(),
        gradation: grad,
        m_basis,
        a_basis,
        n_basis,
        q_coordinates,
        checks,
    })
}

/// `s_{Λ'} = a_{Λ'} ⊕ n_{Λ'}` with `⟨,⟩ = 2B_σ|a + B_σ|n`.
///
/// The basis is `H^i` (`i ∉ Λ'`, increasing) followed by the coordinates of
/// `n_{Λ'}` in root order.
#[derive(Debug, Clone)]
pub struct AttachedSolvmanifold {
    pub subset: SubsetSelection,
    pub algebra: MetricLieAlgebra<Q>,
    /// Position of each basis vector in the basis of `s_∅`.
    pub embedding: Vec<usize>,
    /// Basis vectors in the realization's coordinates.
    pub ambient_basis: Vec<Vec<Q>>,
    /// Realization coordinates of the `n` basis vectors.
    pub n_coordinates: Vec<usize>,
    /// Root of each `n` basis vector.
    pub n_roots: Vec<Root>,
    pub characteristic: Vec<Q>,
    pub a_dim: usize,
}

impl AttachedSolvmanifold {
    /// Maps coordinates in this algebra's basis to the realization's.
    pub fn to_realization(&self, v: &[Q]) -> Vec<Q> {
        let mut out = linalg::zero_vec::<Q>(self.ambient_basis[0].len());
        for (c, b) in v.iter().zip(&self.ambient_basis) {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, b);
            }
        }
        out
    }

    pub fn n_dim(&self) -> usize {
        self.n_coordinates.len()
    }

    /// Basis indices of `n` inside this algebra.
    pub fn n_indices(&self) -> Vec<usize> {
        (self.a_dim..self.a_dim + self.n_dim()).collect()
    }
}

pub fn attached_solvmanifold(r: &Realization, subset: &SubsetSelection) -> Result<AttachedSolvmanifold> {
    let n = r.dim();
    let z = characteristic_element(r, subset)?;
    let grad = gradation(r, &z)?;
    let dual = r.dual_basis()?;
    let complement = subset.complement();
    let n_coordinates = grad.positive_coordinates(r);
    let mut n_roots = Vec::with_capacity(n_coordinates.len());
    for root in &r.roots().positive_roots {
        for &x in r.root_space(root) {
            if grad.grade_of[x] > 0 {
                n_roots.push(root.clone());
            }
        }
    }
    let mut basis: Vec<Vec<Q>> = complement.iter().map(|&i| dual.vectors[i].clone()).collect();
    basis.extend(n_coordinates.iter().map(|&x| linalg::unit_vec::<Q>(n, x)));
    let a_dim = complement.len();
    let dim = basis.len();
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        let b = linalg::inner(r.bsigma(), &basis[i], &basis[j]);
        if i < a_dim && j < a_dim {
            b * qi(2)
        } else {
            b
        }
    });
    let bracket = r
        .bracket()
        .restrict(&basis)
        .ok_or_else(|| Error::construction("a + n is not a subalgebra"))?;
    let algebra = MetricLieAlgebra::new(bracket, gram)
        .map_err(|e| Error::construction(format!("attached metric: {e}")))?
        .with_split((0..a_dim).collect(), (a_dim..dim).collect())?;

    // positions inside s_∅: all H^i first, then every positive root coordinate
    let mut full_n_position = vec![usize::MAX; n];
    let mut pos = r.rank();
    for root in &r.roots().positive_roots {
        for &x in r.root_space(root) {
            full_n_position[x] = pos;
            pos += 1;
        }
    }
    let embedding: Vec<usize> = complement
        .iter()
        .copied()
        .chain(n_coordinates.iter().map(|&x| full_n_position[x]))
        .collect();
    Ok(AttachedSolvmanifold {
        subset: subset.clone(),
        algebra,
        embedding,
        ambient_basis: basis,
        n_coordinates,
        n_roots,
        characteristic: z,
        a_dim,
    })
}

/// Iwasawa-type conditions with `A₀ = Z`.
pub fn iwasawa_type_check(s: &AttachedSolvmanifold) -> IwasawaReport {
    let mut a0 = linalg::zero_vec::<Q>(s.algebra.dim());
    for x in a0.iter_mut().take(s.a_dim) {
        *x = Q::one();
    }
    s.algebra.iwasawa_report(&a0)
}

/// Step count of the lower central series of `n` (computed) and the
/// largest value of a highest root on `Z` (predicted).
pub fn nilpotency_degree(r: &Realization, s: &AttachedSolvmanifold) -> (usize, i64) {
    let n_vecs: Vec<Vec<Q>> = s.n_coordinates.iter().map(|&x| linalg::unit_vec::<Q>(r.dim(), x)).collect();
    let computed = r.bracket().lower_central_series(&n_vecs).iter().filter(|&&d| d > 0).count();
    let predicted = r
        .roots()
        .highest_roots
        .iter()
        .map(|h| rational_to_i64(&r.root_eval(h, &s.characteristic)).expect("integral grade"))
        .max()
        .unwrap_or(0);
    (computed, predicted)
}

/// `H₀ = ½ Σ_{pq} (G_n⁻¹)_pq [σ b_p, b_q]` over the `n` coordinates listed,
/// in the realization's coordinates.
pub fn mean_curvature_via_involution(r: &Realization, n_coordinates: &[usize]) -> Vec<Q> {
    let n = r.dim();
    let mut h = linalg::zero_vec::<Q>(n);
    if n_coordinates.is_empty() {
        return h;
    }
    let ginv = r
        .bsigma()
        .submatrix(n_coordinates, n_coordinates)
        .inverse()
        .expect("B_σ is positive definite");
    let half = Q::new(1.into(), 2.into());
    for (p, &bp) in n_coordinates.iter().enumerate() {
        let sigma_bp = r.involution().column(bp);
        for (q, &bq) in n_coordinates.iter().enumerate() {
            let c = &ginv[(p, q)];
            if c.is_zero() {
                continue;
            }
            let v = r.bracket().bracket(&sigma_bp, &linalg::unit_vec(n, bq));
            linalg::axpy(&mut h, &(c * &half), &v);
        }
    }
    h
}

/// The rank one reduction `ℝH₀ ⊕ n`, with `H₀` in the coordinates of `s`.
pub fn rank_one_reduction(s: &AttachedSolvmanifold, h0: &[Q]) -> Result<MetricLieAlgebra<Q>> {
    if linalg::is_zero_vec(h0) {
        return Err(Error::Degenerate("mean curvature vector is zero".into()));
    }
    let dim = s.algebra.dim();
    let mut basis = vec![h0.to_vec()];
    basis.extend(s.n_indices().into_iter().map(|i| linalg::unit_vec::<Q>(dim, i)));
    let k = basis.len();
    s.algebra.subalgebra(&basis)?.with_split(vec![0], (1..k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{build_realization, RealForm};
    use crate::rootsystem::{generate_positive_roots, parse_type};

    fn split(spec: &str) -> Realization {
        build_realization(&generate_positive_roots(&parse_type(spec).unwrap()), RealForm::Split).unwrap()
    }

    #[test]
    fn subsets_must_be_proper_and_in_range() {
        assert!(SubsetSelection::new(2, &[0, 1]).is_err());
        assert!(SubsetSelection::new(2, &[2]).is_err());
        assert!(SubsetSelection::new(2, &[1, 1]).is_err());
        assert_eq!(SubsetSelection::parse(3, "2, 0").unwrap().indices(), &[0, 2]);
        assert_eq!(SubsetSelection::parse(3, "").unwrap().to_string(), "{}");
    }

    #[test]
    fn a1_characteristic_element_is_half_h() {
        let r = split("A1");
        let z = characteristic_element(&r, &SubsetSelection::empty(1).unwrap()).unwrap();
        assert_eq!(z, vec![q_half(), qi(0), qi(0)]);
    }

    fn q_half() -> Q {
        Q::new(1.into(), 2.into())
    }

    #[test]
    fn a2_gradations() {
        let r = split("A2");
        let z = characteristic_element(&r, &SubsetSelection::empty(2).unwrap()).unwrap();
        let g = gradation(&r, &z).unwrap();
        assert_eq!(g.kind, 2);
        assert_eq!(g.layer(2).len(), 1);
        assert!(g.checks(&r).iter().all(|c| c.passed));
        let zero = gradation(&r, &linalg::zero_vec(r.dim())).unwrap();
        assert_eq!(zero.layers.len(), 1);
        assert_eq!(zero.kind, 0);
    }

    #[test]
    fn inadmissible_characteristic_elements_are_rejected() {
        let r = split("A2");
        let mut z = characteristic_element(&r, &SubsetSelection::empty(2).unwrap()).unwrap();
        let half_z = linalg::scaled(&z, &q_half());
        assert!(matches!(gradation(&r, &half_z), Err(Error::Input(_))));
        let neg = linalg::scaled(&z, &qi(-1));
        assert!(matches!(gradation(&r, &neg), Err(Error::Input(_))));
        z[r.dim() - 1] = qi(1);
        assert!(matches!(gradation(&r, &z), Err(Error::Input(_))));
    }

    #[test]
    fn a1_attached_solvmanifold() {
        let r = split("A1");
        let s = attached_solvmanifold(&r, &SubsetSelection::empty(1).unwrap()).unwrap();
        // basis (H¹ = h/2, e): Gram diag(4, 4), [H¹, e] = e
        assert_eq!(s.algebra.gram(), &Matrix::from_rows(vec![vec![qi(4), qi(0)], vec![qi(0), qi(4)]]));
        assert_eq!(s.algebra.bracket().coefficient(0, 1, 1), qi(1));
        assert!(iwasawa_type_check(&s).passed());
        assert_eq!(nilpotency_degree(&r, &s), (1, 1));
    }

    #[test]
    fn a2_langlands_dimensions() {
        let r = split("A2");
        let l = langlands(&r, &SubsetSelection::new(2, &[0]).unwrap()).unwrap();
        assert_eq!((l.m_basis.len(), l.a_basis.len(), l.n_basis.len()), (3, 1, 2));
        assert!(l.checks.iter().all(|c| c.passed), "{:?}", l.checks);
        let l = langlands(&r, &SubsetSelection::empty(2).unwrap()).unwrap();
        assert_eq!((l.m_basis.len(), l.a_basis.len(), l.n_basis.len()), (0, 2, 3));
    }

    #[test]
    fn rank_one_reduction_rejects_zero() {
        let r = split("A2");
        let s = attached_solvmanifold(&r, &SubsetSelection::empty(2).unwrap()).unwrap();
        let zero = linalg::zero_vec::<Q>(s.algebra.dim());
        assert!(matches!(rank_one_reduction(&s, &zero), Err(Error::Degenerate(_))));
        let h0 = s.algebra.mean_curvature();
        assert_eq!(rank_one_reduction(&s, &h0).unwrap().dim(), 4);
    }
}
