//! Concrete real semisimple Lie algebras with a Cartan involution.
//!
//! A [`Realization`] fixes a basis adapted to the restricted root space
//! decomposition `g = k₀ ⊕ a ⊕ Σ g_α`: the coordinates of `a`, of `k₀` and of
//! every root space are index sets. The Killing form `B` and the positive
//! definite form `B_σ(X, Y) = -B(X, σY)` are always recomputed from the
//! bracket.

mod chevalley;
pub mod file;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::linalg::{self, Matrix};
use crate::rootsystem::{validate_cartan, Root, RootSystemData};
use crate::scalar::{qi, rational_to_i64, Q};

pub use file::{load_realization, save_realization, RealizationFile};

/// Which real form a realization describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealForm {
    /// The split real form: `a` is a Cartan subalgebra, every restricted
    /// root has multiplicity one.
    Split,
    /// A complex semisimple algebra viewed as a real one: restricted roots
    /// have multiplicity two and `k₀ = i·a`.
    Complexified,
    /// Loaded from a user-supplied realization file.
    Custom,
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealForm::Split => "split",
            RealForm::Complexified => "complexified",
            RealForm::Custom => "custom",
        })
    }
}

impl std::str::FromStr for RealForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" => Ok(RealForm::Split),
            "complexified" => Ok(RealForm::Complexified),
            other => Err(format!("unknown form {other:?} (expected split|complexified)")),
        }
    }
}

/// Role of a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    /// A basis vector of `a`.
    Cartan { index: usize },
    /// A basis vector of `k₀`.
    Centralizer { index: usize },
    /// A basis vector of the root space `g_root`.
    Root { root: Root, copy: usize },
}

/// A root vector `H_α ∈ a`, determined by `B_σ(H_α, A) = α(A)` on `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootVectorElement {
    pub coordinates: Vec<Q>,
    pub root: Root,
}

/// The basis of `a` dual to the simple roots: `α_i(Hʲ) = δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBasis {
    pub vectors: Vec<Vec<Q>>,
}

#[derive(Debug, Clone)]
pub struct Realization {
    name: String,
    form: RealForm,
    roots: RootSystemData,
    labels: Vec<BasisLabel>,
    bracket: StructureConstants<Q>,
    /// Column `j` holds `σ(b_j)`.
    involution: Matrix<Q>,
    killing: Matrix<Q>,
    bsigma: Matrix<Q>,
    a: Vec<usize>,
    k0: Vec<usize>,
    root_spaces: HashMap<Root, Vec<usize>>,
    /// `simple_values[(i, k)] = α_i(b_{a[k]})`.
    simple_values: Matrix<Q>,
}

/// Builds the split or complexified realization of a root system.
pub fn build_realization(rsd: &RootSystemData, form: RealForm) -> Result<Realization> {
    let split = chevalley::chevalley_constants(rsd)?;
    let basis = chevalley::ChevalleyBasis::new(rsd);
    let r = rsd.rank();
    let n = rsd.positive_roots.len();
    let all_roots: Vec<Root> = rsd
        .positive_roots
        .iter()
        .cloned()
        .chain(rsd.positive_roots.iter().map(Root::neg))
        .collect();
    // Chevalley involution on the split basis: h ↦ -h, e_α ↦ -e_{-α}
    let omega = |j: usize| -> (usize, Q) {
        if j < r {
            (j, qi(-1))
        } else {
            let root = &all_roots[j - r];
            (basis.root_coordinate(&root.neg()).unwrap(), qi(-1))
        }
    };
    let split_dim = basis.dim();
    match form {
        RealForm::Split => {
            let mut labels: Vec<BasisLabel> = (0..r).map(|index| BasisLabel::Cartan { index }).collect();
            labels.extend(all_roots.iter().map(|root| BasisLabel::Root {
                root: root.clone(),
                copy: 0,
            }));
            let mut sigma = Matrix::zeros(split_dim, split_dim);
            for j in 0..split_dim {
                let (i, c) = omega(j);
                sigma[(i, j)] = c;
            }
            Realization::assemble(
                rsd.cartan.name(),
                RealForm::Split,
                rsd.clone(),
                labels,
                split,
                sigma,
                (0..r).collect(),
                Vec::new(),
            )
        }
        RealForm::Complexified => {
            // split coordinate s ↦ (re, im) coordinates
            let re = |s: usize| if s < r { s } else { 2 * r + 2 * (s - r) };
            let im = |s: usize| if s < r { r + s } else { 2 * r + 2 * (s - r) + 1 };
            let dim = 2 * split_dim;
            let mut entries = Vec::new();
            for (i, j, k, c) in split.entries() {
                entries.push((re(i), re(j), re(k), c.clone()));
                entries.push((im(i), re(j), im(k), c.clone()));
                entries.push((re(i), im(j), im(k), c.clone()));
                entries.push((im(i), im(j), re(k), -c.clone()));
            }
            let bracket = StructureConstants::from_entries(dim, entries);
            // σ(x) = ω(x), σ(ix) = -iω(x)
            let mut sigma = Matrix::zeros(dim, dim);
            for s in 0..split_dim {
                let (t, c) = omega(s);
                sigma[(re(t), re(s))] = c.clone();
                sigma[(im(t), im(s))] = -c;
            }
            let mut labels = vec![BasisLabel::Cartan { index: 0 }; dim];
            for s in 0..split_dim {
                if s < r {
                    labels[re(s)] = BasisLabel::Cartan { index: s };
                    labels[im(s)] = BasisLabel::Centralizer { index: s };
                } else {
                    let root = all_roots[s - r].clone();
                    labels[re(s)] = BasisLabel::Root {
                        root: root.clone(),
                        copy: 0,
                    };
                    labels[im(s)] = BasisLabel::Root { root, copy: 1 };
                }
            }
            debug_assert_eq!(dim, 2 * (r + 2 * n));
            Realization::assemble(
                format!("{}_C", rsd.cartan.name()),
                RealForm::Complexified,
                rsd.clone(),
                labels,
                bracket,
                sigma,
                (0..r).collect(),
                (r..2 * r).collect(),
            )
        }
        RealForm::Custom => Err(Error::input("custom realizations are loaded from a file")),
    }
}

impl Realization {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        form: RealForm,
        roots: RootSystemData,
        labels: Vec<BasisLabel>,
        bracket: StructureConstants<Q>,
        involution: Matrix<Q>,
        a: Vec<usize>,
        k0: Vec<usize>,
    ) -> Result<Self> {
        let mut root_spaces: HashMap<Root, Vec<usize>> = HashMap::new();
        for (x, label) in labels.iter().enumerate() {
            if let BasisLabel::Root { root, .. } = label {
                root_spaces.entry(root.clone()).or_default().push(x);
            }
        }
        let killing = bracket.killing_form();
        let bsigma = killing.mul(&involution).scale(&qi(-1));
        let r = a.len();
        let mut simple_values = Matrix::zeros(r, r);
        for i in 0..r {
            let simple = Root::simple(r, i);
            let &x = root_spaces
                .get(&simple)
                .and_then(|v| v.first())
                .ok_or_else(|| Error::construction(format!("simple root {i} has no root space")))?;
            for (k, &ak) in a.iter().enumerate() {
                simple_values[(i, k)] = bracket.coefficient(ak, x, x);
            }
        }
        let real = Realization {
            name,
            form,
            roots,
            labels,
            bracket,
            involution,
            killing,
            bsigma,
            a,
            k0,
            root_spaces,
            simple_values,
        };
        if !real.bracket.is_antisymmetric() {
            return Err(Error::construction("bracket is not antisymmetric"));
        }
        if let Some((i, j, k)) = real.bracket.jacobi_violation() {
            return Err(Error::construction(format!("Jacobi identity fails on basis triple ({i},{j},{k})")));
        }
        Ok(real)
    }

    /// Assembles a realization from raw data and derives its restricted
    /// root system. Used for user-supplied files.
    pub(crate) fn from_parts(
        name: String,
        labels: Vec<BasisLabel>,
        bracket: StructureConstants<Q>,
        involution: Matrix<Q>,
        a: Vec<usize>,
        k0: Vec<usize>,
    ) -> Result<Self> {
        let r = a.len();
        if r == 0 {
            return Err(Error::input("a must be nonempty"));
        }
        let mut positive: Vec<Root> = Vec::new();
        for label in &labels {
            if let BasisLabel::Root { root, .. } = label {
                if root.rank() != r {
                    return Err(Error::input(format!("root {root} does not have rank {r}")));
                }
                if root.is_zero() {
                    return Err(Error::input("zero is not a root"));
                }
                if root.is_positive() {
                    positive.push(root.clone());
                } else if !root.neg().is_positive() {
                    return Err(Error::input(format!("root {root} has mixed signs")));
                }
            }
        }
        // Placeholder root data with an identity Cartan matrix; replaced below
        // once the root vectors are available.
        let placeholder = RootSystemData::from_positive_roots(
            validate_cartan((0..r).map(|i| (0..r).map(|j| if i == j { 2 } else { 0 }).collect()).collect())?,
            positive.clone(),
        )?;
        let mut real = Realization::assemble(name, RealForm::Custom, placeholder, labels, bracket, involution, a, k0)?;
        let h: Vec<Vec<Q>> = (0..r)
            .map(|i| real.root_vector(&Root::simple(r, i)).map(|v| v.coordinates))
            .collect::<Result<_>>()?;
        let mut entries = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let num = linalg::inner(&real.bsigma, &h[i], &h[j]);
                let den = linalg::inner(&real.bsigma, &h[j], &h[j]);
                let c = qi(2) * num / den;
                entries[i][j] = rational_to_i64(&c).ok_or_else(|| {
                    Error::input(format!("restricted Cartan entry ({i},{j}) = {c} is not an integer"))
                })?;
            }
        }
        let cartan = validate_cartan(entries)?;
        real.roots = RootSystemData::from_positive_roots(cartan, positive)?;
        Ok(real)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> RealForm {
        self.form
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// The restricted root system.
    pub fn roots(&self) -> &RootSystemData {
        &self.roots
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn bracket(&self) -> &StructureConstants<Q> {
        &self.bracket
    }

    pub fn involution(&self) -> &Matrix<Q> {
        &self.involution
    }

    pub fn killing(&self) -> &Matrix<Q> {
        &self.killing
    }

    pub fn bsigma(&self) -> &Matrix<Q> {
        &self.bsigma
    }

    /// Coordinates spanning `a`.
    pub fn a_indices(&self) -> &[usize] {
        &self.a
    }

    /// Coordinates spanning `k₀`.
    pub fn k0_indices(&self) -> &[usize] {
        &self.k0
    }

    /// Coordinates spanning `g₀ = k₀ ⊕ a`, sorted.
    pub fn g0_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.a.iter().chain(&self.k0).copied().collect();
        v.sort_unstable();
        v
    }

    /// Coordinates spanning `g_α`; empty if `α` is not a root.
    pub fn root_space(&self, root: &Root) -> &[usize] {
        self.root_spaces.get(root).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Positive roots in order, then their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        let pos = &self.roots.positive_roots;
        pos.iter().cloned().chain(pos.iter().map(Root::neg)).collect()
    }

    /// `σ(x)`.
    pub fn apply_involution(&self, x: &[Q]) -> Vec<Q> {
        self.involution.mul_vec(x)
    }

    /// `(+1)`-eigenspace of `σ`.
    pub fn k_basis(&self) -> Vec<Vec<Q>> {
        linalg::nullspace(&self.involution.sub(&Matrix::identity(self.dim())))
    }

    /// `(-1)`-eigenspace of `σ`.
    pub fn p_basis(&self) -> Vec<Vec<Q>> {
        linalg::nullspace(&self.involution.add(&Matrix::identity(self.dim())))
    }

    /// `α(A)` for `A ∈ a` given in full coordinates.
    pub fn root_eval(&self, root: &Root, x: &[Q]) -> Q {
        let mut total = Q::zero();
        for (k, &ak) in self.a.iter().enumerate() {
            if x[ak].is_zero() {
                continue;
            }
            for (i, &c) in root.coeffs.iter().enumerate() {
                if c != 0 {
                    total += qi(c) * &self.simple_values[(i, k)] * &x[ak];
                }
            }
        }
        total
    }

    /// Gram matrix of `B_σ` on the `a` coordinates.
    fn a_gram(&self) -> Matrix<Q> {
        self.bsigma.submatrix(&self.a, &self.a)
    }

    fn embed_a(&self, coeffs: &[Q]) -> Vec<Q> {
        let mut v = linalg::zero_vec(self.dim());
        for (c, &ak) in coeffs.iter().zip(&self.a) {
            v[ak] = c.clone();
        }
        v
    }

    /// The root vector `H_α`.
    pub fn root_vector(&self, root: &Root) -> Result<RootVectorElement> {
        if root.rank() != self.rank() || self.root_space(root).is_empty() {
            return Err(Error::input(format!("{root} is not a root of {}", self.name)));
        }
        let ginv = self
            .a_gram()
            .inverse()
            .ok_or_else(|| Error::construction("B_σ is degenerate on a"))?;
        let values: Vec<Q> = (0..self.rank())
            .map(|k| {
                let mut e = linalg::zero_vec(self.rank());
                e[k] = Q::one();
                self.root_eval(root, &self.embed_a(&e))
            })
            .collect();
        Ok(RootVectorElement {
            coordinates: self.embed_a(&ginv.mul_vec(&values)),
            root: root.clone(),
        })
    }

    /// The basis of `a` dual to the simple roots.
    pub fn dual_basis(&self) -> Result<DualBasis> {
        let vinv = self
            .simple_values
            .inverse()
            .ok_or_else(|| Error::construction("simple roots are linearly dependent on a"))?;
        let r = self.rank();
        let vectors = (0..r)
            .map(|j| self.embed_a(&(0..r).map(|k| vinv[(k, j)].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(DualBasis { vectors })
    }

    /// Checks every structural invariant; the first violation is returned
    /// as a construction error naming it.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::construction(what.to_string()));
        let n = self.dim();
        let id = Matrix::<Q>::identity(n);
        if self.labels.len() != n || self.involution.rows() != n || self.involution.cols() != n {
            return fail("basis labels and involution must match the dimension");
        }
        let mut seen = vec![false; n];
        for &x in self.a.iter().chain(&self.k0).chain(self.root_spaces.values().flatten()) {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return fail("a, k₀ and the root spaces must partition the basis");
            }
        }
        if seen.iter().any(|s| !s) {
            return fail("a, k₀ and the root spaces must partition the basis");
        }
        if !self.bracket.is_antisymmetric() {
            return fail("bracket is not antisymmetric");
        }
        if let Some((i, j, k)) = self.bracket.jacobi_violation() {
            return Err(Error::construction(format!("Jacobi identity fails on basis triple ({i},{j},{k})")));
        }
        if self.involution.mul(&self.involution) != id {
            return fail("σ² ≠ 1");
        }
        let sigma_cols: Vec<Vec<(usize, Q)>> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| !self.involution[(i, j)].is_zero())
                    .map(|i| (i, self.involution[(i, j)].clone()))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = linalg::zero_vec::<Q>(n);
                for (k, c) in self.bracket.basis_bracket(i, j) {
                    for (l, s) in &sigma_cols[*k] {
                        lhs[*l] += c * s;
                    }
                }
                let mut rhs = linalg::zero_vec::<Q>(n);
                for (p, a) in &sigma_cols[i] {
                    for (q, b) in &sigma_cols[j] {
                        for (k, c) in self.bracket.basis_bracket(*p, *q) {
                            rhs[*k] += a * b * c;
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::construction(format!("σ is not an automorphism on ({i},{j})")));
                }
            }
        }
        if self.bracket.killing_form() != self.killing {
            return fail("stored Killing form differs from tr(ad ∘ ad)");
        }
        let bsigma = self.killing.mul(&self.involution).scale(&qi(-1));
        if bsigma != self.bsigma {
            return fail("stored B_σ differs from -B(·, σ·)");
        }
        if !self.bsigma.is_symmetric() || !self.bsigma.is_positive_definite() {
            return fail("B_σ is not symmetric positive definite");
        }
        for z in 0..n {
            let ad = self.bracket.ad_basis(z);
            let adt = ad.transpose();
            if !adt.mul(&self.killing).add(&self.killing.mul(&ad)).is_zero() {
                return Err(Error::construction(format!("B is not ad-invariant under basis vector {z}")));
            }
            let ad_sigma = self.bracket.ad(&self.involution.column(z));
            if !adt.mul(&self.bsigma).add(&self.bsigma.mul(&ad_sigma)).is_zero() {
                return Err(Error::construction(format!(
                    "B_σ([Z,X],Y) = -B_σ(X,[σZ,Y]) fails for basis vector Z = {z}"
                )));
            }
        }
        for &x in &self.a {
            if self.involution.column(x) != linalg::scaled(&linalg::unit_vec(n, x), &qi(-1)) {
                return fail("a is not contained in p");
            }
        }
        for &x in &self.k0 {
            if self.involution.column(x) != linalg::unit_vec::<Q>(n, x) {
                return fail("k₀ is not contained in k");
            }
        }
        for &x in &self.a {
            for &y in &self.a {
                if !self.bracket.basis_bracket(x, y).is_empty() {
                    return fail("a is not abelian");
                }
            }
        }
        // centralizer of a
        let stacked: Vec<Vec<Q>> = self
            .a
            .iter()
            .flat_map(|&x| self.bracket.ad_basis(x).to_rows())
            .collect();
        let centralizer = linalg::nullspace(&Matrix::from_rows(stacked));
        let g0: Vec<Vec<Q>> = self.g0_indices().into_iter().map(|x| linalg::unit_vec(n, x)).collect();
        if !linalg::same_span(&centralizer, &g0) {
            return fail("the centralizer of a is not k₀ ⊕ a");
        }
        for (root, coords) in &self.root_spaces {
            let neg: Vec<Vec<Q>> = self.root_space(&root.neg()).iter().map(|&y| linalg::unit_vec(n, y)).collect();
            for &x in coords {
                for (k, &ak) in self.a.iter().enumerate() {
                    let mut e = linalg::zero_vec(self.rank());
                    e[k] = Q::one();
                    let value = self.root_eval(root, &self.embed_a(&e));
                    let expected = linalg::scaled(&linalg::unit_vec(n, x), &value);
                    if self.bracket.bracket_basis_left(ak, &linalg::unit_vec(n, x)) != expected {
                        return Err(Error::construction(format!(
                            "ad_a does not act on g_{root} by the root {root}"
                        )));
                    }
                }
                if neg.is_empty() || !linalg::in_span(&neg, &self.involution.column(x)) {
                    return Err(Error::construction(format!("σ does not map g_{root} onto g_-{root}")));
                }
            }
        }
        let block = |x: usize| -> Option<&Root> {
            match &self.labels[x] {
                BasisLabel::Root { root, .. } => Some(root),
                _ => None,
            }
        };
        for x in 0..n {
            for y in x + 1..n {
                if block(x) != block(y) && !self.bsigma[(x, y)].is_zero() {
                    return Err(Error::construction(format!(
                        "distinct restricted root spaces are not B_σ-orthogonal ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{cartan_matrix, generate_positive_roots, parse_type};
    use crate::scalar::q;

    fn real(spec: &str, form: RealForm) -> Realization {
        build_realization(&generate_positive_roots(&parse_type(spec).unwrap()), form).unwrap()
    }

    #[test]
    fn sl2_split() {
        let r = real("A1", RealForm::Split);
        assert_eq!(r.dim(), 3);
        assert_eq!(r.bracket().coefficient(0, 1, 1), qi(2));
        assert_eq!(r.bracket().coefficient(0, 2, 2), qi(-2));
        assert_eq!(r.bracket().coefficient(1, 2, 0), qi(1));
        assert_eq!(r.involution().column(1), vec![qi(0), qi(0), qi(-1)]);
        assert_eq!(r.involution().column(0), vec![qi(-1), qi(0), qi(0)]);
        assert_eq!(r.killing()[(0, 0)], qi(8));
        assert_eq!(r.killing()[(1, 2)], qi(4));
        assert_eq!(r.killing()[(1, 1)], qi(0));
        r.validate().unwrap();
    }

    #[test]
    fn sl2_root_vector_and_dual_basis() {
        let r = real("A1", RealForm::Split);
        let alpha = Root::new(vec![1]);
        let h = r.root_vector(&alpha).unwrap();
        assert_eq!(h.coordinates, vec![q(1, 4), qi(0), qi(0)]);
        let hn = r.root_vector(&alpha.neg()).unwrap();
        assert_eq!(hn.coordinates, vec![q(-1, 4), qi(0), qi(0)]);
        assert_eq!(r.dual_basis().unwrap().vectors, vec![vec![q(1, 2), qi(0), qi(0)]]);
        assert!(r.root_vector(&Root::new(vec![2])).is_err());
        // [σ(e/2), e/2] = h/4
        let half_e = vec![qi(0), q(1, 2), qi(0)];
        let v = r.bracket().bracket(&r.apply_involution(&half_e), &half_e);
        assert_eq!(v, h.coordinates);
    }

    #[test]
    fn dimensions_of_split_and_complexified() {
        let a2 = real("A2", RealForm::Split);
        assert_eq!((a2.dim(), a2.rank(), a2.k0_indices().len()), (8, 2, 0));
        let a1c = real("A1", RealForm::Complexified);
        assert_eq!(a1c.dim(), 6);
        assert_eq!(a1c.root_space(&Root::new(vec![1])).len(), 2);
        assert_eq!(a1c.k0_indices().len(), 1);
        a1c.validate().unwrap();
    }

    #[test]
    fn dual_basis_of_a_direct_sum_is_blockwise() {
        let r = real("A1+A1", RealForm::Split);
        let d = r.dual_basis().unwrap();
        let first = &d.vectors[0];
        assert!(!first[0].is_zero());
        assert!(first[1].is_zero());
        for i in 0..2 {
            for (j, hj) in d.vectors.iter().enumerate() {
                let v = r.root_eval(&Root::simple(2, i), hj);
                assert_eq!(v, if i == j { qi(1) } else { qi(0) });
            }
        }
    }

    #[test]
    fn g2_validates() {
        let rsd = generate_positive_roots(&cartan_matrix('G', 2).unwrap());
        build_realization(&rsd, RealForm::Split).unwrap().validate().unwrap();
    }
}
