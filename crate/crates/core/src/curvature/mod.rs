//! Left-invariant Riemannian geometry of metric Lie algebras.
//!
//! Sums over orthonormal bases are evaluated as contractions against the
//! inverse Gram matrix, so that exact mode never needs square roots.
//! Floating mode first moves to a Gram–Schmidt orthonormal frame.

mod ricci;
mod submanifold;

pub use ricci::{
    besse_terms, einstein_check, ricci_besse, ricci_definition, ricci_nilpotent, ricci_wolter, EinsteinReport, RicciRoute,
    RicciTensor,
};
pub use submanifold::{ricci_restriction_check, ricci_restriction_from, second_fundamental_form, SubmanifoldReport};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::linalg::{self, BasisCoords, Matrix};
use crate::scalar::{Scalar, ScalarMode, Q};

/// Coordinates of the `a` and `n` parts of a standard decomposition
/// `s = a ⊕ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitAnnotation {
    pub a: Vec<usize>,
    pub n: Vec<usize>,
}

/// A Lie algebra with an inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra<S> {
    bracket: StructureConstants<S>,
    gram: Matrix<S>,
    gram_inv: Matrix<S>,
    killing: Matrix<S>,
    split: Option<SplitAnnotation>,
}

/// Results of the Iwasawa-type conditions on a split-annotated algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaReport {
    /// `a = [s, s]^⊥` and `a` is abelian.
    pub standard: bool,
    /// Every `ad_A` is symmetric with respect to the inner product.
    pub symmetric: bool,
    /// `ad_{A₀}|_n` is positive definite.
    pub positive: bool,
    pub checks: Vec<Check>,
}

impl IwasawaReport {
    pub fn passed(&self) -> bool {
        self.standard && self.symmetric && self.positive
    }
}

fn half<S: Scalar>() -> S {
    S::one() / S::from_i64(2)
}

impl<S: Scalar> MetricLieAlgebra<S> {
    /// Validates antisymmetry, Jacobi and positive definiteness.
    pub fn new(bracket: StructureConstants<S>, gram: Matrix<S>) -> Result<Self> {
        let n = bracket.dim();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::input("Gram matrix does not match the algebra's dimension"));
        }
        if !gram.is_symmetric() || !gram.is_positive_definite() {
            return Err(Error::input("Gram matrix is not symmetric positive definite"));
        }
        if !bracket.is_antisymmetric() {
            return Err(Error::input("bracket is not antisymmetric"));
        }
        if let Some((i, j, k)) = bracket.jacobi_violation() {
            return Err(Error::input(format!("Jacobi identity fails on basis triple ({i},{j},{k})")));
        }
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::input("Gram matrix is singular"))?;
        let killing = bracket.killing_form();
        Ok(MetricLieAlgebra {
            bracket,
            gram,
            gram_inv,
            killing,
            split: None,
        })
    }

    /// Records a standard decomposition, checking that `a` and `n`
    /// partition the basis, `n = [s, s]` as a span check on coordinates, and
    /// that `a` is abelian and orthogonal to `n`.
    pub fn with_split(mut self, a: Vec<usize>, n: Vec<usize>) -> Result<Self> {
        let dim = self.dim();
        let mut seen = vec![false; dim];
        for &x in a.iter().chain(&n) {
            if x >= dim || std::mem::replace(&mut seen[x], true) {
                return Err(Error::input("split annotation does not partition the basis"));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::input("split annotation does not partition the basis"));
        }
        self.split = Some(SplitAnnotation { a, n });
        if !self.standard_check().passed {
            return Err(Error::input("annotated a is not an abelian complement of [s, s]"));
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket(&self) -> &StructureConstants<S> {
        &self.bracket
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<S> {
        &self.gram_inv
    }

    /// Killing form of this algebra itself.
    pub fn killing(&self) -> &Matrix<S> {
        &self.killing
    }

    pub fn split(&self) -> Option<&SplitAnnotation> {
        self.split.as_ref()
    }

    pub fn scalar_mode(&self) -> ScalarMode {
        ScalarMode::of::<S>()
    }

    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        linalg::inner(&self.gram, x, y)
    }

    pub fn lie_bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.bracket.bracket(x, y)
    }

    /// Scale used for float negligibility tests.
    pub fn scale(&self) -> f64 {
        self.gram.max_abs().max(self.bracket.max_abs()).max(1.0)
    }

    /// `U(X, Y)`, defined by `2⟨U(X,Y), Z⟩ = ⟨[Z,X], Y⟩ + ⟨X, [Z,Y]⟩`.
    pub fn u_form(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let gx = self.gram.mul_vec(x);
        let gy = self.gram.mul_vec(y);
        let rhs: Vec<S> = (0..n)
            .map(|k| {
                let zx = self.bracket.bracket_basis_left(k, x);
                let zy = self.bracket.bracket_basis_left(k, y);
                let t = dot(&zx, &gy) + dot(&gx, &zy);
                t * half()
            })
            .collect();
        self.gram_inv.mul_vec(&rhs)
    }

    /// `∇_X Y = ½[X, Y] + U(X, Y)`.
    pub fn levi_civita(&self, x: &[S], y: &[S]) -> Vec<S> {
        let b = linalg::scaled(&self.lie_bracket(x, y), &half());
        linalg::vec_add(&b, &self.u_form(x, y))
    }

    /// `R(X, Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_{[X,Y]}Z`.
    pub fn riemann(&self, x: &[S], y: &[S], z: &[S]) -> Vec<S> {
        let t1 = self.levi_civita(x, &self.levi_civita(y, z));
        let t2 = self.levi_civita(y, &self.levi_civita(x, z));
        let t3 = self.levi_civita(&self.lie_bracket(x, y), z);
        linalg::vec_sub(&linalg::vec_sub(&t1, &t2), &t3)
    }

    /// Table of `U(b_i, b_j)`, indexed by `i * dim + j`.
    pub fn u_table(&self) -> Vec<Vec<S>> {
        let n = self.dim();
        // w[k][i][j] = ⟨[b_k, b_i], b_j⟩
        let w: Vec<Vec<Vec<S>>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        let mut row = linalg::zero_vec::<S>(n);
                        for (l, c) in self.bracket.basis_bracket(k, i) {
                            for (j, r) in row.iter_mut().enumerate() {
                                r.add_prod(c, &self.gram[(*l, j)]);
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let rhs: Vec<S> = (0..n)
                    .map(|k| (w[k][i][j].clone() + w[k][j][i].clone()) * half())
                    .collect();
                table.push(self.gram_inv.mul_vec(&rhs));
            }
        }
        table
    }

    /// `H₀ = Σ U(E_i, E_i)` over an orthonormal basis.
    pub fn mean_curvature(&self) -> Vec<S> {
        mean_curvature_from(self, &self.u_table())
    }

    /// Whether the lower central series reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let basis: Vec<Vec<S>> = (0..self.dim()).map(|i| linalg::unit_vec(self.dim(), i)).collect();
        self.bracket.lower_central_series(&basis).last() == Some(&0)
    }

    /// The same algebra with the inner product multiplied by `t`.
    pub fn with_scaled_gram(&self, t: &S) -> Result<Self> {
        let mut m = MetricLieAlgebra::new(self.bracket.clone(), self.gram.scale(t))?;
        m.split = self.split.clone();
        Ok(m)
    }

    /// The subalgebra spanned by `basis` with the restricted inner product.
    pub fn subalgebra(&self, basis: &[Vec<S>]) -> Result<Self> {
        let bracket = self
            .bracket
            .restrict(basis)
            .ok_or_else(|| Error::input("the given vectors do not span a subalgebra"))?;
        let gram = Matrix::from_fn(basis.len(), basis.len(), |i, j| self.inner(&basis[i], &basis[j]));
        MetricLieAlgebra::new(bracket, gram)
    }

    /// The subalgebra on a subset of basis coordinates.
    pub fn coordinate_subalgebra(&self, coords: &[usize]) -> Result<Self> {
        let basis: Vec<Vec<S>> = coords.iter().map(|&i| linalg::unit_vec(self.dim(), i)).collect();
        self.subalgebra(&basis)
    }

    /// Re-expresses the algebra in the basis given by the columns of `t`.
    pub fn change_basis(&self, t: &Matrix<S>) -> Result<Self> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|j| t.column(j)).collect();
        let coords = BasisCoords::new(&cols).ok_or_else(|| Error::input("change of basis is singular"))?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = self.lie_bracket(&cols[i], &cols[j]);
                table.push(coords.coords(&v).ok_or_else(|| Error::input("change of basis is singular"))?);
            }
        }
        let bracket = StructureConstants::from_brackets(n, |i, j| table[i * n + j].clone());
        let gram = t.transpose().mul(&self.gram).mul(t);
        let gram_inv = gram.inverse().ok_or_else(|| Error::input("Gram matrix is singular"))?;
        let killing = bracket.killing_form();
        Ok(MetricLieAlgebra {
            bracket,
            gram,
            gram_inv,
            killing,
            split: None,
        })
    }

    /// Gram–Schmidt in basis order; column `i` of the result is the `i`-th
    /// orthonormal vector. Needs square roots, so only floating scalars
    /// support it.
    pub fn orthonormal_frame(&self) -> Option<Matrix<S>> {
        let n = self.dim();
        let mut frame: Vec<Vec<S>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = linalg::unit_vec::<S>(n, i);
            for e in &frame {
                let c = self.inner(&v, e);
                linalg::axpy(&mut v, &-c, e);
            }
            let norm = self.inner(&v, &v).sqrt()?;
            frame.push(linalg::scaled(&v, &(S::one() / norm)));
        }
        Some(Matrix::from_columns(n, &frame))
    }

    pub fn to_f64(&self) -> MetricLieAlgebra<f64> {
        MetricLieAlgebra {
            bracket: self.bracket.map(|c| c.to_f64()),
            gram: self.gram.map(|c| c.to_f64()),
            gram_inv: self.gram_inv.map(|c| c.to_f64()),
            killing: self.killing.map(|c| c.to_f64()),
            split: self.split.clone(),
        }
    }

    /// Basis of `[s, s]`.
    pub fn derived_algebra(&self) -> Vec<Vec<S>> {
        let n = self.dim();
        let mut all = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket.basis_bracket(i, j);
                if !b.is_empty() {
                    let mut v = linalg::zero_vec::<S>(n);
                    for (k, c) in b {
                        v[*k] = c.clone();
                    }
                    all.push(v);
                }
            }
        }
        linalg::span_basis(&all)
    }

    fn standard_check(&self) -> Check {
        let Some(split) = &self.split else {
            return Check::flag("standard decomposition", false);
        };
        let n = self.dim();
        let all: Vec<Vec<S>> = (0..n).map(|i| linalg::unit_vec(n, i)).collect();
        let complement = linalg::orthogonal_complement(&self.gram, &all, &self.derived_algebra());
        let a: Vec<Vec<S>> = split.a.iter().map(|&i| linalg::unit_vec(n, i)).collect();
        let abelian = split
            .a
            .iter()
            .all(|&i| split.a.iter().all(|&j| self.bracket.basis_bracket(i, j).is_empty()));
        Check::flag("standard decomposition", abelian && linalg::same_span(&complement, &a))
    }

    /// Iwasawa-type conditions with `A₀` given in full coordinates (it must
    /// lie in `a`).
    pub fn iwasawa_report(&self, a0: &[S]) -> IwasawaReport {
        let standard = self.standard_check();
        let Some(split) = &self.split else {
            return IwasawaReport {
                standard: false,
                symmetric: false,
                positive: false,
                checks: vec![standard],
            };
        };
        let scale = self.scale();
        let mut sym_residual: Vec<S> = Vec::new();
        for &i in &split.a {
            let ad = self.bracket.ad_basis(i);
            let m = self.gram.mul(&ad);
            let diff = m.sub(&m.transpose());
            sym_residual.extend(diff.to_rows().into_iter().flatten());
        }
        let symmetric = Check::zero_vec("ad_A symmetric", &sym_residual, scale);
        let ad0 = self.bracket.ad(a0);
        let form = self.gram.mul(&ad0).submatrix(&split.n, &split.n);
        let positive = Check::flag("ad_A0 positive on n", form.is_positive_definite());
        IwasawaReport {
            standard: standard.passed,
            symmetric: symmetric.passed,
            positive: positive.passed,
            checks: vec![standard, symmetric, positive],
        }
    }
}

impl MetricLieAlgebra<Q> {
    pub fn to_scalar<T: Scalar>(&self) -> MetricLieAlgebra<T> {
        MetricLieAlgebra {
            bracket: self.bracket.map(T::from_rational),
            gram: self.gram.map(T::from_rational),
            gram_inv: self.gram_inv.map(T::from_rational),
            killing: self.killing.map(T::from_rational),
            split: self.split.clone(),
        }
    }
}

pub(crate) fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    let mut t = S::zero();
    for (a, b) in x.iter().zip(y) {
        t.add_prod(a, b);
    }
    t
}

pub(crate) fn mean_curvature_from<S: Scalar>(m: &MetricLieAlgebra<S>, u: &[Vec<S>]) -> Vec<S> {
    let n = m.dim();
    let mut h = linalg::zero_vec::<S>(n);
    for p in 0..n {
        for q in 0..n {
            let g = &m.gram_inv()[(p, q)];
            if g.is_zero() {
                continue;
            }
            linalg::axpy(&mut h, g, &u[p * n + q]);
        }
    }
    h
}
