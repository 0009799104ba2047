//! Structure constants of finite-dimensional Lie algebras.

use crate::linalg::{self, BasisCoords, Matrix};
use crate::scalar::Scalar;

/// Sparse rank-3 structure tensor: `[b_i, b_j] = Σ_k c_ij^k b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<S> {
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero `(k, c_ij^k)`, sorted by `k`.
    table: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> StructureConstants<S> {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        StructureConstants {
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds the tensor from `(i, j, k, c)` entries. Entries for the same
    /// `(i, j, k)` are summed. No antisymmetrization is applied.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, S)>) -> Self {
        let mut dense: Vec<Vec<S>> = Vec::new();
        dense.resize_with(dim * dim, Vec::new);
        for (i, j, k, c) in entries {
            assert!(i < dim && j < dim && k < dim, "structure constant index out of range");
            let cell = &mut dense[i * dim + j];
            if cell.is_empty() {
                *cell = vec![S::zero(); dim];
            }
            cell[k] += c;
        }
        let table = dense
            .into_iter()
            .map(|cell| {
                cell.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        StructureConstants { dim, table }
    }

    /// Builds the tensor from a closure returning `[b_i, b_j]` as a dense vector.
    pub fn from_brackets(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<S>) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                table.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        StructureConstants { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero entries of `[b_i, b_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> S {
        self.basis_bracket(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    /// All nonzero `(i, j, k, c)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        self.table.iter().enumerate().flat_map(move |(ij, cell)| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            cell.iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = linalg::zero_vec::<S>(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi.mul_ref(yj);
                for (k, c) in self.basis_bracket(i, j) {
                    out[*k].add_prod(&xy, c);
                }
            }
        }
        out
    }

    /// `[b_i, y]`
    pub fn bracket_basis_left(&self, i: usize, y: &[S]) -> Vec<S> {
        let mut out = linalg::zero_vec::<S>(self.dim);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in self.basis_bracket(i, j) {
                out[*k].add_prod(yj, c);
            }
        }
        out
    }

    /// Matrix of `ad_x`; column `p` holds `[x, b_p]`.
    pub fn ad(&self, x: &[S]) -> Matrix<S> {
        let mut m = Matrix::<S>::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for p in 0..self.dim {
                for (k, c) in self.basis_bracket(i, p) {
                    m[(*k, p)].add_prod(xi, c);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<S> {
        let mut m = Matrix::<S>::zeros(self.dim, self.dim);
        for p in 0..self.dim {
            for (k, c) in self.basis_bracket(i, p) {
                m[(*k, p)] = c.clone();
            }
        }
        m
    }

    pub fn is_antisymmetric(&self) -> bool {
        let scale = self.max_abs();
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| {
                let lhs = self.basis_bracket(i, j);
                let rhs = self.basis_bracket(j, i);
                if i == j {
                    return lhs.iter().all(|(_, c)| c.is_negligible(scale));
                }
                let mut sum = linalg::zero_vec::<S>(self.dim);
                for (k, c) in lhs.iter().chain(rhs) {
                    sum[*k] += c;
                }
                sum.iter().all(|c| c.is_negligible(scale))
            })
        })
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let scale = self.max_abs().powi(2);
        let mut acc = linalg::zero_vec::<S>(self.dim);
        let mut touched = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    self.accumulate_bracket_right(self.basis_bracket(i, j), k, &mut acc, &mut touched);
                    self.accumulate_bracket_right(self.basis_bracket(j, k), i, &mut acc, &mut touched);
                    self.accumulate_bracket_right(self.basis_bracket(k, i), j, &mut acc, &mut touched);
                    let ok = touched.iter().all(|&m| acc[m].is_negligible(scale));
                    for m in touched.drain(..) {
                        acc[m] = S::zero();
                    }
                    if !ok {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `acc += [x, b_k]` for sparse `x`, recording touched coordinates.
    fn accumulate_bracket_right(&self, x: &[(usize, S)], k: usize, acc: &mut [S], touched: &mut Vec<usize>) {
        for (l, a) in x {
            for (m, c) in self.basis_bracket(*l, k) {
                acc[*m].add_prod(a, c);
                touched.push(*m);
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.table
            .iter()
            .flatten()
            .map(|(_, c)| c.abs_f64())
            .fold(0.0, f64::max)
    }

    /// Killing form `B(b_i, b_j) = tr(ad_{b_i} ∘ ad_{b_j})`.
    pub fn killing_form(&self) -> Matrix<S> {
        let n = self.dim;
        // ad_i[k][l] = c_il^k ; tr(ad_i ad_j) = Σ_{k,l} c_il^k c_jk^l
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = S::zero();
                for l in 0..n {
                    for (k, a) in self.basis_bracket(i, l) {
                        for (ll, b) in self.basis_bracket(j, *k) {
                            if *ll == l {
                                t.add_prod(a, b);
                            }
                        }
                    }
                }
                out[(i, j)] = t.clone();
                out[(j, i)] = t;
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstants<T> {
        StructureConstants {
            dim: self.dim,
            table: self
                .table
                .iter()
                .map(|cell| cell.iter().map(|(k, c)| (*k, f(c))).collect())
                .collect(),
        }
    }

    /// Structure constants of the subalgebra spanned by `basis` (vectors in
    /// the coordinates of `self`), expressed in that basis. `None` if the
    /// span is not closed under the bracket or the family is dependent.
    pub fn restrict(&self, basis: &[Vec<S>]) -> Option<StructureConstants<S>> {
        let coords = BasisCoords::new(basis)?;
        let m = basis.len();
        let mut table = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let v = self.bracket(&basis[i], &basis[j]);
                let c = coords.coords(&v)?;
                table.push(
                    c.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        Some(StructureConstants { dim: m, table })
    }

    /// Lower central series dimensions `dim g⁽¹⁾, dim g⁽²⁾, …` of the
    /// subalgebra spanned by `basis`, stopping at zero or at stabilization.
    pub fn lower_central_series(&self, basis: &[Vec<S>]) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut current = linalg::span_basis(basis);
        loop {
            dims.push(current.len());
            if current.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for x in basis {
                for y in &current {
                    let b = self.bracket(x, y);
                    if !linalg::is_zero_vec(&b) {
                        next.push(b);
                    }
                }
            }
            let next = linalg::span_basis(&next);
            if next.len() == current.len() {
                break;
            }
            current = next;
        }
        dims
    }

    /// `[A, B]` for sets: basis of the span of all brackets.
    pub fn bracket_span(&self, a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
        let mut all = Vec::new();
        for x in a {
            for y in b {
                let v = self.bracket(x, y);
                if !linalg::is_zero_vec(&v) {
                    all.push(v);
                }
            }
        }
        linalg::span_basis(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    /// sl2 in the basis (h, e, f).
    fn sl2() -> StructureConstants<Q> {
        StructureConstants::from_entries(
            3,
            [
                (0, 1, 1, qi(2)),
                (1, 0, 1, qi(-2)),
                (0, 2, 2, qi(-2)),
                (2, 0, 2, qi(2)),
                (1, 2, 0, qi(1)),
                (2, 1, 0, qi(-1)),
            ],
        )
    }

    #[test]
    fn sl2_is_a_lie_algebra() {
        let s = sl2();
        assert!(s.is_antisymmetric());
        assert_eq!(s.jacobi_violation(), None);
        let b = s.killing_form();
        assert_eq!(b[(0, 0)], qi(8));
        assert_eq!(b[(1, 2)], qi(4));
        assert_eq!(b[(1, 1)], qi(0));
    }

    #[test]
    fn broken_jacobi_is_detected() {
        let mut entries: Vec<_> = sl2().entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        // [h, e] = 3e while [h, f] = -2f breaks Jacobi
        for e in entries.iter_mut() {
            if (e.0, e.1) == (0, 1) {
                e.3 = qi(3);
            }
            if (e.0, e.1) == (1, 0) {
                e.3 = qi(-3);
            }
        }
        let s = StructureConstants::from_entries(3, entries);
        assert!(s.jacobi_violation().is_some());
    }

    #[test]
    fn restriction_to_borel() {
        let s = sl2();
        let borel = vec![linalg::unit_vec::<Q>(3, 0), linalg::unit_vec(3, 1)];
        let b = s.restrict(&borel).unwrap();
        assert_eq!(b.coefficient(0, 1, 1), qi(2));
        let not_closed = vec![linalg::unit_vec::<Q>(3, 1), linalg::unit_vec(3, 2)];
        assert!(s.restrict(&not_closed).is_none());
        assert_eq!(s.lower_central_series(&[linalg::unit_vec::<Q>(3, 1)]), vec![1, 0]);
    }
}
