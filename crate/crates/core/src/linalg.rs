//! Dense linear algebra over any [`Scalar`].
//!
//! Exact mode uses plain Gauss-Jordan elimination with first-nonzero pivots;
//! floating mode uses partial pivoting. Zero entries are skipped in products,
//! which matters for the very sparse matrices arising from root-space bases.

use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<S>]) -> Self {
        Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::<S>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * other.cols + j].add_prod(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![S::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                o.add_prod(a, b);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Matrix<S> {
        self.map(|a| a.mul_ref(k))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<S> {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// `self - selfᵀ`.
    pub fn antisymmetric_part(&self) -> Matrix<S> {
        self.sub(&self.transpose())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_abs();
        (0..self.rows).all(|i| {
            (0..i).all(|j| (self[(i, j)].clone() - self[(j, i)].clone()).is_negligible(scale))
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<S>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut inv = Matrix::<S>::identity(n);
        for col in 0..n {
            let pivot = pick_pivot(&a, col, col, scale)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                let v = a[(col, j)].clone() / p.clone();
                a[(col, j)] = v;
                let w = inv[(col, j)].clone() / p.clone();
                inv[(col, j)] = w;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let (x, y) = (a[(col, j)].clone(), inv[(col, j)].clone());
                    a[(r, j)].sub_prod(&f, &x);
                    inv[(r, j)].sub_prod(&f, &y);
                }
            }
        }
        Some(inv)
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> S {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(pivot) = pick_pivot(&a, col, col, scale) else {
                return S::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det.mul_ref(&p);
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone() / p.clone();
                for j in col..n {
                    let x = a[(col, j)].clone();
                    a[(r, j)].sub_prod(&f, &x);
                }
            }
        }
        det
    }

    /// Positive definiteness of a symmetric matrix: symmetric elimination
    /// without pivoting must meet only positive pivots (Sylvester).
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_square() || !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        for k in 0..n {
            let p = a[(k, k)].clone();
            if !p.is_positive(scale) {
                return false;
            }
            for r in k + 1..n {
                if a[(r, k)].is_zero() {
                    continue;
                }
                let f = a[(r, k)].clone() / p.clone();
                for j in k..n {
                    let x = a[(k, j)].clone();
                    a[(r, j)].sub_prod(&f, &x);
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

fn pick_pivot<S: Scalar>(a: &Matrix<S>, col: usize, from: usize, scale: f64) -> Option<usize> {
    if S::EXACT {
        (from..a.rows).find(|&r| !a[(r, col)].is_zero())
    } else {
        let best = (from..a.rows).max_by(|&x, &y| {
            a[(x, col)]
                .abs_f64()
                .partial_cmp(&a[(y, col)].abs_f64())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        (!a[(best, col)].is_negligible(scale)).then_some(best)
    }
}

// ---------------------------------------------------------------------------
// Vectors

pub fn zero_vec<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

pub fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = zero_vec(n);
    v[i] = S::one();
    v
}

/// `y += k * x`
pub fn axpy<S: Scalar>(y: &mut [S], k: &S, x: &[S]) {
    if k.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        a.add_prod(k, b);
    }
}

pub fn scaled<S: Scalar>(x: &[S], k: &S) -> Vec<S> {
    x.iter().map(|a| a.mul_ref(k)).collect()
}

pub fn vec_add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn vec_sub<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(x: &[S]) -> bool {
    x.iter().all(|v| v.is_zero())
}

pub fn max_abs_vec<S: Scalar>(x: &[S]) -> f64 {
    x.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
}

/// `xᵀ G y`
pub fn inner<S: Scalar>(gram: &Matrix<S>, x: &[S], y: &[S]) -> S {
    let mut total = S::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = S::zero();
        for (j, yj) in y.iter().enumerate() {
            row.add_prod(&gram[(i, j)], yj);
        }
        total.add_prod(xi, &row);
    }
    total
}

// ---------------------------------------------------------------------------
// Row reduction and subspaces

/// Reduced row echelon form of the given rows. Returns the nonzero rows and
/// their pivot columns.
pub fn rref<S: Scalar>(rows: &[Vec<S>]) -> (Vec<Vec<S>>, Vec<usize>) {
    let Some(width) = rows.first().map(Vec::len) else {
        return (Vec::new(), Vec::new());
    };
    let scale = rows.iter().map(|r| max_abs_vec(r)).fold(0.0, f64::max);
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let candidate = if S::EXACT {
            (r..m.len()).find(|&i| !m[i][col].is_zero())
        } else {
            (r..m.len())
                .max_by(|&x, &y| {
                    m[x][col]
                        .abs_f64()
                        .partial_cmp(&m[y][col].abs_f64())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .filter(|&i| !m[i][col].is_negligible(scale))
        };
        let Some(p) = candidate else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            let pivot_row = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                x.sub_prod(&f, y);
            }
            if !S::EXACT {
                m[i][col] = S::zero();
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<S: Scalar>(vectors: &[Vec<S>]) -> usize {
    rref(vectors).1.len()
}

/// A canonical (reduced echelon) basis of the span of `vectors`.
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    rref(vectors).0
}

/// Whether two families span the same subspace.
pub fn same_span<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> bool {
    let ra = rank(a);
    if ra != rank(b) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both) == ra
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let r = rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

/// Basis of the null space `{x : M x = 0}`.
pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let (red, pivots) = rref(&m.to_rows());
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec::<S>(n);
            v[f] = S::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{v ∈ span(within) : ⟨v, u⟩ = 0 for all u ∈ against}` with
/// respect to `gram`.
pub fn orthogonal_complement<S: Scalar>(
    gram: &Matrix<S>,
    within: &[Vec<S>],
    against: &[Vec<S>],
) -> Vec<Vec<S>> {
    if within.is_empty() {
        return Vec::new();
    }
    if against.is_empty() {
        return within.to_vec();
    }
    let pairing = Matrix::from_fn(against.len(), within.len(), |i, j| {
        inner(gram, &against[i], &within[j])
    });
    let dim = within[0].len();
    nullspace(&pairing)
        .into_iter()
        .map(|t| {
            let mut v = zero_vec::<S>(dim);
            for (tj, w) in t.iter().zip(within) {
                axpy(&mut v, tj, w);
            }
            v
        })
        .collect()
}

/// Coordinates with respect to a linearly independent family.
#[derive(Debug, Clone)]
pub struct BasisCoords<S> {
    basis: Vec<Vec<S>>,
    pivot_rows: Vec<usize>,
    /// Inverse of the square block of the basis matrix on `pivot_rows`.
    block_inv: Matrix<S>,
}

impl<S: Scalar> BasisCoords<S> {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(basis: &[Vec<S>]) -> Option<Self> {
        if basis.is_empty() {
            return Some(BasisCoords {
                basis: Vec::new(),
                pivot_rows: Vec::new(),
                block_inv: Matrix::zeros(0, 0),
            });
        }
        let (_, pivots) = rref(basis);
        if pivots.len() != basis.len() {
            return None;
        }
        // Column j of `block` is basis vector j restricted to the pivot rows.
        let block = Matrix::from_fn(pivots.len(), basis.len(), |i, j| basis[j][pivots[i]].clone());
        Some(BasisCoords {
            basis: basis.to_vec(),
            pivot_rows: pivots,
            block_inv: block.inverse()?,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[S]) -> Option<Vec<S>> {
        if self.basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        let restricted: Vec<S> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.block_inv.mul_vec(&restricted);
        let recon = self.combine(&c);
        let scale = max_abs_vec(v);
        let ok = recon
            .iter()
            .zip(v)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(scale));
        ok.then_some(c)
    }

    pub fn combine(&self, coeffs: &[S]) -> Vec<S> {
        let mut out = zero_vec::<S>(self.basis[0].len());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::{q, qi, Q};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect())
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.determinant(), qi(4));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv[(0, 0)], q(3, 4));
        let singular = m(&[&[2, -2], &[-2, 2]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), qi(0));
    }

    #[test]
    fn positive_definiteness() {
        assert!(m(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!m(&[&[2, -2], &[-2, 2]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn nullspace_and_spans() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&ns[0])));
        let x = vec![qi(1), qi(2), qi(0)];
        let y = vec![qi(2), qi(4), qi(0)];
        assert!(same_span(&[x.clone()], &[y.clone()]));
        assert!(in_span(&[x.clone()], &y));
        assert!(!in_span(&[x], &[qi(0), qi(0), qi(1)]));
    }

    #[test]
    fn coordinates_in_a_basis() {
        let b = vec![vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(1), qi(1)]];
        let c = BasisCoords::new(&b).unwrap();
        let v = vec![qi(2), qi(5), qi(3)];
        assert_eq!(c.coords(&v).unwrap(), vec![qi(2), qi(3)]);
        assert!(c.coords(&[qi(1), qi(0), qi(0)]).is_none());
    }

    #[test]
    fn complement_within_subspace() {
        let g = Matrix::<Q>::identity(3);
        let within = vec![unit_vec(3, 0), unit_vec(3, 1)];
        let against = vec![vec![qi(1), qi(1), qi(0)]];
        let comp = orthogonal_complement(&g, &within, &against);
        assert_eq!(comp.len(), 1);
        assert!(inner(&g, &comp[0], &against[0]).is_zero());
    }
}
