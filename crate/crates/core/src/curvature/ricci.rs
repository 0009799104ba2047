//! Ricci tensors by four independent routes.
//!
//! Sign convention: `ric(X, Y) = Σ_i ⟨R(E_i, X)Y, E_i⟩`, the trace of
//! `Z ↦ R(Z, X)Y`. With `R(X,Y) = [∇_X, ∇_Y] - ∇_{[X,Y]}` this makes the
//! hyperbolic plane negatively curved and agrees with the trace formulas.

use serde::{Deserialize, Serialize};

use super::{dot, half, mean_curvature_from, MetricLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RicciRoute {
    Definition,
    Besse,
    Wolter,
    Nilpotent,
}

/// Symmetric matrix `ric(b_i, b_j)` in the algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciTensor<S> {
    pub matrix: Matrix<S>,
    pub route: RicciRoute,
}

/// Evaluates `f` directly in exact mode; in floating mode evaluates it in a
/// Gram–Schmidt frame (identity Gram) and transforms back.
fn in_frame<S: Scalar>(m: &MetricLieAlgebra<S>, f: impl Fn(&MetricLieAlgebra<S>) -> Matrix<S>) -> Matrix<S> {
    if S::EXACT || m.dim() == 0 {
        return f(m);
    }
    let t = m.orthonormal_frame().expect("positive definite Gram admits a frame");
    let mut on = m.change_basis(&t).expect("frame is a basis");
    on.gram = Matrix::identity(m.dim());
    on.gram_inv = Matrix::identity(m.dim());
    let tinv = t.inverse().expect("frame is a basis");
    tinv.transpose().mul(&f(&on)).mul(&tinv)
}

/// Curvature trace, evaluated with connection coefficients
/// `Γ_ij = ∇_{b_i} b_j`:
/// `ric_ab = Σ_l Γ_ab^l T_l - Σ_{p,l} Γ_pb^l Γ_al^p - Σ_{p,l} c_pa^l Γ_lb^p`
/// with `T_l = Σ_p Γ_pl^p`.
pub fn ricci_definition<S: Scalar>(m: &MetricLieAlgebra<S>) -> RicciTensor<S> {
    let matrix = in_frame(m, |m| {
        let n = m.dim();
        let u = m.u_table();
        let gamma: Vec<Vec<S>> = (0..n * n)
            .map(|ij| {
                let mut g = u[ij].clone();
                for (k, c) in m.bracket().basis_bracket(ij / n, ij % n) {
                    g[*k].add_prod(c, &half());
                }
                g
            })
            .collect();
        let trace: Vec<S> = (0..n)
            .map(|l| {
                let mut t = S::zero();
                for p in 0..n {
                    t += &gamma[p * n + l][p];
                }
                t
            })
            .collect();
        let mut ric = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let mut v = dot(&gamma[a * n + b], &trace);
                for p in 0..n {
                    let gpb = &gamma[p * n + b];
                    for (l, g) in gpb.iter().enumerate() {
                        v.sub_prod(g, &gamma[a * n + l][p]);
                    }
                    for (l, c) in m.bracket().basis_bracket(p, a) {
                        v.sub_prod(c, &gamma[*l * n + b][p]);
                    }
                }
                ric[(a, b)] = v;
            }
        }
        ric
    });
    RicciTensor {
        matrix,
        route: RicciRoute::Definition,
    }
}

/// The four terms of the trace formula
/// `ric = -½Σ⟨[X,E_i],[Y,E_i]⟩ - ½B + ¼Σ⟨[E_i,E_j],X⟩⟨[E_i,E_j],Y⟩ - ⟨U(X,Y),H₀⟩`,
/// as matrices in the algebra's basis.
pub fn besse_terms<S: Scalar>(m: &MetricLieAlgebra<S>) -> [Matrix<S>; 4] {
    let n = m.dim();
    let g = m.gram();
    let ginv = m.gram_inv();
    let ads: Vec<Matrix<S>> = (0..n).map(|a| m.bracket().ad_basis(a)).collect();
    // (F_a)_ij = ⟨[b_i, b_j], b_a⟩
    let fs: Vec<Matrix<S>> = (0..n)
        .map(|a| {
            Matrix::from_fn(n, n, |i, j| {
                let mut t = S::zero();
                for (k, c) in m.bracket().basis_bracket(i, j) {
                    t.add_prod(c, &g[(*k, a)]);
                }
                t
            })
        })
        .collect();
    let ls: Vec<Matrix<S>> = ads.iter().map(|ad| g.mul(ad).mul(ginv)).collect();
    let ps: Vec<Matrix<S>> = fs.iter().map(|f| ginv.mul(f).mul(ginv)).collect();
    let u = m.u_table();
    let h0 = mean_curvature_from(m, &u);
    let gh0 = g.mul_vec(&h0);
    let minus_half = -half::<S>();
    let quarter = half::<S>() * half::<S>();
    let mut t1 = Matrix::zeros(n, n);
    let mut t3 = Matrix::zeros(n, n);
    let mut t4 = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            t1[(a, b)] = frobenius(&ls[a], &ads[b]) * minus_half.clone();
            t3[(a, b)] = frobenius(&ps[a], &fs[b]) * quarter.clone();
            t4[(a, b)] = -dot(&u[a * n + b], &gh0);
        }
    }
    let t2 = m.killing().scale(&minus_half);
    [t1, t2, t3, t4]
}

fn frobenius<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> S {
    let mut t = S::zero();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            t.add_prod(&x[(i, j)], &y[(i, j)]);
        }
    }
    t
}

/// Trace formula route; `B` is the Killing form of `m` itself.
pub fn ricci_besse<S: Scalar>(m: &MetricLieAlgebra<S>) -> RicciTensor<S> {
    let matrix = in_frame(m, |m| {
        let [t1, t2, t3, t4] = besse_terms(m);
        t1.add(&t2).add(&t3).add(&t4)
    });
    RicciTensor {
        matrix,
        route: RicciRoute::Besse,
    }
}

/// Nilpotent route: `Ric = ¼Σ ad_{E_i}(ad_{E_i})* - ½Σ (ad_{E_i})* ad_{E_i}`,
/// returned as `ric(X, Y) = ⟨Ric X, Y⟩`.
pub fn ricci_nilpotent<S: Scalar>(m: &MetricLieAlgebra<S>) -> Result<RicciTensor<S>> {
    if !m.is_nilpotent() {
        return Err(Error::precondition("the nilpotent Ricci formula needs a nilpotent algebra"));
    }
    let matrix = in_frame(m, |m| {
        let n = m.dim();
        let g = m.gram();
        let ginv = m.gram_inv();
        let ads: Vec<Matrix<S>> = (0..n).map(|a| m.bracket().ad_basis(a)).collect();
        let mut first = Matrix::zeros(n, n);
        let mut second = Matrix::zeros(n, n);
        for p in 0..n {
            // M_p = Σ_q Ginv_pq ad_q
            let mut mp = Matrix::zeros(n, n);
            for q in 0..n {
                let c = &ginv[(p, q)];
                if !c.is_zero() {
                    mp = mp.add(&ads[q].scale(c));
                }
            }
            first = first.add(&ads[p].mul(ginv).mul(&mp.transpose()).mul(g));
            second = second.add(&ads[p].transpose().mul(g).mul(&mp));
        }
        let quarter = half::<S>() * half::<S>();
        let op = first.scale(&quarter).sub(&ginv.mul(&second).scale(&half()));
        op.transpose().mul(g)
    });
    Ok(RicciTensor {
        matrix,
        route: RicciRoute::Nilpotent,
    })
}

/// Route through the structure theorem for standard algebras:
/// `ric(A, A') = -tr(ad_A ad_A')`, `ric(A, X) = 0`,
/// `ric(X, Y) = ric^n(X, Y) - ⟨ad_{H₀}X, Y⟩`.
///
/// Requires a split annotation passing the Iwasawa-type conditions with
/// `A₀` the sum of the `a`-basis vectors.
pub fn ricci_wolter<S: Scalar>(m: &MetricLieAlgebra<S>) -> Result<RicciTensor<S>> {
    let split = m
        .split()
        .ok_or_else(|| Error::precondition("the structure-theorem route needs a split annotation"))?;
    let n = m.dim();
    let mut a0 = linalg::zero_vec::<S>(n);
    for &i in &split.a {
        a0[i] = S::one();
    }
    if !m.iwasawa_report(&a0).passed() {
        return Err(Error::precondition("algebra is not of Iwasawa type"));
    }
    let mut ric = Matrix::zeros(n, n);
    for &i in &split.a {
        let adi = m.bracket().ad_basis(i);
        for &j in &split.a {
            ric[(i, j)] = -adi.mul(&m.bracket().ad_basis(j)).trace();
        }
    }
    let nil = m.coordinate_subalgebra(&split.n)?;
    let ric_n = ricci_nilpotent(&nil)?.matrix;
    let h0 = m.mean_curvature();
    let ad_h0 = m.bracket().ad(&h0);
    let g_ad = m.gram().mul(&ad_h0);
    for (p, &x) in split.n.iter().enumerate() {
        for (q, &y) in split.n.iter().enumerate() {
            // ⟨ad_{H₀} b_x, b_y⟩ = (G ad)_{yx}
            ric[(x, y)] = ric_n[(p, q)].clone() - g_ad[(y, x)].clone();
        }
    }
    Ok(RicciTensor {
        matrix: ric,
        route: RicciRoute::Wolter,
    })
}

/// Result of testing `ric = c·⟨,⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinReport<S> {
    pub is_einstein: bool,
    pub constant: S,
    /// Exact mode: largest entry of `ric - c·G`. Floating mode: the same,
    /// relative to the largest entry of `ric`.
    pub residual: f64,
}

/// Exact mode takes `c = ric₀₀ / G₀₀` and demands `ric - cG = 0` exactly;
/// floating mode fits `c` by least squares and compares the relative
/// residual against `tol`.
pub fn einstein_check<S: Scalar>(ric: &Matrix<S>, gram: &Matrix<S>, tol: f64) -> Result<EinsteinReport<S>> {
    let n = gram.rows();
    if ric.rows() != n || ric.cols() != n || gram.cols() != n {
        return Err(Error::input("Ricci and Gram matrices differ in shape"));
    }
    if n == 0 {
        return Ok(EinsteinReport {
            is_einstein: true,
            constant: S::zero(),
            residual: 0.0,
        });
    }
    if gram.inverse().is_none() {
        return Err(Error::input("Gram matrix is singular"));
    }
    if S::EXACT {
        let c = ric[(0, 0)].clone() / gram[(0, 0)].clone();
        let diff = ric.sub(&gram.scale(&c));
        Ok(EinsteinReport {
            is_einstein: diff.is_zero(),
            residual: diff.max_abs(),
            constant: c,
        })
    } else {
        let c = frobenius(ric, gram) / frobenius(gram, gram);
        let diff = ric.sub(&gram.scale(&c));
        let scale = ric.max_abs();
        let residual = if scale == 0.0 { diff.max_abs() } else { diff.max_abs() / scale };
        Ok(EinsteinReport {
            is_einstein: residual <= tol,
            residual,
            constant: c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::tests::a1_solvable;
    use crate::lie::StructureConstants;
    use crate::scalar::{q, qi, Q};

    fn diag(a: i64, b: i64) -> Matrix<Q> {
        Matrix::from_rows(vec![vec![qi(a), qi(0)], vec![qi(0), qi(b)]])
    }

    #[test]
    fn definition_route_on_the_hyperbolic_plane() {
        let ric = ricci_definition(&a1_solvable()).matrix;
        assert_eq!(ric, diag(-4, -1));
    }

    #[test]
    fn literal_riemann_trace_matches() {
        let m = a1_solvable();
        let n = m.dim();
        let e = |i| linalg::unit_vec::<Q>(n, i);
        let ric = ricci_definition(&m).matrix;
        for a in 0..n {
            for b in 0..n {
                // trace of Z ↦ R(Z, b_a) b_b
                let mut t = qi(0);
                for p in 0..n {
                    t += m.riemann(&e(p), &e(a), &e(b))[p].clone();
                }
                assert_eq!(ric[(a, b)], t);
            }
        }
    }

    #[test]
    fn besse_term_breakdown() {
        let [t1, t2, t3, t4] = besse_terms(&a1_solvable());
        // ric(e, e) = (-1/2) + 0 + (1/2) + (-1)
        assert_eq!(
            [&t1, &t2, &t3, &t4].map(|t| t[(1, 1)].clone()),
            [q(-1, 2), qi(0), q(1, 2), qi(-1)]
        );
        // ric(h, h) = (-2) + (-2) + 0 + 0
        assert_eq!([&t1, &t2, &t3, &t4].map(|t| t[(0, 0)].clone()), [qi(-2), qi(-2), qi(0), qi(0)]);
    }

    #[test]
    fn wolter_route_values() {
        let ric = ricci_wolter(&a1_solvable()).unwrap().matrix;
        assert_eq!(ric, diag(-4, -1));
    }

    #[test]
    fn einstein_constant_of_the_hyperbolic_plane() {
        let m = a1_solvable();
        let r = einstein_check(&ricci_besse(&m).matrix, m.gram(), 0.0).unwrap();
        assert!(r.is_einstein);
        assert_eq!(r.constant, q(-1, 4));
    }

    #[test]
    fn abelian_algebras_are_flat() {
        let bracket = StructureConstants::<Q>::abelian(3);
        let gram = Matrix::from_fn(3, 3, |i, j| if i == j { qi(i as i64 + 1) } else { qi(0) });
        let m = MetricLieAlgebra::new(bracket, gram).unwrap();
        assert!(ricci_besse(&m).matrix.is_zero());
        assert!(ricci_definition(&m).matrix.is_zero());
        assert!(ricci_nilpotent(&m).unwrap().matrix.is_zero());
    }

    #[test]
    fn nilpotent_route_rejects_solvable_input() {
        assert!(matches!(ricci_nilpotent(&a1_solvable()), Err(Error::Precondition(_))));
    }

    #[test]
    fn float_routes_match_exact() {
        let m = a1_solvable();
        let exact = ricci_definition(&m).matrix.map(|c| c.to_f64());
        let float = ricci_definition(&m.to_f64()).matrix;
        assert!(exact.sub(&float).max_abs() < 1e-12);
        let besse = ricci_besse(&m.to_f64()).matrix;
        assert!(exact.sub(&besse).max_abs() < 1e-12);
    }
}
