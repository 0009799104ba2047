use super::{mean_curvature_from, MetricLieAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// Second fundamental form of a coordinate subalgebra and what follows
/// from it. Vectors are in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmanifoldReport<S> {
    /// `H = Σ_{ij} (G_sub⁻¹)_ij h(b_i, b_j)`.
    pub mean_curvature: Vec<S>,
    pub is_minimal: bool,
    pub is_totally_geodesic: bool,
    /// `None` until [`SubmanifoldReport::with_ricci_restriction`] is called.
    pub ricci_restriction_ok: Option<bool>,
    /// `h(b_i, b_j)` indexed by `i * sub_dim + j`.
    pub h_tensor: Vec<Vec<S>>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> SubmanifoldReport<S> {
    pub fn with_ricci_restriction(mut self, check: Check) -> Self {
        self.ricci_restriction_ok = Some(check.passed);
        self.checks.push(check);
        self
    }

    /// `h(b_i, b_j)` in ambient coordinates.
    pub fn h(&self, i: usize, j: usize) -> &[S] {
        let k = (self.h_tensor.len() as f64).sqrt().round() as usize;
        &self.h_tensor[i * k + j]
    }
}

fn check_embedding<S: Scalar>(sub: &MetricLieAlgebra<S>, ambient: &MetricLieAlgebra<S>, embedding: &[usize]) -> Result<()> {
    let k = sub.dim();
    let n = ambient.dim();
    if embedding.len() != k {
        return Err(Error::input("embedding length differs from the subalgebra dimension"));
    }
    let mut seen = vec![false; n];
    for &e in embedding {
        if e >= n || seen[e] {
            return Err(Error::input("embedding indices must be distinct ambient coordinates"));
        }
        seen[e] = true;
    }
    let scale = ambient.scale();
    let gram = ambient.gram().submatrix(embedding, embedding);
    if !gram.sub(sub.gram()).to_rows().iter().flatten().all(|d| d.is_negligible(scale)) {
        return Err(Error::input("sub Gram is not the restricted ambient Gram"));
    }
    for i in 0..k {
        for j in 0..k {
            let mut want = linalg::zero_vec::<S>(n);
            for (l, c) in sub.bracket().basis_bracket(i, j) {
                want[embedding[*l]] = c.clone();
            }
            let got = ambient.bracket().bracket(&linalg::unit_vec(n, embedding[i]), &linalg::unit_vec(n, embedding[j]));
            if !linalg::vec_sub(&got, &want).iter().all(|d| d.is_negligible(scale)) {
                return Err(Error::input("sub bracket is not the restricted ambient bracket"));
            }
        }
    }
    Ok(())
}

fn embed<S: Scalar>(v: &[S], embedding: &[usize], n: usize) -> Vec<S> {
    let mut out = linalg::zero_vec::<S>(n);
    for (x, &e) in v.iter().zip(embedding) {
        out[e] = x.clone();
    }
    out
}

/// `h(X, Y) = U^ambient(X, Y) - U^sub(X, Y)` for a subalgebra whose basis is
/// the ambient coordinates listed in `embedding`.
pub fn second_fundamental_form<S: Scalar>(
    sub: &MetricLieAlgebra<S>,
    ambient: &MetricLieAlgebra<S>,
    embedding: &[usize],
) -> Result<SubmanifoldReport<S>> {
    check_embedding(sub, ambient, embedding)?;
    let k = sub.dim();
    let n = ambient.dim();
    let scale = ambient.scale();
    let u_amb = ambient.u_table();
    let u_sub = sub.u_table();
    let mut h_tensor = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let amb = &u_amb[embedding[i] * n + embedding[j]];
            h_tensor.push(linalg::vec_sub(amb, &embed(&u_sub[i * k + j], embedding, n)));
        }
    }
    // tangential components ⟨h(b_i, b_j), b_l⟩
    let mut tangential = Vec::new();
    for h in &h_tensor {
        let gh = ambient.gram().mul_vec(h);
        tangential.extend(embedding.iter().map(|&e| gh[e].clone()));
    }
    let normal = Check::zero_vec("h normal-valued", &tangential, scale);

    let mut mean = linalg::zero_vec::<S>(n);
    for i in 0..k {
        for j in 0..k {
            let g = &sub.gram_inv()[(i, j)];
            if !g.is_zero() {
                linalg::axpy(&mut mean, g, &h_tensor[i * k + j]);
            }
        }
    }
    // H = H₀^ambient - H₀^sub - Σ U^ambient(N, N) over an orthonormal basis of the normal space
    let h0_amb = mean_curvature_from(ambient, &u_amb);
    let h0_sub = embed(&mean_curvature_from(sub, &u_sub), embedding, n);
    let all: Vec<Vec<S>> = (0..n).map(|x| linalg::unit_vec(n, x)).collect();
    let tangent: Vec<Vec<S>> = embedding.iter().map(|&e| linalg::unit_vec(n, e)).collect();
    let normal_basis = linalg::orthogonal_complement(ambient.gram(), &all, &tangent);
    let gn = Matrix::from_fn(normal_basis.len(), normal_basis.len(), |p, q| {
        ambient.inner(&normal_basis[p], &normal_basis[q])
    });
    let gn_inv = gn.inverse().ok_or_else(|| Error::construction("normal Gram is singular"))?;
    let mut normal_trace = linalg::zero_vec::<S>(n);
    for p in 0..normal_basis.len() {
        for q in 0..normal_basis.len() {
            let c = &gn_inv[(p, q)];
            if !c.is_zero() {
                let u = ambient.u_form(&normal_basis[p], &normal_basis[q]);
                linalg::axpy(&mut normal_trace, c, &u);
            }
        }
    }
    let predicted = linalg::vec_sub(&linalg::vec_sub(&h0_amb, &h0_sub), &normal_trace);
    let mean_check = Check::zero_vec("mean curvature from H0", &linalg::vec_sub(&mean, &predicted), scale);

    let is_minimal = mean.iter().all(|x| x.is_negligible(scale));
    let is_totally_geodesic = h_tensor.iter().flatten().all(|x| x.is_negligible(scale));
    let minimal = Check::zero_vec("minimal", &mean, scale);
    let tg_residual = h_tensor.iter().map(|h| linalg::max_abs_vec(h)).fold(0.0, f64::max);
    let geodesic = Check::new("totally geodesic", is_totally_geodesic, tg_residual);
    Ok(SubmanifoldReport {
        mean_curvature: mean,
        is_minimal,
        is_totally_geodesic,
        ricci_restriction_ok: None,
        h_tensor,
        checks: vec![normal, mean_check, minimal, geodesic],
    })
}

/// Compares a sub Ricci tensor with the restriction of the ambient one.
pub fn ricci_restriction_from<S: Scalar>(sub_ric: &Matrix<S>, ambient_ric: &Matrix<S>, embedding: &[usize]) -> Check {
    let restricted = ambient_ric.submatrix(embedding, embedding);
    let scale = ambient_ric.max_abs().max(1.0);
    Check::zero_matrix("ricci restriction", &restricted.sub(sub_ric), scale)
}

/// `ric^sub = ric^ambient` on sub × sub, via the trace formula route.
pub fn ricci_restriction_check<S: Scalar>(
    sub: &MetricLieAlgebra<S>,
    ambient: &MetricLieAlgebra<S>,
    embedding: &[usize],
) -> Result<Check> {
    check_embedding(sub, ambient, embedding)?;
    let sub_ric = super::ricci_besse(sub).matrix;
    let amb_ric = super::ricci_besse(ambient).matrix;
    Ok(ricci_restriction_from(&sub_ric, &amb_ric, embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::tests::a1_solvable;
    use crate::lie::StructureConstants;
    use crate::scalar::{qi, Q};

    #[test]
    fn identity_embedding_is_totally_geodesic() {
        let m = a1_solvable();
        let r = second_fundamental_form(&m, &m, &[0, 1]).unwrap();
        assert!(r.is_totally_geodesic && r.is_minimal);
        assert!(r.checks.iter().all(|c| c.passed));
        assert!(ricci_restriction_check(&m, &m, &[0, 1]).unwrap().passed);
    }

    #[test]
    fn geodesic_line_in_the_hyperbolic_plane() {
        let m = a1_solvable();
        let sub = m.coordinate_subalgebra(&[0]).unwrap();
        let r = second_fundamental_form(&sub, &m, &[0]).unwrap();
        assert!(r.is_totally_geodesic);
        // the horocycle direction e is not geodesic: h(e, e) = U(e, e) = h/2
        let horo = m.coordinate_subalgebra(&[1]).unwrap();
        let r = second_fundamental_form(&horo, &m, &[1]).unwrap();
        assert_eq!(r.h(0, 0), &[Q::new(1.into(), 2.into()), qi(0)]);
        assert!(!r.is_minimal);
        assert!(r.checks[0].passed && r.checks[1].passed);
    }

    #[test]
    fn inconsistent_embedding_is_an_input_error() {
        let m = a1_solvable();
        let bad = MetricLieAlgebra::new(StructureConstants::abelian(1), Matrix::from_rows(vec![vec![qi(3)]])).unwrap();
        assert!(matches!(second_fundamental_form(&bad, &m, &[0]), Err(Error::Input(_))));
        assert!(matches!(second_fundamental_form(&bad, &m, &[5]), Err(Error::Input(_))));
    }
}
