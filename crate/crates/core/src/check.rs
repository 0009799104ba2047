use serde::{Deserialize, Serialize};

use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// Outcome of one named verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest absolute deviation observed; exactly 0 for exact passes.
    pub residual: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, residual: f64) -> Self {
        Check {
            name: name.into(),
            passed,
            residual,
        }
    }

    /// A yes/no check without a meaningful residual.
    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Check::new(name, passed, if passed { 0.0 } else { 1.0 })
    }

    /// Passes when every entry of `diff` is negligible relative to `scale`.
    pub fn zero_vec<S: Scalar>(name: impl Into<String>, diff: &[S], scale: f64) -> Self {
        let residual = linalg::max_abs_vec(diff);
        let passed = diff.iter().all(|d| d.is_negligible(scale));
        Check::new(name, passed, residual)
    }

    pub fn zero_matrix<S: Scalar>(name: impl Into<String>, diff: &Matrix<S>, scale: f64) -> Self {
        let rows = diff.to_rows();
        let flat: Vec<S> = rows.into_iter().flatten().collect();
        Check::zero_vec(name, &flat, scale)
    }

    /// Exact scalars must vanish; floats must stay within `tol` relative to
    /// `scale`, and the residual is reported relative to it.
    pub fn within<S: Scalar>(name: impl Into<String>, diff: &[S], scale: f64, tol: f64) -> Self {
        let residual = linalg::max_abs_vec(diff);
        if S::EXACT {
            Check::new(name, diff.iter().all(|d| d.is_zero()), residual)
        } else {
            let relative = residual / scale.max(1.0);
            Check::new(name, relative <= tol, relative)
        }
    }

    pub fn within_matrix<S: Scalar>(name: impl Into<String>, diff: &Matrix<S>, scale: f64, tol: f64) -> Self {
        let flat: Vec<S> = diff.to_rows().into_iter().flatten().collect();
        Check::within(name, &flat, scale, tol)
    }
}
