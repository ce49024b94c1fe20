use super::eigen::{eig_hermitian, eigvals_hermitian};
use super::matrix::ComplexMatrix;
use super::state::{DensityOperator, EIGEN_CLAMP, TRACE_TOL};
use crate::error::{check_probability, Error, Result};

/// `-x log₂ x` with `0 log 0 = 0`.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy H₂(q) in bits.
pub fn binary_entropy(q: f64) -> Result<f64> {
    check_probability("q", q)?;
    Ok(plogp(q) + plogp(1.0 - q))
}

/// Binary entropy for arguments already known to lie in [0, 1].
pub(crate) fn h2(q: f64) -> f64 {
    plogp(q) + plogp(1.0 - q)
}

/// Shannon entropy of a probability vector, in bits.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| plogp(p)).sum()
}

/// Entropy of the spectrum of a Hermitian matrix assumed to be a state.
/// Eigenvalues in `[-1e-9, 0)` are clamped to zero.
pub(crate) fn spectrum_entropy(m: &ComplexMatrix) -> Result<f64> {
    let values = eigvals_hermitian(m)?;
    if let Some(&min) = values.last() {
        if min < -EIGEN_CLAMP {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
    }
    Ok(values.into_iter().map(|v| plogp(v.max(0.0))).sum())
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let m = rho.matrix();
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    match spectrum_entropy(m) {
        Err(Error::NotHermitian(d)) => Err(Error::InvalidState(format!("not Hermitian (deviation {d:e})"))),
        other => other,
    }
}

/// Sum of singular values. Hermitian input uses |eigenvalues| directly.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    m.ensure_square()?;
    if m.is_hermitian() {
        return Ok(eigvals_hermitian(m)?.iter().map(|v| v.abs()).sum());
    }
    let gram = m.adjoint().matmul(m)?;
    Ok(eigvals_hermitian(&gram)?.iter().map(|v| v.max(0.0).sqrt()).sum())
}

/// Hermitian positive square root of a PSD matrix.
pub fn matrix_sqrt_psd(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(x)?;
    if let Some(&min) = eig.values.last() {
        if min < -EIGEN_CLAMP {
            return Err(Error::NotPsd(min));
        }
    }
    Ok(eig.map_values(|v| v.max(0.0).sqrt()))
}
