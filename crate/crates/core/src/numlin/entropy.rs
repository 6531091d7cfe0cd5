use super::eig::herm_eig;
use super::matrix::CMatrix;
use crate::{Error, Result};

/// Eigenvalues at or below this are dropped from entropy sums.
pub const ENTROPY_CUTOFF: f64 = 1e-12;
const PSD_TOL: f64 = 1e-9;

/// `−Σ p log₂ p` over entries above the cutoff.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ENTROPY_CUTOFF)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Von Neumann entropy in bits.
pub fn vn_entropy(rho: &CMatrix) -> Result<f64> {
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > PSD_TOL || tr.im.abs() > PSD_TOL {
        return Err(Error::InvalidState(format!(
            "entropy needs unit trace, got {:.6e}",
            tr.re
        )));
    }
    let e = herm_eig(rho)?;
    let min = e.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NegativeEigenvalue(min));
    }
    let s = shannon_entropy(&e.eigenvalues);
    Ok(s.clamp(0.0, (rho.rows() as f64).log2()))
}

/// Entropy of the spectrum of a (possibly subnormalized) PSD operator,
/// `−Σ λ log₂ λ`, without any trace requirement.
pub fn spectral_entropy(a: &CMatrix) -> Result<f64> {
    let e = herm_eig(a)?;
    let min = e.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NegativeEigenvalue(min));
    }
    Ok(shannon_entropy(&e.eigenvalues))
}
