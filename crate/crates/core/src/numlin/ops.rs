use super::eig::herm_eig;
use super::matrix::{CMatrix, C64, ZERO};
use crate::{Error, Result};

/// Which subsystem `partial_trace` removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Trace out Alice, keep Bob.
    A,
    /// Trace out Bob, keep Alice.
    B,
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| a * b))
        .collect()
}

/// Partial trace of an operator on `C^{d_a} ⊗ C^{d_b}` (Alice index major).
pub fn partial_trace(m: &CMatrix, d_a: usize, d_b: usize, side: Side) -> Result<CMatrix> {
    let n = d_a * d_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "partial trace over {d_a}x{d_b} needs a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(match side {
        Side::A => CMatrix::from_fn(d_b, d_b, |b, b2| {
            (0..d_a).map(|a| m[(a * d_b + b, a * d_b + b2)]).sum()
        }),
        Side::B => CMatrix::from_fn(d_a, d_a, |a, a2| {
            (0..d_b).map(|b| m[(a * d_b + b, a2 * d_b + b)]).sum()
        }),
    })
}

/// Projector onto eigenvectors whose eigenvalue exceeds `tol·λ_max`.
/// The zero matrix maps to the zero projector.
pub fn support_projector(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    let e = herm_eig(a)?;
    let top = e.max_eigenvalue();
    if top <= 0.0 {
        return Ok(CMatrix::zeros(a.rows(), a.cols()));
    }
    let cut = tol * top;
    Ok(e.map_spectrum(|l| if l > cut { 1.0 } else { 0.0 }))
}

/// Number of eigenvalues above `tol·λ_max`.
pub fn numerical_rank(a: &CMatrix, tol: f64) -> Result<usize> {
    let e = herm_eig(a)?;
    let top = e.max_eigenvalue();
    if top <= 0.0 {
        return Ok(0);
    }
    Ok(e.eigenvalues.iter().filter(|&&l| l > tol * top).count())
}

/// Square root of a PSD matrix; eigenvalues below zero are clipped.
pub fn psd_sqrt(a: &CMatrix) -> Result<CMatrix> {
    Ok(herm_eig(a)?.map_spectrum(|l| l.max(0.0).sqrt()))
}

/// Moore–Penrose inverse of a PSD matrix restricted to eigenvalues above
/// `tol·λ_max`, with the matching support projector.
pub fn psd_pinv(a: &CMatrix, tol: f64) -> Result<(CMatrix, CMatrix)> {
    let e = herm_eig(a)?;
    let cut = tol * e.max_eigenvalue().max(0.0);
    let inv = e.map_spectrum(|l| if l > cut && l > 0.0 { 1.0 / l } else { 0.0 });
    let supp = e.map_spectrum(|l| if l > cut && l > 0.0 { 1.0 } else { 0.0 });
    Ok((inv, supp))
}

/// Trace norm `‖A‖₁` of a Hermitian matrix.
pub fn trace_norm(a: &CMatrix) -> Result<f64> {
    Ok(herm_eig(a)?.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Orthonormal completion: returns a unitary whose leading columns are the
/// given orthonormal vectors.
pub fn complete_to_unitary(columns: &[Vec<C64>], dim: usize) -> Result<CMatrix> {
    if columns.len() > dim || columns.iter().any(|c| c.len() != dim) {
        return Err(Error::Dimension(format!(
            "cannot complete {} vectors to a unitary of size {dim}",
            columns.len()
        )));
    }
    let mut basis: Vec<Vec<C64>> = columns.to_vec();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = super::matrix::basis_vector(dim, k);
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for b in &basis {
                let ov = super::matrix::inner(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= ov * bi;
                }
            }
        }
        let n = super::matrix::norm(&v);
        if n > 1e-6 {
            v.iter_mut().for_each(|z| *z /= n);
            basis.push(v);
        }
    }
    CMatrix::from_columns(&basis)
}
