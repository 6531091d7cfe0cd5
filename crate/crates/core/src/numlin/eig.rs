//! Cyclic Jacobi eigendecomposition for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! combined plane rotation is
//!
//! ```text
//! R = [[ c,            s         ],
//!      [-s e^{-iφ},    c e^{-iφ} ]]      (rows/cols p, q)
//! ```
//!
//! with `e^{iφ} = a_pq / |a_pq|`. Sweeps run until the off-diagonal mass
//! drops below machine precision relative to the Frobenius norm.

use super::matrix::{CMatrix, C64, ZERO};
use crate::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermEig {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n, n);
        for (k, &w) in fl.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = v[(r, k)] * w;
                if vr == ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += vr * v[(c, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Decomposes a Hermitian matrix. The input must be Hermitian within
/// `1e-10·max(1, ‖A‖_F)`; it is symmetrized before rotating.
pub fn herm_eig(a: &CMatrix) -> Result<HermEig> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.frobenius_norm().max(1.0);
    let defect = a.hermiticity_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian {
            deviation: defect,
            tol: HERMITIAN_TOL * scale,
        });
    }
    Ok(jacobi(a.hermitian_part()))
}

fn jacobi(mut a: CMatrix) -> HermEig {
    let n = a.rows();
    let mut v = CMatrix::identity(n);
    let total = a.frobenius_norm();
    if n > 1 && total > 0.0 {
        let target = (f64::EPSILON * total).powi(2);
        for _ in 0..MAX_SWEEPS {
            let off = off_diagonal_sq(&a);
            if off <= target {
                break;
            }
            // Pivots this small cannot keep the off-diagonal mass above target.
            let negligible = target / (n * n) as f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag * mag <= negligible {
                        continue;
                    }
                    rotate(&mut a, &mut v, p, q, apq, mag);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermEig {
        eigenvalues,
        eigenvectors,
    }
}

fn off_diagonal_sq(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, apq: C64, mag: f64) {
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();

    // Plane rotation entries (rows/cols p, q).
    let r_pp = C64::new(c, 0.0);
    let r_pq = C64::new(s, 0.0);
    let r_qp = -ph_conj * s;
    let r_qq = ph_conj * c;

    // A ← A R (columns p, q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * r_pp + akq * r_qp;
        a[(k, q)] = akp * r_pq + akq * r_qq;
    }
    // A ← R† A (rows p, q).
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
        a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    // V ← V R.
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * r_pp + vkq * r_qp;
        v[(k, q)] = vkp * r_pq + vkq * r_qq;
    }
}

/// Number of leading eigenvalues (sorted descending) that cluster with the
/// largest one: consecutive gaps must stay within `spec_tol·max(1, λ_max)`.
pub fn top_degeneracy(eigenvalues: &[f64], spec_tol: f64) -> usize {
    let Some(&top) = eigenvalues.first() else {
        return 0;
    };
    let gap = spec_tol * top.abs().max(1.0);
    let mut count = 1;
    for w in eigenvalues.windows(2) {
        if w[0] - w[1] <= gap {
            count += 1;
        } else {
            break;
        }
    }
    count
}

/// Groups a descending spectrum into clusters of near-equal eigenvalues.
/// Returns index ranges into the slice.
pub fn cluster_spectrum(eigenvalues: &[f64], spec_tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    if eigenvalues.is_empty() {
        return out;
    }
    let top = eigenvalues[0].abs().max(1.0);
    let gap = spec_tol * top;
    let mut start = 0;
    for i in 1..eigenvalues.len() {
        if eigenvalues[i - 1] - eigenvalues[i] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..eigenvalues.len());
    out
}
