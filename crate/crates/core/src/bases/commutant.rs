use super::BasisSet;
use crate::numlin::{herm_eig, kron, CMatrix};
use crate::Result;

/// Relative eigenvalue cutoff on `A†A` for the null-space count.
const NULL_TOL: f64 = 1e-10;

/// Dimension of the space of operators that are diagonal in every basis of
/// `bs`, i.e. that commute with every `|ψ⟩⟨ψ|`.
///
/// Stacks the linear maps `M ↦ [M, |ψ⟩⟨ψ|]` acting on row-major `vec(M)` as
/// `I ⊗ Πᵀ − Π ⊗ I` and counts the null space of their normal matrix.
pub fn commutant_dimension(bs: &BasisSet) -> Result<usize> {
    let d = bs.dim();
    let id = CMatrix::identity(d);
    let mut normal = CMatrix::zeros(d * d, d * d);
    for x in 0..bs.m() {
        for k in 0..d {
            let pi = CMatrix::projector(&bs.ket(x, k));
            let l = &kron(&id, &pi.transpose()) - &kron(&pi, &id);
            normal += &l.adjoint().matmul(&l);
        }
    }
    let e = herm_eig(&normal)?;
    let top = e.max_eigenvalue();
    if top <= f64::EPSILON {
        return Ok(d * d);
    }
    Ok(e.eigenvalues
        .iter()
        .filter(|&&l| l <= NULL_TOL * top)
        .count())
}
