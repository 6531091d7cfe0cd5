//! Dense complex linear algebra around a row-major matrix type and a
//! Hermitian eigensolver.

mod eig;
mod entropy;
mod matrix;
mod ops;

pub use eig::{cluster_spectrum, herm_eig, top_degeneracy, HermEig};
pub use entropy::{shannon_entropy, spectral_entropy, vn_entropy, ENTROPY_CUTOFF};
pub use matrix::{basis_vector, inner, norm, CMatrix, C64, ONE, ZERO};
pub use ops::{
    complete_to_unitary, kron, kron_vec, numerical_rank, partial_trace, psd_pinv, psd_sqrt,
    support_projector, trace_norm, Side,
};
