//! Deterministic basis-set fixtures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::BasisSet;
use crate::numlin::{CMatrix, C64};
use crate::{sample, Error, Result};

/// Eigenbases of σ_z, σ_x and σ_y with weights 1/3.
pub fn pauli_mubs() -> BasisSet {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = CMatrix::identity(2);
    let x = CMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
    let y = CMatrix::from_vec(
        2,
        2,
        vec![
            C64::new(h, 0.0),
            C64::new(h, 0.0),
            C64::new(0.0, h),
            C64::new(0.0, -h),
        ],
    )
    .unwrap();
    BasisSet::uniform(2, vec![z, x, y]).expect("Pauli eigenbases are orthonormal")
}

/// Discrete Fourier matrix `ω^{jk}/√d`.
pub fn fourier_matrix(d: usize) -> CMatrix {
    let s = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |j, k| {
        let phase = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
        C64::from_polar(s, phase)
    })
}

/// Computational basis plus its Fourier transform: a mutually unbiased pair.
pub fn fourier_pair(d: usize) -> BasisSet {
    BasisSet::uniform(d, vec![CMatrix::identity(d), fourier_matrix(d)])
        .expect("Fourier basis is orthonormal")
}

/// The computational basis alone.
pub fn computational(d: usize) -> BasisSet {
    BasisSet::uniform(d, vec![CMatrix::identity(d)]).expect("identity is orthonormal")
}

/// `m` copies of the computational basis.
pub fn repeated_computational(d: usize, m: usize) -> BasisSet {
    BasisSet::uniform(d, vec![CMatrix::identity(d); m]).expect("identity is orthonormal")
}

/// σ_z eigenbasis and the basis `R_y(θ)|0⟩, R_y(θ)|1⟩`.
pub fn rotated_qubit_pair(theta: f64) -> BasisSet {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let r = CMatrix::from_real(2, 2, &[c, -s, s, c]).unwrap();
    BasisSet::uniform(2, vec![CMatrix::identity(2), r]).expect("rotation is orthonormal")
}

/// `m` Haar-random bases of `C^d` drawn from a seeded generator, with
/// uniform weights.
pub fn haar_random(d: usize, m: usize, seed: u64) -> BasisSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = (0..m).map(|_| sample::haar_unitary(d, &mut rng)).collect();
    BasisSet::uniform(d, bases).expect("Haar unitaries are orthonormal")
}

/// Block-diagonal basis set: basis `x` of the result is the direct sum of
/// basis `x` of every summand. Weights are the average of the summands'
/// weights.
pub fn direct_sum(parts: &[BasisSet]) -> Result<BasisSet> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidBasisSet("direct sum of nothing".into()));
    };
    let m = first.m();
    if let Some(p) = parts.iter().find(|p| p.m() != m) {
        return Err(Error::InvalidBasisSet(format!(
            "direct sum needs equal basis counts, got {m} and {}",
            p.m()
        )));
    }
    let dim: usize = parts.iter().map(BasisSet::dim).sum();
    let mut bases = vec![CMatrix::zeros(dim, dim); m];
    let mut offset = 0;
    for p in parts {
        for (x, b) in bases.iter_mut().enumerate() {
            let src = p.basis(x);
            for r in 0..p.dim() {
                for c in 0..p.dim() {
                    b[(offset + r, offset + c)] = src[(r, c)];
                }
            }
        }
        offset += p.dim();
    }
    let mut weights = vec![0.0; m];
    for p in parts {
        for (w, pw) in weights.iter_mut().zip(p.weights()) {
            *w += pw / parts.len() as f64;
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    BasisSet::new(dim, bases, weights)
}
