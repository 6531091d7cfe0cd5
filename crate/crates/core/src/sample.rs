//! Seeded random matrices and states for fixtures and tests.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::numlin::{inner, kron_vec, norm, CMatrix, C64, ZERO};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    v
}

/// Orthonormal columns from Gram–Schmidt on a Gaussian matrix. Gram–Schmidt
/// leaves a positive diagonal in the triangular factor, so the result is
/// Haar distributed.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows");
    loop {
        let g = ginibre(rows, cols, rng);
        let mut out: Vec<Vec<C64>> = Vec::with_capacity(cols);
        let mut ok = true;
        for c in 0..cols {
            let mut v = g.column(c);
            for _ in 0..2 {
                for b in &out {
                    let ov = inner(b, &v);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= ov * bi;
                    }
                }
            }
            let n = norm(&v);
            if n < 1e-8 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|z| *z /= n);
            out.push(v);
        }
        if ok {
            return CMatrix::from_columns(&out).expect("finite columns");
        }
    }
}

pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    random_isometry(d, d, rng)
}

/// Random density matrix `G G† / tr(G G†)` with `G` a `d × rank` Ginibre
/// matrix.
pub fn random_density<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(d, rank.max(1), rng);
    let m = g.matmul(&g.adjoint()).hermitian_part();
    let t = m.trace().re;
    m.scale_real(1.0 / t)
}

/// Random probability vector (normalized uniform draws bounded away from 0).
pub fn random_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `|Φ⟩ = Σ_j |j⟩|j⟩/√d_a` embedded in `C^{d_a} ⊗ C^{d_b}`.
pub fn canonical_mes_vector(d_a: usize, d_b: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d_a * d_b];
    let amp = 1.0 / (d_a as f64).sqrt();
    for j in 0..d_a.min(d_b) {
        v[j * d_b + j] = C64::new(amp, 0.0);
    }
    v
}

/// Pure vector with prescribed Schmidt coefficients (squared weights
/// `schmidt_probs`), rotated by the given local unitaries.
pub fn schmidt_vector(probs: &[f64], ua: &CMatrix, ub: &CMatrix) -> Vec<C64> {
    let d_a = ua.rows();
    let d_b = ub.rows();
    let mut v = vec![ZERO; d_a * d_b];
    for (j, &p) in probs.iter().enumerate() {
        let a = ua.column(j);
        let b = ub.column(j);
        let t = kron_vec(&a, &b);
        for (vi, ti) in v.iter_mut().zip(t) {
            *vi += ti * p.sqrt();
        }
    }
    v
}
