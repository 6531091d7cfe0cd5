//! Random constructions shared by the integration suites.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zuslab::bases::{fixtures, is_irreducible, BasisSet};
use zuslab::game::Povm;
use zuslab::numlin::{psd_pinv, psd_sqrt, CMatrix, C64};
use zuslab::sample;
use zuslab::states::BipartiteState;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` Haar bases of `C^d` with random weights; irreducible with
/// probability one, and checked.
pub fn random_irreducible<R: Rng>(d: usize, m: usize, rng: &mut R) -> BasisSet {
    assert!(
        d == 1 || m >= 2,
        "a single basis of dimension {d} is reducible"
    );
    loop {
        let bases = (0..m).map(|_| sample::haar_unitary(d, rng)).collect();
        let bs = BasisSet::new(d, bases, sample::random_weights(m, rng)).unwrap();
        if is_irreducible(&bs, 1e-9).unwrap() {
            return bs;
        }
    }
}

pub struct DirectSum {
    pub bs: BasisSet,
    /// Dimensions of the irreducible summands, in construction order.
    pub block_dims: Vec<usize>,
    /// Global unitary applied after summing.
    pub rotation: CMatrix,
}

/// Direct sum of Haar blocks with dimensions `dims`, scrambled by a global
/// unitary, state permutations inside every basis, a basis permutation and
/// fresh random weights.
pub fn scrambled_direct_sum<R: Rng>(dims: &[usize], m: usize, rng: &mut R) -> DirectSum {
    let blocks: Vec<BasisSet> = dims
        .iter()
        .map(|&d| {
            let bases = (0..m).map(|_| sample::haar_unitary(d, rng)).collect();
            BasisSet::uniform(d, bases).unwrap()
        })
        .collect();
    let d: usize = dims.iter().sum();
    let rotation = sample::haar_unitary(d, rng);
    let mut bs = fixtures::direct_sum(&blocks)
        .unwrap()
        .rotated(&rotation)
        .unwrap();
    for x in 0..m {
        bs = bs.permute_states(x, &sample::permutation(d, rng)).unwrap();
    }
    bs = bs.permute_bases(&sample::permutation(m, rng)).unwrap();
    let bs = bs.with_weights(sample::random_weights(m, rng)).unwrap();
    DirectSum {
        bs,
        block_dims: dims.to_vec(),
        rotation,
    }
}

/// 1–4 blocks with total dimension at most `max_dim`, 2–4 bases.
pub fn random_direct_sum<R: Rng>(max_dim: usize, rng: &mut R) -> DirectSum {
    let blocks = rng.random_range(1..=4usize).min(max_dim);
    let dims = loop {
        let dims: Vec<usize> = (0..blocks)
            .map(|_| rng.random_range(1..=max_dim.min(4)))
            .collect();
        if dims.iter().sum::<usize>() <= max_dim {
            break dims;
        }
    };
    let m = rng.random_range(2..=4);
    scrambled_direct_sum(&dims, m, rng)
}

/// Mixture of `n` maximally entangled pure states with orthogonal Bob
/// supports, rotated by a random Alice unitary. Needs `n·d_a ≤ d_b`.
pub fn random_mes<R: Rng>(d_a: usize, d_b: usize, n: usize, rng: &mut R) -> BipartiteState {
    assert!(n >= 1 && n * d_a <= d_b);
    let v = sample::random_isometry(d_b, d_a * n, rng);
    let w = sample::random_weights(n, rng);
    let amp = 1.0 / (d_a as f64).sqrt();
    let parts: Vec<BipartiteState> = (0..n)
        .map(|s| {
            let mut psi = vec![C64::new(0.0, 0.0); d_a * d_b];
            for j in 0..d_a {
                for b in 0..d_b {
                    psi[j * d_b + b] = v[(b, j * n + s)] * amp;
                }
            }
            BipartiteState::pure(d_a, d_b, &psi).unwrap()
        })
        .collect();
    let mix: Vec<(f64, &BipartiteState)> = w.iter().copied().zip(parts.iter()).collect();
    let s = BipartiteState::mixture(&mix).unwrap();
    s.apply_alice(&sample::haar_unitary(d_a, rng)).unwrap()
}

pub fn random_pure<R: Rng>(d_a: usize, d_b: usize, rng: &mut R) -> BipartiteState {
    BipartiteState::pure(d_a, d_b, &sample::random_vector(d_a * d_b, rng)).unwrap()
}

/// Full-rank Ginibre mixed state.
pub fn random_mixed<R: Rng>(d_a: usize, d_b: usize, rng: &mut R) -> BipartiteState {
    let n = d_a * d_b;
    BipartiteState::new(d_a, d_b, sample::random_density(n, n, rng)).unwrap()
}

/// `n`-outcome POVM `S^{-1/2} G_k S^{-1/2}` from random PSD `G_k`, with
/// the complement of `supp S` shared equally.
pub fn random_povm<R: Rng>(dim: usize, n: usize, rng: &mut R) -> Povm {
    let gs: Vec<CMatrix> = (0..n)
        .map(|_| sample::random_density(dim, rng.random_range(1..=dim), rng))
        .collect();
    let mut s = CMatrix::zeros(dim, dim);
    for g in &gs {
        s += g;
    }
    let (inv, supp) = psd_pinv(&psd_sqrt(&s).unwrap(), 1e-6).unwrap();
    let fill = (&CMatrix::identity(dim) - &supp).scale_real(1.0 / n as f64);
    Povm::new(
        gs.iter()
            .map(|g| (&g.conjugate_by(&inv) + &fill).hermitian_part())
            .collect(),
    )
    .unwrap()
}

/// Projective measurement onto the complex conjugates of basis `x`.
pub fn conjugate_povm(bs: &BasisSet, x: usize) -> Povm {
    let kets: Vec<Vec<C64>> = (0..bs.dim())
        .map(|k| bs.ket(x, k).iter().map(|z| z.conj()).collect())
        .collect();
    Povm::projective(&kets).unwrap()
}

/// Zero-uncertainty states built on a scrambled direct sum: block `a` is the
/// maximally entangled state of the block's rotated basis with a random Bob
/// frame, weighted by `q[a]`.
pub struct ZusFamily {
    /// Mixture of the block states: economical.
    pub economical: BipartiteState,
    /// Coherent superposition of the same block states.
    pub coherent: BipartiteState,
    pub q: Vec<f64>,
    /// `Σ_a q_a log₂ r_a`.
    pub floor: f64,
}

pub fn zus_family<R: Rng>(ds: &DirectSum, rng: &mut R) -> ZusFamily {
    let d = ds.bs.dim();
    let bob = sample::haar_unitary(d, rng);
    let q = sample::random_weights(ds.block_dims.len(), rng);
    let mut blocks = Vec::new();
    let mut off = 0;
    for &rk in &ds.block_dims {
        let amp = 1.0 / (rk as f64).sqrt();
        let mut psi = vec![C64::new(0.0, 0.0); d * d];
        for j in 0..rk {
            let alpha = ds.rotation.column(off + j);
            let beta = bob.column(off + j);
            for a in 0..d {
                for b in 0..d {
                    psi[a * d + b] += alpha[a] * beta[b] * amp;
                }
            }
        }
        blocks.push(psi);
        off += rk;
    }
    let pure_blocks: Vec<BipartiteState> = blocks
        .iter()
        .map(|v| BipartiteState::pure(d, d, v).unwrap())
        .collect();
    let mix: Vec<(f64, &BipartiteState)> = q.iter().copied().zip(pure_blocks.iter()).collect();
    let economical = BipartiteState::mixture(&mix).unwrap();
    let mut coherent = vec![C64::new(0.0, 0.0); d * d];
    for (v, &qa) in blocks.iter().zip(&q) {
        for (c, z) in coherent.iter_mut().zip(v) {
            *c += z * qa.sqrt();
        }
    }
    let coherent = BipartiteState::pure(d, d, &coherent).unwrap();
    let floor = q
        .iter()
        .zip(&ds.block_dims)
        .map(|(qa, &rk)| qa * (rk as f64).log2())
        .sum();
    ZusFamily {
        economical,
        coherent,
        q,
        floor,
    }
}
