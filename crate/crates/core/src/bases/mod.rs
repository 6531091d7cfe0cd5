//! Basis sets and the components of their transition graphs.
//!
//! A basis set is a list of `m` orthonormal bases of `C^d` together with the
//! probabilities `μ_x` with which each basis is chosen. The transition graph
//! has one vertex per basis state and an edge between states of different
//! bases whenever their transition probability is nonzero; its connected
//! components split `C^d` into mutually orthogonal component subspaces.

mod commutant;
mod components;
pub mod fixtures;
mod graph;

pub use commutant::commutant_dimension;
pub use components::{components, is_irreducible, ComponentDecomposition};
pub use graph::{build_transition_graph, TransitionGraph};

use crate::numlin::{inner, CMatrix, C64};
use crate::{Error, Result};

/// Default squared-overlap adjacency threshold.
pub const DEFAULT_ADJ_TOL: f64 = 1e-9;

const ORTHONORMAL_TOL: f64 = 1e-9;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// `m` orthonormal bases of `C^dim` with sampling weights.
///
/// Basis `x` is stored as a unitary whose column `k` is `|ψ_{xk}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    dim: usize,
    bases: Vec<CMatrix>,
    weights: Vec<f64>,
}

impl BasisSet {
    pub fn new(dim: usize, bases: Vec<CMatrix>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBasisSet("dimension must be positive".into()));
        }
        if bases.is_empty() {
            return Err(Error::InvalidBasisSet("at least one basis required".into()));
        }
        if weights.len() != bases.len() {
            return Err(Error::InvalidBasisSet(format!(
                "{} weights for {} bases",
                weights.len(),
                bases.len()
            )));
        }
        for (x, b) in bases.iter().enumerate() {
            if b.rows() != dim || b.cols() != dim {
                return Err(Error::InvalidBasisSet(format!(
                    "basis {x} is {}x{}, expected {dim} kets of length {dim}",
                    b.rows(),
                    b.cols()
                )));
            }
            let gram = b.adjoint().matmul(b);
            for j in 0..dim {
                for k in 0..dim {
                    let target = if j == k { 1.0 } else { 0.0 };
                    let dev = (gram[(j, k)] - C64::new(target, 0.0)).norm();
                    if dev > ORTHONORMAL_TOL {
                        return Err(Error::InvalidBasisSet(format!(
                            "basis {x} not orthonormal: |<psi_{j}|psi_{k}> - delta| = {dev:.3e}"
                        )));
                    }
                }
            }
        }
        if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
            return Err(Error::InvalidBasisSet("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidBasisSet(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            dim,
            bases,
            weights,
        })
    }

    /// Equal weights `1/m`.
    pub fn uniform(dim: usize, bases: Vec<CMatrix>) -> Result<Self> {
        let m = bases.len().max(1);
        Self::new(dim, bases, vec![1.0 / m as f64; m])
    }

    /// Builds from explicit kets: `kets[x][k]` is `|ψ_{xk}⟩`.
    pub fn from_kets(dim: usize, kets: &[Vec<Vec<C64>>], weights: Vec<f64>) -> Result<Self> {
        let bases = kets
            .iter()
            .map(|b| CMatrix::from_columns(b))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidBasisSet(e.to_string()))?;
        Self::new(dim, bases, weights)
    }

    pub fn with_weights(self, weights: Vec<f64>) -> Result<Self> {
        Self::new(self.dim, self.bases, weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of bases.
    pub fn m(&self) -> usize {
        self.bases.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn basis(&self, x: usize) -> &CMatrix {
        &self.bases[x]
    }

    pub fn bases(&self) -> &[CMatrix] {
        &self.bases
    }

    pub fn ket(&self, x: usize, k: usize) -> Vec<C64> {
        self.bases[x].column(k)
    }

    pub fn kets(&self, x: usize) -> Vec<Vec<C64>> {
        (0..self.dim).map(|k| self.ket(x, k)).collect()
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: self.m(),
            });
        }
        Ok(())
    }

    /// `|⟨ψ_{xj}|ψ_{yk}⟩|²`.
    pub fn transition_probability(&self, x: usize, j: usize, y: usize, k: usize) -> f64 {
        inner(&self.ket(x, j), &self.ket(y, k)).norm_sqr()
    }

    /// Applies a global unitary to every basis state.
    pub fn rotated(&self, u: &CMatrix) -> Result<Self> {
        let bases = self.bases.iter().map(|b| u.matmul(b)).collect();
        Self::new(self.dim, bases, self.weights.clone())
    }

    /// Reorders the states inside basis `x` (`perm[k]` is the old index that
    /// becomes state `k`).
    pub fn permute_states(&self, x: usize, perm: &[usize]) -> Result<Self> {
        let mut bases = self.bases.clone();
        let old = &self.bases[x];
        bases[x] = CMatrix::from_fn(self.dim, self.dim, |r, c| old[(r, perm[c])]);
        Self::new(self.dim, bases, self.weights.clone())
    }

    /// Reorders the bases themselves, carrying their weights along.
    pub fn permute_bases(&self, perm: &[usize]) -> Result<Self> {
        let bases = perm.iter().map(|&i| self.bases[i].clone()).collect();
        let weights = perm.iter().map(|&i| self.weights[i]).collect();
        Self::new(self.dim, bases, weights)
    }
}
