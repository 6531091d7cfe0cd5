use crate::bases::BasisSet;
use crate::numlin::{herm_eig, kron, CMatrix, C64};
use crate::states::{mes_normal_form, BipartiteState};
use crate::zus::reduced_ensemble;
use crate::{Error, Result};

const PSD_TOL: f64 = 1e-9;
const COMPLETENESS_TOL: f64 = 1e-8;

/// Positive operator-valued measure on Bob's space.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<CMatrix>,
}

impl Povm {
    /// Validates positivity (within 1e-9) and completeness (within 1e-8).
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.rows();
        let mut sum = CMatrix::zeros(dim, dim);
        let mut clean = Vec::with_capacity(elements.len());
        for (k, e) in elements.into_iter().enumerate() {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {k} is {}x{}, expected {dim}x{dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            let defect = e.hermiticity_defect();
            if defect > PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {k} is not Hermitian (defect {defect:.3e})"
                )));
            }
            let e = e.hermitian_part();
            let min = herm_eig(&e)?.min_eigenvalue();
            if min < -PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has eigenvalue {min:.3e} < 0"
                )));
            }
            sum += &e;
            clean.push(e);
        }
        let dev = sum.distance(&CMatrix::identity(dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {dev:.3e}"
            )));
        }
        Ok(Self {
            dim,
            elements: clean,
        })
    }

    /// Rank-one projectors onto the given orthonormal kets.
    pub fn projective(kets: &[Vec<C64>]) -> Result<Self> {
        Self::new(kets.iter().map(|k| CMatrix::projector(k)).collect())
    }

    /// `n` copies of `I/n`: guessing without looking.
    pub fn uniform(dim: usize, n: usize) -> Self {
        let e = CMatrix::identity(dim).scale_real(1.0 / n as f64);
        Self {
            dim,
            elements: vec![e; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &CMatrix {
        &self.elements[k]
    }
}

/// `p_x = Σ_k tr(ρ_{xk} Π_k)`.
pub fn guessing_probability(
    s: &BipartiteState,
    bs: &BasisSet,
    x: usize,
    povm: &Povm,
) -> Result<f64> {
    if povm.len() != bs.dim() || povm.dim() != s.d_b() {
        return Err(Error::Dimension(format!(
            "POVM has {} elements on C^{}, need {} on C^{}",
            povm.len(),
            povm.dim(),
            bs.dim(),
            s.d_b()
        )));
    }
    let e = reduced_ensemble(s, bs, x)?;
    Ok(e.states
        .iter()
        .zip(povm.elements())
        .map(|(r, p)| r.trace_product(p).re)
        .sum())
}

/// Bob's perfect measurement for basis `x` on a maximally entangled state.
///
/// In the normal-form frame, element `k` is `ρ′_k ⊗ 1_n` with
/// `ρ′_k = d_a ⟨ψ_k|Φ′⟩⟨Φ′|ψ_k⟩ = |ψ_k*⟩⟨ψ_k*|`; the complement of the MES
/// support is shared equally among the elements.
pub fn optimal_povm_for_mes(s: &BipartiteState, bs: &BasisSet, x: usize) -> Result<Povm> {
    if bs.dim() != s.d_a() {
        return Err(Error::Dimension(format!(
            "basis set acts on C^{}, state has d_A={}",
            bs.dim(),
            s.d_a()
        )));
    }
    bs.check_index(x)?;
    let nf = mes_normal_form(s)?;
    let (d_a, d_b) = (s.d_a(), s.d_b());
    let n = nf.tau.rows();
    let dn = d_a * n;
    let phi = BipartiteState::pure(d_a, d_a, &nf.phi)?;
    let primed = reduced_ensemble(&phi, bs, x)?;
    let id_n = CMatrix::identity(n);
    let spread = 1.0 / d_a as f64;
    let mut elements = Vec::with_capacity(d_a);
    for rk in &primed.states {
        let core = kron(&rk.scale_real(d_a as f64), &id_n);
        let local = CMatrix::from_fn(d_b, d_b, |r, c| {
            if r < dn && c < dn {
                core[(r, c)]
            } else if r == c {
                C64::new(spread, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        elements.push(local.conjugate_by(&nf.bob_unitary).hermitian_part());
    }
    Povm::new(elements)
}
