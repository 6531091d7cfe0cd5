//! Bipartite density operators and maximal-entanglement classification.
//!
//! A state on `C^{d_a} ⊗ C^{d_b}` is maximally entangled (MES) when it is a
//! mixture of pure states, each with all Schmidt coefficients equal to
//! `1/√d_a`, whose Bob-side reduced states have mutually orthogonal
//! supports. Equivalently its conditional entropy `H(A|B)` reaches the floor
//! `−log₂ d_a`. [`is_mes`] evaluates both characterizations and insists that
//! they agree.

use crate::numlin::{
    complete_to_unitary, herm_eig, kron, partial_trace, shannon_entropy, spectral_entropy, CMatrix,
    Side, C64, ZERO,
};
use crate::sample::canonical_mes_vector;
use crate::{Error, Result};

const STATE_TOL: f64 = 1e-9;
/// Eigenvalues of `ρ` above this count as part of its support.
pub const SUPPORT_CUTOFF: f64 = 1e-10;
/// Default tolerance for Schmidt-coefficient equality.
pub const DEFAULT_MES_TOL: f64 = 1e-7;
const PURITY_TOL: f64 = 1e-8;
const RECONSTRUCT_TOL: f64 = 1e-8;

/// Density operator on `C^{d_a} ⊗ C^{d_b}` with cached marginals.
///
/// Product basis index is `a·d_b + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    d_a: usize,
    d_b: usize,
    rho: CMatrix,
    rho_a: CMatrix,
    rho_b: CMatrix,
}

impl BipartiteState {
    pub fn new(d_a: usize, d_b: usize, rho: CMatrix) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidState("dimensions must be positive".into()));
        }
        let n = d_a * d_b;
        if rho.rows() != n || rho.cols() != n {
            return Err(Error::Dimension(format!(
                "state on {d_a}x{d_b} needs a {n}x{n} matrix, got {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let defect = rho.hermiticity_defect();
        if defect > STATE_TOL {
            return Err(Error::NotHermitian {
                deviation: defect,
                tol: STATE_TOL,
            });
        }
        let rho = rho.hermitian_part();
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace must be 1 within {STATE_TOL:e}, got {tr}"
            )));
        }
        let min = herm_eig(&rho)?.min_eigenvalue();
        if min < -STATE_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        let rho_a = partial_trace(&rho, d_a, d_b, Side::B)?.hermitian_part();
        let rho_b = partial_trace(&rho, d_a, d_b, Side::A)?.hermitian_part();
        Ok(Self {
            d_a,
            d_b,
            rho,
            rho_a,
            rho_b,
        })
    }

    /// `|ψ⟩⟨ψ|` for a unit vector `ψ` (normalization checked within 1e-9).
    pub fn pure(d_a: usize, d_b: usize, psi: &[C64]) -> Result<Self> {
        if psi.len() != d_a * d_b {
            return Err(Error::Dimension(format!(
                "pure state on {d_a}x{d_b} needs {} amplitudes, got {}",
                d_a * d_b,
                psi.len()
            )));
        }
        Self::new(d_a, d_b, CMatrix::projector(psi))
    }

    /// `ρ_a ⊗ τ`.
    pub fn product(rho_a: &CMatrix, tau: &CMatrix) -> Result<Self> {
        Self::new(rho_a.rows(), tau.rows(), kron(rho_a, tau))
    }

    /// Convex combination `Σ w_i ρ_i`.
    pub fn mixture(parts: &[(f64, &BipartiteState)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::InvalidState("empty mixture".into()));
        };
        let (d_a, d_b) = (first.d_a, first.d_b);
        let mut rho = CMatrix::zeros(d_a * d_b, d_a * d_b);
        for (w, s) in parts {
            if s.d_a != d_a || s.d_b != d_b {
                return Err(Error::Dimension(
                    "mixture of states on different spaces".into(),
                ));
            }
            if *w < 0.0 {
                return Err(Error::InvalidState("negative mixture weight".into()));
            }
            rho += &s.rho.scale_real(*w);
        }
        Self::new(d_a, d_b, rho)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    /// `tr_B ρ`.
    pub fn rho_a(&self) -> &CMatrix {
        &self.rho_a
    }

    /// `tr_A ρ`.
    pub fn rho_b(&self) -> &CMatrix {
        &self.rho_b
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.rho.trace_product(&self.rho).re
    }

    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - PURITY_TOL
    }

    /// `(U ⊗ 1) ρ (U ⊗ 1)†`.
    pub fn apply_alice(&self, u: &CMatrix) -> Result<Self> {
        let full = kron(u, &CMatrix::identity(self.d_b));
        Self::new(self.d_a, self.d_b, self.rho.conjugate_by(&full))
    }

    /// `(1 ⊗ U) ρ (1 ⊗ U)†`.
    pub fn apply_bob(&self, u: &CMatrix) -> Result<Self> {
        let full = kron(&CMatrix::identity(self.d_a), u);
        Self::new(self.d_a, self.d_b, self.rho.conjugate_by(&full))
    }

    /// `Σ_i (1 ⊗ K_i) ρ (1 ⊗ K_i)†` for Kraus operators mapping `C^{d_b}`
    /// to `C^{d_out}`.
    pub fn apply_bob_channel(&self, kraus: &[CMatrix]) -> Result<Self> {
        let Some(k0) = kraus.first() else {
            return Err(Error::Dimension(
                "channel needs at least one Kraus operator".into(),
            ));
        };
        let d_out = k0.rows();
        let mut out = CMatrix::zeros(self.d_a * d_out, self.d_a * d_out);
        for k in kraus {
            if k.rows() != d_out || k.cols() != self.d_b {
                return Err(Error::Dimension("Kraus operators of mixed shape".into()));
            }
            let full = kron(&CMatrix::identity(self.d_a), k);
            out += &full.matmul(&self.rho).matmul(&full.adjoint());
        }
        Self::new(self.d_a, d_out, out)
    }
}

/// `|Φ⟩ = Σ_j |jj⟩/√d_a`, using the first `d_a` levels of Bob.
pub fn canonical_mes(d_a: usize, d_b: usize) -> Result<BipartiteState> {
    if d_b < d_a {
        return Err(Error::Precondition(format!(
            "canonical MES needs d_B >= d_A, got d_A={d_a}, d_B={d_b}"
        )));
    }
    BipartiteState::pure(d_a, d_b, &canonical_mes_vector(d_a, d_b))
}

fn entropy_of(m: &CMatrix) -> f64 {
    spectral_entropy(m).expect("validated states have PSD marginals")
}

/// `H(A|B) = S(ρ) − S(ρ_B)` in bits.
pub fn conditional_entropy(s: &BipartiteState) -> f64 {
    entropy_of(&s.rho) - entropy_of(&s.rho_b)
}

/// `ρ_A = M M†` for the `d_a × d_b` coefficient matrix of `ψ`.
fn alice_marginal(psi: &[C64], d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_a, d_a, |a, a2| {
        (0..d_b)
            .map(|b| psi[a * d_b + b] * psi[a2 * d_b + b].conj())
            .sum()
    })
}

/// `ρ_B = Mᵀ M̄` for the `d_a × d_b` coefficient matrix of `ψ`.
fn bob_marginal(psi: &[C64], d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_b, d_b, |b, b2| {
        (0..d_a)
            .map(|a| psi[a * d_b + b] * psi[a * d_b + b2].conj())
            .sum()
    })
}

/// Schmidt coefficients of a pure vector, descending.
pub fn schmidt_coefficients(psi: &[C64], d_a: usize, d_b: usize) -> Result<Vec<f64>> {
    if psi.len() != d_a * d_b {
        return Err(Error::Dimension(format!(
            "vector of length {} is not on {d_a}x{d_b}",
            psi.len()
        )));
    }
    let e = herm_eig(&alice_marginal(psi, d_a, d_b).hermitian_part())?;
    Ok(e.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect())
}

/// One term `λ_s |Ψ_s⟩⟨Ψ_s|` of a mixed MES.
#[derive(Debug, Clone)]
pub struct MesComponent {
    pub weight: f64,
    pub vector: Vec<C64>,
    /// Projector onto the support of `tr_A |Ψ_s⟩⟨Ψ_s|`.
    pub bob_support: CMatrix,
}

#[derive(Debug, Clone)]
pub struct MesReport {
    pub is_mes: bool,
    pub route_entropy: bool,
    pub route_structure: bool,
    pub cond_entropy: f64,
    /// Present when `is_mes`.
    pub decomposition: Option<Vec<MesComponent>>,
    /// Why the verdict is negative without a computation, if so.
    pub reason: Option<String>,
}

/// Decides maximal entanglement by the conditional-entropy floor and by the
/// spectral structure, and fails with a pathology if the two disagree.
///
/// The structural route checks every support eigenvector for flat Schmidt
/// coefficients and checks that `T = d_a·tr_A(Q)` is a projector, where `Q`
/// projects onto `supp ρ`. `T` depends only on `Q`, so the verdict does not
/// depend on how degenerate eigenspaces are resolved; it is idempotent
/// exactly when the Bob marginals of the eigenvectors are rank-`d_a`
/// projectors (scaled by `1/d_a`) with orthogonal ranges.
pub fn is_mes(s: &BipartiteState, tol: f64) -> Result<MesReport> {
    let (d_a, d_b) = (s.d_a, s.d_b);
    let cond_entropy = conditional_entropy(s);
    if d_b < d_a {
        return Ok(MesReport {
            is_mes: false,
            route_entropy: false,
            route_structure: false,
            cond_entropy,
            decomposition: None,
            reason: Some(format!("d_B={d_b} < d_A={d_a}")),
        });
    }
    let floor = (d_a as f64).log2();
    let route_entropy = (cond_entropy + floor).abs() <= tol;

    let e = herm_eig(&s.rho)?;
    let flat = 1.0 / (d_a as f64).sqrt();
    let mut schmidt_ok = true;
    let mut t = CMatrix::zeros(d_b, d_b);
    let mut support = Vec::new();
    for (i, &l) in e.eigenvalues.iter().enumerate() {
        if l <= SUPPORT_CUTOFF {
            continue;
        }
        let v = e.vector(i);
        let coeffs = schmidt_coefficients(&v, d_a, d_b)?;
        if coeffs
            .iter()
            .take(d_a)
            .any(|c| (c - flat).abs() > tol * flat)
        {
            schmidt_ok = false;
        }
        let rb = bob_marginal(&v, d_a, d_b).scale_real(d_a as f64);
        t += &rb;
        support.push((l, v, rb));
    }
    let idempotent = t.matmul(&t).distance(&t) <= tol;
    let route_structure = schmidt_ok && idempotent;

    if route_entropy != route_structure {
        return Err(Error::Pathology(format!(
            "MES routes disagree: H(A|B)+log2 d_A = {:.3e}, structure says {route_structure}",
            cond_entropy + floor
        )));
    }
    let decomposition = route_structure.then(|| {
        let total: f64 = support.iter().map(|(l, _, _)| l).sum();
        support
            .into_iter()
            .map(|(l, v, rb)| MesComponent {
                weight: l / total,
                vector: v,
                bob_support: rb.hermitian_part(),
            })
            .collect()
    });
    Ok(MesReport {
        is_mes: route_structure,
        route_entropy,
        route_structure,
        cond_entropy,
        decomposition,
        reason: None,
    })
}

/// Bob-side factorization `ρ = (1 ⊗ U)(|Φ′⟩⟨Φ′| ⊗ τ ⊕ 0)(1 ⊗ U)†`.
///
/// Bob's space is split as `C^{d_a} ⊗ C^n ⊕ C^{d_b − n·d_a}` with index
/// `j·n + s` on the first summand; `|Φ′⟩` is the canonical MES on
/// `C^{d_a} ⊗ C^{d_a}` and `τ` is diagonal of size `n`.
#[derive(Debug, Clone)]
pub struct MesNormalForm {
    pub bob_unitary: CMatrix,
    pub phi: Vec<C64>,
    pub tau: CMatrix,
    pub residual: f64,
}

impl MesNormalForm {
    /// `|Φ′⟩⟨Φ′| ⊗ τ` padded to `d_a·d_b`, in the rotated Bob frame.
    pub fn factorized(&self, d_a: usize, d_b: usize) -> CMatrix {
        let n = self.tau.rows();
        let inner = kron(&CMatrix::projector(&self.phi), &self.tau);
        let dn = d_a * n;
        CMatrix::from_fn(d_a * d_b, d_a * d_b, |r, c| {
            let (a, b) = (r / d_b, r % d_b);
            let (a2, b2) = (c / d_b, c % d_b);
            if b < dn && b2 < dn {
                inner[(a * dn + b, a2 * dn + b2)]
            } else {
                ZERO
            }
        })
    }
}

pub fn mes_normal_form(s: &BipartiteState) -> Result<MesNormalForm> {
    let report = is_mes(s, DEFAULT_MES_TOL)?;
    let Some(parts) = report.decomposition else {
        return Err(Error::Precondition(
            "state is not maximally entangled".into(),
        ));
    };
    let (d_a, d_b) = (s.d_a, s.d_b);
    let n = parts.len();
    let scale = (d_a as f64).sqrt();
    // φ_{sj} = √d_a (⟨j| ⊗ 1)|Ψ_s⟩ goes to column j·n + s.
    let mut cols = vec![vec![ZERO; d_b]; d_a * n];
    for (si, p) in parts.iter().enumerate() {
        for j in 0..d_a {
            cols[j * n + si] = (0..d_b).map(|b| p.vector[j * d_b + b] * scale).collect();
        }
    }
    let u = complete_to_unitary(&cols, d_b)?;
    let tau = CMatrix::diag_real(&parts.iter().map(|p| p.weight).collect::<Vec<_>>());
    let mut nf = MesNormalForm {
        bob_unitary: u,
        phi: canonical_mes_vector(d_a, d_a),
        tau,
        residual: 0.0,
    };
    let rebuilt = nf
        .factorized(d_a, d_b)
        .conjugate_by(&kron(&CMatrix::identity(d_a), &nf.bob_unitary));
    nf.residual = rebuilt.distance(&s.rho);
    if nf.residual > RECONSTRUCT_TOL {
        return Err(Error::Pathology(format!(
            "MES normal form reconstructs with residual {:.3e}",
            nf.residual
        )));
    }
    Ok(nf)
}

/// Entanglement of formation of a pure state, `S(ρ_A)`.
pub fn ef_pure(s: &BipartiteState) -> Result<f64> {
    let p = s.purity();
    if p < 1.0 - PURITY_TOL {
        return Err(Error::InvalidState(format!(
            "pure-state entanglement needs purity >= 1-{PURITY_TOL:e}, got {p}"
        )));
    }
    let e = herm_eig(&s.rho_a)?;
    Ok(shannon_entropy(&e.eigenvalues).clamp(0.0, (s.d_a as f64).log2()))
}

/// Relative entropy of entanglement, available only for pure states where
/// it coincides with [`ef_pure`].
pub fn er_pure(s: &BipartiteState) -> Result<f64> {
    ef_pure(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::basis_vector;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bell_on_levels(d_b: usize, b0: usize, b1: usize) -> Vec<C64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![ZERO; 2 * d_b];
        v[b0] = C64::new(h, 0.0);
        v[d_b + b1] = C64::new(h, 0.0);
        v
    }

    fn mixed_mes_2x4() -> BipartiteState {
        let a = BipartiteState::pure(2, 4, &bell_on_levels(4, 0, 1)).unwrap();
        let b = BipartiteState::pure(2, 4, &bell_on_levels(4, 2, 3)).unwrap();
        BipartiteState::mixture(&[(0.5, &a), (0.5, &b)]).unwrap()
    }

    #[test]
    fn canonical_mes_marginals() {
        let s = canonical_mes(2, 2).unwrap();
        assert!(s.rho_a().distance(&CMatrix::diag_real(&[0.5, 0.5])) < 1e-15);
        let s = canonical_mes(2, 3).unwrap();
        assert!(s.rho_b().distance(&CMatrix::diag_real(&[0.5, 0.5, 0.0])) < 1e-15);
        assert!(matches!(canonical_mes(3, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn conditional_entropy_examples() {
        assert!((conditional_entropy(&canonical_mes(2, 2).unwrap()) + 1.0).abs() < 1e-12);
        let half = CMatrix::diag_real(&[0.5, 0.5]);
        let mm = BipartiteState::product(&half, &half).unwrap();
        assert!((conditional_entropy(&mm) - 1.0).abs() < 1e-12);
        let s3 = canonical_mes(3, 3).unwrap();
        assert!((conditional_entropy(&s3) + 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn state_validation() {
        assert!(matches!(
            BipartiteState::new(2, 2, CMatrix::diag_real(&[0.5, 0.5, 0.5, 0.5])),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(
            BipartiteState::new(2, 2, CMatrix::diag_real(&[1.2, -0.2, 0.0, 0.0])),
            Err(Error::NegativeEigenvalue(_))
        ));
        let mut m = CMatrix::diag_real(&[0.5, 0.5, 0.0, 0.0]);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(
            BipartiteState::new(2, 2, m),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            BipartiteState::new(2, 3, CMatrix::identity(4)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn is_mes_examples() {
        let r = is_mes(&canonical_mes(2, 4).unwrap(), DEFAULT_MES_TOL).unwrap();
        assert!(r.is_mes && r.route_entropy);
        assert_eq!(r.decomposition.unwrap().len(), 1);

        let r = is_mes(&mixed_mes_2x4(), DEFAULT_MES_TOL).unwrap();
        assert!(r.is_mes);
        let parts = r.decomposition.unwrap();
        assert_eq!(parts.len(), 2);
        let wsum: f64 = parts.iter().map(|p| p.weight).sum();
        assert!((wsum - 1.0).abs() < 1e-8);
        let cross = parts[0].bob_support.matmul(&parts[1].bob_support);
        assert!(cross.frobenius_norm() < 1e-8);

        let phi = canonical_mes(2, 2).unwrap();
        let zz = BipartiteState::pure(2, 2, &basis_vector(4, 0)).unwrap();
        let mix = BipartiteState::mixture(&[(0.5, &phi), (0.5, &zz)]).unwrap();
        let r = is_mes(&mix, DEFAULT_MES_TOL).unwrap();
        assert!(!r.is_mes && !r.route_entropy);
        assert!(r.cond_entropy > -1.0 + 1e-3);
    }

    #[test]
    fn is_mes_small_bob_reports_reason() {
        let s = BipartiteState::pure(3, 2, &basis_vector(6, 0)).unwrap();
        let r = is_mes(&s, DEFAULT_MES_TOL).unwrap();
        assert!(!r.is_mes);
        assert!(r.reason.is_some());
    }

    #[test]
    fn overlapping_bob_supports_are_not_mes() {
        // Two Bell states sharing Bob levels: each term is maximally
        // entangled but the mixture is not.
        let a = BipartiteState::pure(2, 2, &bell_on_levels(2, 0, 1)).unwrap();
        let b = BipartiteState::pure(2, 2, &bell_on_levels(2, 1, 0)).unwrap();
        let s = BipartiteState::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        assert!(!is_mes(&s, DEFAULT_MES_TOL).unwrap().is_mes);
    }

    #[test]
    fn normal_form_of_canonical_mes() {
        let nf = mes_normal_form(&canonical_mes(2, 2).unwrap()).unwrap();
        assert_eq!(nf.tau.rows(), 1);
        assert!((nf.tau[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(nf.residual < 1e-10);
    }

    #[test]
    fn normal_form_of_mixed_mes() {
        let nf = mes_normal_form(&mixed_mes_2x4()).unwrap();
        assert!(nf.tau.distance(&CMatrix::diag_real(&[0.5, 0.5])) < 1e-10);
        let u = &nf.bob_unitary;
        assert!(u.adjoint().matmul(u).distance(&CMatrix::identity(4)) < 1e-10);
    }

    #[test]
    fn normal_form_of_rotated_mes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let u = sample::haar_unitary(3, &mut rng);
        let s = canonical_mes(2, 3).unwrap().apply_bob(&u).unwrap();
        let nf = mes_normal_form(&s).unwrap();
        assert!(nf.residual < 1e-8);
        let coeffs = schmidt_coefficients(&nf.phi, 2, 2).unwrap();
        for c in coeffs {
            assert!((c * c - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_form_rejects_non_mes() {
        let s = BipartiteState::pure(2, 2, &basis_vector(4, 0)).unwrap();
        assert!(matches!(mes_normal_form(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn ef_pure_examples() {
        assert!((ef_pure(&canonical_mes(4, 4).unwrap()).unwrap() - 2.0).abs() < 1e-12);
        let prod = BipartiteState::pure(2, 3, &basis_vector(6, 4)).unwrap();
        assert_eq!(ef_pure(&prod).unwrap(), 0.0);
        let i2 = CMatrix::identity(2);
        let v = sample::schmidt_vector(&[0.75, 0.25], &i2, &i2);
        let s = BipartiteState::pure(2, 2, &v).unwrap();
        assert!((ef_pure(&s).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-12);
        assert!(ef_pure(&mixed_mes_2x4()).is_err());
    }

    #[test]
    fn bob_channel_preserves_alice_marginal() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = BipartiteState::new(2, 3, sample::random_density(6, 3, &mut rng)).unwrap();
        // Isometry into C^2 ⊗ C^2, environment traced out.
        let v = sample::random_isometry(4, 3, &mut rng);
        let kraus: Vec<CMatrix> = (0..2).map(|e| v.block(e * 2, 0, 2, 3)).collect();
        let out = s.apply_bob_channel(&kraus).unwrap();
        assert_eq!(out.d_b(), 2);
        assert!(out.rho_a().distance(s.rho_a()) < 1e-12);
    }
}
