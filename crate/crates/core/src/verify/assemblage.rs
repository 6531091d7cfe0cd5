use crate::bases::{is_irreducible, BasisSet};
use crate::game::Povm;
use crate::numlin::{herm_eig, CMatrix, C64};
use crate::states::{is_mes, BipartiteState};
use crate::zus::is_zus;
use crate::{Error, Result, Tolerances};

const PSD_TOL: f64 = 1e-9;
const SLICE_TOL: f64 = 1e-8;
const TARGET_TOL: f64 = 1e-7;

/// Subnormalized Alice states `σ_{xk}`, one slice per Bob measurement.
/// Every slice sums to the same `ρ_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assemblage {
    d_a: usize,
    sigma: Vec<Vec<CMatrix>>,
}

impl Assemblage {
    pub fn new(sigma: Vec<Vec<CMatrix>>) -> Result<Self> {
        let Some(d_a) = sigma.first().and_then(|s| s.first()).map(CMatrix::rows) else {
            return Err(Error::InvalidAssemblage("empty assemblage".into()));
        };
        let mut reference: Option<CMatrix> = None;
        let mut clean = Vec::with_capacity(sigma.len());
        for (x, slice) in sigma.into_iter().enumerate() {
            let mut sum = CMatrix::zeros(d_a, d_a);
            let mut out = Vec::with_capacity(slice.len());
            for (k, s) in slice.into_iter().enumerate() {
                if s.rows() != d_a || s.cols() != d_a {
                    return Err(Error::InvalidAssemblage(format!(
                        "sigma[{x}][{k}] is {}x{}, expected {d_a}x{d_a}",
                        s.rows(),
                        s.cols()
                    )));
                }
                if s.hermiticity_defect() > PSD_TOL {
                    return Err(Error::InvalidAssemblage(format!(
                        "sigma[{x}][{k}] is not Hermitian"
                    )));
                }
                let s = s.hermitian_part();
                let min = herm_eig(&s)?.min_eigenvalue();
                if min < -PSD_TOL {
                    return Err(Error::InvalidAssemblage(format!(
                        "sigma[{x}][{k}] has eigenvalue {min:.3e} < 0"
                    )));
                }
                sum += &s;
                out.push(s);
            }
            match &reference {
                None => reference = Some(sum),
                Some(r) => {
                    let dev = r.distance(&sum);
                    if dev > SLICE_TOL {
                        return Err(Error::InvalidAssemblage(format!(
                            "slice {x} sums to a different rho_A (deviation {dev:.3e})"
                        )));
                    }
                }
            }
            clean.push(out);
        }
        let tr = reference.map_or(0.0, |r| r.trace().re);
        if (tr - 1.0).abs() > SLICE_TOL {
            return Err(Error::InvalidAssemblage(format!("rho_A has trace {tr}")));
        }
        Ok(Self { d_a, sigma: clean })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    /// Number of slices.
    pub fn m(&self) -> usize {
        self.sigma.len()
    }

    pub fn slice(&self, x: usize) -> &[CMatrix] {
        &self.sigma[x]
    }

    pub fn sigma(&self, x: usize, k: usize) -> &CMatrix {
        &self.sigma[x][k]
    }

    pub fn rho_a(&self) -> CMatrix {
        let mut r = CMatrix::zeros(self.d_a, self.d_a);
        for s in &self.sigma[0] {
            r += s;
        }
        r
    }

    /// Largest Frobenius distance between corresponding members.
    pub fn distance(&self, other: &Assemblage) -> Result<f64> {
        if self.d_a != other.d_a
            || self.m() != other.m()
            || self
                .sigma
                .iter()
                .zip(&other.sigma)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::Dimension("assemblages of different shape".into()));
        }
        Ok(self
            .sigma
            .iter()
            .flatten()
            .zip(other.sigma.iter().flatten())
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max))
    }
}

/// `σ_{xk} = tr_B[ρ(1 ⊗ Π_{xk})]`.
pub fn assemblage_from(s: &BipartiteState, povms: &[Povm]) -> Result<Assemblage> {
    let (d_a, d_b) = (s.d_a(), s.d_b());
    let rho = s.rho();
    let mut sigma = Vec::with_capacity(povms.len());
    for (x, povm) in povms.iter().enumerate() {
        if povm.dim() != d_b {
            return Err(Error::Dimension(format!(
                "POVM {x} acts on C^{}, Bob holds C^{d_b}",
                povm.dim()
            )));
        }
        let slice = povm
            .elements()
            .iter()
            .map(|p| {
                CMatrix::from_fn(d_a, d_a, |a, a2| {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..d_b {
                        for b2 in 0..d_b {
                            acc += rho[(a * d_b + b, a2 * d_b + b2)] * p[(b2, b)];
                        }
                    }
                    acc
                })
                .hermitian_part()
            })
            .collect();
        sigma.push(slice);
    }
    Assemblage::new(sigma)
}

/// `σ_{xk} = |ψ_{xk}⟩⟨ψ_{xk}|/d`.
pub fn target_assemblage(bs: &BasisSet) -> Assemblage {
    let d = bs.dim();
    let sigma = (0..bs.m())
        .map(|x| {
            (0..d)
                .map(|k| CMatrix::projector(&bs.ket(x, k)).scale_real(1.0 / d as f64))
                .collect()
        })
        .collect();
    Assemblage::new(sigma).expect("orthonormal bases give a valid assemblage")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteeringReport {
    /// Every score is 1 within tolerance.
    pub passes: bool,
    /// `ρ_A = 1/d` within tolerance.
    pub rho_a_mixed: bool,
    /// `σ_{xk} = |ψ_{xk}⟩⟨ψ_{xk}|/d` within tolerance.
    pub matches_target: bool,
    /// `Σ_k ⟨ψ_{xk}|σ_{xk}|ψ_{xk}⟩` per slice.
    pub scores: Vec<f64>,
}

/// Scores an assemblage against an irreducible basis set. For a passing
/// assemblage both consequences (maximally mixed `ρ_A`, target members) are
/// evaluated rather than assumed; the flags report them.
pub fn steering_test(
    a: &Assemblage,
    bs: &BasisSet,
    tol: f64,
    adj_tol: f64,
) -> Result<SteeringReport> {
    if !is_irreducible(bs, adj_tol)? {
        return Err(Error::Precondition(
            "steering test needs an irreducible basis set".into(),
        ));
    }
    let d = bs.dim();
    if a.d_a() != d || a.m() != bs.m() || (0..a.m()).any(|x| a.slice(x).len() != d) {
        return Err(Error::Dimension(format!(
            "assemblage shape does not match {} bases of C^{d}",
            bs.m()
        )));
    }
    let scores: Vec<f64> = (0..bs.m())
        .map(|x| {
            (0..d)
                .map(|k| {
                    let psi = bs.ket(x, k);
                    let v = a.sigma(x, k).apply(&psi);
                    psi.iter()
                        .zip(&v)
                        .map(|(p, q)| p.conj() * q)
                        .sum::<C64>()
                        .re
                })
                .sum()
        })
        .collect();
    let passes = scores.iter().all(|s| (s - 1.0).abs() <= tol);
    let mixed = CMatrix::identity(d).scale_real(1.0 / d as f64);
    let rho_a_mixed = a.rho_a().distance(&mixed) <= tol;
    let matches_target = a.distance(&target_assemblage(bs))? <= tol;
    Ok(SteeringReport {
        passes,
        rho_a_mixed,
        matches_target,
        scores,
    })
}

/// Whether `s` with Bob's `povms` yields the target assemblage of `bs`.
/// A positive answer is cross-checked: the state must then be maximally
/// entangled and a ZUS, and a failure of either is a pathology.
pub fn mes_from_assemblage_check(
    s: &BipartiteState,
    povms: &[Povm],
    bs: &BasisSet,
    tol: &Tolerances,
) -> Result<bool> {
    if !is_irreducible(bs, tol.adj_tol)? {
        return Err(Error::Precondition(
            "assemblage check needs an irreducible basis set".into(),
        ));
    }
    if povms.len() != bs.m() || s.d_a() != bs.dim() {
        return Err(Error::Dimension(format!(
            "need one POVM per basis ({}) and d_A = {}",
            bs.m(),
            bs.dim()
        )));
    }
    let a = assemblage_from(s, povms)?;
    if (0..a.m()).any(|x| a.slice(x).len() != bs.dim()) {
        return Ok(false);
    }
    if a.distance(&target_assemblage(bs))? > TARGET_TOL {
        return Ok(false);
    }
    if !is_mes(s, tol.zus_tol)?.is_mes {
        return Err(Error::Pathology(
            "state generates the target assemblage but is not maximally entangled".into(),
        ));
    }
    if !is_zus(s, bs, tol)?.is_zus {
        return Err(Error::Pathology(
            "state generates the target assemblage but is not a ZUS".into(),
        ));
    }
    Ok(true)
}
