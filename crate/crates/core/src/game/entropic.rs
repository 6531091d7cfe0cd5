//! Entropic uncertainty relations, with and without a quantum memory.

use crate::bases::BasisSet;
use crate::numlin::{shannon_entropy, spectral_entropy};
use crate::states::{conditional_entropy, ef_pure, er_pure, BipartiteState};
use crate::zus::{block_entanglement, is_economical, is_zus, reduced_ensemble};
use crate::{Error, Result, Tolerances};

/// Slack below which an audited inequality counts as violated.
pub const AUDIT_TOL: f64 = 1e-7;

/// Shannon entropy of Alice's basis-`x` outcome on `ρ_A` alone.
pub fn outcome_entropy(s: &BipartiteState, bs: &BasisSet, x: usize) -> Result<f64> {
    bs.check_index(x)?;
    let probs: Vec<f64> = (0..bs.dim())
        .map(|k| {
            let v = bs.ket(x, k);
            s.rho_a()
                .apply(&v)
                .iter()
                .zip(&v)
                .map(|(a, b)| b.conj() * a)
                .sum::<crate::numlin::C64>()
                .re
        })
        .collect();
    Ok(shannon_entropy(&probs))
}

/// `H(O_x|B) = S(Σ_k |k⟩⟨k| ⊗ ρ_{xk}) − S(ρ_B)`.
pub fn cq_conditional_entropy(s: &BipartiteState, bs: &BasisSet, x: usize) -> Result<f64> {
    let e = reduced_ensemble(s, bs, x)?;
    let mut joint = 0.0;
    for m in &e.states {
        joint += spectral_entropy(m)?;
    }
    Ok(joint - spectral_entropy(s.rho_b())?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaassenUffink {
    /// `max_{j,k} |⟨ψ_{xj}|ψ_{yk}⟩|²`.
    pub c: f64,
    /// `log₂(1/c)`.
    pub bound: f64,
}

pub fn maassen_uffink(bs: &BasisSet, x: usize, y: usize) -> Result<MaassenUffink> {
    bs.check_index(x)?;
    bs.check_index(y)?;
    if x == y {
        return Err(Error::Precondition(
            "overlap bound needs two distinct bases".into(),
        ));
    }
    let ov = bs.basis(x).adjoint().matmul(bs.basis(y));
    let c = ov
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .fold(0.0, f64::max);
    Ok(MaassenUffink {
        c,
        bound: -c.log2(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AuditStatus {
    /// `lhs ≥ rhs` was evaluated; `slack = lhs − rhs`.
    Checked {
        lhs: f64,
        rhs: f64,
        slack: f64,
    },
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub name: String,
    pub status: AuditStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    /// Smallest slack among checked entries, if any.
    pub fn min_slack(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| match e.status {
                AuditStatus::Checked { slack, .. } => Some(slack),
                AuditStatus::Skipped(_) => None,
            })
            .reduce(f64::min)
    }

    /// Every checked inequality holds within [`AUDIT_TOL`].
    pub fn holds(&self) -> bool {
        self.min_slack().is_none_or(|s| s >= -AUDIT_TOL)
    }

    pub fn get(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn checked(name: String, lhs: f64, rhs: f64) -> AuditEntry {
    AuditEntry {
        name,
        status: AuditStatus::Checked {
            lhs,
            rhs,
            slack: lhs - rhs,
        },
    }
}

fn skipped(name: impl Into<String>, why: impl Into<String>) -> AuditEntry {
    AuditEntry {
        name: name.into(),
        status: AuditStatus::Skipped(why.into()),
    }
}

/// Evaluates the uncertainty relations on `s` for every pair of bases.
///
/// Per pair `(x, y)`:
/// - `preparation[x,y]`: `H(O_x) + H(O_y) ≥ log₂(1/c)` on `ρ_A`;
/// - `memory[x,y]`: `H(O_x|B) + H(O_y|B) ≥ log₂(1/c) + H(A|B)`;
/// - `zus_floor[x,y]`: `−H(A|B) ≥ log₂(1/c)`, only for zero-uncertainty
///   states.
///
/// Global entries compare entanglement measures with `−H(A|B)`; they are
/// evaluated only where the measure is computable.
pub fn uncertainty_audit(
    s: &BipartiteState,
    bs: &BasisSet,
    tol: &Tolerances,
) -> Result<AuditReport> {
    let mut entries = Vec::new();
    let h_ab = conditional_entropy(s);
    let zus = is_zus(s, bs, tol)?.is_zus;
    let m = bs.m();
    if m < 2 {
        entries.push(skipped(
            "pairs",
            "pairwise relations need at least two bases",
        ));
    }
    let h: Vec<f64> = (0..m)
        .map(|x| outcome_entropy(s, bs, x))
        .collect::<Result<_>>()?;
    let hb: Vec<f64> = (0..m)
        .map(|x| cq_conditional_entropy(s, bs, x))
        .collect::<Result<_>>()?;
    for x in 0..m {
        for y in x + 1..m {
            let mu = maassen_uffink(bs, x, y)?;
            entries.push(checked(
                format!("preparation[{x},{y}]"),
                h[x] + h[y],
                mu.bound,
            ));
            entries.push(checked(
                format!("memory[{x},{y}]"),
                hb[x] + hb[y],
                mu.bound + h_ab,
            ));
            let name = format!("zus_floor[{x},{y}]");
            if zus {
                entries.push(checked(name, -h_ab, mu.bound));
            } else {
                entries.push(skipped(name, "state is not a zero-uncertainty state"));
            }
        }
    }
    let ef = if s.is_pure() {
        Some(ef_pure(s)?)
    } else if zus && is_economical(s, bs, tol)? {
        Some(block_entanglement(s, bs, tol)?)
    } else {
        None
    };
    let er = if s.is_pure() { Some(er_pure(s)?) } else { None };
    match (ef, er) {
        (Some(f), Some(r)) => entries.push(checked("ef_vs_er".into(), f, r)),
        _ => entries.push(skipped(
            "ef_vs_er",
            "relative entropy of entanglement needs a pure input",
        )),
    }
    match er {
        Some(r) => entries.push(checked("er_vs_coherent_info".into(), r, -h_ab)),
        None => entries.push(skipped(
            "er_vs_coherent_info",
            "relative entropy of entanglement needs a pure input",
        )),
    }
    match ef {
        Some(f) => entries.push(checked("ef_vs_coherent_info".into(), f, -h_ab)),
        None => entries.push(skipped(
            "ef_vs_coherent_info",
            "entanglement of formation needs a pure or economical ZUS input",
        )),
    }
    Ok(AuditReport { entries })
}
