//! Minimum-error discrimination by fixed-point iteration.
//!
//! The update is `Π_k ← R⁺ ρ_k Π_k ρ_k R⁺ + (1 − S)/n` with
//! `R = (Σ_k ρ_k Π_k ρ_k)^{1/2}` and `S` its support projector, which keeps
//! the measurement complete. Optimality is certified independently: with
//! `Y = Σ_k ρ_k Π_k` (Hermitian part), the measurement is optimal iff
//! `Y ⪰ ρ_k` for every `k`, and `Y + gap·1` is always dual feasible, so the
//! true optimum lies in `[p, p + d·gap]`.

use super::povm::Povm;
use crate::numlin::{herm_eig, psd_pinv, psd_sqrt, trace_norm, CMatrix};
use crate::zus::ReducedEnsemble;
use crate::{Error, Result};

const MEMBER_PSD_TOL: f64 = 1e-9;
const ZERO_MEMBER: f64 = 1e-14;
/// Relative cutoff on the eigenvalues of `R`; below it the inverse would
/// mostly amplify rounding noise.
const PINV_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationOptions {
    pub max_iters: usize,
    pub certify_tol: f64,
}

impl Default for DiscriminationOptions {
    fn default() -> Self {
        Self {
            max_iters: 10_000,
            certify_tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DiscriminationResult {
    /// Success probability of the returned measurement.
    pub p_opt: f64,
    pub povm: Povm,
    /// `max_k max(0, λ_max(ρ_k − Y))`.
    pub dual_gap: f64,
    /// `tr Y + d·gap`, an upper bound on the optimum.
    pub upper_bound: f64,
    pub iterations: usize,
    /// Whether the dual gap reached `certify_tol`. When false the result is
    /// the best iterate found.
    pub converged: bool,
}

/// Optimality gap of a measurement: `max_k max(0, λ_max(ρ_k − Y))`.
pub fn dual_gap(members: &[CMatrix], povm: &[CMatrix]) -> Result<f64> {
    let y = dual_candidate(members, povm);
    let mut gap: f64 = 0.0;
    for r in members {
        let e = herm_eig(&(r - &y).hermitian_part())?;
        gap = gap.max(e.max_eigenvalue());
    }
    Ok(gap)
}

fn dual_candidate(members: &[CMatrix], povm: &[CMatrix]) -> CMatrix {
    let d = members[0].rows();
    let mut y = CMatrix::zeros(d, d);
    for (r, p) in members.iter().zip(povm) {
        y += &r.matmul(p);
    }
    y.hermitian_part()
}

fn success(members: &[CMatrix], povm: &[CMatrix]) -> f64 {
    members
        .iter()
        .zip(povm)
        .map(|(r, p)| r.trace_product(p).re)
        .sum()
}

fn step(members: &[CMatrix], povm: &[CMatrix]) -> Result<Vec<CMatrix>> {
    let d = members[0].rows();
    let n = members.len();
    let sandwiches: Vec<CMatrix> = members
        .iter()
        .zip(povm)
        .map(|(r, p)| r.matmul(p).matmul(r).hermitian_part())
        .collect();
    let mut g = CMatrix::zeros(d, d);
    for s in &sandwiches {
        g += s;
    }
    let root = psd_sqrt(&g.hermitian_part())?;
    let (inv, supp) = psd_pinv(&root, PINV_TOL)?;
    let fill = (&CMatrix::identity(d) - &supp).scale_real(1.0 / n as f64);
    Ok(sandwiches
        .iter()
        .map(|s| (&inv.matmul(s).matmul(&inv) + &fill).hermitian_part())
        .collect())
}

/// Clips negative eigenvalues of every element and restores completeness
/// with `S^{-1/2} Π_k S^{-1/2}`.
fn polish(povm: &[CMatrix]) -> Result<Vec<CMatrix>> {
    let d = povm[0].rows();
    let clipped: Vec<CMatrix> = povm
        .iter()
        .map(|p| Ok(herm_eig(p)?.map_spectrum(|l| l.max(0.0))))
        .collect::<Result<_>>()?;
    let mut s = CMatrix::zeros(d, d);
    for p in &clipped {
        s += p;
    }
    let inv_root =
        herm_eig(&s.hermitian_part())?.map_spectrum(|l| if l > 0.0 { 1.0 / l.sqrt() } else { 0.0 });
    Ok(clipped
        .iter()
        .map(|p| p.conjugate_by(&inv_root).hermitian_part())
        .collect())
}

fn blend(a: &[CMatrix], b: &[CMatrix]) -> Vec<CMatrix> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + y).scale_real(0.5))
        .collect()
}

/// Maximizes `Σ_k tr(ρ_k Π_k)` over measurements.
///
/// Members with zero trace are dropped and receive the zero element.
/// Iteration stops once the dual gap falls to `certify_tol`; a step that
/// lowers the success probability is replaced by its average with the
/// previous iterate.
pub fn min_error_discrimination(
    e: &ReducedEnsemble,
    opts: &DiscriminationOptions,
) -> Result<DiscriminationResult> {
    let Some(first) = e.states.first() else {
        return Err(Error::Precondition("empty ensemble".into()));
    };
    let d = first.rows();
    for (k, r) in e.states.iter().enumerate() {
        if r.rows() != d || r.cols() != d {
            return Err(Error::Dimension(format!("member {k} has the wrong shape")));
        }
        let min = herm_eig(r)?.min_eigenvalue();
        if min < -MEMBER_PSD_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
    }
    let active: Vec<usize> = (0..e.states.len())
        .filter(|&k| e.states[k].trace().re > ZERO_MEMBER)
        .collect();
    let n_total = e.states.len();
    let assemble = |active_povm: &[CMatrix]| -> Result<Povm> {
        let mut all = vec![CMatrix::zeros(d, d); n_total];
        for (&k, p) in active.iter().zip(active_povm) {
            all[k] = p.clone();
        }
        Povm::new(all)
    };
    if active.is_empty() {
        let mut all = vec![CMatrix::zeros(d, d); n_total];
        all[0] = CMatrix::identity(d);
        return Ok(DiscriminationResult {
            p_opt: 0.0,
            povm: Povm::new(all)?,
            dual_gap: 0.0,
            upper_bound: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let members: Vec<CMatrix> = active.iter().map(|&k| e.states[k].clone()).collect();
    let n = members.len();
    let mut povm = vec![CMatrix::identity(d).scale_real(1.0 / n as f64); n];
    let mut p = success(&members, &povm);
    let mut gap = dual_gap(&members, &povm)?;
    let mut best = (p, gap, povm.clone());
    let mut iterations = 0;
    while gap > opts.certify_tol && iterations < opts.max_iters {
        iterations += 1;
        let mut next = step(&members, &povm)?;
        let mut p_next = success(&members, &next);
        if p_next < p {
            next = blend(&povm, &next);
            p_next = success(&members, &next);
        }
        povm = next;
        p = p_next;
        gap = dual_gap(&members, &povm)?;
        if gap < best.1 {
            best = (p, gap, povm.clone());
        }
    }
    let converged = gap <= opts.certify_tol;
    let (p, gap, povm) = if converged { (p, gap, povm) } else { best };
    let polished = polish(&povm)?;
    let p_polished = success(&members, &polished);
    let gap_polished = dual_gap(&members, &polished)?;
    let (p, gap, povm) = if gap_polished <= gap.max(opts.certify_tol) {
        (p_polished, gap_polished, polished)
    } else {
        (p, gap, polished)
    };
    let y = dual_candidate(&members, &povm);
    Ok(DiscriminationResult {
        p_opt: p,
        povm: assemble(&povm)?,
        dual_gap: gap,
        upper_bound: y.trace().re + d as f64 * gap,
        iterations,
        converged,
    })
}

/// Closed-form optimum for two members: `½(tr ρ₁ + tr ρ₂ + ‖ρ₁ − ρ₂‖₁)`.
pub fn helstrom(rho1: &CMatrix, rho2: &CMatrix) -> Result<f64> {
    let diff = (rho1 - rho2).hermitian_part();
    Ok(0.5 * (rho1.trace().re + rho2.trace().re + trace_norm(&diff)?))
}
