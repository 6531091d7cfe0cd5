//! The zero-uncertainty decision and the entanglement every ZUS carries.
//!
//! Bob can predict the outcome of Alice's basis-`x` measurement with
//! certainty iff the conditional states `ρ_{xk} = ⟨ψ_{xk}|ρ|ψ_{xk}⟩` have
//! mutually orthogonal supports. A state passing this for every basis is a
//! zero-uncertainty state. Structurally, the blocks `(P_a ⊗ 1)ρ(P_a ⊗ 1)`
//! cut out by the component projectors must each be a subnormalized MES,
//! with mutually orthogonal Bob marginals.

use crate::bases::{BasisSet, ComponentDecomposition};
use crate::numlin::{herm_eig, kron, shannon_entropy, CMatrix, C64};
use crate::states::{is_mes, BipartiteState, SUPPORT_CUTOFF};
use crate::{Error, Result, Tolerances};

/// Components with `q_a` at or below this are treated as absent.
pub const ABSENT_COMPONENT: f64 = 1e-10;
const ECONOMICAL_TOL: f64 = 1e-8;
const ZUSLE_TOL: f64 = 1e-9;
const EQUIVALENCE_TOL: f64 = 1e-8;

/// The conditional Bob states produced by Alice measuring basis `x`.
#[derive(Debug, Clone)]
pub struct ReducedEnsemble {
    pub x: usize,
    pub states: Vec<CMatrix>,
}

impl ReducedEnsemble {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `Σ_k ρ_{xk}`.
    pub fn total(&self) -> CMatrix {
        let n = self.states.first().map_or(0, CMatrix::rows);
        let mut t = CMatrix::zeros(n, n);
        for s in &self.states {
            t += s;
        }
        t
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.trace().re).collect()
    }
}

fn check_dims(s: &BipartiteState, bs: &BasisSet) -> Result<()> {
    if s.d_a() != bs.dim() {
        return Err(Error::Dimension(format!(
            "basis set acts on C^{}, state has d_A={}",
            bs.dim(),
            s.d_a()
        )));
    }
    Ok(())
}

/// `(⟨ψ| ⊗ 1) ρ (|ψ⟩ ⊗ 1)`.
pub(crate) fn conditional_bob_state(s: &BipartiteState, psi: &[C64]) -> CMatrix {
    let (d_a, d_b) = (s.d_a(), s.d_b());
    let rho = s.rho();
    CMatrix::from_fn(d_b, d_b, |b, b2| {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..d_a {
            let ca = psi[a].conj();
            for a2 in 0..d_a {
                acc += ca * rho[(a * d_b + b, a2 * d_b + b2)] * psi[a2];
            }
        }
        acc
    })
    .hermitian_part()
}

pub fn reduced_ensemble(s: &BipartiteState, bs: &BasisSet, x: usize) -> Result<ReducedEnsemble> {
    check_dims(s, bs)?;
    bs.check_index(x)?;
    let states = (0..bs.dim())
        .map(|k| conditional_bob_state(s, &bs.ket(x, k)))
        .collect();
    Ok(ReducedEnsemble { x, states })
}

/// Drops eigenvalues at or below `spec_tol·λ_max`.
fn truncated(m: &CMatrix, spec_tol: f64) -> CMatrix {
    match herm_eig(m) {
        Ok(e) => {
            let cut = spec_tol * e.max_eigenvalue().max(0.0);
            e.map_spectrum(|l| if l > cut { l } else { 0.0 })
        }
        Err(_) => m.clone(),
    }
}

/// A pair of ensemble members whose supports overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapFailure {
    pub x: usize,
    pub k: usize,
    pub l: usize,
    /// `‖√ρ_k √ρ_l‖_F` after truncation.
    pub overlap: f64,
}

/// `‖√ρ_k √ρ_l‖_F = √tr(ρ_k ρ_l)` for every pair exceeding `tol`, computed on
/// members with their sub-`spec_tol` eigenvalues removed.
pub fn overlapping_pairs(e: &ReducedEnsemble, tol: f64, spec_tol: f64) -> Vec<OverlapFailure> {
    let clean: Vec<CMatrix> = e.states.iter().map(|m| truncated(m, spec_tol)).collect();
    let mut out = Vec::new();
    for k in 0..clean.len() {
        for l in k + 1..clean.len() {
            let overlap = clean[k].trace_product(&clean[l]).re.max(0.0).sqrt();
            if overlap > tol {
                out.push(OverlapFailure {
                    x: e.x,
                    k,
                    l,
                    overlap,
                });
            }
        }
    }
    out
}

/// True iff all members have mutually orthogonal supports within `tol`.
pub fn perfectly_distinguishable(e: &ReducedEnsemble, tol: f64) -> bool {
    overlapping_pairs(e, tol, Tolerances::default().spec_tol).is_empty()
}

#[derive(Debug, Clone)]
pub struct ZusReport {
    pub is_zus: bool,
    pub per_basis_distinguishable: Vec<bool>,
    pub component_vector: Vec<f64>,
    pub ranks: Vec<usize>,
    pub failures: Vec<OverlapFailure>,
    /// Verdict of the block-structure criterion; always equal to `is_zus`.
    pub structural: bool,
    pub structural_note: Option<String>,
}

/// `(V_a† ⊗ 1) ρ (V_a ⊗ 1)` on `C^{r_a} ⊗ C^{d_b}`.
fn block_operator(s: &BipartiteState, v: &CMatrix) -> CMatrix {
    let w = kron(v, &CMatrix::identity(s.d_b()));
    w.adjoint().matmul(s.rho()).matmul(&w).hermitian_part()
}

fn q_from(s: &BipartiteState, dec: &ComponentDecomposition) -> Vec<f64> {
    dec.projectors()
        .iter()
        .map(|p| s.rho_a().trace_product(p).re)
        .collect()
}

/// Block-structure criterion: every present block is a subnormalized MES and
/// the Bob marginals of distinct blocks have orthogonal supports.
fn structural_verdict(
    s: &BipartiteState,
    dec: &ComponentDecomposition,
    q: &[f64],
    tol: &Tolerances,
) -> Result<(bool, Option<String>)> {
    let mut bob_supports = Vec::new();
    for (a, &qa) in q.iter().enumerate() {
        if qa <= ABSENT_COMPONENT {
            continue;
        }
        let r = dec.ranks()[a];
        let block = block_operator(s, dec.isometry(a)).scale_real(1.0 / qa);
        let state = BipartiteState::new(r, s.d_b(), block)?;
        let rep = is_mes(&state, tol.zus_tol)?;
        if !rep.is_mes {
            let why = rep
                .reason
                .unwrap_or_else(|| "block is not maximally entangled".into());
            return Ok((false, Some(format!("component {a}: {why}"))));
        }
        bob_supports.push((a, truncated(state.rho_b(), tol.spec_tol)));
    }
    for i in 0..bob_supports.len() {
        for j in i + 1..bob_supports.len() {
            let (a, ref sa) = bob_supports[i];
            let (b, ref sb) = bob_supports[j];
            let ov = sa.trace_product(sb).re.max(0.0).sqrt();
            if ov > tol.zus_tol {
                return Ok((
                    false,
                    Some(format!(
                        "Bob supports of components {a} and {b} overlap ({ov:.3e})"
                    )),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Zero-uncertainty decision. The ensemble test is authoritative; the block
/// criterion is evaluated alongside and a disagreement is a pathology.
pub fn is_zus(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<ZusReport> {
    check_dims(s, bs)?;
    let dec = bs.decompose(tol.adj_tol)?;
    let mut per_basis = Vec::with_capacity(bs.m());
    let mut failures = Vec::new();
    for x in 0..bs.m() {
        let e = reduced_ensemble(s, bs, x)?;
        let f = overlapping_pairs(&e, tol.zus_tol, tol.spec_tol);
        per_basis.push(f.is_empty());
        failures.extend(f);
    }
    let is_zus = per_basis.iter().all(|&b| b);
    let q = q_from(s, &dec);
    let (structural, structural_note) = structural_verdict(s, &dec, &q, tol)?;
    if structural != is_zus {
        return Err(Error::Pathology(format!(
            "ZUS routes disagree: ensembles say {is_zus}, block structure says {structural}{}",
            structural_note
                .as_deref()
                .map(|n| format!(" ({n})"))
                .unwrap_or_default()
        )));
    }
    Ok(ZusReport {
        is_zus,
        per_basis_distinguishable: per_basis,
        component_vector: q,
        ranks: dec.ranks().to_vec(),
        failures,
        structural,
        structural_note,
    })
}

/// `q_a = tr[ρ(P_a ⊗ 1)]`, ordered like the component decomposition.
pub fn component_vector(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<Vec<f64>> {
    check_dims(s, bs)?;
    Ok(q_from(s, &bs.decompose(tol.adj_tol)?))
}

fn lambda_with(s: &BipartiteState, dec: &ComponentDecomposition) -> Result<BipartiteState> {
    let n = s.d_a() * s.d_b();
    let id_b = CMatrix::identity(s.d_b());
    let mut out = CMatrix::zeros(n, n);
    for p in dec.projectors() {
        out += &s.rho().conjugate_by(&kron(p, &id_b));
    }
    BipartiteState::new(s.d_a(), s.d_b(), out)
}

/// `ρ_ℬ = Σ_a (P_a ⊗ 1) ρ (P_a ⊗ 1)`: removes coherence between components.
pub fn lambda_b(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<BipartiteState> {
    check_dims(s, bs)?;
    lambda_with(s, &bs.decompose(tol.adj_tol)?)
}

fn require_zus(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<ZusReport> {
    let r = is_zus(s, bs, tol)?;
    if !r.is_zus {
        return Err(Error::Precondition(
            "state is not a zero-uncertainty state".into(),
        ));
    }
    Ok(r)
}

fn economical_with(s: &BipartiteState, dec: &ComponentDecomposition) -> Result<bool> {
    Ok(s.rho().distance(lambda_with(s, dec)?.rho()) <= ECONOMICAL_TOL)
}

/// A ZUS without coherence between components.
pub fn is_economical(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<bool> {
    require_zus(s, bs, tol)?;
    economical_with(s, &bs.decompose(tol.adj_tol)?)
}

/// An economical ZUS supported only on components of minimum rank.
pub fn is_zusle(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<bool> {
    let r = require_zus(s, bs, tol)?;
    let dec = bs.decompose(tol.adj_tol)?;
    if !economical_with(s, &dec)? {
        return Ok(false);
    }
    let r_min = dec.r_min();
    Ok(r.component_vector
        .iter()
        .zip(dec.ranks())
        .all(|(&q, &rank)| rank == r_min || q <= ZUSLE_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfBound {
    /// `Σ_a q_a log₂ r_a`.
    pub value: f64,
    /// `log₂ r_min`.
    pub floor: f64,
    /// Whether `ρ = ρ_ℬ`, in which case the bound is attained.
    pub saturated: bool,
}

/// Lower bound on the entanglement of formation of a ZUS.
pub fn ef_bound(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<EfBound> {
    let r = require_zus(s, bs, tol)?;
    let dec = bs.decompose(tol.adj_tol)?;
    Ok(EfBound {
        value: weighted_log_ranks(&r.component_vector, dec.ranks()),
        floor: (dec.r_min() as f64).log2(),
        saturated: economical_with(s, &dec)?,
    })
}

fn weighted_log_ranks(q: &[f64], ranks: &[usize]) -> f64 {
    q.iter()
        .zip(ranks)
        .map(|(&qa, &r)| qa.max(0.0) * (r as f64).log2())
        .sum()
}

/// Same equivalence class under local operations: both inputs must be
/// zero-uncertainty states that are each pure or economical; the classes
/// are then labelled by the component vector.
pub fn zus_equivalent(
    s1: &BipartiteState,
    s2: &BipartiteState,
    bs: &BasisSet,
    tol: &Tolerances,
) -> Result<bool> {
    let dec = bs.decompose(tol.adj_tol)?;
    let mut qs = Vec::with_capacity(2);
    for (i, s) in [s1, s2].into_iter().enumerate() {
        let r = is_zus(s, bs, tol)?;
        if !r.is_zus {
            return Err(Error::Precondition(format!("input {} is not a ZUS", i + 1)));
        }
        if !s.is_pure() && !economical_with(s, &dec)? {
            return Err(Error::Precondition(format!(
                "input {} is neither pure nor economical",
                i + 1
            )));
        }
        qs.push(r.component_vector);
    }
    Ok(qs[0]
        .iter()
        .zip(&qs[1])
        .all(|(a, b)| (a - b).abs() <= EQUIVALENCE_TOL))
}

/// Entanglement of formation of an economical ZUS, evaluated from its block
/// decomposition: each present block is eigendecomposed and the entanglement
/// entropies of its eigenvectors are averaged with their weights.
pub fn block_entanglement(s: &BipartiteState, bs: &BasisSet, tol: &Tolerances) -> Result<f64> {
    check_dims(s, bs)?;
    let dec = bs.decompose(tol.adj_tol)?;
    block_entanglement_with(&lambda_with(s, &dec)?, &dec)
}

fn block_entanglement_with(s: &BipartiteState, dec: &ComponentDecomposition) -> Result<f64> {
    let d_b = s.d_b();
    let mut total = 0.0;
    for a in 0..dec.count() {
        let block = block_operator(s, dec.isometry(a));
        let qa = block.trace().re;
        if qa <= ABSENT_COMPONENT {
            continue;
        }
        let r = dec.ranks()[a];
        let e = herm_eig(&block)?;
        for (i, &l) in e.eigenvalues.iter().enumerate() {
            if l <= SUPPORT_CUTOFF {
                continue;
            }
            let v = e.vector(i);
            let rho_a = CMatrix::from_fn(r, r, |j, j2| {
                (0..d_b)
                    .map(|b| v[j * d_b + b] * v[j2 * d_b + b].conj())
                    .sum()
            })
            .hermitian_part();
            let spec = herm_eig(&rho_a)?.eigenvalues;
            total += l * shannon_entropy(&spec);
        }
    }
    Ok(total)
}

/// The chain `E(ρ) ≥ E(ρ_ℬ) ≥ Σ_a q_a log₂ r_a ≥ log₂ r_min` with
/// `E = E_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementChain {
    pub e_rho: f64,
    pub e_lambda: f64,
    pub block_sum: f64,
    pub floor: f64,
    /// Slack of each link, left to right.
    pub slacks: [f64; 3],
}

/// Evaluates the entanglement chain on inputs where `E_F` is computable:
/// pure zero-uncertainty states and economical ones. Other mixed states are
/// refused.
pub fn zus_entanglement_chain(
    s: &BipartiteState,
    bs: &BasisSet,
    tol: &Tolerances,
) -> Result<EntanglementChain> {
    let r = require_zus(s, bs, tol)?;
    let dec = bs.decompose(tol.adj_tol)?;
    let lam = lambda_with(s, &dec)?;
    let e_lambda = block_entanglement_with(&lam, &dec)?;
    let e_rho = if s.is_pure() {
        crate::states::ef_pure(s)?
    } else if s.rho().distance(lam.rho()) <= ECONOMICAL_TOL {
        e_lambda
    } else {
        return Err(Error::Precondition(
            "entanglement of formation is not computable for a mixed non-economical state".into(),
        ));
    };
    let block_sum = weighted_log_ranks(&r.component_vector, dec.ranks());
    let floor = (dec.r_min() as f64).log2();
    Ok(EntanglementChain {
        e_rho,
        e_lambda,
        block_sum,
        floor,
        slacks: [e_rho - e_lambda, e_lambda - block_sum, block_sum - floor],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::fixtures;
    use crate::numlin::basis_vector;
    use crate::sample;
    use crate::states::canonical_mes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn ket00() -> BipartiteState {
        BipartiteState::pure(2, 2, &basis_vector(4, 0)).unwrap()
    }

    /// Uniform-Schmidt vector on Alice levels `alice` and Bob levels `bob`.
    fn block_mes(d_a: usize, d_b: usize, alice: &[usize], bob: &[usize]) -> Vec<C64> {
        let r = alice.len();
        let ua = CMatrix::from_columns(
            &alice
                .iter()
                .map(|&i| basis_vector(d_a, i))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let ub = CMatrix::from_columns(
            &bob.iter()
                .map(|&i| basis_vector(d_b, i))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        sample::schmidt_vector(&vec![1.0 / r as f64; r], &ua, &ub)
    }

    /// Ranks (1, 2) on C^3: a lone state plus a Fourier qubit pair.
    fn ranks_1_2() -> BasisSet {
        let single = BasisSet::uniform(1, vec![CMatrix::identity(1); 2]).unwrap();
        fixtures::direct_sum(&[single, fixtures::fourier_pair(2)]).unwrap()
    }

    #[test]
    fn reduced_ensemble_examples() {
        let phi = canonical_mes(2, 2).unwrap();
        let e = reduced_ensemble(&phi, &fixtures::computational(2), 0).unwrap();
        assert!(e.states[0].distance(&CMatrix::diag_real(&[0.5, 0.0])) < 1e-15);
        assert!(e.states[1].distance(&CMatrix::diag_real(&[0.0, 0.5])) < 1e-15);

        let e = reduced_ensemble(&phi, &fixtures::pauli_mubs(), 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = vec![C64::new(h, 0.0), C64::new(h, 0.0)];
        assert!(e.states[0].distance(&CMatrix::projector(&plus).scale_real(0.5)) < 1e-15);

        let ra = CMatrix::diag_real(&[0.3, 0.7]);
        let tau = CMatrix::diag_real(&[0.6, 0.4]);
        let prod = BipartiteState::product(&ra, &tau).unwrap();
        let e = reduced_ensemble(&prod, &fixtures::pauli_mubs(), 1).unwrap();
        for m in &e.states {
            assert!(m.distance(&tau.scale_real(0.5)) < 1e-15);
        }
        assert!(matches!(
            reduced_ensemble(&prod, &fixtures::pauli_mubs(), 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn distinguishability_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = vec![C64::new(h, 0.0), C64::new(h, 0.0)];
        let e = ReducedEnsemble {
            x: 0,
            states: vec![
                CMatrix::projector(&plus).scale_real(0.5),
                CMatrix::diag_real(&[0.5, 0.0]),
            ],
        };
        assert!(!perfectly_distinguishable(&e, 1e-7));
        let e = ReducedEnsemble {
            x: 0,
            states: vec![CMatrix::zeros(2, 2), CMatrix::diag_real(&[0.5, 0.5])],
        };
        assert!(perfectly_distinguishable(&e, 1e-7));
        let phi = canonical_mes(3, 3).unwrap();
        let bs = fixtures::haar_random(3, 2, 4);
        for x in 0..2 {
            assert!(perfectly_distinguishable(
                &reduced_ensemble(&phi, &bs, x).unwrap(),
                1e-7
            ));
        }
    }

    #[test]
    fn is_zus_examples() {
        let r = is_zus(
            &canonical_mes(2, 2).unwrap(),
            &fixtures::pauli_mubs(),
            &tol(),
        )
        .unwrap();
        assert!(r.is_zus && r.structural);
        assert_eq!(r.component_vector.len(), 1);
        assert!((r.component_vector[0] - 1.0).abs() < 1e-12);

        let r = is_zus(&ket00(), &fixtures::pauli_mubs(), &tol()).unwrap();
        assert!(!r.is_zus);
        assert_eq!(r.per_basis_distinguishable, vec![true, false, false]);
        assert!(r.failures.iter().any(|f| f.x == 1));

        let r = is_zus(&ket00(), &fixtures::computational(2), &tol()).unwrap();
        assert!(r.is_zus);
        assert_eq!(r.component_vector, vec![1.0, 0.0]);
    }

    #[test]
    fn is_zus_rejects_mismatched_dimension() {
        assert!(matches!(
            is_zus(
                &canonical_mes(3, 3).unwrap(),
                &fixtures::pauli_mubs(),
                &tol()
            ),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn component_vector_of_equal_block_mixture() {
        let bs =
            fixtures::direct_sum(&[fixtures::fourier_pair(2), fixtures::fourier_pair(2)]).unwrap();
        let a = BipartiteState::pure(4, 4, &block_mes(4, 4, &[0, 1], &[0, 1])).unwrap();
        let b = BipartiteState::pure(4, 4, &block_mes(4, 4, &[2, 3], &[2, 3])).unwrap();
        let s = BipartiteState::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        let q = component_vector(&s, &bs, &tol()).unwrap();
        assert!((q[0] - 0.5).abs() < 1e-12 && (q[1] - 0.5).abs() < 1e-12);
        assert!(is_economical(&s, &bs, &tol()).unwrap());
        let bound = ef_bound(&s, &bs, &tol()).unwrap();
        assert!((bound.value - 1.0).abs() < 1e-12 && bound.saturated);
    }

    #[test]
    fn lambda_b_examples() {
        let phi = canonical_mes(2, 2).unwrap();
        let same = lambda_b(&phi, &fixtures::pauli_mubs(), &tol()).unwrap();
        assert!(same.rho().distance(phi.rho()) < 1e-14);

        // |+⟩|0⟩ against the computational basis: coherence is removed.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
        ];
        let s = BipartiteState::pure(2, 2, &v).unwrap();
        let l = lambda_b(&s, &fixtures::computational(2), &tol()).unwrap();
        assert!(l.rho().distance(&CMatrix::diag_real(&[0.5, 0.0, 0.5, 0.0])) < 1e-15);
        let ll = lambda_b(&l, &fixtures::computational(2), &tol()).unwrap();
        assert!(ll.rho().distance(l.rho()) < 1e-12);
    }

    #[test]
    fn economical_and_zusle_on_ranks_1_2() {
        let bs = ranks_1_2();
        let dec = bs.decompose(1e-9).unwrap();
        assert_eq!(dec.ranks(), &[1, 2]);
        // MES on the rank-2 block: economical but not least entangled.
        let s = BipartiteState::pure(3, 3, &block_mes(3, 3, &[1, 2], &[1, 2])).unwrap();
        assert!(is_economical(&s, &bs, &tol()).unwrap());
        assert!(!is_zusle(&s, &bs, &tol()).unwrap());
        // Product state on the rank-1 block.
        let p = BipartiteState::pure(3, 3, &basis_vector(9, 0)).unwrap();
        assert!(is_zusle(&p, &bs, &tol()).unwrap());
        assert_eq!(component_vector(&p, &bs, &tol()).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn ef_bound_examples() {
        let b = ef_bound(
            &canonical_mes(4, 4).unwrap(),
            &fixtures::fourier_pair(4),
            &tol(),
        )
        .unwrap();
        assert!((b.value - 2.0).abs() < 1e-12 && b.saturated);

        let single = BasisSet::uniform(1, vec![CMatrix::identity(1); 2]).unwrap();
        let bs = fixtures::direct_sum(&[single, fixtures::fourier_pair(3)]).unwrap();
        let s = BipartiteState::pure(4, 4, &block_mes(4, 4, &[1, 2, 3], &[1, 2, 3])).unwrap();
        let b = ef_bound(&s, &bs, &tol()).unwrap();
        assert!((b.value - 3f64.log2()).abs() < 1e-12);
        assert_eq!(b.floor, 0.0);

        assert!(matches!(
            ef_bound(&ket00(), &fixtures::pauli_mubs(), &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equivalence_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let bs = fixtures::pauli_mubs();
        let phi = canonical_mes(2, 3).unwrap();
        let a = phi.apply_bob(&sample::haar_unitary(3, &mut rng)).unwrap();
        let b = phi.apply_bob(&sample::haar_unitary(3, &mut rng)).unwrap();
        assert!(zus_equivalent(&a, &b, &bs, &tol()).unwrap());

        let comp = fixtures::computational(2);
        let k0 = BipartiteState::pure(2, 2, &basis_vector(4, 0)).unwrap();
        let k1 = BipartiteState::pure(2, 2, &basis_vector(4, 3)).unwrap();
        assert!(!zus_equivalent(&k0, &k1, &comp, &tol()).unwrap());

        // Economical mixture vs coherent pure state, both with q = (½, ½).
        let mix = BipartiteState::mixture(&[(0.5, &k0), (0.5, &k1)]).unwrap();
        let bell = canonical_mes(2, 2).unwrap();
        assert!(zus_equivalent(&mix, &bell, &comp, &tol()).unwrap());

        let not_zus = ket00();
        assert!(zus_equivalent(&not_zus, &bell, &bs, &tol()).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = zus_entanglement_chain(
            &canonical_mes(3, 3).unwrap(),
            &fixtures::fourier_pair(3),
            &tol(),
        )
        .unwrap();
        let l3 = 3f64.log2();
        for v in [c.e_rho, c.e_lambda, c.block_sum, c.floor] {
            assert!((v - l3).abs() < 1e-10);
        }

        let bs =
            fixtures::direct_sum(&[fixtures::fourier_pair(2), fixtures::fourier_pair(4)]).unwrap();
        let a = BipartiteState::pure(6, 6, &block_mes(6, 6, &[0, 1], &[0, 1])).unwrap();
        let b = BipartiteState::pure(6, 6, &block_mes(6, 6, &[2, 3, 4, 5], &[2, 3, 4, 5])).unwrap();
        let s = BipartiteState::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        let c = zus_entanglement_chain(&s, &bs, &tol()).unwrap();
        assert!((c.block_sum - 1.5).abs() < 1e-12);
        assert!((c.e_rho - 1.5).abs() < 1e-10);
        assert!((c.floor - 1.0).abs() < 1e-12);

        // Coherent superposition of the same two blocks.
        let va = block_mes(6, 6, &[0, 1], &[0, 1]);
        let vb = block_mes(6, 6, &[2, 3, 4, 5], &[2, 3, 4, 5]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v: Vec<C64> = va.iter().zip(&vb).map(|(x, y)| (x + y) * h).collect();
        let p = BipartiteState::pure(6, 6, &v).unwrap();
        let c = zus_entanglement_chain(&p, &bs, &tol()).unwrap();
        assert!(c.slacks.iter().all(|&sl| sl >= -1e-8));
        assert!((c.slacks[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn chain_refuses_mixed_non_economical() {
        let bs = fixtures::computational(2);
        let bell = canonical_mes(2, 2).unwrap();
        let k0 = BipartiteState::pure(2, 2, &basis_vector(4, 0)).unwrap();
        let mix = BipartiteState::mixture(&[(0.5, &bell), (0.5, &k0)]).unwrap();
        assert!(is_zus(&mix, &bs, &tol()).unwrap().is_zus);
        assert!(matches!(
            zus_entanglement_chain(&mix, &bs, &tol()),
            Err(Error::Precondition(_))
        ));
    }
}
