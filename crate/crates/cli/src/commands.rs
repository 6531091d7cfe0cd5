use serde_json::json;
use zuslab::bases::{build_transition_graph, commutant_dimension, BasisSet};
use zuslab::game::{
    cq_conditional_entropy, guessing_probability, min_error_discrimination, outcome_entropy,
    uncertainty_audit, AuditStatus, DiscriminationOptions, Povm,
};
use zuslab::numlin::herm_eig;
use zuslab::states::{ef_pure, is_mes, BipartiteState};
use zuslab::verify::{
    assemblage_from, degeneracy_certificate, gram_matrix, mes_from_assemblage_check, steering_test,
    target_assemblage, verification_operator,
};
use zuslab::zus::{component_vector, ef_bound, is_economical, is_zus, is_zusle, reduced_ensemble};

use crate::error::{CliError, Context};
use crate::io;
use crate::report::Report;
use crate::{Command, JobSpec};

struct Inputs {
    state: Option<BipartiteState>,
    bases: Option<BasisSet>,
    povms: Option<Vec<Povm>>,
}

impl Inputs {
    fn state(&self) -> Result<&BipartiteState, CliError> {
        self.state.as_ref().ok_or(CliError::MissingInput("state"))
    }

    fn bases(&self) -> Result<&BasisSet, CliError> {
        self.bases.as_ref().ok_or(CliError::MissingInput("bases"))
    }
}

fn load(job: &JobSpec, report: &mut Report) -> Result<Inputs, CliError> {
    let mut inputs = Inputs {
        state: None,
        bases: None,
        povms: None,
    };
    if let Some(src) = &job.state {
        inputs.state = Some(io::load_state(src)?);
        report.inputs.insert("state".into(), json!(src));
    }
    if let Some(src) = &job.bases {
        inputs.bases = Some(io::load_basis_set(src, job.seed)?);
        report.inputs.insert("bases".into(), json!(src));
    }
    if let Some(src) = &job.povm {
        inputs.povms = Some(io::load_povms(src)?);
        report.inputs.insert("povm".into(), json!(src));
    }
    report.inputs.insert("seed".into(), json!(job.seed));
    if let (Some(s), Some(bs)) = (&inputs.state, &inputs.bases) {
        if s.d_a() != bs.dim() {
            return Err(CliError::Usage(format!(
                "state has d_A = {} but the basis set has dimension {}",
                s.d_a(),
                bs.dim()
            )));
        }
    }
    Ok(inputs)
}

pub fn execute(job: &JobSpec) -> Result<Report, CliError> {
    job.tolerances.validate().context("tolerances")?;
    let mut report = Report::new(job.command.name(), job.tolerances);
    let inputs = load(job, &mut report)?;
    match job.command {
        Command::Graph => graph(&inputs, job, &mut report)?,
        Command::Zus => zus(&inputs, job, &mut report)?,
        Command::Mes => mes(&inputs, job, &mut report)?,
        Command::Spectrum => spectrum(&inputs, job, &mut report)?,
        Command::Game => game(&inputs, job, &mut report)?,
        Command::Steer => steer(&inputs, job, &mut report)?,
        Command::Audit => audit(&inputs, job, &mut report)?,
    }
    Ok(report)
}

fn graph(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let bs = inputs.bases()?;
    let tol = &job.tolerances;
    let g = build_transition_graph(bs, tol.adj_tol);
    let dec = bs.decompose(tol.adj_tol).context("components")?;
    report.verdict("components", dec.count());
    report.verdict("irreducible", dec.count() == 1);
    report.diagnostic("vertex_count", g.vertex_count());
    report.diagnostic("edges", g.edges());
    report.diagnostic("ranks", dec.ranks());
    report.diagnostic("vertex_labels", dec.vertex_labels());
    report.diagnostic(
        "commutant_dimension",
        commutant_dimension(bs).context("commutant")?,
    );
    Ok(())
}

fn zus(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let (s, bs) = (inputs.state()?, inputs.bases()?);
    let tol = &job.tolerances;
    let r = is_zus(s, bs, tol).context("zero-uncertainty test")?;
    report.verdict("is_zus", r.is_zus);
    report.verdict("component_vector", &r.component_vector);
    if r.is_zus {
        report.verdict(
            "economical",
            is_economical(s, bs, tol).context("economical test")?,
        );
        report.verdict(
            "zusle",
            is_zusle(s, bs, tol).context("minimal-entanglement test")?,
        );
        let b = ef_bound(s, bs, tol).context("entanglement bound")?;
        report.diagnostic(
            "ef_bound",
            json!({"value": b.value, "floor": b.floor, "saturated": b.saturated}),
        );
    }
    report.diagnostic("ranks", &r.ranks);
    report.diagnostic("per_basis_distinguishable", &r.per_basis_distinguishable);
    report.diagnostic("structural_route", r.structural);
    if let Some(note) = &r.structural_note {
        report.diagnostic("structural_note", note);
    }
    let failures: Vec<_> = r
        .failures
        .iter()
        .map(|f| json!({"basis": f.x, "k": f.k, "l": f.l, "overlap": f.overlap}))
        .collect();
    report.diagnostic("overlap_failures", failures);
    Ok(())
}

fn mes(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let s = inputs.state()?;
    let r = is_mes(s, job.tolerances.zus_tol).context("maximal-entanglement test")?;
    report.verdict("is_mes", r.is_mes);
    report.diagnostic("route_entropy", r.route_entropy);
    report.diagnostic("route_structure", r.route_structure);
    report.diagnostic("conditional_entropy", r.cond_entropy);
    report.diagnostic("purity", s.purity());
    if let Some(reason) = &r.reason {
        report.diagnostic("reason", reason);
    }
    if let Some(parts) = &r.decomposition {
        let w: Vec<f64> = parts.iter().map(|c| c.weight).collect();
        report.diagnostic("component_weights", w);
    }
    if s.is_pure() {
        report.diagnostic("entanglement_of_formation", ef_pure(s).context("E_F")?);
    }
    Ok(())
}

fn spectrum(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let bs = inputs.bases()?;
    let tol = &job.tolerances;
    let cert = degeneracy_certificate(bs, tol).context("degeneracy certificate")?;
    report.verdict("g_graph", cert.g_graph);
    report.verdict("g_omega", cert.g_omega);
    report.verdict("g_gram", cert.g_gram);
    report.verdict("consistent", cert.consistent);
    cert.check().context("degeneracy certificate")?;
    let omega = verification_operator(bs, tol.spec_tol).context("verification operator")?;
    let gram = herm_eig(&gram_matrix(bs)).context("Gram spectrum")?;
    report.diagnostic("omega_spectrum", &omega.spectrum.eigenvalues);
    report.diagnostic("gram_spectrum", &gram.eigenvalues);
    report.series = Some(
        omega
            .spectrum
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .collect(),
    );
    Ok(())
}

fn game(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let (s, bs) = (inputs.state()?, inputs.bases()?);
    if let Some(p) = &inputs.povms {
        if p.len() != bs.m() {
            return Err(CliError::Usage(format!(
                "POVM file has {} measurements for {} bases",
                p.len(),
                bs.m()
            )));
        }
    }
    let opts = DiscriminationOptions {
        certify_tol: job.tolerances.certify_tol,
        ..DiscriminationOptions::default()
    };
    let mut p_opt = Vec::with_capacity(bs.m());
    let mut per_basis = Vec::with_capacity(bs.m());
    for x in 0..bs.m() {
        let e = reduced_ensemble(s, bs, x).context(format!("ensemble of basis {x}"))?;
        let r =
            min_error_discrimination(&e, &opts).context(format!("discrimination of basis {x}"))?;
        let mut entry = json!({
            "basis": x,
            "p_opt": r.p_opt,
            "upper_bound": r.upper_bound,
            "dual_gap": r.dual_gap,
            "iterations": r.iterations,
            "converged": r.converged,
            "outcome_entropy": outcome_entropy(s, bs, x).context("outcome entropy")?,
            "conditional_entropy": cq_conditional_entropy(s, bs, x).context("conditional entropy")?,
        });
        if let Some(p) = &inputs.povms {
            let given = guessing_probability(s, bs, x, &p[x]).context(format!("POVM {x}"))?;
            entry["p_given_povm"] = json!(given);
        }
        p_opt.push(r.p_opt);
        per_basis.push(entry);
    }
    let perfect = p_opt.iter().all(|&p| p >= 1.0 - job.tolerances.zus_tol);
    report.verdict("p_opt", &p_opt);
    report.verdict("all_perfect", perfect);
    report.diagnostic("bases", per_basis);
    report.series = Some(p_opt.into_iter().enumerate().collect());
    Ok(())
}

fn steer(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let bs = inputs.bases()?;
    let tol = &job.tolerances;
    let (assemblage, source) = match (&inputs.state, &inputs.povms) {
        (Some(s), Some(p)) => (assemblage_from(s, p).context("assemblage")?, "state"),
        (None, None) => (target_assemblage(bs), "target"),
        _ => {
            return Err(CliError::Usage(
                "steer needs both --state and --povm, or neither for the target assemblage".into(),
            ))
        }
    };
    let r = steering_test(&assemblage, bs, tol.zus_tol, tol.adj_tol).context("steering test")?;
    report.verdict("passes", r.passes);
    report.verdict("rho_a_mixed", r.rho_a_mixed);
    report.verdict("matches_target", r.matches_target);
    if let (Some(s), Some(p)) = (&inputs.state, &inputs.povms) {
        let certified =
            mes_from_assemblage_check(s, p, bs, tol).context("assemblage certificate")?;
        report.verdict("certifies_mes_and_zus", certified);
    }
    report.diagnostic("assemblage", source);
    report.diagnostic("scores", &r.scores);
    Ok(())
}

fn audit(inputs: &Inputs, job: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let (s, bs) = (inputs.state()?, inputs.bases()?);
    let a = uncertainty_audit(s, bs, &job.tolerances).context("uncertainty audit")?;
    report.verdict("holds", a.holds());
    report.verdict("min_slack", a.min_slack());
    let entries: Vec<_> = a
        .entries
        .iter()
        .map(|e| match &e.status {
            AuditStatus::Checked { lhs, rhs, slack } => {
                json!({"name": e.name, "lhs": lhs, "rhs": rhs, "slack": slack})
            }
            AuditStatus::Skipped(why) => json!({"name": e.name, "skipped": why}),
        })
        .collect();
    report.diagnostic("relations", entries);
    if let Ok(q) = component_vector(s, bs, &job.tolerances) {
        report.diagnostic("component_vector", q);
    }
    Ok(())
}
