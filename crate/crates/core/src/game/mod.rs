//! The uncertainty game.
//!
//! Alice measures basis `x` and Bob, holding the memory, guesses her
//! outcome with a POVM. This module evaluates guessing probabilities, builds
//! Bob's perfect strategy for maximally entangled inputs, solves the
//! minimum-error discrimination problem with a dual certificate, and audits
//! the entropic uncertainty relations.

mod discrimination;
mod entropic;
mod povm;

pub use discrimination::{
    dual_gap, helstrom, min_error_discrimination, DiscriminationOptions, DiscriminationResult,
};
pub use entropic::{
    cq_conditional_entropy, maassen_uffink, outcome_entropy, uncertainty_audit, AuditEntry,
    AuditReport, AuditStatus, MaassenUffink,
};
pub use povm::{guessing_probability, optimal_povm_for_mes, Povm};
