//! Verification operators and steering assemblages.
//!
//! The verifier picks basis `x` with probability `μ_x` and accepts when
//! Alice and Bob obtain matching outcomes in the basis and its complex
//! conjugate. The acceptance operator `Ω = Σ_x μ_x P(ℬ_x)` has eigenvalue 1
//! with multiplicity equal to the number of components of the transition
//! graph; the same count appears in the Gram matrix of the weighted basis
//! states and in the commutant of the basis set. Assemblages record what
//! Alice is left with after Bob measures, and the target assemblage
//! `|ψ_{xk}⟩⟨ψ_{xk}|/d` can only come from a maximally entangled ZUS.
//!
//! Conjugation `|ψ*⟩` is taken entrywise in the computational basis, the
//! same basis that defines the canonical MES.

mod assemblage;
mod omega;

pub use assemblage::{
    assemblage_from, mes_from_assemblage_check, steering_test, target_assemblage, Assemblage,
    SteeringReport,
};
pub use omega::{
    degeneracy_certificate, gram_matrix, test_projector, verification_operator,
    DegeneracyCertificate, VerificationOperator,
};
