/// Numerical tolerance knobs shared by every component-dependent analysis.
///
/// Graph connectivity and eigenvalue degeneracy are discontinuous in the
/// inputs, so these values are echoed into every report that depends on them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Squared-overlap threshold above which two basis states are adjacent.
    pub adj_tol: f64,
    /// Relative gap below which neighbouring eigenvalues are clustered.
    pub spec_tol: f64,
    /// Dual-certificate tolerance of the discrimination solver.
    pub certify_tol: f64,
    /// Tolerance of the zero-uncertainty and maximal-entanglement predicates.
    pub zus_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            adj_tol: 1e-9,
            spec_tol: 1e-8,
            certify_tol: 1e-7,
            zus_tol: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> crate::Result<()> {
        let all = [
            ("adj_tol", self.adj_tol),
            ("spec_tol", self.spec_tol),
            ("certify_tol", self.certify_tol),
            ("zus_tol", self.zus_tol),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(crate::Error::Precondition(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
