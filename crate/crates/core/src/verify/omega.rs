use crate::bases::BasisSet;
use crate::numlin::{herm_eig, kron, top_degeneracy, CMatrix, HermEig, C64};
use crate::{Error, Result, Tolerances};

/// `P(ℬ_x) = Σ_k |ψ_{xk}⟩⟨ψ_{xk}| ⊗ |ψ_{xk}*⟩⟨ψ_{xk}*|` on `C^d ⊗ C^d`.
pub fn test_projector(bs: &BasisSet, x: usize) -> Result<CMatrix> {
    bs.check_index(x)?;
    let d = bs.dim();
    let mut p = CMatrix::zeros(d * d, d * d);
    for k in 0..d {
        let psi = bs.ket(x, k);
        let conj: Vec<C64> = psi.iter().map(|z| z.conj()).collect();
        p += &kron(&CMatrix::projector(&psi), &CMatrix::projector(&conj));
    }
    Ok(p.hermitian_part())
}

#[derive(Debug, Clone)]
pub struct VerificationOperator {
    pub omega: CMatrix,
    pub weights: Vec<f64>,
    pub spectrum: HermEig,
    /// Multiplicity of the top eigenvalue after clustering.
    pub max_eig_degeneracy: usize,
}

/// `Ω = Σ_x μ_x P(ℬ_x)` with its spectrum.
pub fn verification_operator(bs: &BasisSet, spec_tol: f64) -> Result<VerificationOperator> {
    let d = bs.dim();
    let mut omega = CMatrix::zeros(d * d, d * d);
    for (x, &w) in bs.weights().iter().enumerate() {
        omega += &test_projector(bs, x)?.scale_real(w);
    }
    let omega = omega.hermitian_part();
    let spectrum = herm_eig(&omega)?;
    let max_eig_degeneracy = top_degeneracy(&spectrum.eigenvalues, spec_tol);
    Ok(VerificationOperator {
        omega,
        weights: bs.weights().to_vec(),
        spectrum,
        max_eig_degeneracy,
    })
}

/// `M_{xk,yl} = √(μ_x μ_y) |⟨ψ_{xk}|ψ_{yl}⟩|²`, of size `m·d`. It shares its
/// nonzero spectrum with `Ω`.
pub fn gram_matrix(bs: &BasisSet) -> CMatrix {
    let d = bs.dim();
    let m = bs.m();
    let w = bs.weights();
    let mut g = CMatrix::zeros(m * d, m * d);
    for x in 0..m {
        for y in x..m {
            let ov = bs.basis(x).adjoint().matmul(bs.basis(y));
            let scale = (w[x] * w[y]).sqrt();
            for k in 0..d {
                for l in 0..d {
                    let v = C64::new(scale * ov[(k, l)].norm_sqr(), 0.0);
                    g[(x * d + k, y * d + l)] = v;
                    g[(y * d + l, x * d + k)] = v;
                }
            }
        }
    }
    g
}

/// Three independent counts of the components of a basis set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegeneracyCertificate {
    pub g_graph: usize,
    pub g_omega: usize,
    pub g_gram: usize,
    pub consistent: bool,
}

impl DegeneracyCertificate {
    /// Turns an inconsistent certificate into a pathology error.
    pub fn check(self) -> Result<Self> {
        if self.consistent {
            Ok(self)
        } else {
            Err(Error::Pathology(format!(
                "component counts disagree: graph {}, verification operator {}, Gram matrix {}",
                self.g_graph, self.g_omega, self.g_gram
            )))
        }
    }
}

pub fn degeneracy_certificate(bs: &BasisSet, tol: &Tolerances) -> Result<DegeneracyCertificate> {
    let g_graph = bs.decompose(tol.adj_tol)?.count();
    let g_omega = verification_operator(bs, tol.spec_tol)?.max_eig_degeneracy;
    let g_gram = top_degeneracy(&herm_eig(&gram_matrix(bs))?.eigenvalues, tol.spec_tol);
    Ok(DegeneracyCertificate {
        g_graph,
        g_omega,
        g_gram,
        consistent: g_graph == g_omega && g_omega == g_gram,
    })
}
