//! JSON input formats and built-in fixtures.
//!
//! Complex numbers are `[re, im]` pairs. Matrices are flat and row-major.
//! A basis is an array of kets.

use serde::{Deserialize, Serialize};
use zuslab::bases::{fixtures, BasisSet};
use zuslab::game::Povm;
use zuslab::numlin::{CMatrix, C64};
use zuslab::states::{canonical_mes, BipartiteState};

use crate::error::{CliError, Context};

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSetFile {
    pub dim: usize,
    /// Defaults to uniform weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub bases: Vec<Vec<Vec<Complex>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub rho: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmEntry {
    pub dim: usize,
    pub elements: Vec<Vec<Complex>>,
}

/// One POVM per basis, in basis order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmFile {
    pub povms: Vec<PovmEntry>,
}

fn to_c64(z: &Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn from_c64(z: &C64) -> Complex {
    [z.re, z.im]
}

fn flat_matrix(dim: usize, entries: &[Complex], what: &str) -> Result<CMatrix, CliError> {
    CMatrix::from_vec(dim, dim, entries.iter().map(to_c64).collect()).context(what)
}

impl BasisSetFile {
    pub fn to_basis_set(&self) -> Result<BasisSet, CliError> {
        let m = self.bases.len();
        let weights = self
            .weights
            .clone()
            .unwrap_or_else(|| vec![1.0 / m.max(1) as f64; m]);
        let kets: Vec<Vec<Vec<C64>>> = self
            .bases
            .iter()
            .map(|b| b.iter().map(|k| k.iter().map(to_c64).collect()).collect())
            .collect();
        BasisSet::from_kets(self.dim, &kets, weights).context("basis set")
    }

    pub fn from_basis_set(bs: &BasisSet) -> Self {
        Self {
            dim: bs.dim(),
            weights: Some(bs.weights().to_vec()),
            bases: (0..bs.m())
                .map(|x| {
                    bs.kets(x)
                        .iter()
                        .map(|k| k.iter().map(from_c64).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

impl StateFile {
    pub fn to_state(&self) -> Result<BipartiteState, CliError> {
        let n = self.d_a * self.d_b;
        let rho = flat_matrix(n, &self.rho, "state")?;
        BipartiteState::new(self.d_a, self.d_b, rho).context("state")
    }

    pub fn from_state(s: &BipartiteState) -> Self {
        Self {
            d_a: s.d_a(),
            d_b: s.d_b(),
            rho: s.rho().as_slice().iter().map(from_c64).collect(),
        }
    }
}

impl PovmFile {
    pub fn to_povms(&self) -> Result<Vec<Povm>, CliError> {
        self.povms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let what = format!("POVM {i}");
                let elements = p
                    .elements
                    .iter()
                    .map(|e| flat_matrix(p.dim, e, &what))
                    .collect::<Result<Vec<_>, _>>()?;
                Povm::new(elements).context(what)
            })
            .collect()
    }

    pub fn from_povms(povms: &[Povm]) -> Self {
        Self {
            povms: povms
                .iter()
                .map(|p| PovmEntry {
                    dim: p.dim(),
                    elements: p
                        .elements()
                        .iter()
                        .map(|e| e.as_slice().iter().map(from_c64).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

const FIXTURE_PREFIX: &str = "fixture:";

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })
}

fn fixture_error(spec: &str, reason: impl Into<String>) -> CliError {
    CliError::Fixture {
        spec: spec.into(),
        reason: reason.into(),
    }
}

fn fixture_args(spec: &str, rest: &[&str], want: usize) -> Result<Vec<usize>, CliError> {
    if rest.len() != want {
        return Err(fixture_error(
            spec,
            format!("expected {want} numeric arguments"),
        ));
    }
    rest.iter()
        .map(|a| {
            a.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| fixture_error(spec, format!("{a:?} is not a positive integer")))
        })
        .collect()
}

/// Loads a basis set from a JSON file or a fixture spec:
/// `fixture:pauli`, `fixture:fourier:D`, `fixture:computational:D`,
/// `fixture:haar:D:M` (seeded by `seed`).
pub fn load_basis_set(source: &str, seed: u64) -> Result<BasisSet, CliError> {
    let Some(spec) = source.strip_prefix(FIXTURE_PREFIX) else {
        return read_json::<BasisSetFile>(source)?.to_basis_set();
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts[0] {
        "pauli" => {
            fixture_args(source, &parts[1..], 0)?;
            Ok(fixtures::pauli_mubs())
        }
        "fourier" => Ok(fixtures::fourier_pair(
            fixture_args(source, &parts[1..], 1)?[0],
        )),
        "computational" => Ok(fixtures::computational(
            fixture_args(source, &parts[1..], 1)?[0],
        )),
        "haar" => {
            let a = fixture_args(source, &parts[1..], 2)?;
            Ok(fixtures::haar_random(a[0], a[1], seed))
        }
        other => Err(fixture_error(
            source,
            format!("unknown basis fixture {other:?}"),
        )),
    }
}

/// Loads a state from a JSON file or a fixture spec: `fixture:bell` or
/// `fixture:mes:DA:DB`.
pub fn load_state(source: &str) -> Result<BipartiteState, CliError> {
    let Some(spec) = source.strip_prefix(FIXTURE_PREFIX) else {
        return read_json::<StateFile>(source)?.to_state();
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let (d_a, d_b) = match parts[0] {
        "bell" => {
            fixture_args(source, &parts[1..], 0)?;
            (2, 2)
        }
        "mes" => {
            let a = fixture_args(source, &parts[1..], 2)?;
            (a[0], a[1])
        }
        other => {
            return Err(fixture_error(
                source,
                format!("unknown state fixture {other:?}"),
            ))
        }
    };
    canonical_mes(d_a, d_b).context("state fixture")
}

pub fn load_povms(path: &str) -> Result<Vec<Povm>, CliError> {
    read_json::<PovmFile>(path)?.to_povms()
}
