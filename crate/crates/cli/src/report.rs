use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use zuslab::Tolerances;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceEcho {
    pub adj_tol: f64,
    pub spec_tol: f64,
    pub certify_tol: f64,
    pub zus_tol: f64,
}

impl From<Tolerances> for ToleranceEcho {
    fn from(t: Tolerances) -> Self {
        Self {
            adj_tol: t.adj_tol,
            spec_tol: t.spec_tol,
            certify_tol: t.certify_tol,
            zus_tol: t.zus_tol,
        }
    }
}

/// Machine-readable outcome of one subcommand. Maps are ordered, so equal
/// inputs give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub tolerances: ToleranceEcho,
    pub verdicts: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
    pub version: String,
    /// `(index, value)` rows for plotting.
    #[serde(skip)]
    pub series: Option<Vec<(usize, f64)>>,
}

impl Report {
    pub fn new(command: &str, tol: Tolerances) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            tolerances: tol.into(),
            verdicts: Map::new(),
            diagnostics: Map::new(),
            version: env!("CARGO_PKG_VERSION").into(),
            series: None,
        }
    }

    pub fn verdict(&mut self, key: &str, v: impl Serialize) {
        self.verdicts.insert(key.into(), to_value(v));
    }

    pub fn diagnostic(&mut self, key: &str, v: impl Serialize) {
        self.diagnostics.insert(key.into(), to_value(v));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain data")
    }

    pub fn to_csv(&self) -> Option<String> {
        let rows = self.series.as_ref()?;
        let mut out = String::from("index,value\n");
        for (i, v) in rows {
            out.push_str(&format!("{i},{v}\n"));
        }
        Some(out)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values are plain data")
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let wrap = |source| CliError::Write {
        path: path.into(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(wrap)?;
    f.write_all(text.as_bytes()).map_err(wrap)
}
