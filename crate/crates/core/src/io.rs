//! Files on disk: pseudo-expectation tables, JSON reports, atomic writes.
//!
//! A table file is a JSON object
//!
//! ```text
//! {"schema": "v1", "n": 3, "d": 2, "graph_hash": "…", "mode": "rational",
//!  "values": {"": "1", "1": "1/4", "2": "1/4", "3": "1/4"}}
//! ```
//!
//! Keys are sorted comma-separated 1-based vertex lists, the empty key is the
//! empty set, and absent keys are zero. Values are strings so rationals stay
//! exact; both `"1/4"` and `"0.25"` parse in either mode.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pe::PseudoExpectation;
use crate::poly::Monomial;
use crate::scalar::{Arithmetic, Rational, Scalar};

pub const SCHEMA: &str = "v1";

/// Tolerance for `value(∅) = 1` on float tables.
pub const LOAD_TOL: f64 = 1e-9;

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeFile {
    pub schema: String,
    pub n: usize,
    pub d: usize,
    pub graph_hash: Option<String>,
    pub mode: Arithmetic,
    pub values: Map<String, Value>,
}

fn key(m: &Monomial) -> String {
    m.vars().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_key(k: &str, n: usize, d: usize) -> Result<Monomial> {
    if k.is_empty() {
        return Ok(Monomial::one());
    }
    let vs = k
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex list `{k}`"))))
        .collect::<Result<Vec<_>>>()?;
    if vs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!("vertex list `{k}` is not strictly increasing")));
    }
    if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if vs.len() > d {
        return Err(Error::DegreeExceeded {
            needed: vs.len(),
            available: d,
        });
    }
    Ok(Monomial::new(vs))
}

impl PeFile {
    pub fn from_pe<T: Scalar>(pe: &PseudoExpectation<T>) -> Self {
        let values = pe
            .entries()
            .into_iter()
            .map(|(m, v)| (key(&m), Value::String(v.render())))
            .collect();
        PeFile {
            schema: SCHEMA.into(),
            n: pe.n(),
            d: pe.d(),
            graph_hash: pe.graph_hash().map(str::to_owned),
            mode: T::MODE,
            values,
        }
    }

    /// Builds the table in arithmetic `T` and checks normalisation.
    pub fn to_pe<T: Scalar>(&self) -> Result<PseudoExpectation<T>> {
        if self.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema `{}`", self.schema)));
        }
        let mut pe = PseudoExpectation::<T>::new(self.n, self.d)?;
        for (k, v) in &self.values {
            let m = parse_key(k, self.n, pe.d())?;
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                other => return Err(Error::Parse(format!("value for `{k}` must be a string, got {other}"))),
            };
            pe.set(&m, T::parse(&text)?)?;
        }
        pe.set_graph_hash(self.graph_hash.clone());
        pe.check_normalized(LOAD_TOL)?;
        Ok(pe)
    }
}

/// Table in whichever arithmetic its file declares.
#[derive(Clone, Debug)]
pub enum LoadedPe {
    Float(PseudoExpectation<f64>),
    Rational(PseudoExpectation<Rational>),
}

impl LoadedPe {
    pub fn mode(&self) -> Arithmetic {
        match self {
            LoadedPe::Float(_) => Arithmetic::Float,
            LoadedPe::Rational(_) => Arithmetic::Rational,
        }
    }
}

pub fn write_pe<T: Scalar>(path: &Path, pe: &PseudoExpectation<T>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&PeFile::from_pe(pe))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_pe_file(path: &Path) -> Result<PeFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Reads a table in arithmetic `T`; with a graph, also checks the hash and
/// that every non-independent set has value zero.
pub fn read_pe<T: Scalar>(path: &Path, graph: Option<&Graph>) -> Result<PseudoExpectation<T>> {
    let pe = read_pe_file(path)?.to_pe::<T>()?;
    if let Some(g) = graph {
        pe.check_graph(g)?;
        pe.check_edge_constraints(g, 0.0)?;
    }
    Ok(pe)
}

/// Reads a table in the arithmetic its file declares.
pub fn read_pe_any(path: &Path, graph: Option<&Graph>) -> Result<LoadedPe> {
    let file = read_pe_file(path)?;
    let loaded = match file.mode {
        Arithmetic::Float => LoadedPe::Float(file.to_pe()?),
        Arithmetic::Rational => LoadedPe::Rational(file.to_pe()?),
    };
    if let Some(g) = graph {
        match &loaded {
            LoadedPe::Float(pe) => {
                pe.check_graph(g)?;
                pe.check_edge_constraints(g, 0.0)?;
            }
            LoadedPe::Rational(pe) => {
                pe.check_graph(g)?;
                pe.check_edge_constraints(g, 0.0)?;
            }
        }
    }
    Ok(loaded)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    write_atomic(path, g.to_edge_list().as_bytes())
}

/// Common envelope of every command report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: Value,
    pub timestamp: String,
    pub verdict: String,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, config: Value, verdict: &str, result: Value) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            config,
            timestamp: humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string(),
            verdict: verdict.into(),
            result,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        write_atomic(path, text.as_bytes())
    }
}
