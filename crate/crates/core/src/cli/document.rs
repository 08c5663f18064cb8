//! JSON workspace documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "lattice": [["1", "0"], ["0", "1"], ["i", "0"], ["0", "i"]],
//!   "H": [["1", "0"], ["0", "0"]],
//!   "chi": ["0", "1/2", "0", "1"],
//!   "connection": { "x": ["0", "0.25i"], "c": "1", "omega": ["1", "0"] },
//!   "character": ["2", "1", "i", "-1"],
//!   "suite": { "cases": 100, "seed": 7, "max_degree": 4 }
//! }
//! ```
//!
//! Only `version` and `lattice` are required. Entries are exact strings in the
//! Gaussian-rational syntax (`"3/4-2*i"`, `"0.5+i"`); decimals are read
//! exactly. Connection and character entries are converted to `f64`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::exact_linalg::{parse_rational, ExactMatrix, GaussianRational, Vector};
use crate::line_bundles::{AppellHumbertBundle, BundleDiagnostic};
use crate::monodromy::{Character, LambdaConnection};
use crate::torus::PeriodLattice;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("document line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field {path}: {message}")]
    Field { path: String, message: String },
    #[error("unsupported schema version {0}, expected {SCHEMA_VERSION}")]
    Version(u32),
    #[error("document has no `{0}` section")]
    Missing(&'static str),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field { path: path.into(), message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: u32,
    lattice: Vec<Vec<String>>,
    #[serde(rename = "H", default)]
    h: Option<Vec<Vec<String>>>,
    #[serde(default)]
    chi: Option<Vec<String>>,
    #[serde(default)]
    connection: Option<RawConnection>,
    #[serde(default)]
    character: Option<Vec<String>>,
    #[serde(default)]
    suite: Option<RawSuite>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConnection {
    x: Vec<String>,
    #[serde(default)]
    c: Option<String>,
    omega: Vec<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    cases: Option<usize>,
    seed: Option<u64>,
    max_degree: Option<usize>,
}

/// Case count, seed and degree bound for the verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub cases: usize,
    pub seed: u64,
    pub max_degree: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { cases: 100, seed: 0, max_degree: 4 }
    }
}

/// A parsed document. Lattice and bundle data are kept raw so that `validate`
/// can report on invalid input instead of rejecting it.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub generators: Vec<Vector>,
    pub h: Option<ExactMatrix>,
    pub chi: Option<Vec<BigRational>>,
    pub connection: Option<LambdaConnection>,
    pub character: Option<Vec<Complex64>>,
    pub suite: SuiteParams,
}

fn parse_entry(path: &str, s: &str) -> Result<GaussianRational, DocumentError> {
    s.parse().map_err(|e: crate::exact_linalg::ParseGaussianError| field(path, e.reason))
}

fn parse_vector(path: &str, entries: &[String]) -> Result<Vector, DocumentError> {
    entries.iter().enumerate().map(|(i, s)| parse_entry(&format!("{path}[{i}]"), s)).collect()
}

fn parse_grid(path: &str, rows: &[Vec<String>]) -> Result<Vec<Vector>, DocumentError> {
    rows.iter().enumerate().map(|(r, row)| parse_vector(&format!("{path}[{r}]"), row)).collect()
}

fn parse_complex_vector(path: &str, entries: &[String]) -> Result<Vec<Complex64>, DocumentError> {
    Ok(parse_vector(path, entries)?.iter().map(GaussianRational::to_complex64).collect())
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| DocumentError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
        if raw.version != SCHEMA_VERSION {
            return Err(DocumentError::Version(raw.version));
        }
        let generators = parse_grid("lattice", &raw.lattice)?;
        let h = match &raw.h {
            Some(rows) => {
                let parsed = parse_grid("H", rows)?;
                let cols = parsed.first().map_or(0, Vec::len);
                Some(ExactMatrix::from_rows(&parsed, cols).map_err(|e| field("H", e.to_string()))?)
            }
            None => None,
        };
        let chi = match &raw.chi {
            Some(entries) => Some(
                entries
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_rational(s).ok_or_else(|| field(format!("chi[{i}]"), format!("`{s}` is not a rational number"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let connection = match &raw.connection {
            Some(c) => {
                let x = parse_complex_vector("connection.x", &c.x)?;
                let omega = parse_complex_vector("connection.omega", &c.omega)?;
                let scale = match &c.c {
                    Some(s) => parse_entry("connection.c", s)?.to_complex64(),
                    None => Complex64::new(1.0, 0.0),
                };
                Some(LambdaConnection::new(x, scale, omega).map_err(|e| field("connection", e.to_string()))?)
            }
            None => None,
        };
        let character = match &raw.character {
            Some(v) => Some(parse_complex_vector("character", v)?),
            None => None,
        };
        let s = raw.suite.unwrap_or_default();
        let defaults = SuiteParams::default();
        let suite = SuiteParams {
            cases: s.cases.unwrap_or(defaults.cases),
            seed: s.seed.unwrap_or(defaults.seed),
            max_degree: s.max_degree.unwrap_or(defaults.max_degree),
        };
        Ok(Workspace { generators, h, chi, connection, character, suite })
    }

    /// The workspace used when no document is given: `ℤ² + iℤ²` with `H = diag(1, 0)`.
    pub fn default_workspace() -> Workspace {
        Workspace {
            generators: PeriodLattice::standard(2).generators().to_vec(),
            h: Some(ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 0]])),
            chi: None,
            connection: None,
            character: None,
            suite: SuiteParams::default(),
        }
    }

    pub fn lattice(&self) -> Result<PeriodLattice, DocumentError> {
        PeriodLattice::new(self.generators.clone()).map_err(|e| field("lattice", e.to_string()))
    }

    /// The bundle `(H, χ)`; a missing `H` is zero and missing `χ` is trivial.
    pub fn bundle(&self) -> Result<AppellHumbertBundle, DocumentError> {
        let lattice = self.lattice()?;
        let g = lattice.dim();
        let h = self.h.clone().unwrap_or_else(|| ExactMatrix::zeros(g, g));
        let chi = self.chi.clone().unwrap_or_else(|| vec![BigRational::zero(); 2 * g]);
        AppellHumbertBundle::new(lattice, h, chi).map_err(|d| field(diagnostic_path(&d), d.to_string()))
    }

    pub fn connection(&self) -> Result<&LambdaConnection, DocumentError> {
        self.connection.as_ref().ok_or(DocumentError::Missing("connection"))
    }

    pub fn character(&self) -> Result<Character, DocumentError> {
        let values = self.character.clone().ok_or(DocumentError::Missing("character"))?;
        Character::new(values).map_err(|e| field("character", e.to_string()))
    }
}

/// Document path that a bundle diagnostic refers to.
pub fn diagnostic_path(d: &BundleDiagnostic) -> String {
    match d {
        BundleDiagnostic::HShape { .. } => "H".into(),
        BundleDiagnostic::ChiLength { .. } => "chi".into(),
        BundleDiagnostic::NotHermitian { row, col } => format!("H[{row}][{col}]"),
        BundleDiagnostic::NonIntegralE { .. } => "H".into(),
        BundleDiagnostic::LatticeMismatch | BundleDiagnostic::NotDegreeZero => "H".into(),
    }
}
