//! JSON problem and report documents.
//!
//! A problem document holds exactly one of three forms:
//!
//! ```json
//! { "version": "1", "n": 2, "q_mats": [[[1,0],[0,0]], [[0,0],[0,1]]],
//!   "lin": [[-1,0],[0,-1]], "offset": [0,0] }
//! { "version": "1", "n": 2, "rank1": { "coef": [[1,1],[1,1]], "rhs": [0.5,0.5] } }
//! { "version": "1", "n": 3, "hammerstein": { "n_basis": 1, "grid": [...], ... } }
//! ```
//!
//! `lin` and `offset` default to zero. For the Hammerstein form `n` is the
//! reduced dimension `3·n_basis`.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error};
use crate::hammerstein::GoursatSpec;
use crate::linalg::{Matrix, Vector};
use crate::qop::{matrix_from_rows, QopProblem, QuadraticOperator};
use crate::quadrature::Quadrature;
use crate::rank1::Rank1Problem;
use crate::solver::{NkTrace, Root};

pub const DOCUMENT_VERSION: &str = "1";

/// Problems that can be read or written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub version: String,
    pub n: usize,
    /// Gallery id the document was exported from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_mats: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lin: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank1: Option<Rank1Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hammerstein: Option<GoursatSpec>,
    /// Quadrature rule for the Hammerstein form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<Quadrature>,
}

/// Data of `x_k² = Σ_i a_ki x_i + b_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rank1Block {
    pub coef: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

/// Validated content of a problem document.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Full(QopProblem),
    Rank1(Rank1Problem),
    Hammerstein(GoursatSpec),
}

impl Problem {
    /// Operator whose classification is reported; the reduced operator for
    /// Hammerstein data.
    pub fn operator(&self, rule: Quadrature) -> crate::error::Result<QuadraticOperator> {
        Ok(match self {
            Problem::Full(p) => p.q().clone(),
            Problem::Rank1(r) => QuadraticOperator::diag_squares(r.dim()),
            Problem::Hammerstein(s) => crate::hammerstein::reduce(s, rule)?.problem.q().clone(),
        })
    }
}

/// Why a document could not be read.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

fn rows_of(m: &Matrix) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl ProblemDocument {
    /// Parses JSON text; syntax and type errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Parses and validates in one step.
    pub fn read(text: &str) -> Result<(Self, Problem), DocumentError> {
        let doc = Self::parse(text)?;
        let problem = doc.problem()?;
        Ok((doc, problem))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Checks the version, that exactly one form is present, and all shapes.
    pub fn problem(&self) -> crate::error::Result<Problem> {
        if self.version != DOCUMENT_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported document version `{}`",
                self.version
            )));
        }
        let forms = [self.q_mats.is_some(), self.rank1.is_some(), self.hammerstein.is_some()];
        if forms.iter().filter(|&&f| f).count() != 1 {
            return Err(Error::InvalidInput(
                "exactly one of `q_mats`, `rank1`, `hammerstein` must be present".into(),
            ));
        }
        if self.q_mats.is_none() && (self.lin.is_some() || self.offset.is_some()) {
            return Err(Error::InvalidInput(
                "`lin` and `offset` belong to the `q_mats` form".into(),
            ));
        }
        if self.quadrature.is_some() && self.hammerstein.is_none() {
            return Err(Error::InvalidInput(
                "`quadrature` belongs to the `hammerstein` form".into(),
            ));
        }
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidInput("`n` must be positive".into()));
        }
        if let Some(q) = &self.q_mats {
            check_dim(n, q.len())?;
            let mats = q
                .iter()
                .map(|m| matrix_from_rows(m, n))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let lin = match &self.lin {
                Some(rows) => matrix_from_rows(rows, n)?,
                None => Matrix::zeros(n, n),
            };
            let offset = match &self.offset {
                Some(v) => {
                    check_dim(n, v.len())?;
                    Vector::from_row_slice(v)
                }
                None => Vector::zeros(n),
            };
            return Ok(Problem::Full(QopProblem::new(
                QuadraticOperator::new(mats)?,
                lin,
                offset,
            )?));
        }
        if let Some(r) = &self.rank1 {
            check_dim(n, r.rhs.len())?;
            check_dim(n, r.coef.len())?;
            return Ok(Problem::Rank1(Rank1Problem::from_rows(&r.coef, &r.rhs)?));
        }
        let spec = self.hammerstein.as_ref().expect("one form present");
        spec.validate()?;
        check_dim(n, 3 * spec.n_basis)?;
        Ok(Problem::Hammerstein(spec.clone()))
    }

    fn empty(n: usize) -> Self {
        Self {
            version: DOCUMENT_VERSION.into(),
            n,
            id: None,
            q_mats: None,
            lin: None,
            offset: None,
            rank1: None,
            hammerstein: None,
            quadrature: None,
        }
    }

    pub fn from_qop(p: &QopProblem) -> Self {
        Self {
            q_mats: Some(p.q().mats().iter().map(rows_of).collect()),
            lin: Some(rows_of(p.lin())),
            offset: Some(p.offset().iter().copied().collect()),
            ..Self::empty(p.dim())
        }
    }

    /// Homogeneous document for an operator alone.
    pub fn from_operator(q: &QuadraticOperator) -> Self {
        Self {
            q_mats: Some(q.mats().iter().map(rows_of).collect()),
            ..Self::empty(q.dim())
        }
    }

    pub fn from_rank1(p: &Rank1Problem) -> Self {
        Self {
            rank1: Some(Rank1Block {
                coef: rows_of(p.coef()),
                rhs: p.rhs().iter().copied().collect(),
            }),
            ..Self::empty(p.dim())
        }
    }

    pub fn from_hammerstein(spec: &GoursatSpec, rule: Option<Quadrature>) -> Self {
        Self {
            hammerstein: Some(spec.clone()),
            quadrature: rule,
            ..Self::empty(3 * spec.n_basis)
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }
}

/// Machine-readable result of a CLI command.
///
/// Wall-clock timing is kept out of the serialized form so that identical
/// inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: CommandEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(default)]
    pub roots: Vec<RootReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starts_run: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even_count_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<TraceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank1: Option<Rank1Section>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hammerstein: Option<HammersteinSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: Option<f64>,
}

impl ReportDocument {
    pub fn new(command: CommandEcho) -> Self {
        Self {
            command,
            classification: None,
            roots: Vec::new(),
            starts_run: None,
            even_count_ok: None,
            traces: Vec::new(),
            rank1: None,
            hammerstein: None,
            warnings: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

/// Subcommand, input path and effective options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub input: String,
    /// `(flag, value)` pairs in a fixed order.
    #[serde(default)]
    pub options: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kind: String,
    pub witness: Option<Vec<f64>>,
    pub margin: f64,
    pub restarts_used: usize,
    pub heuristic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub x: Vec<f64>,
    pub residual: f64,
    pub stable: bool,
    pub jac_min_sv: f64,
}

impl From<&Root> for RootReport {
    fn from(r: &Root) -> Self {
        Self {
            x: r.x.iter().copied().collect(),
            residual: r.residual,
            stable: r.stable,
            jac_min_sv: r.jac_min_sv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub start: Vec<f64>,
    pub outcome: String,
    pub iterates: Vec<Vec<f64>>,
    pub residual_norms: Vec<f64>,
}

impl From<&NkTrace> for TraceReport {
    fn from(t: &NkTrace) -> Self {
        Self {
            start: t.iterates[0].iter().copied().collect(),
            outcome: format!("{:?}", t.outcome),
            iterates: t.iterates.iter().map(|x| x.iter().copied().collect()).collect(),
            residual_norms: t.residual_norms.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank1Section {
    pub certificate: crate::rank1::Rank1Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HammersteinSection {
    pub quadrature: String,
    pub labels: Vec<String>,
    pub residuals: Vec<f64>,
    pub solution_files: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_form_defaults() {
        let (_, p) = ProblemDocument::read(r#"{"version":"1","n":1,"q_mats":[[[2]]]}"#).unwrap();
        let Problem::Full(p) = p else { panic!() };
        assert_eq!(p.lin()[(0, 0)], 0.0);
        assert_eq!(p.offset()[0], 0.0);
    }

    #[test]
    fn parse_error_has_position() {
        match ProblemDocument::parse("{\n  \"version\": \"1\",\n  \"n\": ,\n}") {
            Err(DocumentError::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            ProblemDocument::parse(r#"{"version":"1","n":1,"bogus":1}"#),
            Err(DocumentError::Parse { .. })
        ));
    }

    #[test]
    fn exactly_one_form() {
        let both = r#"{"version":"1","n":1,"q_mats":[[[1]]],"rank1":{"coef":[[1]],"rhs":[1]}}"#;
        assert!(matches!(ProblemDocument::read(both), Err(DocumentError::Invalid(_))));
        let none = r#"{"version":"1","n":1}"#;
        assert!(matches!(ProblemDocument::read(none), Err(DocumentError::Invalid(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let doc = r#"{"version":"1","n":2,"q_mats":[[[1,0],[0,1]]]}"#;
        assert_eq!(
            ProblemDocument::read(doc).unwrap_err(),
            DocumentError::Invalid(Error::Dimension { expected: 2, got: 1 })
        );
        let ragged = r#"{"version":"1","n":2,"q_mats":[[[1,0],[0]],[[1,0],[0,1]]]}"#;
        assert!(ProblemDocument::read(ragged).is_err());
    }

    #[test]
    fn bad_grid_is_rejected() {
        let doc = r#"{"version":"1","n":3,"hammerstein":{"n_basis":1,"grid":[0,1,0.5],
            "a":[[0,0,0]],"b":[[0,0,0]],"c":[[0,0,0]],"d":[[0,0,0]],"e":[[0,0,0]],"f":[0,0,0]}}"#;
        assert_eq!(
            ProblemDocument::read(doc).unwrap_err(),
            DocumentError::Invalid(Error::NonIncreasingGrid(2))
        );
    }

    #[test]
    fn roundtrip_is_lossless() {
        let q = QuadraticOperator::new(vec![Matrix::from_row_slice(1, 1, &[0.1 + 0.2])]).unwrap();
        let p = QopProblem::new(
            q,
            Matrix::from_row_slice(1, 1, &[1.0 / 3.0]),
            Vector::from_row_slice(&[-1e-300]),
        )
        .unwrap();
        let doc = ProblemDocument::from_qop(&p);
        let (back, prob) = ProblemDocument::read(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(prob, Problem::Full(p));
        let r = Rank1Problem::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[0.5, 0.5]).unwrap();
        let (_, prob) = ProblemDocument::read(&ProblemDocument::from_rank1(&r).to_json()).unwrap();
        assert_eq!(prob, Problem::Rank1(r));
    }

    #[test]
    fn report_roundtrip() {
        let mut rep = ReportDocument::new(CommandEcho {
            name: "solve".into(),
            input: "x.json".into(),
            options: vec![("starts".into(), "8".into())],
        });
        rep.roots.push(RootReport {
            x: vec![std::f64::consts::PI, 1.0 / 7.0],
            residual: 1.234_567_890_123_456_7e-17,
            stable: true,
            jac_min_sv: 0.1,
        });
        rep.elapsed_ms = Some(3.0);
        let back = ReportDocument::from_json(&rep.to_json()).unwrap();
        assert_eq!(back.roots, rep.roots);
        assert_eq!(back.elapsed_ms, None);
        assert!(!rep.to_json().contains("elapsed"));
    }
}
