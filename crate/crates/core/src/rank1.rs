//! Rank-one equations `x_k² = Σ_i a_ki x_i + b_k`.
//!
//! When every column of `a` has one sign and `m² + 4β > 0`, with
//! `m = Σ_j min_i |a_ij|` and `β = min_i b_i`, the system has at least two
//! stable solutions. After flipping variables so that `a ≥ 0`, Newton from
//! the constant vector `(α, …, α)` with `α > (M + √(M² + 4b))/2` descends
//! monotonically to the componentwise largest solution.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::qop::{matrix_from_rows, QopProblem, QuadraticOperator};
use crate::solver::{
    certify_stability, default_box, nk_iterate, solve_1d, solve_all, NkOptions, NkTrace, Outcome, Root, SolveReport,
};

/// Data `(a, b)` of `x_k² = Σ_i a_ki x_i + b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Problem {
    coef: Matrix,
    rhs: Vector,
}

impl Rank1Problem {
    pub fn new(coef: Matrix, rhs: Vector) -> Result<Self> {
        let n = rhs.len();
        check_dim(n, coef.nrows())?;
        check_dim(n, coef.ncols())?;
        if n == 0 {
            return Err(Error::InvalidInput("empty rank-one problem".into()));
        }
        Ok(Self { coef, rhs })
    }

    pub fn from_rows(coef: &[Vec<f64>], rhs: &[f64]) -> Result<Self> {
        Self::new(matrix_from_rows(coef, rhs.len())?, Vector::from_row_slice(rhs))
    }

    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    pub fn coef(&self) -> &Matrix {
        &self.coef
    }

    pub fn rhs(&self) -> &Vector {
        &self.rhs
    }

    /// The equivalent `Q(x) + Ax + b = 0` with `Q = (x_1², …, x_n²)`,
    /// `A = −a`, `b = −rhs`.
    pub fn to_qop(&self) -> QopProblem {
        QopProblem::new(QuadraticOperator::diag_squares(self.dim()), -&self.coef, -&self.rhs)
            .expect("dimensions checked on construction")
    }

    /// Whether `x_k² ≤ Σ_i a_ki x_i + b_k + tol` for every `k`.
    pub fn in_region(&self, x: &Vector, tol: f64) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        let lhs = x.map(|v| v * v);
        let rhs = &self.coef * x + &self.rhs;
        Ok(lhs.iter().zip(rhs.iter()).all(|(l, r)| l - r <= tol))
    }

    fn is_normalized(&self) -> bool {
        self.coef.iter().all(|&v| v >= 0.0)
    }
}

/// Evaluation of the two-solution condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank1Certificate {
    pub column_sign_ok: bool,
    pub m: f64,
    pub beta: f64,
    pub condition_value: f64,
    pub holds: bool,
}

fn mixed_column(coef: &Matrix) -> Option<usize> {
    (0..coef.ncols()).find(|&j| {
        let col = coef.column(j);
        col.iter().any(|&v| v > 0.0) && col.iter().any(|&v| v < 0.0)
    })
}

pub fn check_condition(p: &Rank1Problem) -> Rank1Certificate {
    let column_sign_ok = mixed_column(&p.coef).is_none();
    let m: f64 = (0..p.dim())
        .map(|j| p.coef.column(j).iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs())))
        .sum();
    let beta = p.rhs.min();
    let condition_value = m * m + 4.0 * beta;
    Rank1Certificate {
        column_sign_ok,
        m,
        beta,
        condition_value,
        holds: column_sign_ok && condition_value > 0.0,
    }
}

/// Flips variables so that every coefficient is nonnegative.
///
/// Returns the problem in `y = S x` and the diagonal of `S`; all-zero columns
/// keep sign `+1`.
pub fn sign_normalize(p: &Rank1Problem) -> Result<(Rank1Problem, Vector)> {
    if let Some(column) = mixed_column(&p.coef) {
        return Err(Error::MixedSignColumn { column });
    }
    let n = p.dim();
    let signs = Vector::from_iterator(
        n,
        (0..n).map(|j| {
            if p.coef.column(j).iter().any(|&v| v < 0.0) {
                -1.0
            } else {
                1.0
            }
        }),
    );
    let mut coef = p.coef.clone();
    for j in 0..n {
        let s = signs[j];
        coef.column_mut(j).scale_mut(s);
    }
    // `-0.0` entries would otherwise survive the flip.
    coef.apply(|v| *v += 0.0);
    Ok((
        Rank1Problem {
            coef,
            rhs: p.rhs.clone(),
        },
        signs,
    ))
}

/// Constant starting point for [`solve_sup`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartPoint {
    /// `max_i Σ_j a_ij`.
    pub row_sum_max: f64,
    pub b_max: f64,
    pub alpha: f64,
}

impl StartPoint {
    pub fn vector(&self, n: usize) -> Vector {
        Vector::from_element(n, self.alpha)
    }
}

/// `α = (M + √(M² + 4b))/2 · (1 + 1e-3)`; falls back to `M·(1 + 1e-3)` when
/// the radicand is negative and to `1e-3` when that is zero.
pub fn guaranteed_start(p: &Rank1Problem) -> Result<StartPoint> {
    if !p.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let row_sum_max = p.coef.row_iter().map(|r| r.sum()).fold(f64::NEG_INFINITY, f64::max);
    let b_max = p.rhs.max();
    let disc = row_sum_max * row_sum_max + 4.0 * b_max;
    let base = if disc >= 0.0 {
        0.5 * (row_sum_max + disc.sqrt())
    } else {
        row_sum_max
    };
    let alpha = if base > 0.0 { base * (1.0 + 1e-3) } else { 1e-3 };
    Ok(StartPoint {
        row_sum_max,
        b_max,
        alpha,
    })
}

/// The componentwise largest root and how it was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct SupSolution {
    /// Root in the original variables.
    pub root: Root,
    /// Root in sign-normalized variables.
    pub normalized: Vector,
    pub signs: Vector,
    pub start: StartPoint,
    /// Newton iterates in sign-normalized variables.
    pub trace: NkTrace,
}

/// Newton from the guaranteed start on the sign-normalized problem.
pub fn solve_sup(p: &Rank1Problem, opts: &NkOptions) -> Result<SupSolution> {
    let cert = check_condition(p);
    if let Some(column) = mixed_column(&p.coef) {
        return Err(Error::MixedSignColumn { column });
    }
    if !cert.holds {
        return Err(Error::ConditionNotMet {
            value: cert.condition_value,
        });
    }
    let (norm, signs) = sign_normalize(p)?;
    let start = guaranteed_start(&norm)?;
    let qop = norm.to_qop();
    let trace = nk_iterate(&qop, &start.vector(p.dim()), opts)?;
    if trace.outcome != Outcome::Converged {
        return Err(Error::TheoremViolation(format!(
            "iteration from the guaranteed start ended with {:?}",
            trace.outcome
        )));
    }
    let normalized = trace.last().clone();
    let x = normalized.component_mul(&signs);
    let root = certify_stability(&p.to_qop(), &x, opts)?;
    if !root.stable {
        return Err(Error::TheoremViolation(
            "root reached from the guaranteed start is not stable".into(),
        ));
    }
    Ok(SupSolution {
        root,
        normalized,
        signs,
        start,
        trace,
    })
}

/// Combined certificate, enumeration, and supremum root.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Report {
    pub certificate: Rank1Certificate,
    pub report: SolveReport,
    pub sup: Option<SupSolution>,
    /// Index of the supremum root in `report.roots`.
    pub sup_index: Option<usize>,
    /// Set when the certificate holds but fewer than two stable roots were
    /// found, or the supremum iteration failed.
    pub theorem_violation: Option<String>,
}

/// Certificate, supremum root, and all roots found by enumeration (plus the
/// algebraic solvers when `n ≤ 2`).
pub fn solve_rank1(p: &Rank1Problem, starts: usize, opts: &NkOptions) -> Rank1Report {
    let certificate = check_condition(p);
    let qop = p.to_qop();
    let mut roots: Vec<Root> = Vec::new();
    let bx = default_box(&qop);
    let mut starts_run = 0;
    if let Ok(rep) = solve_all(&qop, starts.max(1), &bx, opts) {
        starts_run += rep.starts_run;
        roots.extend(rep.roots);
    }
    if p.dim() == 1 {
        if let Ok(rs) = solve_1d(1.0, -p.coef[(0, 0)], -p.rhs[0]) {
            roots.extend(rs);
        }
    }
    let mut theorem_violation = None;
    let sup = if certificate.holds {
        match solve_sup(p, opts) {
            Ok(s) => {
                roots.push(s.root.clone());
                Some(s)
            }
            Err(e) => {
                theorem_violation = Some(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let report = SolveReport::new(roots, starts_run);
    let sup_index = sup.as_ref().and_then(|s| {
        report
            .roots
            .iter()
            .position(|r| (&r.x - &s.root.x).norm() <= 1e-6 * (1.0 + s.root.x.norm()))
    });
    if certificate.holds && theorem_violation.is_none() && report.stable_count() < 2 {
        theorem_violation = Some(format!(
            "certificate holds but only {} stable root(s) were found",
            report.stable_count()
        ));
    }
    Rank1Report {
        certificate,
        report,
        sup,
        sup_index,
        theorem_violation,
    }
}

/// Whether the componentwise maximum of two members of
/// `E = {x : x_k² ≤ Σ_i a_ki x_i + b_k}` is again a member.
pub fn sup_lattice_check(p: &Rank1Problem, x: &Vector, y: &Vector) -> Result<bool> {
    if !p.is_normalized() {
        return Err(Error::NotNormalized);
    }
    const TOL: f64 = 1e-12;
    for (name, v) in [("x", x), ("y", y)] {
        if !p.in_region(v, TOL)? {
            return Err(Error::PreconditionViolated(format!("{name} is not in the region")));
        }
    }
    let z = x.zip_map(y, f64::max);
    p.in_region(&z, TOL)
}
