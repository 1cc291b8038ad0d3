//! Root finding for `Q(x) + Ax + b = 0`.
//!
//! - [`nk_iterate`]: the Newton–Kantorovich iteration from one start.
//! - [`certify_stability`]: stability via invertibility of `P'(x)`.
//! - [`enumerate_stable`]: multi-start enumeration with deduplication.
//! - [`ellipsoid_bound`], [`en_membership`]: a priori enclosures.
//! - [`solve_1d`], [`solve_2d`]: algebraic solvers for `n ≤ 2`.
//! - [`solve_homotopy`]: total-degree continuation for `n ≤ 10`.
//! - [`solve_all`]: multi-start merged with the algebraic solvers.

mod bounds;
mod homotopy;
mod lowdim;
mod multistart;
mod newton;

pub use bounds::{default_box, ellipsoid_bound, en_membership, EN_TOL};
pub use homotopy::{solve_homotopy, MAX_HOMOTOPY_DIM};
pub(crate) use lowdim::planar_problem;
pub use lowdim::{poly_roots, solve_1d, solve_2d};
pub use multistart::{dedup_roots, enumerate_stable, low_discrepancy, solve_all, SearchBox};
pub use newton::{certify_stability, nk_iterate, polish, stability_threshold};

use serde::{Deserialize, Serialize};

use crate::linalg::Vector;

/// Iteration controls.
#[derive(Debug, Clone, PartialEq)]
pub struct NkOptions {
    pub tol_res: f64,
    pub tol_step: f64,
    pub max_iter: usize,
    pub jac_cond_limit: f64,
    /// Tikhonov damping `μI` with `μ = 1e-8·‖J‖` when the Jacobian is
    /// ill-conditioned. Exploration only; off by default.
    pub damping: bool,
}

/// Maximum number of extra steps taken by [`polish`] before certification.
pub const POLISH_STEPS: usize = 30;

impl Default for NkOptions {
    fn default() -> Self {
        Self {
            tol_res: 1e-10,
            tol_step: 1e-12,
            max_iter: 100,
            jac_cond_limit: 1e12,
            damping: false,
        }
    }
}

/// How an iteration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Converged,
    SingularJacobian,
    MaxIterations,
    Diverged,
}

/// Iterates and residual norms of one run; both lists have equal length and
/// start with the initial point.
#[derive(Debug, Clone, PartialEq)]
pub struct NkTrace {
    pub iterates: Vec<Vector>,
    pub residual_norms: Vec<f64>,
    pub outcome: Outcome,
}

impl NkTrace {
    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trace holds the start point")
    }

    pub fn last_residual(&self) -> f64 {
        *self.residual_norms.last().expect("trace holds the start point")
    }
}

/// A certified root.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub x: Vector,
    pub residual: f64,
    pub stable: bool,
    /// Smallest singular value of `P'(x)`.
    pub jac_min_sv: f64,
}

/// Deduplicated roots, sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub roots: Vec<Root>,
    pub starts_run: usize,
    /// Whether the number of stable roots is even.
    pub even_count_ok: bool,
}

impl SolveReport {
    pub fn new(roots: Vec<Root>, starts_run: usize) -> Self {
        let roots = dedup_roots(roots);
        let stable = roots.iter().filter(|r| r.stable).count();
        Self {
            roots,
            starts_run,
            even_count_ok: stable % 2 == 0,
        }
    }

    pub fn stable_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.stable)
    }

    pub fn stable_count(&self) -> usize {
        self.stable_roots().count()
    }
}
