use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::DEFAULT_SEED;
use crate::error::{check_dim, Result};
use crate::linalg::{lex_cmp, Vector};
use crate::qop::QopProblem;

use super::{
    certify_stability, nk_iterate, polish, solve_2d, solve_homotopy, NkOptions, Outcome, Root, SolveReport,
    MAX_HOMOTOPY_DIM, POLISH_STEPS,
};

/// Axis-aligned sampling box `center ± radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchBox {
    pub center: Vector,
    pub radius: f64,
    pub seed: u64,
}

impl SearchBox {
    pub fn new(center: Vector, radius: f64) -> Self {
        Self {
            center,
            radius,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// `count` points of the additive-recurrence sequence in `[0,1)^d` whose
/// increments are powers of the generalized golden ratio, with a random
/// Cranley–Patterson shift drawn from `seed`.
pub fn low_discrepancy(d: usize, count: usize, seed: u64) -> Vec<Vector> {
    // Unique positive root of x^(d+1) = x + 1.
    let mut phi = 2.0_f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=d).map(|i| phi.powi(-(i as i32)).fract()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
    (0..count)
        .map(|j| Vector::from_iterator(d, (0..d).map(|i| (shift[i] + (j as f64 + 1.0) * alpha[i]).fract())))
        .collect()
}

fn dedup_radius(x: &Vector) -> f64 {
    1e-6 * (1.0 + x.norm())
}

/// Lexicographic order that treats coordinates within polish noise as equal,
/// so that `-1e-17` and `1e-17` do not decide the order.
pub(crate) fn canonical_cmp(a: &Vector, b: &Vector) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if (x - y).abs() <= 1e-6 * (1.0 + x.abs().max(y.abs())) {
            continue;
        }
        return x.total_cmp(y);
    }
    lex_cmp(a, b)
}

/// Sorts roots lexicographically and drops any within the dedup radius
/// `1e-6·(1+‖x‖)` of an earlier one.
pub fn dedup_roots(mut roots: Vec<Root>) -> Vec<Root> {
    roots.sort_by(|a, b| match canonical_cmp(&a.x, &b.x) {
        Ordering::Equal => a.residual.total_cmp(&b.residual),
        other => other,
    });
    let mut kept: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        let dup = kept
            .iter()
            .any(|k| (&k.x - &r.x).norm() <= dedup_radius(&k.x).max(dedup_radius(&r.x)));
        if !dup {
            kept.push(r);
        }
    }
    kept
}

/// Multi-start Newton–Kantorovich enumeration.
///
/// Starts are low-discrepancy points in `bx`; every converged endpoint is
/// certified and the merged list is deduplicated. The result does not depend
/// on thread scheduling.
pub fn enumerate_stable(p: &QopProblem, starts: usize, bx: &SearchBox, opts: &NkOptions) -> Result<SolveReport> {
    let n = p.dim();
    check_dim(n, bx.center.len())?;
    let points = low_discrepancy(n, starts, bx.seed);
    let found: Vec<Option<Root>> = points
        .par_iter()
        .map(|u| {
            let x0 = &bx.center + (u * 2.0 - Vector::from_element(n, 1.0)) * bx.radius;
            let trace = nk_iterate(p, &x0, opts).ok()?;
            if trace.outcome != Outcome::Converged {
                return None;
            }
            certify_stability(p, &polish(p, trace.last(), POLISH_STEPS), opts).ok()
        })
        .collect();
    Ok(SolveReport::new(found.into_iter().flatten().collect(), starts))
}

/// Multi-start enumeration merged with the algebraic solvers: the resultant
/// when `n = 2` and homotopy continuation when `n ≤ MAX_HOMOTOPY_DIM`.
///
/// Sampling alone misses roots whose basins are small, typically far-out
/// roots of nearly degenerate operators.
pub fn solve_all(p: &QopProblem, starts: usize, bx: &SearchBox, opts: &NkOptions) -> Result<SolveReport> {
    let rep = enumerate_stable(p, starts, bx, opts)?;
    let mut roots = rep.roots;
    let n = p.dim();
    if n == 2 {
        if let Ok(r) = solve_2d(p, opts) {
            roots.extend(r.roots);
        }
    }
    if n <= MAX_HOMOTOPY_DIM {
        if let Ok(r) = solve_homotopy(p, bx.seed, opts) {
            roots.extend(r.roots);
        }
    }
    Ok(SolveReport::new(roots, rep.starts_run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::qop::QuadraticOperator;

    #[test]
    fn sequence_in_unit_cube() {
        let pts = low_discrepancy(3, 100, 1);
        assert_eq!(pts.len(), 100);
        for p in &pts {
            assert!(p.iter().all(|&v| (0.0..1.0).contains(&v)));
        }
        assert_eq!(pts, low_discrepancy(3, 100, 1));
        assert_ne!(pts, low_discrepancy(3, 100, 2));
    }

    #[test]
    fn sequence_is_well_spread() {
        // Every cell of a 4x4 grid receives a point.
        let pts = low_discrepancy(2, 64, 9);
        let mut cells = [false; 16];
        for p in &pts {
            let i = (p[0] * 4.0) as usize;
            let j = (p[1] * 4.0) as usize;
            cells[4 * i + j] = true;
        }
        assert!(cells.iter().all(|&c| c));
    }

    #[test]
    fn unit_square_vertices() {
        let p = QopProblem::new(
            QuadraticOperator::diag_squares(2),
            -Matrix::identity(2, 2),
            Vector::zeros(2),
        )
        .unwrap();
        let bx = SearchBox::new(Vector::zeros(2), 4.0);
        let rep = enumerate_stable(&p, 64, &bx, &NkOptions::default()).unwrap();
        let xs: Vec<Vec<f64>> = rep
            .roots
            .iter()
            .map(|r| r.x.iter().map(|v| v.round()).collect())
            .collect();
        assert_eq!(xs, vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
        assert!(rep.roots.iter().all(|r| r.stable));
        assert!(rep.even_count_ok);
        assert_eq!(rep.starts_run, 64);
    }

    #[test]
    fn dedup_merges_close_roots() {
        let mk = |x: f64| Root {
            x: Vector::from_vec(vec![x, 0.0]),
            residual: 0.0,
            stable: true,
            jac_min_sv: 1.0,
        };
        let out = dedup_roots(vec![mk(1.0), mk(1.0 + 1e-9), mk(0.0), mk(2.0)]);
        assert_eq!(out.len(), 3);
        assert_eq!(out[0].x[0], 0.0);
    }
}
