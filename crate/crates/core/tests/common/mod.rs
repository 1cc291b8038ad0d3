//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use eqo::classify::{classify, ClassifyOptions, Kind};
use eqo::linalg::{Matrix, Vector};
use eqo::qop::{QopProblem, QuadraticOperator};
use rand::Rng;

pub fn rand_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

pub fn rand_vector<R: Rng>(n: usize, rng: &mut R) -> Vector {
    Vector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

pub fn rand_operator<R: Rng>(n: usize, rng: &mut R) -> QuadraticOperator {
    let mats = (0..n)
        .map(|_| {
            let m = rand_matrix(n, n, rng);
            (&m + m.transpose()) * 0.5
        })
        .collect();
    QuadraticOperator::new(mats).unwrap()
}

/// Random operator made elliptic by a diagonal shift of the first matrix.
pub fn shifted_elliptic<R: Rng>(n: usize, rng: &mut R) -> QuadraticOperator {
    let mut mats = rand_operator(n, rng).mats().to_vec();
    let shift = eqo::linalg::spectral_norm(&mats[0]) + 0.5;
    mats[0] += Matrix::identity(n, n) * shift;
    QuadraticOperator::new(mats).unwrap()
}

/// Rejection-samples random problems whose operator classifies Elliptic.
pub fn random_elliptic_problem<R: Rng>(n: usize, rng: &mut R) -> QopProblem {
    loop {
        let q = rand_operator(n, rng);
        if classify(&q, &ClassifyOptions::default()).kind == Kind::Elliptic {
            let lin = rand_matrix(n, n, rng);
            let offset = rand_vector(n, rng);
            return QopProblem::new(q, lin, offset).unwrap();
        }
    }
}

/// Random matrix with condition number below `limit`.
pub fn well_conditioned<R: Rng>(n: usize, limit: f64, rng: &mut R) -> Matrix {
    loop {
        let m = rand_matrix(n, n, rng);
        if eqo::linalg::cond(&m) < limit {
            return m;
        }
    }
}

/// Real roots of a planar system inside the square `[-r, r]²`, found by
/// subdividing a `400 × 400` grid.
///
/// A cell is discarded when some component provably has no zero on it:
/// `|P_k(c)| > ‖∇P_k(c)‖ ρ + ‖A_k‖ ρ²` with `ρ` the half diagonal. Surviving
/// cells are split until they are smaller than `1e-9`, then clustered.
pub fn grid_oracle_2d(p: &QopProblem, r: f64) -> Vec<Vector> {
    assert_eq!(p.dim(), 2);
    let norms: Vec<f64> = p.q().mats().iter().map(eqo::linalg::spectral_norm).collect();
    let may_contain = |cx: f64, cy: f64, h: f64| -> bool {
        let c = Vector::from_vec(vec![cx, cy]);
        let v = p.eval(&c).unwrap();
        let j = p.jacobian(&c).unwrap();
        let rho = h * std::f64::consts::SQRT_2 / 2.0;
        (0..2).all(|k| v[k].abs() <= j.row(k).norm() * rho + norms[k] * rho * rho + 1e-14 * (1.0 + v[k].abs()))
    };
    let n0 = 400;
    let h0 = 2.0 * r / n0 as f64;
    let mut cells: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..n0 {
        for j in 0..n0 {
            let cx = -r + (i as f64 + 0.5) * h0;
            let cy = -r + (j as f64 + 0.5) * h0;
            if may_contain(cx, cy, h0) {
                cells.push((cx, cy, h0));
            }
        }
    }
    while cells.iter().any(|c| c.2 > 1e-9) {
        let mut next = Vec::new();
        for (cx, cy, h) in cells {
            if h <= 1e-9 {
                next.push((cx, cy, h));
                continue;
            }
            let q = h / 4.0;
            for (dx, dy) in [(-q, -q), (-q, q), (q, -q), (q, q)] {
                if may_contain(cx + dx, cy + dy, h / 2.0) {
                    next.push((cx + dx, cy + dy, h / 2.0));
                }
            }
        }
        assert!(next.len() < 100_000, "oracle cell count exploded");
        cells = next;
    }
    let mut roots: Vec<Vector> = Vec::new();
    for (cx, cy, _) in cells {
        let c = Vector::from_vec(vec![cx, cy]);
        if !roots.iter().any(|r| (r - &c).norm() < 1e-7) {
            roots.push(c);
        }
    }
    roots
}
