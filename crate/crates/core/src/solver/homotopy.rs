//! Total-degree homotopy continuation.
//!
//! Tracks `H(x, t) = (1 − t)·γ·G(x) + t·P(x)` from the `2^n` roots of
//! `G(x)_i = x_i² − 1` at `t = 0` to `t = 1` in complex arithmetic. For a
//! random unit `γ` every isolated root of `P` is the end point of exactly one
//! path with probability one, so nonsingular real roots are not missed the
//! way multi-start sampling can miss roots with small basins.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::newton::{certify_stability, polish};
use super::{NkOptions, Root, SolveReport, POLISH_STEPS};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::qop::QopProblem;

type C = Complex<f64>;
type CVec = DVector<C>;
type CMat = DMatrix<C>;

/// Largest dimension handled; the path count is `2^n`.
pub const MAX_HOMOTOPY_DIM: usize = 10;

const MAX_STEP: f64 = 0.05;
const MIN_STEP: f64 = 1e-10;
const MAX_NORM: f64 = 1e9;
const MAX_STEPS: usize = 20_000;

struct Tracker<'a> {
    p: &'a QopProblem,
    mats: Vec<CMat>,
    lin: CMat,
    offset: CVec,
    gamma: C,
}

impl<'a> Tracker<'a> {
    fn new(p: &'a QopProblem, gamma: C) -> Self {
        let cm = |m: &crate::linalg::Matrix| m.map(|v| C::new(v, 0.0));
        Self {
            p,
            mats: p.q().mats().iter().map(cm).collect(),
            lin: cm(p.lin()),
            offset: p.offset().map(|v| C::new(v, 0.0)),
            gamma,
        }
    }

    fn target(&self, x: &CVec) -> CVec {
        let mut v = &self.lin * x + &self.offset;
        for (k, a) in self.mats.iter().enumerate() {
            v[k] += x.dot(&(a * x));
        }
        v
    }

    fn target_jac(&self, x: &CVec) -> CMat {
        let mut j = self.lin.clone();
        for (k, a) in self.mats.iter().enumerate() {
            let row = (a * x) * C::new(2.0, 0.0);
            for c in 0..x.len() {
                j[(k, c)] += row[c];
            }
        }
        j
    }

    fn start(&self, x: &CVec) -> CVec {
        x.map(|v| v * v - C::new(1.0, 0.0))
    }

    fn h(&self, x: &CVec, t: f64) -> CVec {
        self.start(x) * (self.gamma * (1.0 - t)) + self.target(x) * C::new(t, 0.0)
    }

    fn hx(&self, x: &CVec, t: f64) -> CMat {
        let mut j = self.target_jac(x) * C::new(t, 0.0);
        let g = self.gamma * (1.0 - t) * 2.0;
        for i in 0..x.len() {
            j[(i, i)] += g * x[i];
        }
        j
    }

    /// `dx/dt = −H_x⁻¹ H_t`.
    fn velocity(&self, x: &CVec, t: f64) -> Option<CVec> {
        let ht = self.target(x) - self.start(x) * self.gamma;
        self.hx(x, t).lu().solve(&(-ht))
    }

    /// Newton on `H(·, t)`; accepts when the steps contract quickly.
    fn correct(&self, x: &CVec, t: f64) -> Option<CVec> {
        let mut x = x.clone();
        let mut prev = f64::INFINITY;
        for _ in 0..4 {
            let dx = self.hx(&x, t).lu().solve(&(-self.h(&x, t)))?;
            let size = dx.norm();
            x += &dx;
            if size <= 1e-11 * (1.0 + x.norm()) {
                return Some(x);
            }
            if size > 0.25 * prev {
                return None;
            }
            prev = size;
        }
        None
    }

    fn rk4(&self, x: &CVec, t: f64, dt: f64) -> Option<CVec> {
        let k1 = self.velocity(x, t)?;
        let k2 = self.velocity(&(x + &k1 * C::new(dt / 2.0, 0.0)), t + dt / 2.0)?;
        let k3 = self.velocity(&(x + &k2 * C::new(dt / 2.0, 0.0)), t + dt / 2.0)?;
        let k4 = self.velocity(&(x + &k3 * C::new(dt, 0.0)), t + dt)?;
        Some(x + (k1 + k2 * C::new(2.0, 0.0) + k3 * C::new(2.0, 0.0) + k4) * C::new(dt / 6.0, 0.0))
    }

    /// End point at `t = 1`, or `None` for paths that diverge or stall.
    fn track(&self, x0: CVec) -> Option<CVec> {
        let mut x = x0;
        let mut t = 0.0;
        let mut dt = MAX_STEP / 4.0;
        let mut streak = 0;
        for _ in 0..MAX_STEPS {
            if t >= 1.0 {
                return Some(x);
            }
            let step = dt.min(1.0 - t);
            let next = self
                .rk4(&x, t, step)
                .and_then(|guess| self.correct(&guess, t + step))
                .filter(|y| (y - &x).norm() <= 0.5 * (1.0 + x.norm()).max(10.0 * step * (1.0 + x.norm())));
            match next {
                Some(y) => {
                    x = y;
                    t += step;
                    streak += 1;
                    if streak >= 3 {
                        dt = (dt * 2.0).min(MAX_STEP);
                        streak = 0;
                    }
                    if x.norm() > MAX_NORM {
                        return None;
                    }
                }
                None => {
                    dt *= 0.5;
                    streak = 0;
                    if dt < MIN_STEP {
                        return None;
                    }
                }
            }
        }
        None
    }

    /// Real root near a complex end point, certified on the real problem.
    fn real_root(&self, z: &CVec, opts: &NkOptions) -> Option<Root> {
        let scale = 1.0 + z.map(|v| v.re).norm();
        if z.iter().any(|v| v.im.abs() > 1e-6 * scale) {
            return None;
        }
        let x = Vector::from_iterator(z.len(), z.iter().map(|v| v.re));
        certify_stability(self.p, &polish(self.p, &x, POLISH_STEPS), opts).ok()
    }
}

/// Real roots of `P` from total-degree homotopy continuation.
///
/// Deterministic for a fixed `seed`. Nonsingular roots are found with
/// probability one; singular roots may be missed or reported unstable.
pub fn solve_homotopy(p: &QopProblem, seed: u64, opts: &NkOptions) -> Result<SolveReport> {
    let n = p.dim();
    if n > MAX_HOMOTOPY_DIM {
        return Err(Error::OutOfRange {
            what: "homotopy dimension",
            value: n as i64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let tracker = Tracker::new(p, C::from_polar(1.0, angle));
    let paths = 1usize << n;
    let roots: Vec<Option<Root>> = (0..paths)
        .into_par_iter()
        .map(|mask| {
            let x0 = CVec::from_fn(n, |i, _| C::new(if mask >> i & 1 == 1 { -1.0 } else { 1.0 }, 0.0));
            let end = tracker.track(x0)?;
            tracker.real_root(&end, opts)
        })
        .collect();
    Ok(SolveReport::new(roots.into_iter().flatten().collect(), paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::qop::QuadraticOperator;

    fn diag_problem(lin: &[f64], offset: &[f64]) -> QopProblem {
        let n = offset.len();
        QopProblem::new(
            QuadraticOperator::diag_squares(n),
            Matrix::from_row_slice(n, n, lin),
            Vector::from_row_slice(offset),
        )
        .unwrap()
    }

    #[test]
    fn unit_square_vertices() {
        let p = diag_problem(&[-1.0, 0.0, 0.0, -1.0], &[0.0, 0.0]);
        let rep = solve_homotopy(&p, 1, &NkOptions::default()).unwrap();
        assert_eq!(rep.stable_count(), 4);
        assert_eq!(rep.starts_run, 4);
    }

    #[test]
    fn complex_roots_are_dropped() {
        // x1² = x2, x2² = x1 has two real and two complex roots.
        let p = diag_problem(&[0.0, -1.0, -1.0, 0.0], &[0.0, 0.0]);
        let rep = solve_homotopy(&p, 2, &NkOptions::default()).unwrap();
        let xs: Vec<Vec<f64>> = rep.roots.iter().map(|r| r.x.iter().copied().collect()).collect();
        assert_eq!(rep.roots.len(), 2, "{xs:?}");
        assert!(rep.roots.iter().all(|r| r.stable));
    }

    #[test]
    fn cube_in_three_dimensions() {
        let p = diag_problem(&[-1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0], &[0.0, 0.0, 0.0]);
        let rep = solve_homotopy(&p, 3, &NkOptions::default()).unwrap();
        assert_eq!(rep.stable_count(), 8);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = diag_problem(&[0.0, -1.0, 0.0, -4.0], &[0.0, 3.0]);
        let a = solve_homotopy(&p, 9, &NkOptions::default()).unwrap();
        let b = solve_homotopy(&p, 9, &NkOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stable_count(), 4);
    }

    #[test]
    fn rejects_large_dimension() {
        let p = QopProblem::homogeneous(QuadraticOperator::diag_squares(MAX_HOMOTOPY_DIM + 1));
        assert!(matches!(
            solve_homotopy(&p, 0, &NkOptions::default()),
            Err(Error::OutOfRange { .. })
        ));
    }
}
