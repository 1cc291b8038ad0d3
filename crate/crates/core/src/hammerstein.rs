//! Hammerstein integral equations with degenerate (Goursat) kernels,
//!
//! ```text
//! x(t) = ∫∫ K₁(t,s,u) x(s) x(u) ds du + ∫ K₂(t,s) x(s) ds + f(t),
//! K₁(t,s,u) = Σ_{i,j,k} a_i(s) b_j(u) c_k(t),   K₂(t,s) = Σ_{i,j} d_i(s) e_j(t),
//! ```
//!
//! reduced to a quadratic system in the `3n` moments
//! `x_i = ⟨a_i, x⟩`, `x_{n+j} = ⟨b_j, x⟩`, `x_{2n+k} = ⟨d_k, x⟩`.
//!
//! The sums are read literally: with `C = Σ_k c_k` and `E = Σ_j e_j`, every
//! solution has the form
//! `x(t) = (Σ_i x_i)(Σ_j x_{n+j}) C(t) + (Σ_i x_{2n+i}) E(t) + f(t)`.

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Classification, ClassifyOptions, Kind};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::qop::{QopProblem, QuadraticOperator};
use crate::quadrature::{validate_grid, weights, Quadrature};
use crate::solver::{default_box, solve_all, NkOptions, SolveReport};

/// Sampled kernel data on a grid of the domain `[t_lo, t_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoursatSpec {
    pub n_basis: usize,
    pub grid: Vec<f64>,
    /// Domain bounds; default to the grid end points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_hi: Option<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
    pub e: Vec<Vec<f64>>,
    pub f: Vec<f64>,
}

impl GoursatSpec {
    /// Builds a spec by sampling closures on `grid`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fns(
        n_basis: usize,
        grid: Vec<f64>,
        domain: Option<(f64, f64)>,
        a: &dyn Fn(usize, f64) -> f64,
        b: &dyn Fn(usize, f64) -> f64,
        c: &dyn Fn(usize, f64) -> f64,
        d: &dyn Fn(usize, f64) -> f64,
        e: &dyn Fn(usize, f64) -> f64,
        f: &dyn Fn(f64) -> f64,
    ) -> Self {
        let sample = |g: &dyn Fn(usize, f64) -> f64| -> Vec<Vec<f64>> {
            (0..n_basis).map(|i| grid.iter().map(|&t| g(i, t)).collect()).collect()
        };
        Self {
            n_basis,
            t_lo: domain.map(|d| d.0),
            t_hi: domain.map(|d| d.1),
            a: sample(a),
            b: sample(b),
            c: sample(c),
            d: sample(d),
            e: sample(e),
            f: grid.iter().map(|&t| f(t)).collect(),
            grid,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (
            self.t_lo.unwrap_or_else(|| self.grid.first().copied().unwrap_or(0.0)),
            self.t_hi.unwrap_or_else(|| self.grid.last().copied().unwrap_or(0.0)),
        )
    }

    pub fn validate(&self) -> Result<()> {
        validate_grid(&self.grid)?;
        if self.n_basis == 0 {
            return Err(Error::InvalidInput("n_basis must be positive".into()));
        }
        let m = self.grid.len();
        for family in [&self.a, &self.b, &self.c, &self.d, &self.e] {
            check_dim(self.n_basis, family.len())?;
            for g in family.iter() {
                check_dim(m, g.len())?;
            }
        }
        check_dim(m, self.f.len())
    }

    fn summed(family: &[Vec<f64>], m: usize) -> Vec<f64> {
        let mut out = vec![0.0; m];
        for g in family {
            for (o, v) in out.iter_mut().zip(g) {
                *o += v;
            }
        }
        out
    }

    /// `C(t) = Σ_k c_k(t)`.
    pub fn c_sum(&self) -> Vec<f64> {
        Self::summed(&self.c, self.grid.len())
    }

    /// `E(t) = Σ_j e_j(t)`.
    pub fn e_sum(&self) -> Vec<f64> {
        Self::summed(&self.e, self.grid.len())
    }

    /// Moment functions in coordinate order: `a_1..a_n, b_1..b_n, d_1..d_n`.
    fn moments(&self) -> Vec<&Vec<f64>> {
        self.a.iter().chain(&self.b).chain(&self.d).collect()
    }
}

/// The reduced system in `R^{3n}` plus the quadrature weights used.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedProblem {
    pub problem: QopProblem,
    pub n_basis: usize,
    pub weights: Vec<f64>,
    pub quadrature: Quadrature,
}

impl ReducedProblem {
    /// Coordinate names `a1…, b1…, d1…`.
    pub fn labels(&self) -> Vec<String> {
        ["a", "b", "d"]
            .iter()
            .flat_map(|g| (1..=self.n_basis).map(move |i| format!("{g}{i}")))
            .collect()
    }
}

fn inner(w: &[f64], u: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(u).zip(v).map(|((w, u), v)| w * u * v).sum()
}

/// Reduces the integral equation to `Q(x) + Ax + b = 0` on `R^{3n}`.
///
/// Row `m` reads
/// `⟨φ_m, C⟩ (Σ_i x_i)(Σ_j x_{n+j}) + ⟨φ_m, E⟩ Σ_k x_{2n+k} − x_m + ⟨φ_m, f⟩ = 0`
/// with `φ_m` the `m`-th moment function.
pub fn reduce(spec: &GoursatSpec, rule: Quadrature) -> Result<ReducedProblem> {
    spec.validate()?;
    let (lo, hi) = spec.domain();
    let w = weights(&spec.grid, rule, lo, hi)?;
    let n = spec.n_basis;
    let dim = 3 * n;
    let c_sum = spec.c_sum();
    let e_sum = spec.e_sum();
    let mut mats = Vec::with_capacity(dim);
    let mut lin = -Matrix::identity(dim, dim);
    let mut offset = Vector::zeros(dim);
    for (m, phi) in spec.moments().into_iter().enumerate() {
        let gc = inner(&w, phi, &c_sum);
        let ge = inner(&w, phi, &e_sum);
        let mut a = Matrix::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                a[(i, n + j)] = 0.5 * gc;
                a[(n + j, i)] = 0.5 * gc;
            }
        }
        mats.push(a);
        for k in 0..n {
            lin[(m, 2 * n + k)] += ge;
        }
        offset[m] = inner(&w, phi, &spec.f);
    }
    let problem = QopProblem::new(QuadraticOperator::new(mats)?, lin, offset)?;
    Ok(ReducedProblem {
        problem,
        n_basis: n,
        weights: w,
        quadrature: rule,
    })
}

/// Samples of `x(t)` on the grid for a root of the reduced system.
pub fn reconstruct(spec: &GoursatSpec, reduced: &ReducedProblem, root: &Vector) -> Result<Vec<f64>> {
    let n = reduced.n_basis;
    check_dim(3 * n, root.len())?;
    let sa: f64 = root.rows(0, n).sum();
    let sb: f64 = root.rows(n, n).sum();
    let sd: f64 = root.rows(2 * n, n).sum();
    let c_sum = spec.c_sum();
    let e_sum = spec.e_sum();
    Ok((0..spec.grid.len())
        .map(|t| sa * sb * c_sum[t] + sd * e_sum[t] + spec.f[t])
        .collect())
}

/// Max-abs residual of the discretized integral equation at sampled `x`,
/// evaluated straight from the kernel sums with the rule's weights.
pub fn integral_residual(spec: &GoursatSpec, rule: Quadrature, x: &[f64]) -> Result<f64> {
    spec.validate()?;
    check_dim(spec.grid.len(), x.len())?;
    let (lo, hi) = spec.domain();
    let w = weights(&spec.grid, rule, lo, hi)?;
    let n = spec.n_basis;
    let mut worst = 0.0_f64;
    for t in 0..spec.grid.len() {
        let mut rhs = spec.f[t];
        for i in 0..n {
            let ai = inner(&w, &spec.a[i], x);
            let di = inner(&w, &spec.d[i], x);
            for j in 0..n {
                let bj = inner(&w, &spec.b[j], x);
                for k in 0..n {
                    rhs += ai * bj * spec.c[k][t];
                }
                rhs += di * spec.e[j][t];
            }
        }
        worst = worst.max((x[t] - rhs).abs());
    }
    Ok(worst)
}

/// Roots of the reduced system with their reconstructed functions.
#[derive(Debug, Clone, PartialEq)]
pub struct HammersteinSolution {
    pub reduced: ReducedProblem,
    pub classification: Classification,
    pub report: SolveReport,
    /// Sampled `x(t)` per root, in root order.
    pub functions: Vec<Vec<f64>>,
    /// Integral-equation residual per root.
    pub residuals: Vec<f64>,
    pub warning: Option<String>,
}

/// Reduces, enumerates roots of the reduced system, and reconstructs.
pub fn solve_hammerstein(
    spec: &GoursatSpec,
    rule: Quadrature,
    starts: usize,
    opts: &NkOptions,
) -> Result<HammersteinSolution> {
    let reduced = reduce(spec, rule)?;
    let classification = classify(reduced.problem.q(), &ClassifyOptions::default());
    let warning = (classification.kind != Kind::Elliptic).then(|| {
        format!(
            "reduced operator is {}; root enumeration is not exhaustive",
            classification.kind
        )
    });
    let bx = default_box(&reduced.problem);
    let report = solve_all(&reduced.problem, starts.max(1), &bx, opts)?;
    let mut functions = Vec::with_capacity(report.roots.len());
    let mut residuals = Vec::with_capacity(report.roots.len());
    for r in &report.roots {
        let x = reconstruct(spec, &reduced, &r.x)?;
        residuals.push(integral_residual(spec, rule, &x)?);
        functions.push(x);
    }
    Ok(HammersteinSolution {
        reduced,
        classification,
        report,
        functions,
        residuals,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(m: usize) -> Vec<f64> {
        (0..m).map(|i| i as f64 / (m - 1) as f64).collect()
    }

    fn zero(_: usize, _: f64) -> f64 {
        0.0
    }

    fn one(_: usize, _: f64) -> f64 {
        1.0
    }

    #[test]
    fn zero_kernel_returns_forcing() {
        let f = |t: f64| (3.0 * t).sin();
        let spec = GoursatSpec::from_fns(2, uniform(21), None, &zero, &zero, &zero, &zero, &zero, &f);
        let red = reduce(&spec, Quadrature::Trapezoid).unwrap();
        assert_eq!(red.problem.dim(), 6);
        let sol = solve_hammerstein(&spec, Quadrature::Trapezoid, 8, &NkOptions::default()).unwrap();
        assert_eq!(sol.report.roots.len(), 1);
        assert!(sol.report.roots[0].x.norm() < 1e-12);
        assert_eq!(sol.functions[0], spec.f);
    }

    #[test]
    fn linear_kernel_matches_closed_form() {
        // x(t) = ∫ d(s) x(s) ds · e(t) + f(t) gives x₃ = ⟨d,f⟩ / (1 − ⟨d,e⟩).
        let d = |_: usize, t: f64| t;
        let e = |_: usize, t: f64| 0.5 + t * t;
        let f = |t: f64| 1.0 - t;
        let spec = GoursatSpec::from_fns(1, uniform(41), None, &zero, &zero, &zero, &d, &e, &f);
        let sol = solve_hammerstein(&spec, Quadrature::Trapezoid, 8, &NkOptions::default()).unwrap();
        let w = &sol.reduced.weights;
        let de = inner(w, &spec.d[0], &spec.e[0]);
        let df = inner(w, &spec.d[0], &spec.f);
        let x3 = df / (1.0 - de);
        assert_eq!(sol.report.roots.len(), 1);
        assert!((sol.report.roots[0].x[2] - x3).abs() < 1e-10);
        for (t, xt) in sol.functions[0].iter().enumerate() {
            assert!((xt - (x3 * spec.e[0][t] + spec.f[t])).abs() < 1e-10);
        }
    }

    #[test]
    fn engineered_two_roots() {
        // a = b = c = 1, f = 0.16 + (t − ½): moments satisfy y² − y + 0.16 = 0.
        let f = |t: f64| 0.16 + (t - 0.5);
        let spec = GoursatSpec::from_fns(1, uniform(11), None, &one, &one, &one, &zero, &zero, &f);
        let sol = solve_hammerstein(&spec, Quadrature::Trapezoid, 64, &NkOptions::default()).unwrap();
        assert!(sol.warning.is_some());
        assert_eq!(sol.report.stable_count(), 2);
        let ys: Vec<f64> = sol.report.roots.iter().map(|r| r.x[0]).collect();
        assert!((ys[0] - 0.2).abs() < 1e-10 && (ys[1] - 0.8).abs() < 1e-10);
        for r in &sol.residuals {
            assert!(*r <= 1e-8);
        }
        assert!((sol.functions[0][0] - (0.04 + f(0.0))).abs() < 1e-10);
    }

    #[test]
    fn gauss_reduction_is_exact_on_monomials() {
        let (nodes, _) = crate::quadrature::gauss_legendre(4, 0.0, 1.0).unwrap();
        let a = |_: usize, t: f64| t.powi(3);
        let c = |_: usize, t: f64| t * t;
        let e = |_: usize, t: f64| t;
        let f = |t: f64| 1.0 + t;
        let spec = GoursatSpec::from_fns(1, nodes, Some((0.0, 1.0)), &a, &a, &c, &a, &e, &f);
        let red = reduce(&spec, Quadrature::Gauss(4)).unwrap();
        let p = &red.problem;
        // ⟨t³, t²⟩ = 1/6, ⟨t³, t⟩ = 1/5, ⟨t³, 1 + t⟩ = 1/4 + 1/5.
        assert!((p.q().mats()[0][(0, 1)] - 1.0 / 12.0).abs() < 1e-12);
        assert!((p.lin()[(0, 2)] - 0.2).abs() < 1e-12);
        assert!((p.offset()[0] - 0.45).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_converges_quadratically() {
        let a = |_: usize, t: f64| t.cos();
        let c = |_: usize, t: f64| t.exp();
        let coef = |m: usize| {
            let spec = GoursatSpec::from_fns(1, uniform(m), None, &a, &a, &c, &a, &c, &|t: f64| t);
            reduce(&spec, Quadrature::Trapezoid).unwrap().problem.q().mats()[0][(0, 1)]
        };
        let (c1, c2, c3) = (coef(11), coef(21), coef(41));
        let ratio = (c1 - c2) / (c2 - c3);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn grid_errors() {
        let spec = GoursatSpec::from_fns(1, vec![0.0], None, &zero, &zero, &zero, &zero, &zero, &|_| 0.0);
        assert_eq!(reduce(&spec, Quadrature::Trapezoid), Err(Error::GridTooCoarse(1)));
        let spec = GoursatSpec::from_fns(1, vec![0.0, 1.0, 0.5], None, &zero, &zero, &zero, &zero, &zero, &|_| {
            0.0
        });
        assert_eq!(reduce(&spec, Quadrature::Trapezoid), Err(Error::NonIncreasingGrid(2)));
    }

    #[test]
    fn reconstruct_checks_dimension() {
        let spec = GoursatSpec::from_fns(1, uniform(3), None, &zero, &zero, &zero, &zero, &zero, &|_| 0.0);
        let red = reduce(&spec, Quadrature::Trapezoid).unwrap();
        assert!(reconstruct(&spec, &red, &Vector::zeros(2)).is_err());
    }
}
