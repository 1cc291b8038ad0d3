//! Quadrature rules on sampled grids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Matrix};

pub const MAX_GAUSS_NODES: usize = 64;

/// Integration rule for inner products of sampled functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Quadrature {
    /// Composite trapezoid rule on an arbitrary increasing grid whose end
    /// points are the domain bounds.
    Trapezoid,
    /// Gauss–Legendre rule; the grid must be exactly its `k` nodes.
    Gauss(usize),
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadrature::Trapezoid => f.write_str("trapezoid"),
            Quadrature::Gauss(k) => write!(f, "gauss({k})"),
        }
    }
}

impl FromStr for Quadrature {
    type Err = Error;

    /// Accepts `trapezoid`, `gauss(k)` and `gauss:k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "trapezoid" {
            return Ok(Quadrature::Trapezoid);
        }
        let inner = s
            .strip_prefix("gauss(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("gauss:"));
        match inner.map(|k| k.trim().parse::<usize>()) {
            Some(Ok(k)) if (1..=MAX_GAUSS_NODES).contains(&k) => Ok(Quadrature::Gauss(k)),
            Some(Ok(k)) => Err(Error::OutOfRange {
                what: "gauss node count",
                value: k as i64,
            }),
            _ => Err(Error::InvalidInput(format!("unknown quadrature `{s}`"))),
        }
    }
}

impl TryFrom<String> for Quadrature {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Quadrature> for String {
    fn from(q: Quadrature) -> Self {
        q.to_string()
    }
}

/// Checks that `grid` has at least two strictly increasing points.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::GridTooCoarse(grid.len()));
    }
    for i in 1..grid.len() {
        if !(grid[i] > grid[i - 1]) {
            return Err(Error::NonIncreasingGrid(i));
        }
    }
    Ok(())
}

/// Nodes and weights of the `k`-point Gauss–Legendre rule on `[lo, hi]`,
/// from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_legendre(k: usize, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(1..=MAX_GAUSS_NODES).contains(&k) {
        return Err(Error::OutOfRange {
            what: "gauss node count",
            value: k as i64,
        });
    }
    let mut jac = Matrix::zeros(k, k);
    for i in 1..k {
        let fi = i as f64;
        let beta = fi / (4.0 * fi * fi - 1.0).sqrt();
        jac[(i, i - 1)] = beta;
        jac[(i - 1, i)] = beta;
    }
    let (vals, vecs) = sym_eigen(&jac);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let nodes = vals.iter().map(|&x| mid + half * x).collect();
    let weights = (0..k).map(|i| 2.0 * vecs[(0, i)].powi(2) * half).collect();
    Ok((nodes, weights))
}

/// Weights `w` with `∫ g ≈ Σ w_i g(grid_i)` for the given rule on
/// `[lo, hi]`.
pub fn weights(grid: &[f64], rule: Quadrature, lo: f64, hi: f64) -> Result<Vec<f64>> {
    validate_grid(grid)?;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("domain [{lo}, {hi}] is empty")));
    }
    let tol = 1e-12 * (hi - lo).max(1.0);
    match rule {
        Quadrature::Trapezoid => {
            let (first, last) = (grid[0], grid[grid.len() - 1]);
            if (first - lo).abs() > tol || (last - hi).abs() > tol {
                return Err(Error::InvalidInput(format!(
                    "trapezoid grid must span the domain [{lo}, {hi}], got [{first}, {last}]"
                )));
            }
            let m = grid.len();
            let mut w = vec![0.0; m];
            for i in 0..m - 1 {
                let h = 0.5 * (grid[i + 1] - grid[i]);
                w[i] += h;
                w[i + 1] += h;
            }
            Ok(w)
        }
        Quadrature::Gauss(k) => {
            let (nodes, w) = gauss_legendre(k, lo, hi)?;
            if grid.len() != k || grid.iter().zip(&nodes).any(|(g, n)| (g - n).abs() > 1e-10 * (hi - lo)) {
                return Err(Error::InvalidInput(format!(
                    "grid does not match the {k} Gauss-Legendre nodes on [{lo}, {hi}]"
                )));
            }
            Ok(w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rules() {
        assert_eq!("trapezoid".parse::<Quadrature>().unwrap(), Quadrature::Trapezoid);
        assert_eq!("gauss(5)".parse::<Quadrature>().unwrap(), Quadrature::Gauss(5));
        assert_eq!("gauss:7".parse::<Quadrature>().unwrap(), Quadrature::Gauss(7));
        assert!("gauss(0)".parse::<Quadrature>().is_err());
        assert!("gauss(65)".parse::<Quadrature>().is_err());
        assert!("simpson".parse::<Quadrature>().is_err());
        assert_eq!(Quadrature::Gauss(3).to_string(), "gauss(3)");
    }

    #[test]
    fn grid_validation() {
        assert_eq!(validate_grid(&[0.0]), Err(Error::GridTooCoarse(1)));
        assert_eq!(validate_grid(&[0.0, 0.5, 0.5]), Err(Error::NonIncreasingGrid(2)));
        assert!(validate_grid(&[0.0, 1.0]).is_ok());
    }

    #[test]
    fn gauss_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(4, 0.0, 1.0).unwrap();
        for p in 0..8 {
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(p)).sum();
            assert!((s - 1.0 / (p as f64 + 1.0)).abs() < 1e-14, "degree {p}");
        }
        let (_, w) = gauss_legendre(64, -1.0, 1.0).unwrap();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn trapezoid_weights() {
        let w = weights(&[0.0, 0.5, 1.0], Quadrature::Trapezoid, 0.0, 1.0).unwrap();
        assert_eq!(w, vec![0.25, 0.5, 0.25]);
        assert!(weights(&[0.0, 0.5], Quadrature::Trapezoid, 0.0, 1.0).is_err());
    }

    #[test]
    fn gauss_requires_matching_grid() {
        let (x, _) = gauss_legendre(3, 0.0, 2.0).unwrap();
        assert!(weights(&x, Quadrature::Gauss(3), 0.0, 2.0).is_ok());
        assert!(weights(&[0.1, 1.0, 1.9], Quadrature::Gauss(3), 0.0, 2.0).is_err());
    }
}
