//! Quadratic operators `Q(x) = (xᵀA_1x, …, xᵀA_nx)`, the affine-quadratic map
//! `P(x) = Q(x) + Ax + b`, its derivative, and linear functionals acting on
//! the image space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{spectral_norm, symmetrize, Matrix, Vector};

/// A quadratic operator on `R^n`, stored as `n` symmetric `n×n` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticOperator {
    mats: Vec<Matrix>,
}

impl QuadraticOperator {
    /// Builds an operator from `n` square matrices of size `n`, symmetrizing
    /// each one.
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let n = mats.len();
        if n == 0 {
            return Err(Error::InvalidInput("operator needs at least one matrix".into()));
        }
        for m in &mats {
            check_dim(n, m.nrows())?;
            check_dim(n, m.ncols())?;
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("matrix entries must be finite".into()));
            }
        }
        Ok(Self {
            mats: mats.iter().map(symmetrize).collect(),
        })
    }

    /// Builds an operator from nested row-major arrays.
    pub fn from_rows(mats: &[Vec<Vec<f64>>]) -> Result<Self> {
        let n = mats.len();
        let mut out = Vec::with_capacity(n);
        for rows in mats {
            out.push(matrix_from_rows(rows, n)?);
        }
        Self::new(out)
    }

    /// `Q(x) = (x_1², …, x_n²)`.
    pub fn diag_squares(n: usize) -> Self {
        let mats = (0..n)
            .map(|k| {
                let mut m = Matrix::zeros(n, n);
                m[(k, k)] = 1.0;
                m
            })
            .collect();
        Self { mats }
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// Component `k` is `xᵀA_k x`.
    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        Ok(Vector::from_iterator(
            self.dim(),
            self.mats.iter().map(|a| x.dot(&(a * x))),
        ))
    }

    /// Symmetric bilinear operator, component `k` is `xᵀA_k y`.
    pub fn bilinear(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        Ok(Vector::from_iterator(
            self.dim(),
            self.mats.iter().map(|a| x.dot(&(a * y))),
        ))
    }

    /// The weighted matrix `Σ μ_k A_k`.
    pub fn weighted(&self, mu: &Vector) -> Result<Matrix> {
        check_dim(self.dim(), mu.len())?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, &w) in self.mats.iter().zip(mu.iter()) {
            if w != 0.0 {
                m += a * w;
            }
        }
        Ok(m)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.mats
            .iter()
            .flat_map(|m| m.iter())
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            mats: self.mats.iter().map(|m| m * c).collect(),
        }
    }

    /// Upper bound `sqrt(Σ‖A_k‖²)` on `max_{‖x‖=1} ‖Q(x)‖`.
    pub fn norm_bound(&self) -> f64 {
        self.mats.iter().map(|m| spectral_norm(m).powi(2)).sum::<f64>().sqrt()
    }

    /// Sampled lower estimate of `max_{‖x‖=1} ‖Q(x)‖`.
    pub fn norm_estimate(&self, samples: usize, seed: u64) -> f64 {
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0.0_f64;
        for _ in 0..samples {
            let x = random_unit(n, &mut rng);
            let v = self.eval(&x).expect("dimension is consistent").norm();
            best = best.max(v);
        }
        best
    }

    /// The operator `x ↦ S·Q(T x)`.
    pub fn transform(&self, s: &Matrix, t: &Matrix) -> Result<Self> {
        let n = self.dim();
        for m in [s, t] {
            check_dim(n, m.nrows())?;
            check_dim(n, m.ncols())?;
        }
        let mats = (0..n)
            .map(|k| {
                let row = s.row(k).transpose();
                let mixed = self.weighted(&row).expect("dimension is consistent");
                t.transpose() * mixed * t
            })
            .collect();
        Self::new(mats)
    }
}

/// A linear functional `f(y) = Σ λ_k y_k` on the image space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(Vec<f64>);

impl Functional {
    pub fn new(lambda: Vec<f64>) -> Self {
        Self(lambda)
    }

    pub fn from_vector(v: &Vector) -> Self {
        Self(v.iter().copied().collect())
    }

    pub fn lambda(&self) -> &[f64] {
        &self.0
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_column_slice(&self.0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    /// `f(y)`.
    pub fn apply(&self, y: &Vector) -> Result<f64> {
        check_dim(self.dim(), y.len())?;
        Ok(self.0.iter().zip(y.iter()).map(|(a, b)| a * b).sum())
    }

    /// The same functional scaled to unit Euclidean norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroFunctional);
        }
        Ok(Self(self.0.iter().map(|v| v / n).collect()))
    }
}

/// The equation data `P(x) = Q(x) + Ax + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct QopProblem {
    q: QuadraticOperator,
    lin: Matrix,
    offset: Vector,
}

impl QopProblem {
    pub fn new(q: QuadraticOperator, lin: Matrix, offset: Vector) -> Result<Self> {
        let n = q.dim();
        check_dim(n, lin.nrows())?;
        check_dim(n, lin.ncols())?;
        check_dim(n, offset.len())?;
        Ok(Self { q, lin, offset })
    }

    /// The homogeneous equation `Q(x) = 0`.
    pub fn homogeneous(q: QuadraticOperator) -> Self {
        let n = q.dim();
        Self {
            q,
            lin: Matrix::zeros(n, n),
            offset: Vector::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn q(&self) -> &QuadraticOperator {
        &self.q
    }

    pub fn lin(&self) -> &Matrix {
        &self.lin
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    /// `P(x)`.
    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        Ok(self.q.eval(x)? + &self.lin * x + &self.offset)
    }

    /// Derivative `P'(x)`, row `k` equal to `2(A_k x)ᵀ + lin_k`.
    pub fn jacobian(&self, x: &Vector) -> Result<Matrix> {
        let n = self.dim();
        check_dim(n, x.len())?;
        let mut j = self.lin.clone();
        for (k, a) in self.q.mats.iter().enumerate() {
            let ax = a * x;
            for c in 0..n {
                j[(k, c)] += 2.0 * ax[c];
            }
        }
        Ok(j)
    }

    /// `‖P(x)‖`.
    pub fn residual(&self, x: &Vector) -> Result<f64> {
        Ok(self.eval(x)?.norm())
    }
}

/// Memoizes the value and derivative of `P` at the most recent point.
#[derive(Debug)]
pub struct EvalCache<'a> {
    problem: &'a QopProblem,
    point: Option<Vector>,
    value: Option<Vector>,
    jac: Option<Matrix>,
}

impl<'a> EvalCache<'a> {
    pub fn new(problem: &'a QopProblem) -> Self {
        Self {
            problem,
            point: None,
            value: None,
            jac: None,
        }
    }

    fn move_to(&mut self, x: &Vector) {
        if self.point.as_ref() != Some(x) {
            self.point = Some(x.clone());
            self.value = None;
            self.jac = None;
        }
    }

    pub fn value(&mut self, x: &Vector) -> Result<&Vector> {
        self.move_to(x);
        if self.value.is_none() {
            self.value = Some(self.problem.eval(x)?);
        }
        Ok(self.value.as_ref().expect("just filled"))
    }

    pub fn jacobian(&mut self, x: &Vector) -> Result<&Matrix> {
        self.move_to(x);
        if self.jac.is_none() {
            self.jac = Some(self.problem.jacobian(x)?);
        }
        Ok(self.jac.as_ref().expect("just filled"))
    }
}

pub(crate) fn matrix_from_rows(rows: &[Vec<f64>], n: usize) -> Result<Matrix> {
    check_dim(n, rows.len())?;
    let mut m = Matrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        check_dim(n, row.len())?;
        for (j, &v) in row.iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

pub(crate) fn random_unit<R: Rng>(n: usize, rng: &mut R) -> Vector {
    loop {
        let v = Vector::from_iterator(n, (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stein_ulam() -> QuadraticOperator {
        QuadraticOperator::from_rows(&[
            vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]],
            vec![vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 1.0], vec![0.0, 1.0, 0.0]],
            vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 1.0]],
        ])
        .unwrap()
    }

    fn square_problem() -> QopProblem {
        QopProblem::new(
            QuadraticOperator::diag_squares(2),
            -Matrix::identity(2, 2),
            Vector::zeros(2),
        )
        .unwrap()
    }

    #[test]
    fn eval_coordinate_squares() {
        let q = QuadraticOperator::diag_squares(2);
        let y = q.eval(&Vector::from_vec(vec![2.0, 3.0])).unwrap();
        assert_eq!(y.as_slice(), &[4.0, 9.0]);
    }

    #[test]
    fn eval_stein_ulam_at_ones() {
        let y = stein_ulam().eval(&Vector::from_element(3, 1.0)).unwrap();
        assert_eq!(y.as_slice(), &[3.0, 3.0, 3.0]);
    }

    #[test]
    fn eval_zero_is_zero() {
        let y = stein_ulam().eval(&Vector::zeros(3)).unwrap();
        assert_eq!(y, Vector::zeros(3));
    }

    #[test]
    fn dimension_mismatch() {
        let q = QuadraticOperator::diag_squares(2);
        assert_eq!(q.eval(&Vector::zeros(3)), Err(Error::Dimension { expected: 2, got: 3 }));
        assert!(QuadraticOperator::new(vec![Matrix::zeros(2, 2)]).is_err());
    }

    #[test]
    fn symmetrizes_input() {
        let q = QuadraticOperator::new(vec![Matrix::from_row_slice(1, 1, &[2.0])]).unwrap();
        assert_eq!(q.mats()[0][(0, 0)], 2.0);
        let m = Matrix::from_row_slice(2, 2, &[0.0, 2.0, 0.0, 0.0]);
        let q = QuadraticOperator::new(vec![m.clone(), m]).unwrap();
        assert_eq!(q.mats()[0][(0, 1)], 1.0);
        assert_eq!(q.mats()[0][(1, 0)], 1.0);
    }

    #[test]
    fn bilinear_examples() {
        let q = QuadraticOperator::diag_squares(2);
        let e1 = Vector::from_vec(vec![1.0, 0.0]);
        let e2 = Vector::from_vec(vec![0.0, 1.0]);
        assert_eq!(q.bilinear(&e1, &e2).unwrap(), Vector::zeros(2));
        let b = q
            .bilinear(&Vector::from_vec(vec![1.0, 2.0]), &Vector::from_vec(vec![3.0, 4.0]))
            .unwrap();
        assert_eq!(b.as_slice(), &[3.0, 8.0]);
    }

    #[test]
    fn problem_eval_and_jacobian() {
        let p = square_problem();
        let one = Vector::from_element(2, 1.0);
        assert_eq!(p.eval(&one).unwrap(), Vector::zeros(2));
        let half = Vector::from_element(2, 0.5);
        assert_eq!(p.eval(&half).unwrap().as_slice(), &[-0.25, -0.25]);
        assert_eq!(p.jacobian(&one).unwrap(), Matrix::identity(2, 2));
        assert_eq!(p.jacobian(&Vector::zeros(2)).unwrap(), -Matrix::identity(2, 2));
    }

    #[test]
    fn functional_basics() {
        let f = Functional::new(vec![3.0, 4.0]);
        assert_eq!(f.norm(), 5.0);
        assert_eq!(f.apply(&Vector::from_vec(vec![1.0, 1.0])).unwrap(), 7.0);
        assert_eq!(f.normalized().unwrap().lambda(), &[0.6, 0.8]);
        assert_eq!(Functional::new(vec![0.0, 0.0]).normalized(), Err(Error::ZeroFunctional));
    }

    #[test]
    fn cache_matches_fresh_evaluation() {
        let p = square_problem();
        let mut cache = EvalCache::new(&p);
        let x = Vector::from_vec(vec![0.3, -2.0]);
        let v = cache.value(&x).unwrap().clone();
        assert_eq!(v, p.eval(&x).unwrap());
        assert_eq!(cache.jacobian(&x).unwrap(), &p.jacobian(&x).unwrap());
        let y = Vector::from_vec(vec![1.0, 1.0]);
        assert_eq!(cache.value(&y).unwrap(), &Vector::zeros(2));
    }

    #[test]
    fn norm_estimate_below_bound() {
        let q = stein_ulam();
        assert!(q.norm_estimate(500, 1) <= q.norm_bound() + 1e-12);
    }

    #[test]
    fn transform_identity_is_noop() {
        let q = stein_ulam();
        let i = Matrix::identity(3, 3);
        let t = q.transform(&i, &i).unwrap();
        assert_eq!(t, q);
    }
}
