use crate::error::{check_dim, Error, Result};
use crate::linalg::{singular_values, Matrix, Vector};
use crate::qop::QopProblem;

use super::{NkOptions, NkTrace, Outcome, Root};

const DIVERGENCE_NORM: f64 = 1e12;

/// Runs `x ← x − P'(x)⁻¹ P(x)` from `x0`.
///
/// Numeric failures end the run and are recorded in the outcome.
pub fn nk_iterate(p: &QopProblem, x0: &Vector, opts: &NkOptions) -> Result<NkTrace> {
    check_dim(p.dim(), x0.len())?;
    let mut x = x0.clone();
    let mut value = p.eval(&x)?;
    let mut trace = NkTrace {
        iterates: vec![x.clone()],
        residual_norms: vec![value.norm()],
        outcome: Outcome::MaxIterations,
    };
    if !value.norm().is_finite() {
        trace.outcome = Outcome::Diverged;
        return Ok(trace);
    }
    for _ in 0..opts.max_iter {
        if trace.last_residual() <= opts.tol_res {
            trace.outcome = Outcome::Converged;
            return Ok(trace);
        }
        let jac = p.jacobian(&x)?;
        let Some(step) = newton_step(&jac, &value, opts) else {
            trace.outcome = Outcome::SingularJacobian;
            return Ok(trace);
        };
        x -= &step;
        value = p.eval(&x)?;
        let r = value.norm();
        trace.iterates.push(x.clone());
        trace.residual_norms.push(r);
        if !r.is_finite() || !(x.norm() <= DIVERGENCE_NORM) {
            trace.outcome = Outcome::Diverged;
            return Ok(trace);
        }
        if step.norm() <= opts.tol_step {
            trace.outcome = if r <= opts.tol_res {
                Outcome::Converged
            } else {
                Outcome::MaxIterations
            };
            return Ok(trace);
        }
    }
    if trace.last_residual() <= opts.tol_res {
        trace.outcome = Outcome::Converged;
    }
    Ok(trace)
}

fn newton_step(jac: &Matrix, value: &Vector, opts: &NkOptions) -> Option<Vector> {
    let sv = singular_values(jac);
    let hi = sv.first().copied().unwrap_or(0.0);
    let lo = sv.last().copied().unwrap_or(0.0);
    let ill = !(lo > 0.0) || hi / lo > opts.jac_cond_limit;
    if ill {
        if !opts.damping || hi == 0.0 {
            return None;
        }
        let mu = 1e-8 * hi;
        let n = jac.ncols();
        let normal = jac.transpose() * jac + Matrix::identity(n, n) * (mu * mu);
        return normal.cholesky().map(|c| c.solve(&(jac.transpose() * value)));
    }
    jac.clone().lu().solve(value)
}

/// Extra Newton steps after convergence, kept while the residual strictly
/// decreases. Pulls points near a degenerate root down to rounding level
/// before certification.
pub fn polish(p: &QopProblem, x: &Vector, max_steps: usize) -> Vector {
    let mut x = x.clone();
    let Ok(mut r) = p.residual(&x) else { return x };
    for _ in 0..max_steps {
        if r == 0.0 {
            break;
        }
        let (Ok(value), Ok(jac)) = (p.eval(&x), p.jacobian(&x)) else {
            break;
        };
        let Some(step) = jac.lu().solve(&value) else { break };
        let next = &x - step;
        match p.residual(&next) {
            Ok(rn) if rn < r => {
                x = next;
                r = rn;
            }
            _ => break,
        }
    }
    x
}

/// Threshold `n·1e-8·‖J‖` that the smallest singular value of a stable
/// root's Jacobian must exceed.
pub fn stability_threshold(jac: &Matrix) -> f64 {
    let n = jac.nrows() as f64;
    n * 1e-8 * singular_values(jac).first().copied().unwrap_or(0.0)
}

/// Certifies a root: stable when `P'(x)` is safely invertible.
pub fn certify_stability(p: &QopProblem, x: &Vector, opts: &NkOptions) -> Result<Root> {
    let residual = p.residual(x)?;
    if !(residual <= opts.tol_res) {
        return Err(Error::NotARoot { residual });
    }
    let jac = p.jacobian(x)?;
    let sv = singular_values(&jac);
    let jac_min_sv = sv.last().copied().unwrap_or(0.0);
    Ok(Root {
        x: x.clone(),
        residual,
        stable: jac_min_sv > stability_threshold(&jac),
        jac_min_sv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qop::QuadraticOperator;

    fn problem(q: QuadraticOperator, lin: &[f64], offset: &[f64]) -> QopProblem {
        let n = q.dim();
        QopProblem::new(q, Matrix::from_row_slice(n, n, lin), Vector::from_row_slice(offset)).unwrap()
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_row_slice(xs)
    }

    #[test]
    fn squares_equal_one() {
        let p = problem(QuadraticOperator::diag_squares(2), &[0.0; 4], &[-1.0, -1.0]);
        let t = nk_iterate(&p, &v(&[2.0, 3.0]), &NkOptions::default()).unwrap();
        assert_eq!(t.outcome, Outcome::Converged);
        assert!((t.last() - v(&[1.0, 1.0])).norm() < 1e-10);
        assert_eq!(t.iterates.len(), t.residual_norms.len());
    }

    #[test]
    fn singular_start_is_reported() {
        let p = problem(QuadraticOperator::diag_squares(2), &[0.0; 4], &[-1.0, -1.0]);
        let t = nk_iterate(&p, &v(&[0.0, 1.0]), &NkOptions::default()).unwrap();
        assert_eq!(t.outcome, Outcome::SingularJacobian);
        let damped = NkOptions {
            damping: true,
            ..NkOptions::default()
        };
        let t = nk_iterate(&p, &v(&[0.0, 1.0]), &damped).unwrap();
        assert_ne!(t.outcome, Outcome::SingularJacobian);
    }

    #[test]
    fn no_real_root_does_not_converge() {
        let p = problem(QuadraticOperator::diag_squares(1), &[0.0], &[1.0]);
        let t = nk_iterate(&p, &v(&[0.7]), &NkOptions::default()).unwrap();
        assert_ne!(t.outcome, Outcome::Converged);
        assert_eq!(t.iterates.len(), t.residual_norms.len());
    }

    #[test]
    fn dimension_checked() {
        let p = problem(QuadraticOperator::diag_squares(1), &[0.0], &[1.0]);
        assert!(nk_iterate(&p, &v(&[0.0, 1.0]), &NkOptions::default()).is_err());
    }

    #[test]
    fn stability_of_square_vertices() {
        let p = problem(QuadraticOperator::diag_squares(2), &[-1.0, 0.0, 0.0, -1.0], &[0.0, 0.0]);
        let opts = NkOptions::default();
        assert!(certify_stability(&p, &v(&[1.0, 1.0]), &opts).unwrap().stable);
        assert!(matches!(
            certify_stability(&p, &v(&[0.5, 0.5]), &opts),
            Err(Error::NotARoot { .. })
        ));
        let double = problem(QuadraticOperator::diag_squares(1), &[-2.0], &[1.0]);
        assert!(!certify_stability(&double, &v(&[1.0]), &opts).unwrap().stable);
    }
}
