use crate::classify::{classify, min_eig_weighted, sample_cone_interior, ClassifyOptions, Kind, DEFAULT_EPS_PD};
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, Vector};
use crate::qop::{Functional, QopProblem};

use super::SearchBox;

/// Tolerance of the sampled membership test `f(P(x)) ≤ EN_TOL`.
pub const EN_TOL: f64 = 1e-10;

/// Radius `C` with `‖x‖ ≤ C` for every `x` satisfying `f(P(x)) ≤ 0`.
///
/// With `f` normalized and `α = λ_min(Σ f_k A_k) > 0`,
/// `f(P(x)) ≥ α‖x‖² − ‖A‖‖x‖ − ‖b‖`, which gives
/// `C = (‖A‖ + √(‖A‖² + 4α‖b‖)) / (2α)`.
pub fn ellipsoid_bound(p: &QopProblem, f: &Functional) -> Result<f64> {
    let f = f.normalized()?;
    let alpha = min_eig_weighted(p.q(), &f)?;
    let scale = p.q().max_abs_entry();
    if !(scale > 0.0) || !(alpha / scale > DEFAULT_EPS_PD) {
        return Err(Error::NotInCone { margin: alpha });
    }
    let a = spectral_norm(p.lin());
    let b = p.offset().norm();
    Ok((a + (a * a + 4.0 * alpha * b).sqrt()) / (2.0 * alpha))
}

/// Sampled necessary test for `x ∈ ∩_f E_f`: checks `f(P(x)) ≤ 1e-10` for
/// the classification witness and `cone_samples` further interior
/// functionals. Cannot prove membership in the full intersection.
pub fn en_membership(p: &QopProblem, x: &Vector, cone_samples: usize) -> Result<bool> {
    let cls = classify(p.q(), &ClassifyOptions::default());
    if cls.kind != Kind::Elliptic {
        return Err(Error::NotElliptic { margin: cls.margin });
    }
    let witness = cls.witness.expect("elliptic verdict has a witness");
    let value = p.eval(x)?;
    let mut fs = vec![witness.clone()];
    fs.extend(sample_cone_interior(
        p.q(),
        &witness,
        cone_samples,
        DEFAULT_EPS_PD,
        0xE11,
    )?);
    for f in &fs {
        if f.apply(&value)? > EN_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sampling box centered at the origin.
///
/// For an elliptic operator the radius is twice the largest ellipsoid bound
/// over the witness and 16 interior functionals, so every root lies inside.
/// Otherwise it falls back to `10·(1 + ‖A‖ + √‖b‖)`.
pub fn default_box(p: &QopProblem) -> SearchBox {
    let n = p.dim();
    let fallback = 10.0 * (1.0 + spectral_norm(p.lin()) + p.offset().norm().sqrt());
    let cls = classify(p.q(), &ClassifyOptions::default());
    let radius = match (cls.kind, cls.witness) {
        (Kind::Elliptic, Some(w)) => {
            let mut fs = vec![w.clone()];
            if let Ok(more) = sample_cone_interior(p.q(), &w, 16, DEFAULT_EPS_PD, 0xB0C5) {
                fs.extend(more);
            }
            let c = fs
                .iter()
                .filter_map(|f| ellipsoid_bound(p, f).ok())
                .fold(0.0_f64, f64::max);
            if c > 0.0 {
                2.0 * c
            } else {
                1.0
            }
        }
        _ => fallback,
    };
    SearchBox::new(Vector::zeros(n), radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::qop::QuadraticOperator;

    fn unit_square() -> QopProblem {
        QopProblem::new(
            QuadraticOperator::diag_squares(2),
            -Matrix::identity(2, 2),
            Vector::zeros(2),
        )
        .unwrap()
    }

    #[test]
    fn bound_homogeneous_is_zero() {
        let p = QopProblem::homogeneous(QuadraticOperator::diag_squares(2));
        let f = Functional::new(vec![1.0, 1.0]);
        assert_eq!(ellipsoid_bound(&p, &f).unwrap(), 0.0);
    }

    #[test]
    fn bound_unit_square() {
        let p = unit_square();
        let c = ellipsoid_bound(&p, &Functional::new(vec![1.0, 1.0])).unwrap();
        assert!((c - 2f64.sqrt()).abs() < 1e-12);
        for r in [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]] {
            assert!(Vector::from_row_slice(&r).norm() <= c + 1e-12);
        }
        assert!(matches!(
            ellipsoid_bound(&p, &Functional::new(vec![1.0, 0.0])),
            Err(Error::NotInCone { .. })
        ));
        assert!(matches!(
            ellipsoid_bound(&p, &Functional::new(vec![1.0, -1.0])),
            Err(Error::NotInCone { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let p = unit_square();
        assert!(en_membership(&p, &Vector::from_vec(vec![0.5, 0.5]), 20).unwrap());
        assert!(!en_membership(&p, &Vector::from_vec(vec![2.0, 2.0]), 20).unwrap());
        assert!(en_membership(&p, &Vector::from_vec(vec![1.0, 0.0]), 20).unwrap());
    }

    #[test]
    fn default_box_contains_roots() {
        let bx = default_box(&unit_square());
        assert!(bx.radius >= 2f64.sqrt());
    }
}
