use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::qop::{QopProblem, QuadraticOperator};

use super::{certify_stability, nk_iterate, polish, NkOptions, Outcome, Root, SolveReport, POLISH_STEPS};

/// Roots of `a x² + b x + c = 0`, ascending.
///
/// Distinct real roots are stable; a double root (discriminant zero to
/// relative tolerance `1e-12`) is returned once and flagged not stable.
pub fn solve_1d(a: f64, b: f64, c: f64) -> Result<Vec<Root>> {
    if a == 0.0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let disc = b * b - 4.0 * a * c;
    let scale = (b * b).max((4.0 * a * c).abs());
    let make = |x: f64, stable: bool| Root {
        x: Vector::from_element(1, x),
        residual: (a * x * x + b * x + c).abs(),
        stable,
        jac_min_sv: (2.0 * a * x + b).abs(),
    };
    if disc.abs() <= 1e-12 * scale {
        return Ok(vec![make(-b / (2.0 * a), false)]);
    }
    if disc < 0.0 {
        return Ok(Vec::new());
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (mut r1, mut r2) = (q / a, c / q);
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    Ok(vec![make(r1, true), make(r2, true)])
}

/// Polynomial with coefficients in ascending powers.
type Poly = Vec<f64>;

fn poly_mul(a: &[f64], b: &[f64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64], sb: f64) -> Poly {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += sb * y;
    }
    out
}

fn poly_scale(a: &[f64], s: f64) -> Poly {
    a.iter().map(|v| v * s).collect()
}

fn poly_eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

fn trim(mut a: Poly, rel: f64) -> Poly {
    let top = max_abs(&a);
    while let Some(&last) = a.last() {
        if last.abs() <= rel * top {
            a.pop();
        } else {
            break;
        }
    }
    a
}

/// Real roots (and near-real ones with `|Im| ≤ im_tol·(1+|Re|)`) of a
/// polynomial, from the eigenvalues of its companion matrix.
pub fn poly_roots(coeffs: &[f64], im_tol: f64) -> Vec<f64> {
    let p = trim(coeffs.to_vec(), 1e-12);
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let mut comp = Matrix::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -p[i] / lead;
    }
    let mut out: Vec<f64> = comp
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= im_tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// One conic in rotated coordinates `(s, y)` written as
/// `α y² + β(s) y + γ(s)`.
struct Conic {
    alpha: f64,
    beta: Poly,
    gamma: Poly,
}

impl Conic {
    fn y_degree(&self) -> usize {
        if self.alpha != 0.0 {
            2
        } else if !self.beta.is_empty() {
            1
        } else {
            0
        }
    }

    fn y_roots(&self, s: f64) -> Vec<f64> {
        let b = poly_eval(&self.beta, s);
        let c = poly_eval(&self.gamma, s);
        match self.y_degree() {
            2 => {
                let a = self.alpha;
                let disc = b * b - 4.0 * a * c;
                let tol = 1e-8 * (b * b + (4.0 * a * c).abs()).max(1e-300);
                if disc < -tol {
                    Vec::new()
                } else {
                    let r = disc.max(0.0).sqrt();
                    vec![(-b - r) / (2.0 * a), (-b + r) / (2.0 * a)]
                }
            }
            1 if b != 0.0 => vec![-c / b],
            _ => Vec::new(),
        }
    }
}

const TINY: f64 = 1e-13;

fn clean(a: Poly) -> Poly {
    trim(
        a.into_iter().map(|v| if v.abs() <= TINY { 0.0 } else { v }).collect(),
        0.0,
    )
}

// Fixed generic angle; keeps distinct roots from sharing the elimination
// coordinate in axis-aligned problems.
const ROTATION: f64 = 0.417_332_9;

fn rotation() -> Matrix {
    let (s, c) = ROTATION.sin_cos();
    Matrix::from_row_slice(2, 2, &[c, -s, s, c])
}

fn conics(p: &QopProblem, rot: &Matrix) -> Result<[Conic; 2]> {
    let mut out = Vec::with_capacity(2);
    for k in 0..2 {
        let a = rot.transpose() * &p.q().mats()[k] * rot;
        let lin = p.lin().row(k) * rot;
        let raw = [a[(0, 0)], a[(0, 1)], a[(1, 1)], lin[0], lin[1], p.offset()[k]];
        let scale = max_abs(&raw);
        if scale == 0.0 {
            return Err(Error::DegenerateResultant);
        }
        let [a00, a01, a11, l0, l1, g] = raw.map(|v| v / scale);
        let alpha = if a11.abs() <= TINY { 0.0 } else { a11 };
        out.push(Conic {
            alpha,
            beta: clean(vec![l1, 2.0 * a01]),
            gamma: clean(vec![g, l0, a00]),
        });
    }
    let second = out.pop().expect("two conics");
    let first = out.pop().expect("two conics");
    Ok([first, second])
}

/// Resultant of the two conics with respect to `y`, as a polynomial in `s`.
fn resultant(c1: &Conic, c2: &Conic) -> Poly {
    match (c1.y_degree(), c2.y_degree()) {
        (2, 2) => {
            let (a1, a2) = (c1.alpha, c2.alpha);
            let first = poly_add(&poly_scale(&c2.gamma, a1), &c1.gamma, -a2);
            let cross_ab = poly_add(&poly_scale(&c2.beta, a1), &c1.beta, -a2);
            let cross_bg = poly_add(&poly_mul(&c1.beta, &c2.gamma), &poly_mul(&c2.beta, &c1.gamma), -1.0);
            poly_add(&poly_mul(&first, &first), &poly_mul(&cross_ab, &cross_bg), -1.0)
        }
        (2, 1) => quad_linear(c1, c2),
        (1, 2) => quad_linear(c2, c1),
        (1, 1) => poly_add(&poly_mul(&c1.beta, &c2.gamma), &poly_mul(&c2.beta, &c1.gamma), -1.0),
        (0, _) => c1.gamma.clone(),
        (_, 0) => c2.gamma.clone(),
        _ => unreachable!("degrees are at most 2"),
    }
}

fn quad_linear(q: &Conic, l: &Conic) -> Poly {
    // q evaluated at y = −γ_l/β_l, times β_l².
    let g2 = poly_mul(&l.gamma, &l.gamma);
    let bb = poly_mul(&q.beta, &l.beta);
    let t1 = poly_scale(&g2, q.alpha);
    let t2 = poly_mul(&bb, &l.gamma);
    let t3 = poly_mul(&q.gamma, &poly_mul(&l.beta, &l.beta));
    poly_add(&poly_add(&t1, &t2, -1.0), &t3, 1.0)
}

/// All real solutions of a planar problem.
///
/// Eliminates one variable by the resultant of the two conics, finds the
/// real roots of the resulting polynomial (degree at most 4), recovers the
/// other coordinate, and polishes each candidate with Newton–Kantorovich.
pub fn solve_2d(p: &QopProblem, opts: &NkOptions) -> Result<SolveReport> {
    if p.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: p.dim(),
        });
    }
    let rot = rotation();
    let [c1, c2] = conics(p, &rot)?;
    let res = resultant(&c1, &c2);
    if max_abs(&res) <= 1e-11 {
        return Err(Error::DegenerateResultant);
    }
    let both_free = c1.y_degree() == 0 && c2.y_degree() == 0;
    let mut candidates: Vec<Vector> = Vec::new();
    for s in poly_roots(&res, 1e-4) {
        if both_free {
            if poly_eval(&c2.gamma, s).abs() <= 1e-9 {
                // A common root makes a whole line of solutions.
                return Err(Error::DegenerateResultant);
            }
            continue;
        }
        let mut ys = c1.y_roots(s);
        ys.extend(c2.y_roots(s));
        for y in ys {
            candidates.push(&rot * Vector::from_vec(vec![s, y]));
        }
    }
    let mut roots: Vec<Root> = Vec::new();
    for x0 in &candidates {
        let trace = nk_iterate(p, x0, opts)?;
        if trace.outcome == Outcome::Converged {
            roots.push(certify_stability(p, &polish(p, trace.last(), POLISH_STEPS), opts)?);
        } else if let Ok(root) = certify_stability(p, x0, opts) {
            // Tangential intersections: Newton stalls on a singular Jacobian.
            roots.push(root);
        }
    }
    Ok(SolveReport::new(roots, candidates.len()))
}

/// The planar problem
/// with components `a_k x₁² + 2b_k x₁x₂ + c_k x₂² + d_k x₁ + e_k x₂ + g_k`.
pub(crate) fn planar_problem(rows: [[f64; 6]; 2]) -> QopProblem {
    let mats = rows
        .iter()
        .map(|r| Matrix::from_row_slice(2, 2, &[r[0], r[1], r[1], r[2]]))
        .collect();
    let lin = Matrix::from_row_slice(2, 2, &[rows[0][3], rows[0][4], rows[1][3], rows[1][4]]);
    let offset = Vector::from_vec(vec![rows[0][5], rows[1][5]]);
    QopProblem::new(QuadraticOperator::new(mats).expect("2x2 matrices"), lin, offset).expect("consistent dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(rep: &SolveReport) -> Vec<[f64; 2]> {
        rep.roots.iter().map(|r| [r.x[0], r.x[1]]).collect()
    }

    fn close(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(p, q)| (p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9)
    }

    #[test]
    fn scalar_cases() {
        let r = solve_1d(1.0, 0.0, -1.0).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].x[0], r[1].x[0]), (-1.0, 1.0));
        assert!(r.iter().all(|x| x.stable));
        let r = solve_1d(1.0, -2.0, 1.0).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].x[0], 1.0);
        assert!(!r[0].stable);
        assert!(solve_1d(1.0, 0.0, 1.0).unwrap().is_empty());
        assert_eq!(solve_1d(0.0, 1.0, 1.0), Err(Error::ZeroLeadingCoefficient));
    }

    #[test]
    fn polynomial_roots() {
        // (x−1)(x+2)(x²+1)
        let p = poly_mul(&poly_mul(&[-1.0, 1.0], &[2.0, 1.0]), &[1.0, 0.0, 1.0]);
        let r = poly_roots(&p, 1e-8);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parabola_pair() {
        // x₁² = x₂, x₂² = x₁
        let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, -1.0, 0.0, 0.0]]);
        let rep = solve_2d(&p, &NkOptions::default()).unwrap();
        assert!(close(&xs(&rep), &[[0.0, 0.0], [1.0, 1.0]]));
        assert!(rep.roots.iter().all(|r| r.stable));
    }

    #[test]
    fn unit_square_shares_coordinates() {
        let p = planar_problem([[1.0, 0.0, 0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0, -1.0, 0.0]]);
        let rep = solve_2d(&p, &NkOptions::default()).unwrap();
        assert!(close(&xs(&rep), &[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]));
    }

    #[test]
    fn four_roots_with_irrational_coordinates() {
        // x₁² = x₂, x₂² = 4x₂ − 3
        let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, 0.0, -4.0, 3.0]]);
        let rep = solve_2d(&p, &NkOptions::default()).unwrap();
        let r3 = 3f64.sqrt();
        assert!(close(&xs(&rep), &[[-r3, 3.0], [-1.0, 1.0], [1.0, 1.0], [r3, 3.0]]));
    }

    #[test]
    fn disjoint_circles() {
        // x₁² + x₂² = 1 and (x₁ − 3)² + x₂² = 1
        let p = planar_problem([[1.0, 0.0, 1.0, 0.0, 0.0, -1.0], [1.0, 0.0, 1.0, -6.0, 0.0, 8.0]]);
        let rep = solve_2d(&p, &NkOptions::default()).unwrap();
        assert!(rep.roots.is_empty());
        // Brute-force grid confirms no near-intersection.
        let mut best = f64::INFINITY;
        for i in 0..=400 {
            for j in 0..=400 {
                let x = Vector::from_vec(vec![-2.0 + 7.0 * i as f64 / 400.0, -2.0 + 4.0 * j as f64 / 400.0]);
                best = best.min(p.residual(&x).unwrap());
            }
        }
        assert!(best > 0.5);
    }

    #[test]
    fn tangent_circles_give_unstable_root() {
        // x₁² + x₂² = 1 and (x₁ − 2)² + x₂² = 1 touch at (1, 0).
        let p = planar_problem([[1.0, 0.0, 1.0, 0.0, 0.0, -1.0], [1.0, 0.0, 1.0, -4.0, 0.0, 3.0]]);
        let rep = solve_2d(&p, &NkOptions::default()).unwrap();
        assert_eq!(rep.stable_count(), 0);
    }

    #[test]
    fn identical_equations_are_degenerate() {
        let p = planar_problem([[1.0, 0.0, 0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 0.0, -1.0, 0.0, 0.0]]);
        assert_eq!(solve_2d(&p, &NkOptions::default()), Err(Error::DegenerateResultant));
    }

    #[test]
    fn wrong_dimension() {
        let p = QopProblem::homogeneous(QuadraticOperator::diag_squares(3));
        assert!(matches!(
            solve_2d(&p, &NkOptions::default()),
            Err(Error::WrongDimension { .. })
        ));
    }
}
