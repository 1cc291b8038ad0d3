//! Solves a planar system algebraically through the resultant and compares
//! with multi-start Newton.

use eqo::linalg::{Matrix, Vector};
use eqo::qop::{QopProblem, QuadraticOperator};
use eqo::solver::{default_box, enumerate_stable, solve_2d, NkOptions};

fn main() -> eqo::error::Result<()> {
    // x1² = x2, x2² = 4x2 - 3: four real intersections.
    let lin = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 0.0, -4.0]);
    let p = QopProblem::new(
        QuadraticOperator::diag_squares(2),
        lin,
        Vector::from_vec(vec![0.0, 3.0]),
    )?;
    let opts = NkOptions::default();

    let algebraic = solve_2d(&p, &opts)?;
    println!("resultant: {} roots", algebraic.roots.len());
    for r in &algebraic.roots {
        println!("    ({:.12}, {:.12})  residual {:.1e}", r.x[0], r.x[1], r.residual);
    }
    let newton = enumerate_stable(&p, 64, &default_box(&p), &opts)?;
    println!("multi-start: {} roots", newton.roots.len());
    let agree = algebraic.roots.len() == newton.roots.len()
        && algebraic
            .roots
            .iter()
            .zip(&newton.roots)
            .all(|(a, b)| (&a.x - &b.x).norm() < 1e-8);
    println!("agreement: {agree}");
    Ok(())
}
