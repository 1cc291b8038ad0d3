//! Samples the ellipticity cone and estimates the rank of an operator.

use eqo::classify::{estimate_rg, is_in_cone, rank_at, DEFAULT_EPS_PD, DEFAULT_RANK_TOL, DEFAULT_SEED};
use eqo::qop::{Functional, QuadraticOperator};

fn main() -> eqo::error::Result<()> {
    // (x1² + x2², x2² + x3², 2x1x2)
    let q = QuadraticOperator::from_rows(&[
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0]],
        vec![vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]],
    ])?;
    for lambda in [[1.0, 1.0, 0.5], [1.0, 1.0, 1.5], [1.0, 0.0, 1.0]] {
        let f = Functional::new(lambda.to_vec());
        let (inside, margin) = is_in_cone(&q, &f, DEFAULT_EPS_PD)?;
        println!("{lambda:?}: inside {inside}, margin {margin:.4}");
    }
    let f = Functional::new(vec![1.0, 0.0, 1.0]);
    println!("rank at (1,0,1): {}", rank_at(&q, &f, DEFAULT_RANK_TOL)?);

    let est = estimate_rg(&q, 64, DEFAULT_RANK_TOL, DEFAULT_SEED)?;
    println!("{}", est.summary());
    Ok(())
}
