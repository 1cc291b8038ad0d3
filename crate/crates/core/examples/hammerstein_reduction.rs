//! Reduces a Hammerstein equation with a degenerate kernel to a quadratic
//! system, solves it, and checks the reconstructed functions.

use eqo::hammerstein::{integral_residual, reduce, solve_hammerstein, GoursatSpec};
use eqo::quadrature::Quadrature;
use eqo::solver::NkOptions;

fn main() -> eqo::error::Result<()> {
    // a = b = c = 1 and f(t) = 0.16 + (t - 1/2): the moments satisfy
    // y² - y + 0.16 = 0, so there are two solutions.
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let one = |_: usize, _: f64| 1.0;
    let zero = |_: usize, _: f64| 0.0;
    let f = |t: f64| 0.16 + (t - 0.5);
    let spec = GoursatSpec::from_fns(1, grid, None, &one, &one, &one, &zero, &zero, &f);
    let rule = Quadrature::Trapezoid;
    let reduced = reduce(&spec, rule)?;
    println!(
        "reduced system in {} unknowns: {:?}",
        reduced.problem.dim(),
        reduced.labels()
    );

    let sol = solve_hammerstein(&spec, rule, 128, &NkOptions::default())?;
    println!("classification: {}", sol.classification.kind);
    if let Some(w) = &sol.warning {
        println!("warning: {w}");
    }
    for (i, (x, r)) in sol.functions.iter().zip(&sol.residuals).enumerate() {
        let check = integral_residual(&spec, rule, x)?;
        println!(
            "solution {i}: x(0) = {:.6}, x(1) = {:.6}, residual {r:.2e} (direct {check:.2e})",
            x[0],
            x[x.len() - 1]
        );
    }
    Ok(())
}
