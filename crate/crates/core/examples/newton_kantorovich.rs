//! Follows Newton iterations on x1² = x2, x2² = 4x2 - 3 from a few starts.

use eqo::linalg::Vector;
use eqo::qop::{QopProblem, QuadraticOperator};
use eqo::solver::{certify_stability, nk_iterate, NkOptions};

fn main() -> eqo::error::Result<()> {
    let q = QuadraticOperator::diag_squares(2);
    let lin = eqo::linalg::Matrix::from_row_slice(2, 2, &[0.0, -1.0, 0.0, -4.0]);
    let p = QopProblem::new(q, lin, Vector::from_vec(vec![0.0, 3.0]))?;
    let opts = NkOptions::default();

    for start in [[2.0, 4.0], [0.5, 0.5], [-3.0, 5.0], [0.0, 2.0]] {
        let trace = nk_iterate(&p, &Vector::from_row_slice(&start), &opts)?;
        println!(
            "start {start:?}: {:?} after {} steps",
            trace.outcome,
            trace.iterates.len() - 1
        );
        for (x, r) in trace.iterates.iter().zip(&trace.residual_norms) {
            println!("    ({:>10.6}, {:>10.6})  residual {r:.3e}", x[0], x[1]);
        }
        if let Ok(root) = certify_stability(&p, trace.last(), &opts) {
            println!(
                "    stable: {}  (min singular value {:.3e})",
                root.stable, root.jac_min_sv
            );
        }
    }
    Ok(())
}
