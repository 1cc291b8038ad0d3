//! Classifies a few operators and prints the witness functional and margin.

use eqo::classify::{classify, classify_2d, ClassifyOptions};
use eqo::qop::QuadraticOperator;

fn main() -> eqo::error::Result<()> {
    let opts = ClassifyOptions::default();

    // Planar operators: (x1², x2²), (x1², x1x2), (x1² - x2², x1x2).
    let planar = [
        (
            "squares",
            vec![
                vec![vec![1.0, 0.0], vec![0.0, 0.0]],
                vec![vec![0.0, 0.0], vec![0.0, 1.0]],
            ],
        ),
        (
            "degenerate",
            vec![
                vec![vec![1.0, 0.0], vec![0.0, 0.0]],
                vec![vec![0.0, 0.5], vec![0.5, 0.0]],
            ],
        ),
        (
            "hyperbolic",
            vec![
                vec![vec![1.0, 0.0], vec![0.0, -1.0]],
                vec![vec![0.0, 0.5], vec![0.5, 0.0]],
            ],
        ),
    ];
    for (name, mats) in planar {
        let q = QuadraticOperator::from_rows(&mats)?;
        let pc = classify_2d(&q, &opts)?;
        println!(
            "{name:<11} {:<10} delta {:>5}  margin {:.3e}  witness {:?}",
            pc.classification.kind.to_string(),
            pc.delta,
            pc.classification.margin,
            pc.classification.witness.as_ref().map(|w| w.lambda().to_vec())
        );
    }

    // (x1² + x3², x2² + x3², 2x1x3 + 2x2x3): elliptic in three variables.
    let q = QuadraticOperator::from_rows(&[
        vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]],
        vec![vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]],
    ])?;
    let c = classify(&q, &opts);
    println!(
        "3-d example: {} (margin {:.3e}, witness {:?})",
        c.kind,
        c.margin,
        c.witness.as_ref().map(|w| w.lambda().to_vec())
    );
    Ok(())
}
