//! Multi-start enumeration of stable roots for x1² = x1, x2² = x2 and for a
//! random elliptic system in three unknowns.

use eqo::classify::{classify, ClassifyOptions, Kind};
use eqo::linalg::{Matrix, Vector};
use eqo::qop::{QopProblem, QuadraticOperator};
use eqo::solver::{default_box, enumerate_stable, NkOptions};

fn report(name: &str, p: &QopProblem) -> eqo::error::Result<()> {
    let bx = default_box(p);
    let rep = enumerate_stable(p, 256, &bx, &NkOptions::default())?;
    println!(
        "{name}: {} roots, {} stable, even count {} (box radius {:.2})",
        rep.roots.len(),
        rep.stable_count(),
        rep.even_count_ok,
        bx.radius
    );
    for r in &rep.roots {
        println!("    {:?}  stable {}", r.x.as_slice(), r.stable);
    }
    Ok(())
}

fn main() -> eqo::error::Result<()> {
    let square = QopProblem::new(
        QuadraticOperator::diag_squares(2),
        -Matrix::identity(2, 2),
        Vector::zeros(2),
    )?;
    report("unit square", &square)?;

    // Diagonal squares plus a small symmetric coupling stays elliptic.
    let mut mats = QuadraticOperator::diag_squares(3).mats().to_vec();
    mats[0][(1, 2)] = 0.2;
    mats[0][(2, 1)] = 0.2;
    let q = QuadraticOperator::new(mats)?;
    assert_eq!(classify(&q, &ClassifyOptions::default()).kind, Kind::Elliptic);
    let lin = Matrix::from_row_slice(3, 3, &[-1.0, 0.3, 0.0, 0.0, -1.0, 0.2, 0.1, 0.0, -1.0]);
    let p = QopProblem::new(q, lin, Vector::from_vec(vec![0.05, 0.0, -0.1]))?;
    report("coupled 3-d", &p)
}
