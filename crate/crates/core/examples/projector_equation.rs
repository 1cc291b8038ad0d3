//! Symmetric idempotents X² = X as a quadratic system on the upper triangle.

use eqo::gallery::{projector_decode, projector_encode, projector_problem};
use eqo::linalg::{Matrix, Vector};
use eqo::solver::{certify_stability, default_box, enumerate_stable, NkOptions};

fn main() -> eqo::error::Result<()> {
    let opts = NkOptions::default();
    for k in 1..=3 {
        let p = projector_problem(k)?;
        let rep = enumerate_stable(&p, 256, &default_box(&p), &opts)?;
        println!("k = {k}: {} unknowns, {} stable roots", p.dim(), rep.stable_count());
        for r in rep.stable_roots() {
            let x = projector_decode(k, &r.x)?;
            println!("    trace {:.3}  |X² - X| = {:.1e}", x.trace(), (&x * &x - &x).norm());
        }
    }

    // Rank-one projectors vv' are roots but not stable.
    let p = projector_problem(2)?;
    for t in [0.0_f64, 0.4, 1.1] {
        let v = Vector::from_vec(vec![t.cos(), t.sin()]);
        let x: Matrix = &v * v.transpose();
        let root = certify_stability(&p, &projector_encode(&x), &opts)?;
        println!(
            "rank-one at angle {t}: residual {:.1e}, stable {}",
            root.residual, root.stable
        );
    }
    Ok(())
}
