//! Rank-one systems x_i² = Σ_j a_ij x_j + b_i: certificate, guaranteed start
//! and the componentwise largest root.

use eqo::rank1::{check_condition, guaranteed_start, solve_rank1, Rank1Problem};
use eqo::solver::NkOptions;

fn main() -> eqo::error::Result<()> {
    let p = Rank1Problem::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[0.5, 0.5])?;
    let cert = check_condition(&p);
    println!(
        "certificate: m = {}, beta = {}, m² + 4beta = {}, holds = {}",
        cert.m, cert.beta, cert.condition_value, cert.holds
    );
    let start = guaranteed_start(&p)?;
    println!(
        "start: alpha = {:.6} (M = {}, b_max = {})",
        start.alpha, start.row_sum_max, start.b_max
    );

    let rep = solve_rank1(&p, 128, &NkOptions::default());
    if let Some(sup) = &rep.sup {
        println!("largest root: {:?}", sup.root.x.as_slice());
        println!("expected:     {}", 1.0 + 1.5_f64.sqrt());
        for (k, x) in sup.trace.iterates.iter().enumerate() {
            println!("    {k}: {:?}", x.as_slice());
        }
    }
    println!("all roots ({} stable):", rep.report.stable_count());
    for r in &rep.report.roots {
        println!("    {:?}", r.x.as_slice());
    }

    let mixed = Rank1Problem::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]], &[1.0, 1.0])?;
    println!(
        "mixed signs: {:?}",
        eqo::rank1::sign_normalize(&mixed).err().map(|e| e.to_string())
    );
    Ok(())
}
