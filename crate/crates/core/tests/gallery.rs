//! Every catalog expectation passes under default options.

use eqo::gallery::{list_entries, make_entry, verify, GalleryProblem};
use eqo::solver::{default_box, enumerate_stable, solve_2d, NkOptions};

#[test]
fn every_expectation_passes() {
    let mut failures = Vec::new();
    for id in list_entries() {
        let entry = make_entry(&id).unwrap();
        for c in verify(&entry) {
            if !c.passed {
                failures.push(format!("{id} / {}: {}", c.name, c.detail));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn planar_solvers_agree_on_stable_roots() {
    let opts = NkOptions::default();
    for id in list_entries() {
        let p = match make_entry(&id).unwrap().problem {
            GalleryProblem::Equation(p) => p,
            GalleryProblem::Rank1(r) => r.to_qop(),
            GalleryProblem::Operator(_) => continue,
        };
        if p.dim() != 2 {
            continue;
        }
        let a: Vec<_> = solve_2d(&p, &opts)
            .unwrap()
            .stable_roots()
            .map(|r| r.x.clone())
            .collect();
        let rep = enumerate_stable(&p, 256, &default_box(&p), &opts).unwrap();
        let b: Vec<_> = rep.stable_roots().map(|r| r.x.clone()).collect();
        assert_eq!(a.len(), b.len(), "{id}");
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() <= 1e-8, "{id}: {x:?} vs {y:?}");
        }
    }
}
