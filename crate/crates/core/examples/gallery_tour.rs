//! Runs every catalog entry and prints its expectation checks.

use eqo::gallery::{list_entries, make_entry, verify};

fn main() -> eqo::error::Result<()> {
    let mut failures = 0;
    for id in list_entries() {
        let entry = make_entry(&id)?;
        let checks = verify(&entry);
        let passed = checks.iter().filter(|c| c.passed).count();
        println!("{id:<24} {passed}/{} checks  ({})", checks.len(), entry.provenance);
        for c in checks.iter().filter(|c| !c.passed) {
            failures += 1;
            println!("    FAILED {}: {}", c.name, c.detail);
        }
        for note in &entry.expected.notes {
            println!("    note: {note}");
        }
    }
    println!("{failures} failed checks");
    Ok(())
}
