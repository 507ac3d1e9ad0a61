//! Runs verification reports by id (default: the fast ones) and prints a
//! one-line summary per report.
//!
//!     cargo run --release --example verify -- a1 thm31 d213

use mldlab::theorems::{resolve_ids, run};

fn main() -> mldlab::Result<()> {
    let mut ids: Vec<String> = std::env::args().skip(1).collect();
    if ids.is_empty() {
        ids = ["a1", "thm31", "a6", "d213", "lemma62"]
            .map(String::from)
            .to_vec();
    }
    for id in resolve_ids(&ids)? {
        let rep = run(id)?;
        println!("{:<8} {:?} in {} ms", rep.id, rep.status, rep.runtime_ms);
        for d in &rep.discrepancies {
            println!("    {d}");
        }
    }
    Ok(())
}
