//! Step-by-step refinement of an ordered floor system; prints the box list
//! after each equation. The default system is the `n = 2..=4` prefix of
//! `sum floor(n x_i) = 2n - 3` in five variables.
//!
//!     cargo run --example box_solver -- data/systems/a2.json

use mldlab::boxsolver::{boxset_normalize, Equation, FloorSystem, Solver};

fn main() -> mldlab::Result<()> {
    let sys = match std::env::args().nth(1) {
        Some(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| mldlab::Error::Parse(e.to_string()))?;
            serde_json::from_str(&text).map_err(|e| mldlab::Error::Parse(e.to_string()))?
        }
        None => FloorSystem::simple(
            5,
            true,
            (2..=4)
                .map(|n| Equation {
                    n,
                    rhs: 2 * n as i64 - 3,
                })
                .collect(),
        )?,
    };
    let mut solver = Solver::new(&sys);
    while let Some(eq) = solver.step() {
        let bs = solver.current();
        println!("n = {:>2}, rhs = {:>2}: {} boxes", eq.n, eq.rhs, bs.len());
        if bs.len() <= 8 {
            for b in bs.boxes() {
                println!("    {b}");
            }
        }
    }
    let done = boxset_normalize(&solver.finish())?;
    println!("normalized: {} boxes", done.len());
    for b in done.boxes() {
        println!("    {b}");
    }
    Ok(())
}
