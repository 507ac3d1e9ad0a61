//! Compares the exact solver with the brute-force grid search on a small
//! random family of systems.

use mldlab::boxsolver::{brute_oracle, solve, Equation, FloorSystem};
use mldlab::Rational;

// Tiny xorshift so the run is reproducible without extra dependencies.
struct Rng(u64);

impl Rng {
    fn below(&mut self, n: u64) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0 % n
    }
}

fn main() -> mldlab::Result<()> {
    let mut rng = Rng(0x9e37_79b9_7f4a_7c15);
    let max_den = 16;
    let mut mismatches = 0;
    for case in 0..40 {
        let dim = 1 + rng.below(3) as usize;
        // Right-hand sides read off a random point, so every system is solvable.
        let point: Vec<Rational> = (0..dim)
            .map(|_| {
                let q = 2 + rng.below(11) as i64;
                Rational::new(rng.below(q as u64) as i64, q)
            })
            .collect();
        let ordered = rng.below(2) == 0;
        let ns: Vec<u64> = (2..=8).filter(|_| rng.below(2) == 0).collect();
        let eqs: Vec<Equation> = ns
            .iter()
            .map(|&n| Equation {
                n,
                rhs: point.iter().map(|x| x.floor_of_multiple(n as i64)).sum(),
            })
            .collect();
        let sys = FloorSystem::simple(dim, ordered, eqs)?;
        let boxes = solve(&sys);
        let points = brute_oracle(&sys, max_den);
        let uncovered = points.iter().filter(|p| !boxes.contains(p)).count();
        let unsound = boxes
            .boxes()
            .iter()
            .filter(|b| !sys.satisfied_by(&b.midpoint()))
            .count();
        println!(
            "case {case:>2}: dim {dim}, {} eqs, {} boxes, {} grid points, uncovered {uncovered}, unsound {unsound}",
            sys.equations().len(),
            boxes.len(),
            points.len()
        );
        mismatches += uncovered + unsound;
    }
    println!("total mismatches: {mismatches}");
    Ok(())
}
