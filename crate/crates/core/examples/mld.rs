//! Minimal log discrepancy of a few cyclic quotients, with the minimising
//! group elements and the reduced representative.
//!
//!     cargo run --example mld -- 13 3,4,5

use mldlab::singularity::{mld, reduce, CyclicQuotient};

fn main() -> mldlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(u64, Vec<u64>)> = if args.len() == 2 {
        let w = args[1]
            .split(',')
            .map(|s| s.trim().parse().expect("weight"))
            .collect();
        vec![(args[0].parse().expect("order"), w)]
    } else {
        vec![
            (13, vec![3, 4, 5]),
            (19, vec![3, 4, 5, 7, 18]),
            (17, vec![2, 3, 5, 7, 16]),
            (5, vec![1, 2, 3]),
        ]
    };
    for (r, w) in cases {
        let cq = CyclicQuotient::new(r, w)?;
        let m = mld(&cq);
        println!("{cq}: mld = {}  (j = {:?})", m.value, m.witnesses);
        let red = reduce(&cq);
        if red != cq {
            println!("    attained at j = 1 by {red}");
        }
    }
    Ok(())
}
