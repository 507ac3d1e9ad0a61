//! Membership in the nested special sets, then an enumeration of the bar
//! members at the divisibility level.

use mldlab::singularity::{enumerate, in_a, CyclicQuotient, EnumerateOptions, Level};
use mldlab::Rational;

fn main() -> mldlab::Result<()> {
    let cq = CyclicQuotient::new(19, vec![3, 4, 5, 7, 18])?;
    for level in [
        Level::Interior,
        Level::Structured,
        Level::UnitSum,
        Level::Divisible,
    ] {
        let m = in_a(&cq, level, None)?;
        println!(
            "{cq} level {}: member={} bar={}",
            level as u8, m.member, m.bar
        );
        for w in &m.roles {
            if !w.disjuncts.is_empty() {
                println!("    roles {:?} -> {:?}", w.roles, w.disjuncts);
            }
        }
    }

    let opts = EnumerateOptions {
        level: Level::Divisible,
        eps: Some(Rational::new(1, 13)),
        r_min: 1,
        r_max: 51,
        bar: true,
    };
    let found = enumerate(&opts)?;
    println!("\nbar members with mld > 2 - 1/13 and r <= 51:");
    for f in &found {
        println!("    {}  mld {}", f.singularity, f.membership.mld);
    }
    Ok(())
}
