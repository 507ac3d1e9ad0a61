//! Exhaustive sweep of isolated 3-fold quotients for mld values strictly
//! between 12/13 and 1.
//!
//!     cargo run --release --example gap_sweep -- 120

use mldlab::theorems::gap_threefold;

fn main() -> mldlab::Result<()> {
    let r_max = std::env::args()
        .nth(1)
        .map_or(60, |s| s.parse().expect("r_max"));
    let rep = gap_threefold(r_max)?;
    println!("{:?}", rep.status);
    println!(
        "{}",
        serde_json::to_string_pretty(&rep.actual).expect("json")
    );
    Ok(())
}
