//! Membership of 4-weight singularities `1/r(a_1, .., a_4, -e)` with a single
//! exceptional index.

use mldlab::singularity::in_b;

fn main() {
    let cases: [(u64, [i64; 4], i64); 4] = [
        (14, [1, 9, 10, 11], 2),
        (17, [1, 12, 14, 15], 7),
        (19, [1, 12, 15, 16], 5),
        (14, [1, 2, 3, 4], 1),
    ];
    for (r, w, e) in cases {
        match in_b(r, w, e) {
            Some(m) => println!(
                "1/{r}({w:?}, -{e}): k0 = {}, bar = {}, witnesses {:?}",
                m.k0, m.is_bar, m.witnesses
            ),
            None => println!("1/{r}({w:?}, -{e}): not a member"),
        }
    }
}
