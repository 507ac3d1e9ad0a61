//! Membership in the family of singularities `1/r(a_1, a_2, a_3, a_4, -e)`
//! with a single exceptional index `k0`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, residue};

/// Divisibility condition that fired for a [`BRoleWitness`]; positions index
/// the four weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BDisjunct {
    /// `r | a1 + a2 - e`
    TwoUnitsMinusE { a1: usize, a2: usize },
    /// `r | 2 a4 - e`
    DoubledPairedMinusE,
    /// `r | 2 a1 - e` and `gcd(e, r) <= 2`
    DoubledUnitMinusE { a1: usize },
}

/// One choice of the `a_4` slot satisfying the gcd and divisibility bullets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BRoleWitness {
    pub paired_slot: usize,
    pub disjuncts: Vec<BDisjunct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMembership {
    pub r: u64,
    /// Weights reduced into `[0, r)`.
    pub weights: [u64; 4],
    /// `e` reduced into `[0, r)`.
    pub e: u64,
    pub k0: u64,
    /// `gcd(k0, r) = 1`.
    pub is_bar: bool,
    pub witnesses: Vec<BRoleWitness>,
}

/// `r * (sum_i {k a_i / r} - {k e / r})`.
fn scaled_excess(k: u64, r: u64, a: &[u64; 4], e: u64) -> i64 {
    let s: u64 = a.iter().map(|&x| (k * x) % r).sum();
    s as i64 - ((k * e) % r) as i64
}

/// Returns the membership record when every defining bullet holds.
///
/// The exceptional index is found by scanning all `k in [1, r - 1]`: the
/// bullets hold exactly when a single `k0` has excess below 1, that excess is
/// `k0 / r`, and `r` does not divide `k0 e`.
pub fn in_b(r: u64, weights: [i64; 4], e: i64) -> Option<BMembership> {
    if r < 2 {
        return None;
    }
    let a = weights.map(|w| residue(w, r));
    let e = residue(e, r);
    let ri = r as i64;

    let mut low = (1..r).filter(|&k| scaled_excess(k, r, &a, e) < ri);
    let k0 = low.next()?;
    if low.next().is_some() {
        return None;
    }
    if scaled_excess(k0, r, &a, e) != k0 as i64 || (k0 * e).is_multiple_of(r) {
        return None;
    }

    let total = residue(a.iter().sum::<u64>() as i64 - e as i64, r);
    if gcd(total, r) != 1 {
        return None;
    }
    let ge = gcd(e, r);
    let witnesses: Vec<BRoleWitness> = (0..4)
        .filter_map(|p| {
            let units: Vec<usize> = (0..4).filter(|&i| i != p).collect();
            if units.iter().any(|&i| gcd(a[i], r) != 1) || gcd(a[p], r) != ge {
                return None;
            }
            let div = |x: u64| (x + r - e).is_multiple_of(r);
            let mut disjuncts = Vec::new();
            for (x, &i) in units.iter().enumerate() {
                for &k in &units[x + 1..] {
                    if div(a[i] + a[k]) {
                        disjuncts.push(BDisjunct::TwoUnitsMinusE { a1: i, a2: k });
                    }
                }
            }
            if div(2 * a[p]) {
                disjuncts.push(BDisjunct::DoubledPairedMinusE);
            }
            if ge <= 2 {
                for &i in &units {
                    if div(2 * a[i]) {
                        disjuncts.push(BDisjunct::DoubledUnitMinusE { a1: i });
                    }
                }
            }
            (!disjuncts.is_empty()).then_some(BRoleWitness {
                paired_slot: p,
                disjuncts,
            })
        })
        .collect();
    if witnesses.is_empty() {
        return None;
    }
    Some(BMembership {
        r,
        weights: a,
        e,
        k0,
        is_bar: gcd(k0, r) == 1,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    #[test]
    fn exceptional_index_examples() {
        let m = in_b(19, [1, 12, 15, 16], 5).unwrap();
        assert_eq!((m.k0, m.is_bar), (18, true));
        // sum {18 a_i / 19} - {90 / 19} = (18 + 7 + 4 + 3 - 14) / 19.
        let direct: Rational = [1i64, 12, 15, 16]
            .iter()
            .map(|&x| Rational::new(18 * x, 19).frac_part())
            .sum::<Rational>()
            - Rational::new(90, 19).frac_part();
        assert_eq!(direct, Rational::new(18, 19));

        let m = in_b(17, [1, 10, 12, 14], 2).unwrap();
        assert_eq!((m.k0, m.is_bar), (16, true));
        let m = in_b(14, [1, 9, 11, 10], 2).unwrap();
        assert_eq!((m.k0, m.is_bar), (13, true));
        assert_eq!(m.witnesses.len(), 1);
        assert_eq!(m.witnesses[0].paired_slot, 3);
        assert!(m.witnesses[0]
            .disjuncts
            .contains(&BDisjunct::DoubledUnitMinusE { a1: 0 }));
    }

    #[test]
    fn negative_and_large_inputs_are_reduced() {
        let a = in_b(19, [1, 12, 15, 16], 5).unwrap();
        let b = in_b(19, [20, 12 - 19, 15, 16 + 38], 5 - 19).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejections() {
        assert!(in_b(1, [1, 1, 1, 1], 1).is_none());
        // e = 0: r divides k e for every k.
        assert!(in_b(14, [1, 9, 11, 10], 0).is_none());
        assert!(in_b(19, [1, 1, 1, 1], 1).is_none());
    }
}
