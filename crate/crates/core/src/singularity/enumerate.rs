//! Exhaustive enumeration of the special sets over a range of orders.

use rayon::prelude::*;
use serde::Serialize;

use super::{in_a, scaled_mld_bounded, CyclicQuotient, Level, Membership};
use crate::arith::{gcd, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub level: Level,
    /// Restrict to `mld > 2 - eps`.
    pub eps: Option<Rational>,
    pub r_min: u64,
    pub r_max: u64,
    /// Restrict to `mld = sum(a_i) / r`.
    pub bar: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Found {
    pub singularity: CyclicQuotient,
    pub membership: Membership,
}

/// Every member with `r_min <= r <= r_max`, one per weight multiset (weights
/// sorted ascending), ordered by `r` then weights.
pub fn enumerate(opts: &EnumerateOptions) -> Result<Vec<Found>> {
    if opts.r_min == 0 || opts.r_min > opts.r_max {
        return Err(Error::Precondition(format!(
            "empty order range [{}, {}]",
            opts.r_min, opts.r_max
        )));
    }
    if opts.r_max > u16::MAX as u64 {
        return Err(Error::Precondition(format!(
            "r_max {} is too large to enumerate",
            opts.r_max
        )));
    }
    if let Some(e) = &opts.eps {
        if e.is_negative() || e.is_zero() {
            return Err(Error::Precondition(format!(
                "eps must be positive, got {e}"
            )));
        }
    }
    let per_r: Vec<Result<Vec<Found>>> = (opts.r_min..=opts.r_max)
        .into_par_iter()
        .map(|r| enumerate_order(opts, r))
        .collect();
    let mut out = Vec::new();
    for v in per_r {
        out.extend(v?);
    }
    Ok(out)
}

fn enumerate_order(opts: &EnumerateOptions, r: u64) -> Result<Vec<Found>> {
    if r < 2 {
        // No interior weights.
        return Ok(Vec::new());
    }
    let two = Rational::integer(2);
    // Smallest admissible scaled mld under the eps restriction: s > (2 - eps) r.
    let eps_floor = opts
        .eps
        .as_ref()
        .filter(|e| **e < two)
        .map(|e| ((&two - e) * Rational::integer(r as i64)).floor_of_multiple(1) as u64 + 1)
        .unwrap_or(0);
    // j = 1 gives sum(a_i), so the eps bound also bounds the sum from below.
    let sum_lo = eps_floor.max(5);
    let sum_hi = if opts.bar { 2 * r - 1 } else { 5 * (r - 1) };
    let values: Vec<u64> = (1..r)
        .filter(|&a| opts.level != Level::Isolated || gcd(a, r) == 1)
        .collect();

    let mut out = Vec::new();
    let mut w = [0u64; 5];
    let mut visit = |w: &[u64; 5]| -> Result<()> {
        let sum: u64 = w.iter().sum();
        let stop = if opts.bar {
            sum.max(eps_floor)
        } else {
            eps_floor
        };
        let s = scaled_mld_bounded(r, w, stop);
        if s >= 2 * r || s < eps_floor || (opts.bar && s != sum) {
            return Ok(());
        }
        let cq = CyclicQuotient::new(r, w.to_vec())?;
        let m = in_a(&cq, opts.level, opts.eps.as_ref())?;
        if m.member && (!opts.bar || m.bar) {
            out.push(Found {
                singularity: cq,
                membership: m,
            });
        }
        Ok(())
    };
    multisets(&values, 0, 0, 0, sum_lo, sum_hi, r - 1, &mut w, &mut visit)?;
    Ok(out)
}

/// Nondecreasing 5-tuples from `values` with sum in `[lo, hi]`.
#[allow(clippy::too_many_arguments)]
fn multisets(
    values: &[u64],
    depth: usize,
    start: usize,
    acc: u64,
    lo: u64,
    hi: u64,
    max: u64,
    w: &mut [u64; 5],
    visit: &mut impl FnMut(&[u64; 5]) -> Result<()>,
) -> Result<()> {
    if depth == 5 {
        return if (lo..=hi).contains(&acc) {
            visit(w)
        } else {
            Ok(())
        };
    }
    let rest = (4 - depth) as u64;
    for (i, &a) in values.iter().enumerate().skip(start) {
        if acc + a * (rest + 1) > hi {
            break;
        }
        if acc + a + rest * max < lo {
            continue;
        }
        w[depth] = a;
        multisets(values, depth + 1, i, acc + a, lo, hi, max, w, visit)?;
    }
    Ok(())
}
