//! Enumeration of 5-dimensional singularities with mld just below 2.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_expected, to_value, Checks, TheoremReport};
use crate::arith::{gcd, in_gamma, Rational};
use crate::singularity::{
    assoc_denominator, check_floor_sum_bounds, cond_d, in_a, mld, scaled_mld_bounded,
    CyclicQuotient, Level,
};

const R_MIN: u64 = 14;
const R_MAX: u64 = 51;

/// One weight multiset found by the enumeration, with every split into three
/// units and an equal-gcd pair that reaches it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A1Entry {
    pub r: u64,
    pub multiset: Vec<u64>,
    /// `[a1, a2, a3, a4, a5]` with `a1 <= a2 <= a3` and `a4 <= a5`.
    pub splits: Vec<[u64; 5]>,
}

fn entries_for_order(r: u64) -> Vec<[u64; 5]> {
    let units: Vec<u64> = (1..r).filter(|&a| gcd(a, r) == 1).collect();
    // sum(a_i) / r > 2 - 1/13, i.e. 13 * sum > 25 r.
    let sums: Vec<u64> = (2 * r - 3..=2 * r - 1)
        .filter(|&s| 13 * s > 25 * r)
        .collect();
    let mut out = Vec::new();
    for (i, &a1) in units.iter().enumerate() {
        for (j, &a2) in units.iter().enumerate().skip(i) {
            for &a3 in &units[j..] {
                let s3 = a1 + a2 + a3;
                for &s in &sums {
                    if s3 + 2 > s {
                        continue;
                    }
                    let pair = s - s3;
                    for a4 in 1..=pair / 2 {
                        let a5 = pair - a4;
                        if a5 >= r || gcd(a4, r) != gcd(a5, r) {
                            continue;
                        }
                        let w = [a1, a2, a3, a4, a5];
                        // The j = 1 summand is the weight sum itself.
                        if scaled_mld_bounded(r, &w, s) >= s {
                            out.push(w);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All solutions for `14 <= r <= 51`, grouped by weight multiset and sorted.
pub fn a1_raw() -> Vec<A1Entry> {
    let splits: Vec<(u64, [u64; 5])> = (R_MIN..=R_MAX)
        .into_par_iter()
        .flat_map_iter(|r| entries_for_order(r).into_iter().map(move |w| (r, w)))
        .collect();
    let mut grouped: BTreeMap<(u64, Vec<u64>), Vec<[u64; 5]>> = BTreeMap::new();
    for (r, w) in splits {
        let mut m = w.to_vec();
        m.sort();
        grouped.entry((r, m)).or_default().push(w);
    }
    grouped
        .into_iter()
        .map(|((r, multiset), mut splits)| {
            splits.sort();
            A1Entry {
                r,
                multiset,
                splits,
            }
        })
        .collect()
}

#[derive(Deserialize)]
struct Family {
    r: u64,
    multiset: Vec<u64>,
}

#[derive(Clone, Deserialize)]
struct Tuple {
    r: u64,
    weights: Vec<u64>,
}

impl Tuple {
    fn key(&self) -> (u64, Vec<u64>) {
        let mut m = self.weights.clone();
        m.sort();
        (self.r, m)
    }

    fn label(&self) -> String {
        CyclicQuotient::new(self.r, self.weights.clone())
            .map(|c| c.to_string())
            .unwrap_or_else(|_| format!("{:?}", self.weights))
    }
}

#[derive(Deserialize)]
struct A1Expected {
    families: Vec<Family>,
    tuples: Vec<Tuple>,
}

fn label(r: u64, w: &[u64]) -> String {
    CyclicQuotient::new(r, w.to_vec())
        .map(|c| c.to_string())
        .unwrap_or_else(|_| format!("1/{r}{w:?}"))
}

/// Enumerates the candidates and compares with the two families and the
/// eight listed tuples.
pub fn verify_a1() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (A1Expected, _) = load_expected(include_str!("../../data/expected/a1.json"));
    let found = a1_raw();
    let mut checks = Checks::default();

    let mut expected_keys: Vec<(u64, Vec<u64>)> = exp
        .families
        .iter()
        .map(|f| {
            let mut m = f.multiset.clone();
            m.sort();
            (f.r, m)
        })
        .collect();
    expected_keys.extend(exp.tuples.iter().map(Tuple::key));
    expected_keys.sort();
    let found_keys: Vec<(u64, Vec<u64>)> =
        found.iter().map(|e| (e.r, e.multiset.clone())).collect();

    for k in &found_keys {
        checks.main(expected_keys.contains(k), || {
            format!("unexpected solution {}", label(k.0, &k.1))
        });
    }
    for k in &expected_keys {
        checks.main(found_keys.contains(k), || {
            format!("missing solution {}", label(k.0, &k.1))
        });
    }
    for t in &exp.tuples {
        let split_found = found.iter().any(|e| {
            e.r == t.r
                && e.splits
                    .iter()
                    .any(|s| s.as_slice() == t.weights.as_slice())
        });
        checks.support(split_found, || {
            format!("listed split {} not produced", t.label())
        });
    }

    let actual = serde_json::json!({ "count": found.len(), "solutions": to_value(&found) });
    checks.report("a1", raw, actual, start)
}

#[derive(Deserialize)]
struct Thm31Expected {
    eps: Rational,
    survivors: Vec<Tuple>,
}

#[derive(Serialize)]
struct Survivor {
    singularity: CyclicQuotient,
    mld: Rational,
    floor_sum_bounds: bool,
    /// Indices `n` at which `D(n, 1)` was required and checked.
    d1_indices: Vec<u64>,
    d1_holds: bool,
}

/// `D(n, 1)` for every `n in [2, r - 1]` with `1 < n < 1/eps - 1` not divisible
/// by `q`, where `eps = 2 - mld`.
fn d1_range(cq: &CyclicQuotient, q: u64, eps: &Rational) -> Vec<u64> {
    let limit = Rational::one() / eps.clone() - Rational::one();
    (2..cq.order())
        .filter(|&n| Rational::integer(n as i64) < limit && in_gamma(q, n))
        .collect()
}

/// Filters the enumeration through the level-4 set with `eps = 1/13`.
pub fn verify_thm31() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (Thm31Expected, _) =
        load_expected(include_str!("../../data/expected/thm31.json"));
    let mut checks = Checks::default();
    let found = a1_raw();

    let mut survivors = Vec::new();
    let mut rejected = Vec::new();
    for e in &found {
        let cq =
            CyclicQuotient::new(e.r, e.splits[0].to_vec()).expect("enumerated weights are valid");
        let m = in_a(&cq, Level::Divisible, Some(&exp.eps)).expect("dimension 5");
        if m.member && m.bar {
            survivors.push((cq, m));
        } else {
            rejected.push(cq);
        }
    }

    let mut expected_keys: Vec<_> = exp.survivors.iter().map(Tuple::key).collect();
    expected_keys.sort();
    let mut got_keys: Vec<_> = survivors
        .iter()
        .map(|(c, _)| (c.order(), c.sorted().weights().to_vec()))
        .collect();
    got_keys.sort();
    for k in &got_keys {
        checks.main(expected_keys.contains(k), || {
            format!("unexpected survivor {}", label(k.0, &k.1))
        });
    }
    for k in &expected_keys {
        checks.main(got_keys.contains(k), || {
            format!("missing survivor {}", label(k.0, &k.1))
        });
    }

    let mut details = Vec::new();
    for (cq, m) in &survivors {
        let eps = Rational::integer(2) - mld(cq).value;
        let roles = &m.roles[0].roles;
        let bounds = check_floor_sum_bounds(cq, roles).unwrap_or(false);
        let q = assoc_denominator(cq, roles).expect("witness roles fit");
        let d1_indices = d1_range(cq, q, &eps);
        let d1_holds = d1_indices
            .iter()
            .all(|&n| cond_d(cq, roles, n, 1).unwrap_or(false));
        checks.support(bounds, || format!("{cq}: floor-sum bounds fail"));
        checks.support(d1_holds, || {
            format!("{cq}: D(n,1) fails for some n in {d1_indices:?}")
        });
        details.push(Survivor {
            singularity: cq.clone(),
            mld: m.mld.clone(),
            floor_sum_bounds: bounds,
            d1_indices,
            d1_holds,
        });
    }

    let actual = serde_json::json!({
        "survivors": to_value(&details),
        "rejected": rejected.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    checks.report("thm31", raw, actual, start)
}
