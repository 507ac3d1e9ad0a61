//! The six exceptional 4-dimensional configurations and the monomial bounds
//! that exclude them.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_expected, to_value, Checks, TheoremReport};
use crate::arith::{residue, Rational};
use crate::singularity::in_b;

#[derive(Clone, Debug, Deserialize, Serialize)]
struct BCase {
    r: u64,
    k0: u64,
    weights: [u64; 4],
    e: u64,
}

impl BCase {
    fn class(&self) -> (u64, [u64; 4], u64) {
        let mut w = self.weights.map(|a| a % self.r);
        w.sort();
        (self.r, w, self.e % self.r)
    }
}

#[derive(Deserialize)]
struct Lemma61Expected {
    cases: Vec<BCase>,
    threshold: Rational,
    sweep_orders: Vec<u64>,
}

/// Classes `(r, sorted weights, e)` of every tuple in `[1, r]^5` that is a
/// bar member with `1 + k0/r` above the threshold.
fn sweep(r: u64, threshold: &Rational) -> BTreeSet<(u64, [u64; 4], u64)> {
    let ri = r as i64;
    let per_a1: Vec<BTreeSet<(u64, [u64; 4], u64)>> = (1..=ri)
        .into_par_iter()
        .map(|a1| {
            let mut out = BTreeSet::new();
            for a2 in 1..=ri {
                for a3 in 1..=ri {
                    for a4 in 1..=ri {
                        for e in 1..=ri {
                            let Some(m) = in_b(r, [a1, a2, a3, a4], e) else {
                                continue;
                            };
                            let value = Rational::one() + Rational::new(m.k0 as i64, ri);
                            if m.is_bar && &value > threshold {
                                let mut w = m.weights;
                                w.sort();
                                out.insert((r, w, m.e));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    per_a1.into_iter().flatten().collect()
}

pub fn verify_lemma61() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (Lemma61Expected, _) =
        load_expected(include_str!("../../data/expected/lemma61.json"));
    let mut checks = Checks::default();

    let mut members = Vec::new();
    for c in &exp.cases {
        let label = format!("1/{}({:?}, -{})", c.r, c.weights, c.e);
        match in_b(c.r, c.weights.map(|a| a as i64), c.e as i64) {
            None => checks.main(false, || format!("{label} is not a member")),
            Some(m) => {
                checks.main(m.k0 == c.k0, || {
                    format!("{label}: k0 = {}, expected {}", m.k0, c.k0)
                });
                checks.main(m.is_bar, || format!("{label}: k0 not coprime to r"));
                let value = Rational::one() + Rational::new(m.k0 as i64, c.r as i64);
                checks.main(value > exp.threshold, || {
                    format!("{label}: 1 + k0/r = {value} not above {}", exp.threshold)
                });
                members.push(
                    serde_json::json!({"case": c, "membership": to_value(&m), "value": value}),
                );
            }
        }
    }

    let mut sweeps = Vec::new();
    for &r in &exp.sweep_orders {
        let found = sweep(r, &exp.threshold);
        let want: BTreeSet<_> = exp
            .cases
            .iter()
            .filter(|c| c.r == r)
            .map(BCase::class)
            .collect();
        for f in found.difference(&want) {
            checks.main(false, || format!("r={r}: unlisted class {f:?}"));
        }
        for w in want.difference(&found) {
            checks.main(false, || {
                format!("r={r}: listed class {w:?} not found by the sweep")
            });
        }
        sweeps.push(serde_json::json!({"r": r, "classes": found.iter().collect::<Vec<_>>()}));
    }

    let actual = serde_json::json!({
        "members": members,
        "sweeps": sweeps,
        "notes": ["the sweep covers only the listed orders; other orders are not searched"],
    });
    checks.report("lemma61", raw, actual, start)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
struct WeightingCase {
    r: u64,
    weights: [u64; 4],
    e: u64,
    j: u64,
    alpha: [u64; 4],
    alpha_denominator: u64,
    bound: i64,
}

#[derive(Deserialize)]
struct Lemma62Expected {
    margin: Rational,
    cases: Vec<WeightingCase>,
}

/// Every nonzero `c` in `N^4` with `sum c_i alpha_i <= bound`.
fn exponent_vectors(alpha: &[u64; 4], bound: i64) -> Vec<[u64; 4]> {
    fn go(k: usize, left: i64, alpha: &[u64; 4], cur: &mut [u64; 4], out: &mut Vec<[u64; 4]>) {
        if k == 4 {
            if cur.iter().any(|&c| c > 0) {
                out.push(*cur);
            }
            return;
        }
        let a = alpha[k] as i64;
        let max = if a == 0 { 0 } else { left / a };
        for c in 0..=max.max(0) {
            cur[k] = c as u64;
            go(k + 1, left - c * a, alpha, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if bound >= 0 {
        go(0, bound, alpha, &mut [0; 4], &mut out);
    }
    out
}

pub fn verify_lemma62() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (Lemma62Expected, _) =
        load_expected(include_str!("../../data/expected/lemma62.json"));
    let mut checks = Checks::default();
    let mut notes = Vec::new();
    let mut results = Vec::new();

    for (idx, c) in exp.cases.iter().enumerate() {
        let case = idx + 1;
        let alpha = c.weights.map(|a| (c.j * a) % c.r);
        let mut got = alpha;
        got.sort();
        let mut printed = c.alpha;
        printed.sort();
        checks.main(got == printed, || {
            format!(
                "case {case}: j*a mod r = {alpha:?} is not a rearrangement of {:?}",
                c.alpha
            )
        });
        if got == printed && alpha != c.alpha {
            notes.push(format!(
                "case {case}: printed weighting {:?} is a rearrangement of the coordinate-wise {alpha:?}",
                c.alpha
            ));
        }
        if c.alpha_denominator != c.r {
            notes.push(format!(
                "case {case}: printed denominator {} corrected to r = {}",
                c.alpha_denominator, c.r
            ));
        }

        // Largest integer strictly below sum(alpha) - r * margin.
        let slack = Rational::integer(alpha.iter().sum::<u64>() as i64)
            - Rational::integer(c.r as i64) * exp.margin.clone();
        let bound = slack.ceil_of_multiple(1) - 1;
        checks.main(bound == c.bound, || {
            format!("case {case}: derived bound {bound}, printed {}", c.bound)
        });

        let vectors = exponent_vectors(&alpha, bound);
        let congruent: Vec<[u64; 4]> = vectors
            .iter()
            .filter(|v| {
                let s: u64 = v.iter().zip(&c.weights).map(|(x, a)| x * a).sum();
                residue(s as i64 - c.e as i64, c.r) == 0
            })
            .copied()
            .collect();
        checks.main(congruent.is_empty(), || {
            format!("case {case}: congruent monomials {congruent:?}")
        });
        results.push(serde_json::json!({
            "case": case,
            "alpha": alpha,
            "bound": bound,
            "candidates": vectors.len(),
            "candidate_list": if vectors.len() <= 16 { to_value(&vectors) } else { serde_json::Value::Null },
            "congruent": congruent,
        }));
    }

    let actual = serde_json::json!({"cases": results, "notes": notes});
    checks.report("lemma62", raw, actual, start)
}
