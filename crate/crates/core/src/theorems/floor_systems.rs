//! Floor-sum systems that must be empty or have a prescribed solution set.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{load_expected, Checks, TheoremReport};
use crate::arith::{gcd, Rational};
use crate::boxsolver::{
    brute_oracle, filter_ordered, filter_pair_sums, refine_step, solve, BoxSet, FloorSystem,
    IntervalBox, PairSumFilter, Solver,
};

type Bounds = Vec<(Rational, Rational)>;

fn bounds(raw: &[[Rational; 2]]) -> Bounds {
    raw.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
}

fn closure(b: &IntervalBox) -> Vec<[Rational; 2]> {
    b.intervals()
        .iter()
        .map(|iv| [iv.lo().clone(), iv.hi().clone()])
        .collect()
}

fn show(b: &[[Rational; 2]]) -> String {
    let parts: Vec<String> = b.iter().map(|[a, c]| format!("[{a},{c})")).collect();
    parts.join("x")
}

fn midpoint(bounds: &Bounds) -> Vec<Rational> {
    bounds.iter().map(|(a, b)| a.midpoint(b)).collect()
}

/// Boundary convention for open-interval answers: every box lies in the
/// closure of some expected region, and every region's midpoint is covered.
fn compare_regions(out: &BoxSet, regions: &[Bounds], what: &str, checks: &mut Checks) {
    for b in out.boxes() {
        checks.main(regions.iter().any(|r| b.within_closure(r)), || {
            format!(
                "{what}: box {} outside every expected region",
                show(&closure(b))
            )
        });
    }
    for r in regions {
        checks.main(out.contains(&midpoint(r)), || {
            let raw: Vec<[Rational; 2]> = r.iter().map(|(a, b)| [a.clone(), b.clone()]).collect();
            format!("{what}: midpoint of {} not covered", show(&raw))
        });
    }
}

fn normalized(bs: &BoxSet) -> BoxSet {
    bs.normalize().expect("solver output is disjoint")
}

fn boxes_json(bs: &BoxSet) -> Vec<Vec<[Rational; 2]>> {
    bs.boxes().iter().map(closure).collect()
}

#[derive(Deserialize)]
struct EmptyExpected {
    solutions: Vec<Vec<[Rational; 2]>>,
    #[serde(alias = "v2", alias = "first_step")]
    first: Vec<[Rational; 2]>,
    oracle_max_denominator: u64,
}

fn verify_empty(id: &str, src: &str, sys: FloorSystem) -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (EmptyExpected, _) = load_expected(src);
    let mut checks = Checks::default();

    let mut solver = Solver::new(&sys);
    solver.step();
    let first = normalized(solver.current());
    let first_boxes = boxes_json(&first);
    checks.support(first_boxes == vec![exp.first.clone()], || {
        format!(
            "first stage is {:?}, expected {}",
            first_boxes.iter().map(|b| show(b)).collect::<Vec<_>>(),
            show(&exp.first)
        )
    });
    let mut trace = vec![serde_json::json!({"n": sys.equations()[0].n, "boxes": first.len()})];
    while let Some(e) = solver.step() {
        trace.push(serde_json::json!({"n": e.n, "boxes": solver.current().len()}));
    }
    let out = normalized(&solver.finish());
    checks.main(out.is_empty() == exp.solutions.is_empty(), || {
        format!(
            "solver found {} boxes, first {:?}",
            out.len(),
            out.boxes().first().map(closure).map(|b| show(&b))
        )
    });

    let points = brute_oracle(&sys, exp.oracle_max_denominator);
    checks.main(points.is_empty() == exp.solutions.is_empty(), || {
        format!(
            "grid search at denominator {} found {} points, first {:?}",
            exp.oracle_max_denominator,
            points.len(),
            points.first()
        )
    });

    let actual = serde_json::json!({
        "solutions": boxes_json(&out),
        "first_stage": first_boxes,
        "trace": trace,
        "oracle_max_denominator": exp.oracle_max_denominator,
        "oracle_points": points.len(),
    });
    checks.report(id, raw, actual, start)
}

/// Five ordered coordinates with `sum floor(n x_i) = 2n - 3` for `2 <= n <= 18`.
pub fn verify_a2() -> TheoremReport {
    let eqs = FloorSystem::equations_from(2..=18, None, |n| 2 * n as i64 - 3);
    let sys = FloorSystem::simple(5, true, eqs).expect("valid system");
    verify_empty("a2", include_str!("../../data/expected/a2.json"), sys)
}

/// Three ordered coordinates with `sum floor(n x_i) = n - 2` for `2 <= n <= 12`.
pub fn verify_a6() -> TheoremReport {
    let eqs = FloorSystem::equations_from(2..=12, None, |n| n as i64 - 2);
    let sys = FloorSystem::simple(3, true, eqs).expect("valid system");
    verify_empty("a6", include_str!("../../data/expected/a6.json"), sys)
}

/// Rhs `2n - 3` below `k`, then `2n - 4` on `[k, max(2k - 6, 25)]` minus `k + 1`.
pub fn a3_system(k: u64) -> FloorSystem {
    let hi = (2 * k - 6).max(25);
    let mut eqs = FloorSystem::equations_from(2..k, None, |n| 2 * n as i64 - 3);
    eqs.extend(FloorSystem::equations_from(
        (k..=hi).filter(|&n| n != k + 1),
        None,
        |n| 2 * n as i64 - 4,
    ));
    FloorSystem::simple(5, true, eqs).expect("valid system")
}

#[derive(Deserialize)]
struct A3Expected {
    k_min: u64,
    k_max: u64,
    surviving_k: Vec<u64>,
    intervals: Vec<[Rational; 2]>,
    oracle_max_denominator: u64,
}

pub fn verify_a3() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (A3Expected, _) = load_expected(include_str!("../../data/expected/a3.json"));
    let mut checks = Checks::default();
    let results: Vec<(u64, BoxSet)> = (exp.k_min..=exp.k_max)
        .into_par_iter()
        .map(|k| (k, normalized(&solve(&a3_system(k)))))
        .collect();
    let surviving: Vec<u64> = results
        .iter()
        .filter(|(_, o)| !o.is_empty())
        .map(|(k, _)| *k)
        .collect();
    checks.main(surviving == exp.surviving_k, || {
        format!(
            "nonempty for k in {surviving:?}, expected {:?}",
            exp.surviving_k
        )
    });
    let region = bounds(&exp.intervals);
    let mut oracle_points = 0;
    for (k, out) in &results {
        if exp.surviving_k.contains(k) {
            compare_regions(
                out,
                std::slice::from_ref(&region),
                &format!("k={k}"),
                &mut checks,
            );
            let pts = brute_oracle(&a3_system(*k), exp.oracle_max_denominator);
            oracle_points += pts.len();
            let uncovered = pts.iter().filter(|p| !out.contains(p)).count();
            checks.support(uncovered == 0, || {
                format!("k={k}: {uncovered} grid solutions outside the solver boxes")
            });
        }
    }
    let actual = serde_json::json!({
        "solutions": results.iter().map(|(k, o)| serde_json::json!({"k": k, "boxes": boxes_json(o)})).collect::<Vec<_>>(),
        "surviving_k": surviving,
        "oracle_points": oracle_points,
    });
    checks.report("a3", raw, actual, start)
}

/// Coprime pairs `1 <= b <= c < q`.
fn coprime_pairs(q: u64) -> Vec<(u64, u64)> {
    let units: Vec<u64> = (1..q).filter(|&b| gcd(b, q) == 1).collect();
    let mut out = Vec::new();
    for (i, &b) in units.iter().enumerate() {
        for &c in &units[i..] {
            out.push((b, c));
        }
    }
    out
}

fn totient(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn fixed_pair(q: u64, b: u64, c: u64) -> Vec<Rational> {
    vec![
        Rational::new(b as i64, q as i64),
        Rational::new(c as i64, q as i64),
    ]
}

/// Three ordered free coordinates plus `b/q, c/q`, rhs `2n - 3` on `[2, 28]`
/// with multiples of `q` skipped.
pub fn a4_system(q: u64, b: u64, c: u64) -> FloorSystem {
    let eqs = FloorSystem::equations_from(2..=28, Some(q), |n| 2 * n as i64 - 3);
    FloorSystem::new(3, fixed_pair(q, b, c), Some(q), true, eqs, Vec::new()).expect("valid system")
}

#[derive(Deserialize)]
struct A4Expected {
    q_min: u64,
    q_max: u64,
    solutions: Vec<Value>,
}

pub fn verify_a4() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (A4Expected, _) = load_expected(include_str!("../../data/expected/a4.json"));
    let mut checks = Checks::default();
    let combos: Vec<(u64, u64, u64)> = (exp.q_min..=exp.q_max)
        .flat_map(|q| coprime_pairs(q).into_iter().map(move |(b, c)| (q, b, c)))
        .collect();
    let nonempty: Vec<(u64, u64, u64, BoxSet)> = combos
        .par_iter()
        .filter_map(|&(q, b, c)| {
            let out = solve(&a4_system(q, b, c));
            (!out.is_empty()).then(|| (q, b, c, normalized(&out)))
        })
        .collect();
    checks.main(nonempty.is_empty() == exp.solutions.is_empty(), || {
        let first = nonempty.first().map(|(q, b, c, _)| (*q, *b, *c));
        format!(
            "{} parameter triples have solutions, first {first:?}",
            nonempty.len()
        )
    });
    // Independent count: phi(q) (phi(q) + 1) / 2 unordered unit pairs per q.
    let independent: u64 = (exp.q_min..=exp.q_max)
        .map(|q| {
            let p = totient(q);
            p * (p + 1) / 2
        })
        .sum();
    checks.support(independent == combos.len() as u64, || {
        format!("processed {} triples, expected {independent}", combos.len())
    });
    let actual = serde_json::json!({
        "combinations": combos.len(),
        "independent_count": independent,
        "solutions": nonempty.iter().map(|(q, b, c, o)| serde_json::json!({"q": q, "b": b, "c": c, "boxes": boxes_json(o)})).collect::<Vec<_>>(),
    });
    checks.report("a4", raw, actual, start)
}

/// Rhs `2n - 3` on `[2, k - 1]`, then `2n - 4` on `[k, max(2k - 8, 25)]` minus
/// `k + 1`, multiples of `q` skipped throughout.
pub fn a5_system(k: u64, q: u64, b: u64, c: u64) -> FloorSystem {
    let hi = (2 * k - 8).max(25);
    let mut eqs = FloorSystem::equations_from(2..k, Some(q), |n| 2 * n as i64 - 3);
    eqs.extend(FloorSystem::equations_from(
        (k..=hi).filter(|&n| n != k + 1),
        Some(q),
        |n| 2 * n as i64 - 4,
    ));
    FloorSystem::new(3, fixed_pair(q, b, c), Some(q), true, eqs, Vec::new()).expect("valid system")
}

#[derive(Clone, Debug, Deserialize, Serialize)]
struct A5Case {
    k: u64,
    q: u64,
    b: u64,
    c: u64,
    intervals: Vec<[Rational; 2]>,
}

#[derive(Deserialize)]
struct A5Expected {
    cases: Vec<A5Case>,
}

const A5_K: std::ops::RangeInclusive<u64> = 13..=28;
const A5_Q: std::ops::RangeInclusive<u64> = 3..=32;

pub fn verify_a5() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (A5Expected, _) = load_expected(include_str!("../../data/expected/a5.json"));
    let mut checks = Checks::default();
    let combos: Vec<(u64, u64, u64, u64)> = A5_K
        .flat_map(|k| {
            A5_Q.flat_map(move |q| coprime_pairs(q).into_iter().map(move |(b, c)| (k, q, b, c)))
        })
        .collect();
    let survivors: Vec<((u64, u64, u64, u64), BoxSet)> = combos
        .par_iter()
        .filter_map(|&(k, q, b, c)| {
            let out = solve(&a5_system(k, q, b, c));
            (!out.is_empty()).then(|| ((k, q, b, c), normalized(&out)))
        })
        .collect();

    let key = |c: &A5Case| (c.k, c.q, c.b, c.c);
    let mut extra = Vec::new();
    for (t, out) in &survivors {
        let regions: Vec<Bounds> = exp
            .cases
            .iter()
            .filter(|c| key(c) == *t)
            .map(|c| bounds(&c.intervals))
            .collect();
        if regions.is_empty() {
            extra.push(*t);
            checks.main(false, || {
                format!(
                    "unlisted solution (k,q,b,c)={t:?}: {}",
                    out.boxes()
                        .iter()
                        .map(|b| show(&closure(b)))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            });
            continue;
        }
        compare_regions(out, &regions, &format!("(k,q,b,c)={t:?}"), &mut checks);
    }
    for c in &exp.cases {
        checks.main(survivors.iter().any(|(t, _)| *t == key(c)), || {
            format!("listed case (k,q,b,c)={:?} has no solution", key(c))
        });
    }

    // Diagnose unlisted solutions: which reading of the parameter ranges
    // reproduces the list exactly.
    let mut restricted: Vec<_> = survivors
        .iter()
        .map(|(t, _)| *t)
        .filter(|&(k, q, _, _)| k % q != 0 && q <= 31)
        .collect();
    restricted.sort();
    let mut listed: Vec<_> = exp.cases.iter().map(key).collect();
    listed.sort();
    listed.dedup();
    let actual = serde_json::json!({
        "combinations": combos.len(),
        "solutions": survivors.iter().map(|((k, q, b, c), o)| serde_json::json!({"k": k, "q": q, "b": b, "c": c, "boxes": boxes_json(o)})).collect::<Vec<_>>(),
        "unlisted": extra,
        "notes": [
            "b = 0 is never coprime to q >= 3, so b >= 1 throughout",
            format!(
                "with k not divisible by q and q <= 31 the surviving parameter tuples {} the listed ones",
                if restricted == listed { "equal" } else { "still differ from" }
            ),
        ],
    });
    checks.report("a5", raw, actual, start)
}

#[derive(Deserialize)]
struct Stage {
    n: u64,
    pair_sum_filter: bool,
    boxes: Vec<Vec<[Rational; 2]>>,
}

#[derive(Deserialize)]
struct D213Expected {
    stages: Vec<Stage>,
    pair_sums: Vec<Rational>,
    solutions: Vec<Value>,
}

/// Three ordered coordinates, rhs `n - 2` for `n` in `{3, 5, 7, 9}`, with the
/// pair-sum side condition.
pub fn verify_d213() -> TheoremReport {
    let start = Instant::now();
    let (exp, raw): (D213Expected, _) =
        load_expected(include_str!("../../data/expected/d213.json"));
    let mut checks = Checks::default();
    let filters: Vec<PairSumFilter> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| PairSumFilter {
            i,
            j,
            sums: exp.pair_sums.clone(),
        })
        .collect();

    let mut current = BoxSet::unit(3);
    let mut stages = Vec::new();
    for st in &exp.stages {
        current = filter_ordered(&refine_step(&current, st.n, st.n as i64 - 2, &[]));
        if st.pair_sum_filter {
            current = filter_pair_sums(&current, &[], &filters);
        }
        current = normalized(&current);
        let got = boxes_json(&current);
        let mut want = st.boxes.clone();
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        checks.main(got_sorted == want, || {
            format!(
                "after n={}: {:?}",
                st.n,
                got.iter().map(|b| show(b)).collect::<Vec<_>>()
            )
        });
        stages.push(
            serde_json::json!({"n": st.n, "pair_sum_filter": st.pair_sum_filter, "boxes": got}),
        );
    }
    let last = filter_pair_sums(&current, &[], &filters);
    checks.main(last.is_empty() == exp.solutions.is_empty(), || {
        format!("{} boxes survive the final pair-sum filter", last.len())
    });

    // The same system through the solver, side condition applied only at the end.
    let eqs = exp
        .stages
        .iter()
        .map(|s| crate::boxsolver::Equation {
            n: s.n,
            rhs: s.n as i64 - 2,
        })
        .collect();
    let sys = FloorSystem::new(3, Vec::new(), None, true, eqs, filters).expect("valid system");
    let full = solve(&sys);
    checks.support(full.is_empty() == exp.solutions.is_empty(), || {
        format!("end-filtered solve leaves {} boxes", full.len())
    });

    let actual = serde_json::json!({
        "stages": stages,
        "solutions": boxes_json(&last),
        "end_filtered_solutions": boxes_json(&full),
    });
    checks.report("d213", raw, actual, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_pair_counts() {
        for q in 3..=32 {
            let p = totient(q);
            assert_eq!(coprime_pairs(q).len() as u64, p * (p + 1) / 2, "q={q}");
        }
        assert_eq!(totient(32), 16);
        assert_eq!(totient(29), 28);
    }

    #[test]
    fn first_a4_and_a5_systems() {
        assert!(solve(&a4_system(3, 1, 2)).is_empty());
        assert!(solve(&a4_system(32, 1, 31)).is_empty());
        assert!(!solve(&a5_system(13, 3, 1, 2)).is_empty());
        assert!(!solve(&a5_system(16, 29, 10, 27)).is_empty());
    }

    #[test]
    fn a5_equations_skip_multiples_and_k_plus_one() {
        let sys = a5_system(13, 3, 1, 2);
        let ns: Vec<u64> = sys.equations().iter().map(|e| e.n).collect();
        assert!(ns.iter().all(|n| n % 3 != 0));
        assert!(!ns.contains(&14));
        assert_eq!(*ns.last().unwrap(), 25);
    }
}
