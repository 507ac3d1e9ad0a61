use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::boxes::{BoxSet, Interval, IntervalBox};
use super::system::{Equation, FloorSystem, PairSumFilter};
use crate::arith::Rational;

const PARALLEL_THRESHOLD: usize = 64;

/// Pieces of `iv` on which `floor(n x)` is constant, with that floor value.
fn split(iv: &Interval, n: i64) -> Vec<(Interval, i64)> {
    let first = iv.lo().floor_of_multiple(n);
    let last = iv.hi().ceil_of_multiple(n) - 1;
    let mut out = Vec::with_capacity((last - first + 1) as usize);
    let mut lo = iv.lo().clone();
    for m in first + 1..=last {
        let c = Rational::new(m, n);
        out.push((Interval::new_unchecked(lo, c.clone()), m - 1));
        lo = c;
    }
    out.push((Interval::new_unchecked(lo, iv.hi().clone()), last));
    out
}

fn refine_box(b: &IntervalBox, n: i64, target: i64, out: &mut Vec<IntervalBox>) {
    let pieces: Vec<Vec<(Interval, i64)>> = b.intervals().iter().map(|iv| split(iv, n)).collect();
    let d = pieces.len();
    // suffix[k] = (min, max) of the floor sum over coordinates k..d.
    let mut suffix = vec![(0i64, 0i64); d + 1];
    for k in (0..d).rev() {
        let p = &pieces[k];
        suffix[k] = (suffix[k + 1].0 + p[0].1, suffix[k + 1].1 + p[p.len() - 1].1);
    }
    if target < suffix[0].0 || target > suffix[0].1 {
        return;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    fn go(
        k: usize,
        acc: i64,
        target: i64,
        pieces: &[Vec<(Interval, i64)>],
        suffix: &[(i64, i64)],
        chosen: &mut Vec<usize>,
        out: &mut Vec<IntervalBox>,
    ) {
        if k == pieces.len() {
            out.push(IntervalBox::new(
                chosen
                    .iter()
                    .zip(pieces)
                    .map(|(&i, p)| p[i].0.clone())
                    .collect(),
            ));
            return;
        }
        for (i, (_, f)) in pieces[k].iter().enumerate() {
            let s = acc + f;
            if s + suffix[k + 1].0 > target {
                break;
            }
            if s + suffix[k + 1].1 < target {
                continue;
            }
            chosen.push(i);
            go(k + 1, s, target, pieces, suffix, chosen, out);
            chosen.pop();
        }
    }
    go(0, 0, target, &pieces, &suffix, &mut chosen, out);
}

/// Splits every box at the breakpoints `m / n` and keeps the pieces on which
/// the free floor sum plus the fixed contribution equals `rhs`.
pub fn refine_step(bs: &BoxSet, n: u64, rhs: i64, fixed: &[Rational]) -> BoxSet {
    let target = FloorSystem::free_target(fixed, n, rhs);
    let n = n as i64;
    let boxes: Vec<IntervalBox> = if bs.len() >= PARALLEL_THRESHOLD {
        bs.boxes()
            .par_iter()
            .flat_map_iter(|b| {
                let mut v = Vec::new();
                refine_box(b, n, target, &mut v);
                v
            })
            .collect()
    } else {
        let mut v = Vec::new();
        for b in bs.boxes() {
            refine_box(b, n, target, &mut v);
        }
        v
    };
    BoxSet::from_parts(bs.dim(), boxes)
}

/// Whether some point of `b` has nondecreasing coordinates.
pub fn ordered_feasible(b: &IntervalBox) -> bool {
    let mut t: Option<&Rational> = None;
    for iv in b.intervals() {
        let ti = match t {
            Some(prev) if prev > iv.lo() => prev,
            _ => iv.lo(),
        };
        if ti >= iv.hi() {
            return false;
        }
        t = Some(ti);
    }
    true
}

/// Whether `x_i + x_j = s` for some point of `b`. Indices past the free
/// dimension address `fixed`, which count as one-point intervals.
pub fn pair_sum_feasible(
    b: &IntervalBox,
    fixed: &[Rational],
    i: usize,
    j: usize,
    s: &Rational,
) -> bool {
    let d = b.dim();
    let coord = |k: usize| -> (Rational, Option<Rational>) {
        if k < d {
            let iv = &b.intervals()[k];
            (iv.lo().clone(), Some(iv.hi().clone()))
        } else {
            (fixed[k - d].clone(), None)
        }
    };
    let (lo_i, hi_i) = coord(i);
    let (lo_j, hi_j) = coord(j);
    let lo = &lo_i + &lo_j;
    match (hi_i, hi_j) {
        (None, None) => &lo == s,
        (hi_i, hi_j) => {
            let hi = hi_i.unwrap_or(lo_i) + hi_j.unwrap_or(lo_j);
            &lo <= s && s < &hi
        }
    }
}

/// Boxes with a nondecreasing point.
pub fn filter_ordered(bs: &BoxSet) -> BoxSet {
    let kept = bs
        .boxes()
        .iter()
        .filter(|b| ordered_feasible(b))
        .cloned()
        .collect();
    BoxSet::from_parts(bs.dim(), kept)
}

/// Boxes passing at least one filter for at least one of its sums. An empty
/// filter list keeps everything.
pub fn filter_pair_sums(bs: &BoxSet, fixed: &[Rational], filters: &[PairSumFilter]) -> BoxSet {
    if filters.is_empty() {
        return bs.clone();
    }
    let kept = bs
        .boxes()
        .iter()
        .filter(|b| {
            filters.iter().any(|f| {
                f.sums
                    .iter()
                    .any(|s| pair_sum_feasible(b, fixed, f.i, f.j, s))
            })
        })
        .cloned()
        .collect();
    BoxSet::from_parts(bs.dim(), kept)
}

/// When the ordering filter runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingMode {
    #[default]
    PerStep,
    AtEnd,
}

/// Applies the equations of a system one at a time, exposing each stage.
#[derive(Debug)]
pub struct Solver<'a> {
    sys: &'a FloorSystem,
    mode: OrderingMode,
    current: BoxSet,
    applied: usize,
}

impl<'a> Solver<'a> {
    pub fn new(sys: &'a FloorSystem) -> Self {
        Self::with_mode(sys, OrderingMode::default())
    }

    pub fn with_mode(sys: &'a FloorSystem, mode: OrderingMode) -> Self {
        Solver {
            sys,
            mode,
            current: BoxSet::unit(sys.free_dim()),
            applied: 0,
        }
    }

    /// Boxes after the equations applied so far (before pair-sum filters).
    pub fn current(&self) -> &BoxSet {
        &self.current
    }

    pub fn applied(&self) -> &[Equation] {
        &self.sys.equations()[..self.applied]
    }

    /// Applies the next equation; `None` once all are applied.
    pub fn step(&mut self) -> Option<Equation> {
        let eq = *self.sys.equations().get(self.applied)?;
        let mut next = refine_step(&self.current, eq.n, eq.rhs, self.sys.fixed());
        if self.sys.ordered() && self.mode == OrderingMode::PerStep {
            next = filter_ordered(&next);
        }
        next.sort();
        self.current = next;
        self.applied += 1;
        #[cfg(debug_assertions)]
        self.check_invariants();
        Some(eq)
    }

    #[cfg(debug_assertions)]
    fn check_invariants(&self) {
        for b in self.current.boxes() {
            for e in self.applied() {
                let n = e.n as i64;
                for iv in b.intervals() {
                    debug_assert_eq!(
                        iv.lo().floor_of_multiple(n),
                        iv.hi().ceil_of_multiple(n) - 1,
                        "floor of {n}x not constant on [{}, {})",
                        iv.lo(),
                        iv.hi()
                    );
                }
            }
        }
        if self.current.len() <= 256 {
            debug_assert!(
                self.current.find_overlap().is_none(),
                "refinement produced overlapping boxes"
            );
        }
    }

    /// Applies the remaining equations and the end-of-run filters.
    pub fn finish(mut self) -> BoxSet {
        while self.step().is_some() {}
        let mut out = self.current;
        if self.sys.ordered() && self.mode == OrderingMode::AtEnd {
            out = filter_ordered(&out);
        }
        filter_pair_sums(&out, self.sys.fixed(), self.sys.pair_sum_filters())
    }
}

/// Solution boxes of `sys`, ordering enforced after every step.
pub fn solve(sys: &FloorSystem) -> BoxSet {
    Solver::new(sys).finish()
}

pub fn solve_with_mode(sys: &FloorSystem, mode: OrderingMode) -> BoxSet {
    Solver::with_mode(sys, mode).finish()
}
