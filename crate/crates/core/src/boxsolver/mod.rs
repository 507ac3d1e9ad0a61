//! Exact solver for systems `sum_i floor(n x_i) = rhs_n` over `[0, 1)^d`.
//!
//! The solution set is built by induction on the equations: each step splits
//! every box at the points where `floor(n x)` jumps and keeps the pieces whose
//! floor sum matches. Optional filters restrict to nondecreasing points and to
//! boxes where a coordinate pair can hit a prescribed sum.

mod boxes;
mod oracle;
mod solve;
mod system;

pub use boxes::{BoxSet, Interval, IntervalBox};
pub use oracle::{brute_oracle, grid};
pub use solve::{
    filter_ordered, filter_pair_sums, ordered_feasible, pair_sum_feasible, refine_step, solve,
    solve_with_mode, OrderingMode, Solver,
};
pub use system::{Equation, FloorSystem, PairSumFilter};

/// Merges abutting boxes and sorts; see [`BoxSet::normalize`].
pub fn boxset_normalize(bs: &BoxSet) -> crate::Result<BoxSet> {
    bs.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    /// Sample points of a box: midpoint and corners pulled inward.
    fn samples(b: &IntervalBox) -> Vec<Vec<Rational>> {
        let mut out = vec![b.midpoint()];
        let inward =
            |iv: &Interval, t: i64| iv.lo() + &((iv.hi() - iv.lo()) * Rational::new(t, 1000));
        for t in [1, 999] {
            out.push(b.intervals().iter().map(|iv| inward(iv, t)).collect());
        }
        out
    }

    fn arb_system() -> impl Strategy<Value = (FloorSystem, u64)> {
        // The right-hand sides come from a grid point, so the system has a solution.
        (
            1usize..=3,
            proptest::bool::ANY,
            proptest::collection::btree_set(2u64..=9, 1..=4),
            2u64..=12,
        )
            .prop_flat_map(|(d, ordered, ns, den)| {
                let pts = proptest::collection::vec(0..den, d);
                (Just(d), Just(ordered), Just(ns), Just(den), pts)
            })
            .prop_map(|(d, ordered, ns, den, mut nums)| {
                if ordered {
                    nums.sort();
                }
                let x: Vec<Rational> = nums
                    .iter()
                    .map(|&p| Rational::new(p as i64, den as i64))
                    .collect();
                let eqs = ns
                    .into_iter()
                    .map(|n| Equation {
                        n,
                        rhs: x.iter().map(|v| v.floor_of_multiple(n as i64)).sum(),
                    })
                    .collect();
                (FloorSystem::simple(d, ordered, eqs).unwrap(), den)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn solver_is_sound_and_complete_against_the_oracle((sys, den) in arb_system()) {
            let out = solve(&sys);
            for b in out.boxes() {
                for p in samples(b) {
                    prop_assert!(sys.satisfied_by(&p), "{:?} fails at {:?}", b, p);
                }
                if sys.ordered() {
                    prop_assert!(ordered_feasible(b));
                }
            }
            let pts = brute_oracle(&sys, den.max(12));
            prop_assert!(!pts.is_empty());
            for p in &pts {
                prop_assert!(out.contains(p), "oracle point {:?} not covered", p);
            }
            prop_assert!(out.find_overlap().is_none());
            let n1 = out.normalize().unwrap();
            prop_assert_eq!(n1.normalize().unwrap(), n1);
        }

        #[test]
        fn refinement_is_conservative(n in 2u64..12, rhs in 0i64..12, a in 0i64..12, w in 1i64..12) {
            let lo = Rational::new(a, 12);
            let hi = Rational::new((a + w).min(12), 12);
            prop_assume!(lo < hi);
            let seed = BoxSet::new(1, vec![IntervalBox::new(vec![Interval::new(lo.clone(), hi.clone()).unwrap()])]).unwrap();
            let out = refine_step(&seed, n, rhs, &[]);
            for x in grid(24).into_iter().filter(|x| &lo <= x && x < &hi) {
                let hit = x.floor_of_multiple(n as i64) == rhs;
                prop_assert_eq!(out.contains(std::slice::from_ref(&x)), hit);
            }
        }
    }
}
