use super::system::FloorSystem;
use crate::arith::Rational;

/// `p / q` for `q <= max_den`, `0 <= p < q`, plus the midpoints between
/// consecutive values and between the largest value and 1. Sorted.
pub fn grid(max_den: u64) -> Vec<Rational> {
    let mut base: Vec<Rational> = (1..=max_den as i64)
        .flat_map(|q| (0..q).map(move |p| Rational::new(p, q)))
        .collect();
    base.sort();
    base.dedup();
    let mut out = Vec::with_capacity(2 * base.len());
    for (k, x) in base.iter().enumerate() {
        out.push(x.clone());
        let next = base.get(k + 1).cloned().unwrap_or_else(Rational::one);
        out.push(x.midpoint(&next));
    }
    out
}

/// Every grid point satisfying all equations, the ordering and (if any) one
/// of the pair-sum constraints, in lexicographic order.
///
/// Searches the grid by backtracking on integer floor tables; a branch is cut
/// only when some equation can no longer be met by any completion.
pub fn brute_oracle(sys: &FloorSystem, max_den: u64) -> Vec<Vec<Rational>> {
    assert!(max_den >= 2, "grid denominator must be at least 2");
    let g = grid(max_den);
    let eqs: Vec<(i64, i64)> = sys
        .equations()
        .iter()
        .map(|e| {
            let fixed: i64 = sys
                .fixed()
                .iter()
                .map(|v| v.floor_of_multiple(e.n as i64))
                .sum();
            (e.n as i64, e.rhs - fixed)
        })
        .collect();
    let floors: Vec<Vec<i64>> = eqs
        .iter()
        .map(|&(n, _)| g.iter().map(|x| x.floor_of_multiple(n)).collect())
        .collect();

    let mut search = Search {
        sys,
        grid: &g,
        eqs: &eqs,
        floors: &floors,
        acc: vec![0; eqs.len()],
        idx: Vec::with_capacity(sys.free_dim()),
        out: Vec::new(),
    };
    search.go();
    search.out
}

struct Search<'a> {
    sys: &'a FloorSystem,
    grid: &'a [Rational],
    eqs: &'a [(i64, i64)],
    floors: &'a [Vec<i64>],
    acc: Vec<i64>,
    idx: Vec<usize>,
    out: Vec<Vec<Rational>>,
}

impl Search<'_> {
    fn go(&mut self) {
        let d = self.sys.free_dim();
        let depth = self.idx.len();
        if depth == d {
            if self.acc.iter().zip(self.eqs).all(|(a, e)| *a == e.1) {
                let point: Vec<Rational> = self.idx.iter().map(|&i| self.grid[i].clone()).collect();
                if self.pair_sums_hold(&point) {
                    self.out.push(point);
                }
            }
            return;
        }
        let start = match (self.sys.ordered(), self.idx.last()) {
            (true, Some(&i)) => i,
            _ => 0,
        };
        let rest = (d - depth - 1) as i64;
        'grid: for i in start..self.grid.len() {
            for (k, &(n, rhs)) in self.eqs.iter().enumerate() {
                let s = self.acc[k] + self.floors[k][i];
                // Ordered completions are at least the current value.
                let min_rest = if self.sys.ordered() {
                    self.floors[k][i] * rest
                } else {
                    0
                };
                if s + min_rest > rhs {
                    // Floors grow along the sorted grid, so no later value fits.
                    break 'grid;
                }
                if s + rest * (n - 1) < rhs {
                    continue 'grid;
                }
            }
            for k in 0..self.eqs.len() {
                self.acc[k] += self.floors[k][i];
            }
            self.idx.push(i);
            self.go();
            self.idx.pop();
            for k in 0..self.eqs.len() {
                self.acc[k] -= self.floors[k][i];
            }
        }
    }

    fn pair_sums_hold(&self, free: &[Rational]) -> bool {
        let filters = self.sys.pair_sum_filters();
        if filters.is_empty() {
            return true;
        }
        let at = |k: usize| {
            if k < free.len() {
                &free[k]
            } else {
                &self.sys.fixed()[k - free.len()]
            }
        };
        filters
            .iter()
            .any(|f| f.sums.iter().any(|s| &(at(f.i) + at(f.j)) == s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxsolver::system::Equation;

    #[test]
    fn grid_contents() {
        let g = grid(2);
        assert_eq!(
            g,
            vec![
                Rational::zero(),
                Rational::new(1, 4),
                Rational::new(1, 2),
                Rational::new(3, 4)
            ]
        );
    }

    #[test]
    fn one_dimensional_half_line() {
        let sys = FloorSystem::simple(1, false, vec![Equation { n: 2, rhs: 1 }]).unwrap();
        let pts = brute_oracle(&sys, 4);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p[0] >= Rational::new(1, 2)));
        assert!(pts.contains(&vec![Rational::new(1, 2)]));
        assert!(pts.contains(&vec![Rational::new(3, 4)]));
        // Midpoint between 3/4 and 1.
        assert!(pts.contains(&vec![Rational::new(7, 8)]));
        let all = grid(4);
        let expected: Vec<_> = all
            .into_iter()
            .filter(|x| *x >= Rational::new(1, 2))
            .collect();
        assert_eq!(pts.len(), expected.len());
    }

    #[test]
    fn ordered_points_are_nondecreasing_and_sorted() {
        let eqs = FloorSystem::equations_from(2..=5, None, |n| n as i64 - 1);
        let sys = FloorSystem::simple(3, true, eqs).unwrap();
        let pts = brute_oracle(&sys, 10);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p.windows(2).all(|w| w[0] <= w[1])));
        assert!(pts.iter().all(|p| sys.satisfied_by(p)));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
