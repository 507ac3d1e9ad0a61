use serde::{Deserialize, Deserializer, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// `sum_i floor(n x_i) = rhs`, the sum running over free and fixed coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Equation {
    pub n: u64,
    pub rhs: i64,
}

/// Keep a final box iff `x_i + x_j` can equal one of `sums`. Indices run over
/// free coordinates, then fixed ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSumFilter {
    pub i: usize,
    pub j: usize,
    pub sums: Vec<Rational>,
}

/// A validated system of floor-sum equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorSystem {
    free_dim: usize,
    fixed: Vec<Rational>,
    skip_modulus: Option<u64>,
    ordered: bool,
    equations: Vec<Equation>,
    pair_sum_filters: Vec<PairSumFilter>,
}

#[derive(Deserialize)]
struct RawSystem {
    free_dim: usize,
    #[serde(default)]
    fixed: Vec<Rational>,
    #[serde(default)]
    skip_modulus: Option<u64>,
    #[serde(default)]
    ordered: bool,
    equations: Vec<Equation>,
    #[serde(default)]
    pair_sum_filters: Vec<PairSumFilter>,
}

impl<'de> Deserialize<'de> for FloorSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawSystem::deserialize(d)?;
        FloorSystem::new(
            r.free_dim,
            r.fixed,
            r.skip_modulus,
            r.ordered,
            r.equations,
            r.pair_sum_filters,
        )
        .map_err(serde::de::Error::custom)
    }
}

impl FloorSystem {
    /// Validates and sorts the equations by `n`.
    pub fn new(
        free_dim: usize,
        fixed: Vec<Rational>,
        skip_modulus: Option<u64>,
        ordered: bool,
        mut equations: Vec<Equation>,
        pair_sum_filters: Vec<PairSumFilter>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSystem(m));
        if free_dim == 0 {
            return bad("free_dim must be positive".into());
        }
        if let Some(v) = fixed
            .iter()
            .find(|v| v.is_negative() || **v >= Rational::one())
        {
            return bad(format!("fixed value {v} not in [0, 1)"));
        }
        if let Some(q) = skip_modulus {
            if q < 2 {
                return bad(format!("skip modulus {q} must be at least 2"));
            }
            if let Some(e) = equations.iter().find(|e| e.n % q == 0) {
                return bad(format!(
                    "equation index {} is divisible by skip modulus {q}",
                    e.n
                ));
            }
        }
        equations.sort();
        if equations.iter().any(|e| e.n == 0) {
            return bad("equation index must be positive".into());
        }
        if let Some(w) = equations.windows(2).find(|w| w[0].n == w[1].n) {
            return bad(format!("equation index {} repeated", w[0].n));
        }
        let total = free_dim + fixed.len();
        for f in &pair_sum_filters {
            if f.i == f.j || f.i >= total || f.j >= total {
                return bad(format!(
                    "pair-sum filter ({}, {}) invalid for {total} coordinates",
                    f.i, f.j
                ));
            }
        }
        Ok(FloorSystem {
            free_dim,
            fixed,
            skip_modulus,
            ordered,
            equations,
            pair_sum_filters,
        })
    }

    /// Free coordinates only, no fixed values or filters.
    pub fn simple(free_dim: usize, ordered: bool, equations: Vec<Equation>) -> Result<Self> {
        Self::new(free_dim, Vec::new(), None, ordered, equations, Vec::new())
    }

    /// Equations `n -> rhs(n)` for `n` in `ns`, dropping indices divisible by
    /// `skip_modulus`.
    pub fn equations_from(
        ns: impl IntoIterator<Item = u64>,
        skip_modulus: Option<u64>,
        rhs: impl Fn(u64) -> i64,
    ) -> Vec<Equation> {
        ns.into_iter()
            .filter(|n| skip_modulus.is_none_or(|q| n % q != 0))
            .map(|n| Equation { n, rhs: rhs(n) })
            .collect()
    }

    pub fn with_pair_sum_filters(mut self, filters: Vec<PairSumFilter>) -> Result<Self> {
        self.pair_sum_filters = filters;
        Self::new(
            self.free_dim,
            self.fixed,
            self.skip_modulus,
            self.ordered,
            self.equations,
            self.pair_sum_filters,
        )
    }

    pub fn free_dim(&self) -> usize {
        self.free_dim
    }

    pub fn fixed(&self) -> &[Rational] {
        &self.fixed
    }

    pub fn skip_modulus(&self) -> Option<u64> {
        self.skip_modulus
    }

    pub fn ordered(&self) -> bool {
        self.ordered
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn pair_sum_filters(&self) -> &[PairSumFilter] {
        &self.pair_sum_filters
    }

    /// `rhs` minus the fixed coordinates' contribution at `n`.
    pub(crate) fn free_target(fixed: &[Rational], n: u64, rhs: i64) -> i64 {
        rhs - fixed
            .iter()
            .map(|v| v.floor_of_multiple(n as i64))
            .sum::<i64>()
    }

    /// Whether a full point (free then fixed) satisfies every equation.
    pub fn satisfied_by(&self, free: &[Rational]) -> bool {
        free.len() == self.free_dim
            && self.equations.iter().all(|e| {
                let n = e.n as i64;
                free.iter()
                    .chain(&self.fixed)
                    .map(|x| x.floor_of_multiple(n))
                    .sum::<i64>()
                    == e.rhs
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_defaults() {
        let src = r#"{"free_dim": 3, "fixed": ["1/3", "2/3"], "skip_modulus": 3,
            "ordered": true, "equations": [{"n": 4, "rhs": 5}, {"n": 2, "rhs": 1}],
            "pair_sum_filters": [{"i": 0, "j": 4, "sums": ["1/2"]}]}"#;
        let sys: FloorSystem = serde_json::from_str(src).unwrap();
        assert_eq!(sys.equations()[0].n, 2);
        let back: FloorSystem =
            serde_json::from_str(&serde_json::to_string(&sys).unwrap()).unwrap();
        assert_eq!(back, sys);

        let min: FloorSystem =
            serde_json::from_str(r#"{"free_dim": 1, "equations": [{"n": 2, "rhs": 1}]}"#).unwrap();
        assert!(!min.ordered() && min.fixed().is_empty() && min.skip_modulus().is_none());
    }

    #[test]
    fn rejects_invalid_systems() {
        let eq = |n, rhs| Equation { n, rhs };
        assert!(FloorSystem::simple(0, false, vec![]).is_err());
        assert!(FloorSystem::simple(2, false, vec![eq(2, 0), eq(2, 1)]).is_err());
        assert!(FloorSystem::simple(2, false, vec![eq(0, 0)]).is_err());
        assert!(FloorSystem::new(2, vec![Rational::one()], None, false, vec![], vec![]).is_err());
        assert!(FloorSystem::new(2, vec![], Some(3), false, vec![eq(6, 1)], vec![]).is_err());
        assert!(FloorSystem::new(2, vec![], Some(1), false, vec![], vec![]).is_err());
        let pf = |i, j| PairSumFilter {
            i,
            j,
            sums: vec![Rational::new(1, 2)],
        };
        assert!(FloorSystem::new(2, vec![], None, false, vec![], vec![pf(1, 1)]).is_err());
        assert!(FloorSystem::new(2, vec![], None, false, vec![], vec![pf(0, 2)]).is_err());
    }

    #[test]
    fn equation_generation_skips_multiples() {
        let eqs = FloorSystem::equations_from(2..=7, Some(3), |n| 2 * n as i64 - 3);
        let ns: Vec<u64> = eqs.iter().map(|e| e.n).collect();
        assert_eq!(ns, vec![2, 4, 5, 7]);
        assert_eq!(eqs[1].rhs, 5);
    }
}
