//! Cyclic quotient singularities `1/r(a_1, ..., a_d)` and their numerical
//! invariants.
//!
//! Everything here is computed from the toric formula
//!
//! ```text
//! mld = min_{1 <= j <= r} sum_i (1 + j a_i / r - ceil(j a_i / r))
//! ```
//!
//! in integer arithmetic: `r` times the `j`-th summand is `(j a_i mod r)`,
//! or `r` when that residue vanishes.

mod bset;
mod enumerate;
mod sets;

pub use bset::{in_b, BDisjunct, BMembership, BRoleWitness};
pub use enumerate::{enumerate, EnumerateOptions, Found};
pub use sets::{in_a, Disjunct, DisjunctFamily, Level, Membership, RoleWitness};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, in_gamma, Rational};
use crate::error::{Error, Result};

/// Largest supported group order; keeps every `j * a_i` product inside `u64`.
pub const MAX_ORDER: u64 = u32::MAX as u64;

/// The singularity `1/r(a_1, ..., a_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclicQuotient {
    r: u64,
    weights: Vec<u64>,
}

#[derive(Deserialize)]
struct RawQuotient {
    r: u64,
    weights: Vec<u64>,
}

impl<'de> Deserialize<'de> for CyclicQuotient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawQuotient::deserialize(d)?;
        CyclicQuotient::new(raw.r, raw.weights).map_err(serde::de::Error::custom)
    }
}

impl CyclicQuotient {
    /// Validates `1 <= a_i <= r`, `d >= 1` and `r <= MAX_ORDER`.
    pub fn new(r: u64, weights: Vec<u64>) -> Result<Self> {
        if r == 0 || r > MAX_ORDER {
            return Err(Error::InvalidSingularity(format!(
                "group order {r} outside [1, {MAX_ORDER}]"
            )));
        }
        if weights.is_empty() {
            return Err(Error::InvalidSingularity("no weights".into()));
        }
        if let Some(a) = weights.iter().find(|&&a| a == 0 || a > r) {
            return Err(Error::InvalidSingularity(format!(
                "weight {a} outside [1, {r}]"
            )));
        }
        Ok(CyclicQuotient { r, weights })
    }

    pub fn order(&self) -> u64 {
        self.r
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// All weights coprime to `r`.
    pub fn is_isolated(&self) -> bool {
        self.weights.iter().all(|&a| gcd(a, self.r) == 1)
    }

    /// `(a_1 / r, ..., a_d / r)`.
    pub fn associated_point(&self) -> Vec<Rational> {
        self.weights
            .iter()
            .map(|&a| Rational::new(a as i64, self.r as i64))
            .collect()
    }

    /// Same singularity with weights sorted ascending.
    pub fn sorted(&self) -> CyclicQuotient {
        let mut weights = self.weights.clone();
        weights.sort_unstable();
        CyclicQuotient { r: self.r, weights }
    }

    fn require_interior(&self) -> Result<()> {
        if self.weights.contains(&self.r) {
            return Err(Error::Precondition(format!(
                "{self}: associated point not in the open unit cube (some a_i = r)"
            )));
        }
        Ok(())
    }

    fn require_dim5(&self) -> Result<()> {
        if self.dim() != 5 {
            return Err(Error::Precondition(format!("{self}: expected dimension 5")));
        }
        Ok(())
    }
}

impl std::fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(", self.r)?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `r` times the `j`-th toric summand.
fn scaled_term(j: u64, r: u64, weights: &[u64]) -> u64 {
    weights
        .iter()
        .map(|&a| match (j * a) % r {
            0 => r,
            t => t,
        })
        .sum()
}

/// `r * mld`, with an early exit: returns as soon as some `j` gives a value
/// strictly below `stop_below`. Pass `0` to disable the exit.
pub(crate) fn scaled_mld_bounded(r: u64, weights: &[u64], stop_below: u64) -> u64 {
    let mut residues: Vec<u64> = weights.iter().map(|&a| a % r).collect();
    let steps: Vec<u64> = residues.clone();
    let mut best = u64::MAX;
    for _ in 1..=r {
        let s: u64 = residues.iter().map(|&t| if t == 0 { r } else { t }).sum();
        if s < best {
            best = s;
            if best < stop_below {
                return best;
            }
        }
        for (t, &a) in residues.iter_mut().zip(&steps) {
            *t += a;
            if *t >= r {
                *t -= r;
            }
        }
    }
    best
}

/// Value of the minimal log discrepancy together with every minimising `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldResult {
    pub value: Rational,
    pub witnesses: Vec<u64>,
}

/// Minimal log discrepancy by the toric formula, minimising over `j in [1, r]`.
pub fn mld(cq: &CyclicQuotient) -> MldResult {
    let r = cq.r;
    let mut best = u64::MAX;
    let mut witnesses = Vec::new();
    for j in 1..=r {
        let s = scaled_term(j, r, &cq.weights);
        if s < best {
            best = s;
            witnesses.clear();
        }
        if s == best {
            witnesses.push(j);
        }
    }
    MldResult {
        value: Rational::new(best as i64, r as i64),
        witnesses,
    }
}

/// `f(n) = sum_i floor(n a_i / r)`. Requires every `a_i < r`.
pub fn f_value(cq: &CyclicQuotient, n: u64) -> Result<u64> {
    cq.require_interior()?;
    Ok(f_unchecked(cq, n))
}

fn f_unchecked(cq: &CyclicQuotient, n: u64) -> u64 {
    cq.weights.iter().map(|&a| n * a / cq.r).sum()
}

/// Applies the automorphism `a_i -> j a_i mod r` (residue 0 becomes `r`).
pub fn relabel(cq: &CyclicQuotient, j: u64) -> Result<CyclicQuotient> {
    if gcd(j, cq.r) != 1 {
        return Err(Error::Precondition(format!(
            "relabel by {j} is not a unit modulo {}",
            cq.r
        )));
    }
    let r = cq.r;
    let weights = cq
        .weights
        .iter()
        .map(|&a| match (j % r) * a % r {
            0 => r,
            t => t,
        })
        .collect();
    Ok(CyclicQuotient { r, weights })
}

/// Rescales at the smallest minimising `j`: `r' = r / gcd(j, r)` and
/// `a_i' = r' (1 + j a_i / r - ceil(j a_i / r))`.
///
/// The result has the same mld, which is attained at `j = 1`.
pub fn reduce(cq: &CyclicQuotient) -> CyclicQuotient {
    let j = mld(cq).witnesses[0];
    let r = cq.r;
    let g = gcd(j, r);
    let r2 = r / g;
    let weights = cq
        .weights
        .iter()
        .map(|&a| match (j * a) % r {
            0 => r2,
            t => t / g,
        })
        .collect();
    CyclicQuotient { r: r2, weights }
}

/// Slot semantics of a 5-dimensional singularity: three weights that must be
/// units modulo `r`, and an ordered pair `(a_4, a_5)` with equal gcd.
///
/// Indices are 0-based positions into the weight vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RoleAssignment {
    pub coprime_slots: [usize; 3],
    pub paired_slots: [usize; 2],
}

impl RoleAssignment {
    /// Weights in their given order: coprime `0, 1, 2`, paired `(3, 4)`.
    pub const IDENTITY: RoleAssignment = RoleAssignment {
        coprime_slots: [0, 1, 2],
        paired_slots: [3, 4],
    };

    /// The 20 assignments: unordered coprime triple, ordered pair.
    pub fn all() -> Vec<RoleAssignment> {
        let mut out = Vec::with_capacity(20);
        for p in 0..5 {
            for q in 0..5 {
                if p == q {
                    continue;
                }
                let mut coprime = [0; 3];
                let mut k = 0;
                for i in 0..5 {
                    if i != p && i != q {
                        coprime[k] = i;
                        k += 1;
                    }
                }
                out.push(RoleAssignment {
                    coprime_slots: coprime,
                    paired_slots: [p, q],
                });
            }
        }
        out
    }

    fn is_partition(&self) -> bool {
        let mut seen = [false; 5];
        for &i in self.coprime_slots.iter().chain(&self.paired_slots) {
            if i >= 5 || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// Gcd structure holds for `cq`: coprime slots are units and the two
    /// paired weights share their gcd with `r`.
    pub fn fits(&self, cq: &CyclicQuotient) -> bool {
        if cq.dim() != 5 || !self.is_partition() {
            return false;
        }
        let r = cq.r;
        let w = &cq.weights;
        self.coprime_slots.iter().all(|&i| gcd(w[i], r) == 1)
            && gcd(w[self.paired_slots[0]], r) == gcd(w[self.paired_slots[1]], r)
    }

    pub fn validate(&self, cq: &CyclicQuotient) -> Result<()> {
        if self.fits(cq) {
            Ok(())
        } else {
            Err(Error::InvalidRoles(format!("{self:?} for {cq}")))
        }
    }

    pub fn a4(&self, cq: &CyclicQuotient) -> u64 {
        cq.weights[self.paired_slots[0]]
    }

    pub fn a5(&self, cq: &CyclicQuotient) -> u64 {
        cq.weights[self.paired_slots[1]]
    }
}

/// `q = r / gcd(a_4, r)`.
pub fn assoc_denominator(cq: &CyclicQuotient, roles: &RoleAssignment) -> Result<u64> {
    roles.validate(cq)?;
    Ok(cq.r / gcd(roles.a4(cq), cq.r))
}

fn condition_inputs(cq: &CyclicQuotient, roles: &RoleAssignment) -> Result<u64> {
    cq.require_dim5()?;
    cq.require_interior()?;
    assoc_denominator(cq, roles)
}

fn gamma(q: u64, n: u64) -> bool {
    // q = 1 happens only for r = 1, which has no interior weights.
    q < 2 || in_gamma(q, n)
}

/// Condition `D(n, c)`: `n` not divisible by `q` and `f(n) = 2n - 2 - c`.
pub fn cond_d(cq: &CyclicQuotient, roles: &RoleAssignment, n: u64, c: u64) -> Result<bool> {
    let q = condition_inputs(cq, roles)?;
    Ok(n >= 1 && gamma(q, n) && f_unchecked(cq, n) as i64 == 2 * n as i64 - 2 - c as i64)
}

/// Condition `C(n)`: `n - 1, n + 1` not divisible by `q` and
/// `f(n - 1) + 5 <= f(n + 1)`.
pub fn cond_c(cq: &CyclicQuotient, roles: &RoleAssignment, n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition(format!("C(n) needs n >= 2, got {n}")));
    }
    let q = condition_inputs(cq, roles)?;
    Ok(gamma(q, n - 1) && gamma(q, n + 1) && f_unchecked(cq, n - 1) + 5 <= f_unchecked(cq, n + 1))
}

/// Checks `2n - 3 - (n + 1) eps <= f(n) <= 2n - 2 - (n - 1) eps` for every
/// `n in [2, r - 1]` not divisible by `q`, with `eps = 2 - mld`.
///
/// The singularity must have gcd structure `roles`, lie below mld 2 and have
/// its mld attained at `j = 1`; otherwise an error is returned rather than
/// `false`.
pub fn check_floor_sum_bounds(cq: &CyclicQuotient, roles: &RoleAssignment) -> Result<bool> {
    let q = condition_inputs(cq, roles)?;
    let r = cq.r as i64;
    let scaled = mld(cq).value * Rational::integer(r);
    let sum = cq.weight_sum() as i64;
    if scaled != Rational::integer(sum) || sum >= 2 * r {
        return Err(Error::Precondition(format!(
            "{cq}: mld is not sum(a_i)/r below 2"
        )));
    }
    // Work with r * eps = 2r - sum, an integer.
    let r_eps = 2 * r - sum;
    for n in 2..r {
        if !gamma(q, n as u64) {
            continue;
        }
        let f = f_unchecked(cq, n as u64) as i64;
        let lower = (2 * n - 3) * r - (n + 1) * r_eps;
        let upper = (2 * n - 2) * r - (n - 1) * r_eps;
        if !(lower <= f * r && f * r <= upper) {
            return Ok(false);
        }
    }
    Ok(true)
}
