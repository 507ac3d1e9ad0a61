//! Membership in the nested families of special 5-dimensional singularities.

use serde::{Deserialize, Serialize};

use super::{mld, CyclicQuotient, RoleAssignment};
use crate::arith::{gcd, Rational};
use crate::error::{Error, Result};

/// Nesting level of the special sets.
///
/// 1. interior weights (`a_i < r`) and `mld < 2`;
/// 2. adds the unit/paired gcd structure;
/// 3. adds `gcd(sum a_i, r) = 1`;
/// 4. adds one of the divisibility disjuncts;
/// 5. isolated and level 1 (no role structure needed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Level {
    Interior = 1,
    Structured = 2,
    UnitSum = 3,
    Divisible = 4,
    Isolated = 5,
}

impl TryFrom<u8> for Level {
    type Error = Error;
    fn try_from(v: u8) -> Result<Level> {
        Ok(match v {
            1 => Level::Interior,
            2 => Level::Structured,
            3 => Level::UnitSum,
            4 => Level::Divisible,
            5 => Level::Isolated,
            _ => return Err(Error::Parse(format!("set level {v} not in 1..=5"))),
        })
    }
}

impl From<Level> for u8 {
    fn from(l: Level) -> u8 {
        l as u8
    }
}

/// Which of the two printed disjunct lists a [`Disjunct`] comes from.
///
/// The set definition and the classification statement phrase the level-4
/// condition differently; both are accepted and each witness keeps its
/// provenance so the difference stays observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisjunctFamily {
    SetDefinition,
    Classification,
}

/// A level-4 divisibility condition that holds, with the slots it used.
/// `a1`, `a2` are positions of coprime-slot weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Disjunct {
    /// `r | a1 + a4 + a5`
    UnitPlusPair { a1: usize },
    /// `r | 2 a4 + a5`
    DoubledPaired,
    /// `r | 2 a1 + a5` and `gcd(a4, r) <= 2`
    DoubledUnitSmallGcd { a1: usize },
    /// `r | a1 + a2 + a5`
    TwoUnitsPlusPaired { a1: usize, a2: usize },
    /// `r | 2 a1 + a5`
    DoubledUnit { a1: usize },
    /// `r | 2 a4 + a5` and `gcd(a4, r) = gcd(a5, r) <= 2`
    DoubledPairedSmallGcd,
}

impl Disjunct {
    pub fn family(&self) -> DisjunctFamily {
        match self {
            Disjunct::UnitPlusPair { .. }
            | Disjunct::DoubledPaired
            | Disjunct::DoubledUnitSmallGcd { .. } => DisjunctFamily::SetDefinition,
            _ => DisjunctFamily::Classification,
        }
    }
}

/// A role assignment under which `cq` meets the requested level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleWitness {
    pub roles: RoleAssignment,
    /// Divisibility conditions that fired; empty below level 4.
    pub disjuncts: Vec<Disjunct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Member and `mld = sum(a_i) / r`.
    pub bar: bool,
    pub mld: Rational,
    /// Every witnessing role assignment. Level 1 has none.
    pub roles: Vec<RoleWitness>,
}

fn divides(r: u64, x: u64) -> bool {
    x.is_multiple_of(r)
}

fn level4_disjuncts(cq: &CyclicQuotient, roles: &RoleAssignment) -> Vec<Disjunct> {
    let r = cq.order();
    let w = cq.weights();
    let (a4, a5) = (roles.a4(cq), roles.a5(cq));
    let g4 = gcd(a4, r);
    let mut out = Vec::new();
    for &i in &roles.coprime_slots {
        if divides(r, w[i] + a4 + a5) {
            out.push(Disjunct::UnitPlusPair { a1: i });
        }
    }
    if divides(r, 2 * a4 + a5) {
        out.push(Disjunct::DoubledPaired);
    }
    for &i in &roles.coprime_slots {
        if divides(r, 2 * w[i] + a5) && g4 <= 2 {
            out.push(Disjunct::DoubledUnitSmallGcd { a1: i });
        }
    }
    let c = roles.coprime_slots;
    for (x, y) in [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])] {
        if divides(r, w[x] + w[y] + a5) {
            out.push(Disjunct::TwoUnitsPlusPaired { a1: x, a2: y });
        }
    }
    for &i in &roles.coprime_slots {
        if divides(r, 2 * w[i] + a5) {
            out.push(Disjunct::DoubledUnit { a1: i });
        }
    }
    if divides(r, 2 * a4 + a5) && g4 == gcd(a5, r) && g4 <= 2 {
        out.push(Disjunct::DoubledPairedSmallGcd);
    }
    out
}

/// Tests membership of `cq` in the level-`level` set, optionally restricted
/// to `mld > 2 - eps`. Role assignments are searched exhaustively since the
/// sets identify tuples up to reordering.
pub fn in_a(cq: &CyclicQuotient, level: Level, eps: Option<&Rational>) -> Result<Membership> {
    cq.require_dim5()?;
    let r = cq.order();
    let m = mld(cq).value;
    let two = Rational::integer(2);
    let interior = cq.weights().iter().all(|&a| a < r) && m < two;
    let eps_ok = eps.is_none_or(|e| m > &two - e);
    let not_member = |m: Rational| Membership {
        member: false,
        bar: false,
        mld: m,
        roles: Vec::new(),
    };
    if !interior || !eps_ok {
        return Ok(not_member(m));
    }

    let (member, roles) = match level {
        Level::Interior => (true, Vec::new()),
        Level::Isolated => {
            if !cq.is_isolated() {
                return Ok(not_member(m));
            }
            let roles: Vec<_> = RoleAssignment::all()
                .into_iter()
                .map(|roles| RoleWitness {
                    roles,
                    disjuncts: Vec::new(),
                })
                .collect();
            (true, roles)
        }
        _ => {
            if level >= Level::UnitSum && gcd(cq.weight_sum(), r) != 1 {
                return Ok(not_member(m));
            }
            let roles: Vec<_> = RoleAssignment::all()
                .into_iter()
                .filter(|ra| ra.fits(cq))
                .filter_map(|roles| {
                    if level == Level::Divisible {
                        let disjuncts = level4_disjuncts(cq, &roles);
                        (!disjuncts.is_empty()).then_some(RoleWitness { roles, disjuncts })
                    } else {
                        Some(RoleWitness {
                            roles,
                            disjuncts: Vec::new(),
                        })
                    }
                })
                .collect();
            (!roles.is_empty(), roles)
        }
    };
    let bar = member && m == Rational::new(cq.weight_sum() as i64, r as i64);
    Ok(Membership {
        member,
        bar,
        mld: m,
        roles,
    })
}
