//! Exact rational scalars and the elementary integer predicates the rest of
//! the crate is written against.
//!
//! [`Rational`] is always stored reduced with a positive denominator. Values
//! whose numerator and denominator fit in an `i64` use an inline fast path;
//! anything larger is promoted to a heap-allocated big rational, so no
//! operation ever wraps or truncates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number.
///
/// Equality, ordering and hashing agree with the represented real number:
/// the representation is canonical (reduced, positive denominator, and the
/// big variant is only used when the small one cannot hold the value).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // num != i64::MIN so negation never overflows; den >= 1.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn fits_small(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    /// `num / den` from big integers, or `None` for a zero denominator.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 {
            match (num.checked_neg(), den.checked_neg()) {
                (Some(n), Some(d)) => (n, d),
                _ => return Self::from_big(BigRational::new(num.into(), den.into())),
            }
        } else {
            (num, den)
        };
        let g = Integer::gcd(&num, &den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if fits_small(num) && fits_small(den) {
            Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                num.into(),
                den.into(),
            ))))
        }
    }

    fn from_big(v: BigRational) -> Self {
        // BigRational::new already reduces and fixes the sign.
        match (v.numer().to_i128(), v.denom().to_i128()) {
            (Some(n), Some(d)) if fits_small(n) && fits_small(d) => Rational(Repr::Small {
                num: n as i64,
                den: d as i64,
            }),
            _ => Rational(Repr::Big(Box::new(v))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw((*num).into(), (*den).into()),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => (*num).into(),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => (*den).into(),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small { num, den } => Some((*num, *den)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// Greatest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => Integer::div_floor(num, den).into(),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    /// Least integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => Integer::div_ceil(num, den).into(),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn frac_part(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: Integer::mod_floor(num, den),
                den: *den,
            }),
            Repr::Big(b) => {
                let fl = BigRational::from_integer(b.floor().to_integer());
                Self::from_big((**b).clone() - fl)
            }
        }
    }

    /// `floor(n * self)` as a machine integer.
    ///
    /// This is the hot operation of the box solver. Panics if the result does
    /// not fit in `i64`, which cannot happen for values in `[0, 1)` and any
    /// realistic `n`.
    pub fn floor_of_multiple(&self, n: i64) -> i64 {
        if let Repr::Small { num, den } = &self.0 {
            if let Some(p) = num.checked_mul(n) {
                return Integer::div_floor(&p, den);
            }
            let p = *num as i128 * n as i128;
            return Integer::div_floor(&p, &(*den as i128))
                .to_i64()
                .expect("floor of multiple exceeds i64");
        }
        (self * &Rational::integer(n))
            .floor()
            .to_i64()
            .expect("floor of multiple exceeds i64")
    }

    /// `ceil(n * self)` as a machine integer.
    pub fn ceil_of_multiple(&self, n: i64) -> i64 {
        -(-self).floor_of_multiple(n)
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Arithmetic midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        (self + other) / Rational::integer(2)
    }
}

/// Greatest integer `<= x`.
pub fn rat_floor(x: &Rational) -> BigInt {
    x.floor()
}

/// `x - floor(x)`.
pub fn frac_part(x: &Rational) -> Rational {
    x.frac_part()
}

/// Membership in the set of positive integers not divisible by `q`.
pub fn in_gamma(q: u64, n: u64) -> bool {
    debug_assert!(q >= 2 && n >= 1);
    !n.is_multiple_of(q)
}

/// `x mod r` mapped into `[0, r)` for signed input.
pub fn residue(x: i64, r: u64) -> u64 {
    x.rem_euclid(r as i64) as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    Integer::gcd(&a, &b)
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: -num,
                den: *den,
            }),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

fn small_add(a: i64, b: i64, c: i64, d: i64) -> Option<Rational> {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let num = a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?;
    Some(Rational::from_i128(num, b.checked_mul(d)?))
}

fn small_mul(a: i64, b: i64, c: i64, d: i64) -> Option<Rational> {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    Some(Rational::from_i128(a.checked_mul(c)?, b.checked_mul(d)?))
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            if let Some(v) = small_add(*a, *b, *c, *d) {
                return v;
            }
        }
        Rational::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            if let Some(v) = small_mul(*a, *b, *c, *d) {
                return v;
            }
        }
        Rational::from_big(self.to_big() * rhs.to_big())
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            if let Some(v) = small_mul(*a, *b, *d, *c) {
                return v;
            }
        }
        Rational::from_big(self.to_big() / rhs.to_big())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational { (&self).$m(rhs) }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or `"p"`. Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a rational in p/q form: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => {
                if q.starts_with('-') {
                    return Err(bad());
                }
                (parse_int(p).ok_or_else(bad)?, parse_int(q).ok_or_else(bad)?)
            }
            None => (parse_int(s).ok_or_else(bad)?, BigInt::one()),
        };
        Rational::from_bigints(num, den).ok_or_else(bad)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn floor_examples() {
        assert_eq!(rat_floor(&q(36, 19)), BigInt::from(1));
        assert_eq!(rat_floor(&q(-1, 2)), BigInt::from(-1));
        assert_eq!(rat_floor(&q(3, 1)), BigInt::from(3));
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(frac_part(&q(90, 19)), q(14, 19));
        assert_eq!(frac_part(&q(7, 1)), Rational::zero());
        assert_eq!(frac_part(&q(12, 13)), q(12, 13));
        assert_eq!(frac_part(&q(-1, 3)), q(2, 3));
    }

    #[test]
    fn gamma_examples() {
        assert!(in_gamma(3, 16));
        assert!(!in_gamma(3, 27));
        assert!(in_gamma(19, 18));
    }

    #[test]
    fn reduced_on_construction() {
        let x = q(6, -4);
        assert_eq!(x.as_small(), Some((-3, 2)));
        assert_eq!(x, q(-3, 2));
        assert_eq!(q(0, -5).as_small(), Some((0, 1)));
    }

    #[test]
    fn text_form() {
        assert_eq!(q(12, 13).to_string(), "12/13");
        assert_eq!(q(6, 2).to_string(), "3");
        assert_eq!("25/13".parse::<Rational>().unwrap(), q(25, 13));
        assert_eq!("-4/6".parse::<Rational>().unwrap(), q(-2, 3));
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        for bad in ["0.5", "1/0", "", "/3", "1/", "1/-2", " 1/2", "+1/2", "a/b"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn big_values_round_trip_to_small() {
        let big = Rational::integer(i64::MAX);
        let prod = &big * &big;
        assert!(prod.as_small().is_none());
        let back = &prod / &big;
        assert_eq!(back.as_small(), Some((i64::MAX, 1)));
        assert_eq!(back, big);
        let tiny = q(1, i64::MAX) * q(1, 3);
        assert!(tiny.as_small().is_none());
        assert!(tiny < q(1, i64::MAX));
        assert_eq!(tiny.floor(), BigInt::zero());
        assert_eq!(tiny.frac_part(), tiny);
        assert_eq!((-&tiny).floor(), BigInt::from(-1));
    }

    #[test]
    fn i64_min_is_promoted() {
        let m = Rational::integer(i64::MIN);
        assert!(m.as_small().is_none());
        assert_eq!((-&m).to_string(), "9223372036854775808");
        assert_eq!(m.to_string(), i64::MIN.to_string());
    }

    #[test]
    fn floor_of_multiple_matches_floor() {
        let x = q(5, 13);
        for n in 0..60 {
            assert_eq!(
                BigInt::from(x.floor_of_multiple(n)),
                (&x * &Rational::integer(n)).floor()
            );
        }
        let near = q(i64::MAX - 1, i64::MAX);
        assert_eq!(near.floor_of_multiple(3), 2);
    }

    #[test]
    fn serde_uses_text_form() {
        let v: Vec<Rational> = serde_json::from_str(r#"["1/2","3","-7/21"]"#).unwrap();
        assert_eq!(v, vec![q(1, 2), q(3, 1), q(-1, 3)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-1/3"]"#);
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
    }
}
