use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Half-open interval `[lo, hi)` with `0 <= lo < hi <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo.is_negative() || lo >= hi || hi > Rational::one() {
            return Err(Error::InvalidSystem(format!(
                "interval [{lo}, {hi}) is not inside [0, 1)"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        Interval { lo, hi }
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// `self` lies inside the closed interval `[lo, hi]`.
    pub fn within_closure(&self, lo: &Rational, hi: &Rational) -> bool {
        lo <= &self.lo && &self.hi <= hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Rational, Rational)>::deserialize(d)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Product of half-open intervals, one per free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalBox {
    intervals: Vec<Interval>,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.intervals().iter().enumerate() {
            if k > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl IntervalBox {
    pub fn new(intervals: Vec<Interval>) -> Self {
        IntervalBox { intervals }
    }

    pub fn unit(dim: usize) -> Self {
        IntervalBox {
            intervals: vec![Interval::unit(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && self
                .intervals
                .iter()
                .zip(point)
                .all(|(iv, x)| iv.contains(x))
    }

    pub fn midpoint(&self) -> Vec<Rational> {
        self.intervals.iter().map(Interval::midpoint).collect()
    }

    pub fn overlaps(&self, other: &IntervalBox) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .all(|(a, b)| a.overlaps(b))
    }

    /// Every interval lies in the closure of the matching `(lo, hi)` bound.
    pub fn within_closure(&self, bounds: &[(Rational, Rational)]) -> bool {
        bounds.len() == self.dim()
            && self
                .intervals
                .iter()
                .zip(bounds)
                .all(|(iv, (lo, hi))| iv.within_closure(lo, hi))
    }

    fn sort_key(&self) -> (Vec<&Rational>, Vec<&Rational>) {
        (
            self.intervals.iter().map(|i| &i.lo).collect(),
            self.intervals.iter().map(|i| &i.hi).collect(),
        )
    }
}

/// A disjoint union of equal-dimension boxes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxSet {
    dim: usize,
    boxes: Vec<IntervalBox>,
}

#[derive(Deserialize)]
struct RawBoxSet {
    dim: usize,
    boxes: Vec<IntervalBox>,
}

impl<'de> Deserialize<'de> for BoxSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawBoxSet::deserialize(d)?;
        BoxSet::new(raw.dim, raw.boxes).map_err(serde::de::Error::custom)
    }
}

impl BoxSet {
    /// Checks that every box has dimension `dim`. Disjointness is checked by
    /// [`BoxSet::normalize`].
    pub fn new(dim: usize, boxes: Vec<IntervalBox>) -> Result<Self> {
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::InvalidSystem(format!(
                "box of dimension {} in a set of dimension {dim}",
                b.dim()
            )));
        }
        Ok(BoxSet { dim, boxes })
    }

    pub(crate) fn from_parts(dim: usize, boxes: Vec<IntervalBox>) -> Self {
        debug_assert!(boxes.iter().all(|b| b.dim() == dim));
        BoxSet { dim, boxes }
    }

    pub fn empty(dim: usize) -> Self {
        BoxSet {
            dim,
            boxes: Vec::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        BoxSet {
            dim,
            boxes: vec![IntervalBox::unit(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[IntervalBox] {
        &self.boxes
    }

    pub fn into_boxes(self) -> Vec<IntervalBox> {
        self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.boxes.iter().any(|b| b.contains(point))
    }

    /// Sorts by lower-corner vector, then upper-corner vector.
    pub fn sort(&mut self) {
        self.boxes.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    /// First pair of overlapping boxes, if any.
    pub fn find_overlap(&self) -> Option<(usize, usize)> {
        for (i, a) in self.boxes.iter().enumerate() {
            for (j, b) in self.boxes.iter().enumerate().skip(i + 1) {
                if a.overlaps(b) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Merges boxes that differ in exactly one coordinate where their
    /// intervals abut, repeating until nothing merges, then sorts.
    ///
    /// Fails if two boxes overlap.
    pub fn normalize(&self) -> Result<BoxSet> {
        if let Some((i, j)) = self.find_overlap() {
            return Err(Error::InvariantBreach(format!(
                "boxes {i} and {j} overlap: {:?} / {:?}",
                self.boxes[i], self.boxes[j]
            )));
        }
        let mut boxes = self.boxes.clone();
        loop {
            let mut changed = false;
            for k in 0..self.dim {
                let (merged, any) = merge_along(boxes, k);
                boxes = merged;
                changed |= any;
            }
            if !changed {
                break;
            }
        }
        let mut out = BoxSet {
            dim: self.dim,
            boxes,
        };
        out.sort();
        Ok(out)
    }
}

fn merge_along(boxes: Vec<IntervalBox>, k: usize) -> (Vec<IntervalBox>, bool) {
    let mut groups: BTreeMap<Vec<Interval>, Vec<Interval>> = BTreeMap::new();
    for b in boxes {
        let mut rest = b.intervals;
        let iv = rest.remove(k);
        groups.entry(rest).or_default().push(iv);
    }
    let mut changed = false;
    let mut out = Vec::new();
    for (rest, mut ivs) in groups {
        ivs.sort();
        let mut runs: Vec<Interval> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match runs.last_mut() {
                Some(last) if last.hi == iv.lo => {
                    last.hi = iv.hi;
                    changed = true;
                }
                _ => runs.push(iv),
            }
        }
        for iv in runs {
            let mut intervals = rest.clone();
            intervals.insert(k, iv);
            out.push(IntervalBox { intervals });
        }
    }
    (out, changed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(q(a.0, a.1), q(b.0, b.1)).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(q(1, 2), q(1, 2)).is_err());
        assert!(Interval::new(q(-1, 2), q(1, 2)).is_err());
        assert!(Interval::new(q(1, 2), q(3, 2)).is_err());
        assert!(Interval::new(q(0, 1), q(1, 1)).is_ok());
    }

    #[test]
    fn abutting_merge() {
        let set = BoxSet::new(
            2,
            vec![
                IntervalBox::new(vec![iv((0, 1), (1, 3)), Interval::unit()]),
                IntervalBox::new(vec![iv((1, 3), (1, 2)), Interval::unit()]),
            ],
        )
        .unwrap();
        let n = set.normalize().unwrap();
        assert_eq!(
            n.boxes(),
            &[IntervalBox::new(vec![iv((0, 1), (1, 2)), Interval::unit()])]
        );
        assert_eq!(n.normalize().unwrap(), n);
    }

    #[test]
    fn empty_and_idempotent() {
        assert!(BoxSet::empty(3).normalize().unwrap().is_empty());
        let set = BoxSet::new(
            2,
            vec![
                IntervalBox::new(vec![iv((1, 2), (1, 1)), iv((0, 1), (1, 2))]),
                IntervalBox::new(vec![iv((0, 1), (1, 4)), iv((1, 2), (1, 1))]),
            ],
        )
        .unwrap();
        let once = set.normalize().unwrap();
        assert_eq!(once.len(), 2);
        assert_eq!(once.boxes()[0].intervals()[0].lo(), &q(0, 1));
        assert_eq!(once.normalize().unwrap(), once);
    }

    #[test]
    fn chained_merges_across_coordinates() {
        // Four quadrants of [0,1)^2 collapse to the unit square.
        let h = |a: i64| {
            if a == 0 {
                iv((0, 1), (1, 2))
            } else {
                iv((1, 2), (1, 1))
            }
        };
        let boxes = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| IntervalBox::new(vec![h(a), h(b)]))
            .collect();
        let n = BoxSet::new(2, boxes).unwrap().normalize().unwrap();
        assert_eq!(n.boxes(), &[IntervalBox::unit(2)]);
    }

    #[test]
    fn overlap_is_an_invariant_breach() {
        let set = BoxSet::new(
            1,
            vec![
                IntervalBox::new(vec![iv((0, 1), (1, 2))]),
                IntervalBox::new(vec![iv((1, 3), (1, 1))]),
            ],
        )
        .unwrap();
        assert!(matches!(set.normalize(), Err(Error::InvariantBreach(_))));
    }

    #[test]
    fn json_shape() {
        let set = BoxSet::new(1, vec![IntervalBox::new(vec![iv((1, 2), (1, 1))])]).unwrap();
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, r#"{"dim":1,"boxes":[[["1/2","1"]]]}"#);
        let back: BoxSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert!(serde_json::from_str::<BoxSet>(r#"{"dim":2,"boxes":[[["0","1"]]]}"#).is_err());
        assert!(serde_json::from_str::<BoxSet>(r#"{"dim":1,"boxes":[[["1","0"]]]}"#).is_err());
    }
}
