//! Finite unions of closed intervals with exact rational endpoints.
//!
//! This is the continuous set model: canonical form is sorted, pairwise
//! disjoint, non-touching intervals (touching closed intervals merge), with
//! degenerate single-point intervals first-class. On this class the inner
//! Lebesgue measure is just the sum of lengths, and structural equality is
//! set equality.

use crate::continuum::ContinuumError;
use crate::rational::{parse_rational, rational_to_string, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion {
            intervals: Vec::new(),
        }
    }

    /// Single point `{r}`.
    pub fn point(r: Rational) -> Self {
        IntervalUnion {
            intervals: vec![(r.clone(), r)],
        }
    }

    /// Closed interval `[lo, hi]`.
    pub fn segment(lo: Rational, hi: Rational) -> Result<Self, ContinuumError> {
        IntervalUnion::from_endpoints(vec![(lo, hi)])
    }

    /// Builds from arbitrary (possibly overlapping, unsorted) closed
    /// intervals; rejects any pair with `lo > hi`.
    pub fn from_endpoints(pairs: Vec<(Rational, Rational)>) -> Result<Self, ContinuumError> {
        for (lo, hi) in &pairs {
            if lo > hi {
                return Err(ContinuumError::InvertedInterval {
                    lo: rational_to_string(lo),
                    hi: rational_to_string(hi),
                });
            }
        }
        Ok(Self::normalized(pairs))
    }

    fn normalized(mut pairs: Vec<(Rational, Rational)>) -> Self {
        pairs.sort();
        let mut intervals: Vec<(Rational, Rational)> = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            match intervals.last_mut() {
                // Touching closed intervals merge.
                Some((_, end)) if lo <= *end => {
                    if hi > *end {
                        *end = hi;
                    }
                }
                _ => intervals.push((lo, hi)),
            }
        }
        IntervalUnion { intervals }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.intervals.first().map(|(lo, _)| lo)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.intervals.last().map(|(_, hi)| hi)
    }

    /// Inner Lebesgue measure: the sum of interval lengths.
    pub fn measure(&self) -> Result<Rational, ContinuumError> {
        if self.is_empty() {
            return Err(ContinuumError::Empty);
        }
        Ok(self
            .intervals
            .iter()
            .fold(Rational::zero(), |acc, (lo, hi)| acc + (hi - lo)))
    }

    /// `sup - inf`.
    pub fn diam(&self) -> Result<Rational, ContinuumError> {
        if self.is_empty() {
            return Err(ContinuumError::Empty);
        }
        Ok(self.sup().unwrap() - self.inf().unwrap())
    }

    /// Minkowski sum: union of all pairwise interval sums
    /// `[a+c, b+d]`, normalized.
    pub fn minkowski_sum(&self, other: &IntervalUnion) -> Result<IntervalUnion, ContinuumError> {
        if self.is_empty() || other.is_empty() {
            return Err(ContinuumError::Empty);
        }
        let mut pairs = Vec::with_capacity(self.intervals.len() * other.intervals.len());
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                pairs.push((a + c, b + d));
            }
        }
        Ok(Self::normalized(pairs))
    }

    /// Exact clip to `[lo, hi]`; `lo > hi` is an error.
    pub fn intersect_window(
        &self,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<IntervalUnion, ContinuumError> {
        if lo > hi {
            return Err(ContinuumError::InvertedInterval {
                lo: rational_to_string(lo),
                hi: rational_to_string(hi),
            });
        }
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            let start = a.max(lo).clone();
            let end = b.min(hi).clone();
            if start <= end {
                out.push((start, end));
            }
        }
        Ok(IntervalUnion { intervals: out })
    }

    pub fn translate(&self, t: &Rational) -> IntervalUnion {
        IntervalUnion {
            intervals: self.intervals.iter().map(|(a, b)| (a + t, b + t)).collect(),
        }
    }

    /// `{d - x : x ∈ self}`.
    pub fn reflect(&self, d: &Rational) -> IntervalUnion {
        IntervalUnion {
            intervals: self
                .intervals
                .iter()
                .rev()
                .map(|(a, b)| (d - b, d - a))
                .collect(),
        }
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut pairs = self.intervals.clone();
        pairs.extend(other.intervals.iter().cloned());
        Self::normalized(pairs)
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(a, b)| a <= x && x <= b)
    }

    /// Whether `[lo, hi] ⊆ self`. A closed interval lies in the union iff
    /// it lies in a single component (components are separated).
    pub fn contains_interval(&self, lo: &Rational, hi: &Rational) -> bool {
        self.intervals.iter().any(|(a, b)| a <= lo && hi <= b)
    }

    /// `λ(self ∩ (-∞, x])`, exact.
    pub fn measure_up_to(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in &self.intervals {
            if a > x {
                break;
            }
            acc += b.min(x) - a;
        }
        acc
    }

    /// Closure of the set difference `self \ other`, as interval pieces.
    /// Used to extract witnesses; pieces may be degenerate points.
    pub fn difference_closure(&self, other: &IntervalUnion) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            // Uncovered region within [a, b] starts at `cur`; `open` records
            // whether `cur` itself is already covered (region is (cur, b]).
            let mut cur = a.clone();
            let mut open = false;
            let mut exhausted = false;
            for (c, d) in &other.intervals {
                if c > b {
                    break;
                }
                if d < &cur {
                    continue;
                }
                if c > &cur {
                    // Piece before [c, d]; its closure regains both ends.
                    out.push((cur.clone(), c.clone().min(b.clone())));
                }
                if d >= b {
                    exhausted = true;
                    break;
                }
                cur = d.clone();
                open = true;
            }
            if !exhausted && (&cur < b || !open) {
                out.push((cur, b.clone()));
            }
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let dto = IntervalUnionDto {
            intervals: self
                .intervals
                .iter()
                .map(|(a, b)| (rational_to_string(a), rational_to_string(b)))
                .collect(),
        };
        serde_json::to_string(&dto).expect("serializing strings cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<IntervalUnion, ContinuumError> {
        let dto: IntervalUnionDto =
            serde_json::from_str(s).map_err(|e| ContinuumError::Json(e.to_string()))?;
        let mut pairs = Vec::with_capacity(dto.intervals.len());
        for (lo, hi) in dto.intervals {
            let lo = parse_rational(&lo).map_err(ContinuumError::Json)?;
            let hi = parse_rational(&hi).map_err(ContinuumError::Json)?;
            pairs.push((lo, hi));
        }
        IntervalUnion::from_endpoints(pairs)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalUnionDto {
    intervals: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn iu(pairs: &[(i64, i64, i64, i64)]) -> IntervalUnion {
        IntervalUnion::from_endpoints(
            pairs
                .iter()
                .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn measure_and_diam() {
        let u = iu(&[(0, 1, 1, 1), (2, 1, 3, 1)]);
        assert_eq!(u.measure().unwrap(), rat_int(2));
        assert_eq!(u.diam().unwrap(), rat_int(3));

        let v = iu(&[(0, 1, 0, 1), (1, 3, 1, 1)]);
        assert_eq!(v.measure().unwrap(), rat(2, 3));
        assert_eq!(v.diam().unwrap(), rat_int(1));

        assert_eq!(IntervalUnion::empty().measure(), Err(ContinuumError::Empty));
    }

    #[test]
    fn touching_intervals_merge() {
        let u = iu(&[(0, 1, 1, 2), (1, 2, 1, 1), (3, 1, 3, 1)]);
        assert_eq!(u.intervals().len(), 2);
        assert_eq!(u.intervals()[0], (rat_int(0), rat_int(1)));
        // Degenerate point kept separate.
        assert_eq!(u.intervals()[1], (rat_int(3), rat_int(3)));
    }

    #[test]
    fn inverted_interval_rejected() {
        assert!(IntervalUnion::from_endpoints(vec![(rat_int(1), rat_int(0))]).is_err());
    }

    #[test]
    fn minkowski_basics() {
        let a = iu(&[(0, 1, 2, 1)]);
        let b = iu(&[(0, 1, 3, 1)]);
        assert_eq!(
            a.minkowski_sum(&b).unwrap(),
            IntervalUnion::segment(rat_int(0), rat_int(5)).unwrap()
        );

        let zero = IntervalUnion::point(rat_int(0));
        let u = iu(&[(0, 1, 0, 1), (11, 30, 3, 5), (11, 15, 1, 1)]);
        assert_eq!(zero.minkowski_sum(&u).unwrap(), u);
        assert!(IntervalUnion::empty().minkowski_sum(&u).is_err());
    }

    #[test]
    fn window_clip() {
        let u = iu(&[(0, 1, 1, 1)]);
        assert_eq!(
            u.intersect_window(&rat(1, 4), &rat(1, 2)).unwrap(),
            iu(&[(1, 4, 1, 2)])
        );
        assert!(u
            .intersect_window(&rat_int(2), &rat_int(3))
            .unwrap()
            .is_empty());
        assert!(u.intersect_window(&rat_int(1), &rat_int(0)).is_err());
    }

    #[test]
    fn reflect_and_translate() {
        let u = iu(&[(0, 1, 0, 1), (1, 2, 1, 1)]);
        let r = u.reflect(&rat_int(1));
        assert_eq!(r, iu(&[(0, 1, 1, 2), (1, 1, 1, 1)]));
        let t = u.translate(&rat(1, 2)).translate(&rat(-1, 2));
        assert_eq!(t, u);
    }

    #[test]
    fn measure_up_to_walks_components() {
        let u = iu(&[(0, 1, 0, 1), (11, 30, 3, 5), (11, 15, 1, 1)]);
        assert_eq!(u.measure_up_to(&rat(3, 5)), rat(7, 30));
        assert_eq!(u.measure_up_to(&rat(1, 3)), rat_int(0)); // 1/3 < 11/30
        assert_eq!(u.measure_up_to(&rat(2, 5)), rat(1, 30)); // into the block
        assert_eq!(u.measure_up_to(&rat_int(1)), rat(1, 2));
        assert_eq!(u.measure_up_to(&rat_int(-1)), rat_int(0));
    }

    #[test]
    fn difference_closure_witness() {
        let s = iu(&[(0, 1, 1, 1)]);
        let u = iu(&[(0, 1, 1, 2), (3, 4, 1, 1)]);
        let d = s.difference_closure(&u);
        assert_eq!(d, vec![(rat(1, 2), rat(3, 4))]);

        // isolated extra point
        let s2 = iu(&[(0, 1, 0, 1), (1, 2, 1, 2)]);
        let u2 = iu(&[(0, 1, 0, 1)]);
        assert_eq!(s2.difference_closure(&u2), vec![(rat(1, 2), rat(1, 2))]);

        // equal sets: empty difference
        assert!(u.difference_closure(&u).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let u = iu(&[(0, 1, 0, 1), (11, 30, 3, 5), (11, 15, 1, 1)]);
        let s = u.to_json_string();
        assert_eq!(
            s,
            r#"{"intervals":[["0","0"],["11/30","3/5"],["11/15","1"]]}"#
        );
        assert_eq!(IntervalUnion::from_json_str(&s).unwrap(), u);
        assert!(IntervalUnion::from_json_str("{bad").is_err());
    }
}
