//! Finite unions of disjoint intervals.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `[start, end)`, or `[start, end]` when `closed` is set.
///
/// Closedness only affects membership; measures are identical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub start: T,
    pub end: T,
    pub closed: bool,
}

impl<T: Real> Interval<T> {
    pub fn half_open(start: T, end: T) -> Self {
        Self {
            start,
            end,
            closed: false,
        }
    }

    pub fn closed(start: T, end: T) -> Self {
        Self {
            start,
            end,
            closed: true,
        }
    }

    pub fn length(&self) -> T {
        self.end - self.start
    }

    pub fn contains(&self, x: T) -> bool {
        self.start <= x && (x < self.end || (self.closed && x == self.end))
    }
}

/// Sorted, pairwise disjoint, non-touching intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Real> IntervalSet<T> {
    pub fn empty() -> Self {
        Self {
            intervals: Vec::new(),
        }
    }

    /// Half-open intervals `[a, b)`; empty ones are dropped, overlapping or
    /// touching ones merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        Self::from_intervals(pairs.into_iter().map(|(a, b)| Interval::half_open(a, b)))
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval<T>>) -> Result<Self> {
        let mut items = Vec::new();
        for iv in intervals {
            if !(iv.start.is_finite() && iv.end.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "interval [{}, {}) is not finite",
                    iv.start, iv.end
                )));
            }
            if iv.end < iv.start {
                return Err(Error::InvalidArgument(format!(
                    "interval [{}, {}) is reversed",
                    iv.start, iv.end
                )));
            }
            if iv.end > iv.start {
                items.push(iv);
            }
        }
        items.sort_by(|a, b| a.start.partial_cmp(&b.start).expect("finite endpoints"));
        let mut merged: Vec<Interval<T>> = Vec::with_capacity(items.len());
        for iv in items {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                        last.closed = iv.closed;
                    } else if iv.end == last.end {
                        last.closed |= iv.closed;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Ok(Self { intervals: merged })
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: T) -> bool {
        let i = self.intervals.partition_point(|iv| iv.start <= x);
        i > 0 && self.intervals[i - 1].contains(x)
    }

    /// Lebesgue measure.
    pub fn total_length(&self) -> T {
        self.intervals.iter().map(Interval::length).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
            .expect("already validated")
    }

    /// Intersection with `[lo, hi)`.
    pub fn clip(&self, lo: T, hi: T) -> Self {
        let clipped = self.intervals.iter().filter_map(|iv| {
            let start = iv.start.max(lo);
            let (end, closed) = if iv.end > hi {
                (hi, false)
            } else {
                (iv.end, iv.closed)
            };
            (end > start).then_some(Interval { start, end, closed })
        });
        Self::from_intervals(clipped).expect("clipped intervals are valid")
    }

    /// Image under an increasing map applied to endpoints.
    pub fn map_increasing(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::from_intervals(self.intervals.iter().map(|iv| Interval {
            start: f(iv.start),
            end: f(iv.end),
            closed: iv.closed,
        }))
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.intervals.iter().all(|iv| {
            other.intervals.iter().any(|o| {
                o.start <= iv.start
                    && (iv.end < o.end || (iv.end == o.end && (o.closed || !iv.closed)))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_and_sorts() {
        let s = IntervalSet::from_pairs([
            (3.0f64, 4.0),
            (0.0, 1.0),
            (0.5, 2.0),
            (2.0, 2.5),
            (5.0, 5.0),
        ])
        .unwrap();
        assert_eq!(
            s.intervals(),
            &[Interval::half_open(0.0, 2.5), Interval::half_open(3.0, 4.0)]
        );
        assert_eq!(s.total_length(), 3.5);
        assert!(IntervalSet::from_pairs([(1.0f64, 0.0)]).is_err());
    }

    #[test]
    fn membership_semantics() {
        let s = IntervalSet::from_intervals([
            Interval::half_open(0.0f64, 1.0),
            Interval::closed(2.0, 3.0),
        ])
        .unwrap();
        assert!(s.contains(0.0));
        assert!(!s.contains(1.0));
        assert!(s.contains(3.0));
        assert!(!s.contains(3.0000001));
        assert!(!s.contains(-1.0));
    }

    #[test]
    fn clip_and_subset() {
        let s = IntervalSet::from_pairs([(0.0f64, 2.0), (3.0, 6.0)]).unwrap();
        let c = s.clip(1.0, 4.0);
        assert_eq!(
            c.intervals(),
            &[Interval::half_open(1.0, 2.0), Interval::half_open(3.0, 4.0)]
        );
        assert!(c.is_subset_of(&s));
        assert!(!s.is_subset_of(&c));
        assert!(IntervalSet::<f64>::empty().is_subset_of(&c));
    }

    #[test]
    fn log_image() {
        let e = std::f64::consts::E;
        let s = IntervalSet::from_pairs([(1.0f64, e)]).unwrap();
        let img = s.map_increasing(f64::ln).unwrap();
        assert!((img.total_length() - 1.0).abs() < 1e-15);
    }
}
