use serde::{Deserialize, Serialize};

/// Finite union of closed intervals plus isolated points.
///
/// Intervals are kept sorted and pairwise disjoint; a point lying inside an
/// interval is absorbed by it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    pub intervals: Vec<(f64, f64)>,
    #[serde(default)]
    pub points: Vec<f64>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<(f64, f64)>, points: Vec<f64>) -> Self {
        let mut s = IntervalSet { intervals, points };
        s.normalize();
        s
    }

    pub fn interval(a: f64, b: f64) -> Self {
        Self::new(vec![(a, b)], Vec::new())
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    fn normalize(&mut self) {
        for iv in &mut self.intervals {
            if iv.0 > iv.1 {
                *iv = (iv.1, iv.0);
            }
        }
        self.intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(self.intervals.len());
        for &(a, b) in &self.intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        self.intervals = merged;
        let intervals = &self.intervals;
        self.points.retain(|&p| !intervals.iter().any(|&(a, b)| a <= p && p <= b));
        self.points.sort_by(f64::total_cmp);
        self.points.dedup();
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut intervals = self.intervals.clone();
        intervals.extend_from_slice(&other.intervals);
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        IntervalSet::new(intervals, points)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                let (lo, hi) = (a.max(c), b.min(d));
                if lo < hi {
                    intervals.push((lo, hi));
                } else if lo == hi {
                    points.push(lo);
                }
            }
        }
        for &p in &self.points {
            if other.contains(p, 0.0) {
                points.push(p);
            }
        }
        for &p in &other.points {
            if self.contains(p, 0.0) {
                points.push(p);
            }
        }
        IntervalSet::new(intervals, points)
    }

    /// Closure of `[lo, hi]` minus the intervals; isolated points are ignored.
    pub fn complement_in(&self, lo: f64, hi: f64) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = lo;
        for &(a, b) in &self.intervals {
            if b < lo || a > hi {
                continue;
            }
            if a > cursor {
                out.push((cursor, a.min(hi)));
            }
            cursor = cursor.max(b);
        }
        if cursor < hi {
            out.push((cursor, hi));
        }
        IntervalSet::new(out, Vec::new())
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a - tol <= x && x <= b + tol)
            || self.points.iter().any(|&p| (p - x).abs() <= tol)
    }

    /// `[lo, hi]` lies inside a single interval.
    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= lo && hi <= b)
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        let di = self.intervals.iter().map(|&(a, b)| {
            if x < a {
                a - x
            } else if x > b {
                x - b
            } else {
                0.0
            }
        });
        let dp = self.points.iter().map(|&p| (p - x).abs());
        di.chain(dp).fold(f64::INFINITY, f64::min)
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Every interval and point of `self` lies in `other` up to `tol`.
    pub fn is_subset_of(&self, other: &IntervalSet, tol: f64) -> bool {
        self.intervals
            .iter()
            .all(|&(a, b)| other.intervals.iter().any(|&(c, d)| c - tol <= a && b <= d + tol))
            && self.points.iter().all(|&p| other.contains(p, tol))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("interval set serializes")
    }
}
