//! The quadratic map `f(x) = x^2 - x - 3` and its backward orbits.
//!
//! `f` maps each of `I = [-2, 0]` and `J = [1, 3]` onto `[-3, 3]`, so the
//! level-`m` preimage of `[-3, 3]` is a union of `2^m` intervals indexed by
//! binary itineraries. Endpoints are computed with the inverse branches,
//! which contract, instead of by forward iteration, which expands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;

/// Largest level for which [`preimage_intervals`] materializes the intervals.
pub const MAX_MATERIALIZED_LEVEL: usize = 22;
/// Largest level addressable through [`level_interval`].
pub const MAX_LEVEL: usize = 40;
/// Depth cap for [`a_membership`].
pub const MAX_MEMBERSHIP_DEPTH: usize = 12;

pub fn f_apply(x: f64) -> f64 {
    x * x - x - 3.0
}

/// Both roots of `f(x) = y`, smaller first, or `None` when `y < -13/4`.
pub fn f_preimage(y: f64) -> Option<(f64, f64)> {
    let disc = 13.0 + 4.0 * y;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((1.0 - s) / 2.0, (1.0 + s) / 2.0))
}

pub fn f_iterate(x: f64, k: usize) -> f64 {
    (0..k).fold(x, |y, _| f_apply(y))
}

/// Image of `[lo, hi]` under `f`.
pub fn f_image_interval(lo: f64, hi: f64) -> (f64, f64) {
    let (a, b) = (f_apply(lo), f_apply(hi));
    let top = a.max(b);
    let bottom = if lo <= 0.5 && 0.5 <= hi { -3.25 } else { a.min(b) };
    (bottom, top)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantorApprox {
    pub level: usize,
    pub intervals: IntervalSet,
    /// Points of the backward orbit of 0 up to depth `level`, sorted.
    pub isolated_points: Vec<f64>,
}

fn pull_back(intervals: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut left = Vec::with_capacity(intervals.len());
    let mut right = Vec::with_capacity(intervals.len());
    for &(a, b) in intervals {
        let (la, ra) = f_preimage(a).expect("endpoint inside [-3, 3]");
        let (lb, rb) = f_preimage(b).expect("endpoint inside [-3, 3]");
        left.push((lb, la));
        right.push((ra, rb));
    }
    left.reverse();
    left.extend(right);
    left
}

pub fn preimage_intervals(m: usize) -> Result<CantorApprox> {
    if m > MAX_MATERIALIZED_LEVEL {
        return Err(Error::Invalid(format!(
            "level {m} has 2^{m} intervals; use level_interval beyond level {MAX_MATERIALIZED_LEVEL}"
        )));
    }
    let mut intervals = vec![(-3.0, 3.0)];
    let mut points = Vec::new();
    let mut layer = vec![0.0];
    for k in 0..=m {
        if k > 0 {
            intervals = pull_back(&intervals);
            layer = layer.iter().filter_map(|&y| f_preimage(y)).flat_map(|(a, b)| [a, b]).collect();
        }
        points.extend_from_slice(&layer);
    }
    points.sort_by(f64::total_cmp);
    Ok(CantorApprox {
        level: m,
        intervals: IntervalSet { intervals, points: Vec::new() },
        isolated_points: points,
    })
}

/// The level-`m` interval whose points follow `bits` (0 for `I`, 1 for `J`)
/// under the first `m` iterates. Works for every level up to [`MAX_LEVEL`].
pub fn level_interval(bits: &[u8]) -> Result<(f64, f64)> {
    if bits.len() > MAX_LEVEL {
        return Err(Error::Invalid(format!("level {} exceeds {MAX_LEVEL}", bits.len())));
    }
    let (mut a, mut b) = (-3.0f64, 3.0f64);
    for &bit in bits.iter().rev() {
        let (la, ra) = f_preimage(a).unwrap();
        let (lb, rb) = f_preimage(b).unwrap();
        (a, b) = if bit == 0 { (lb, la) } else { (ra, rb) };
    }
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Itinerary {
    Bits(Vec<u8>),
    /// Position (1-based) of the first iterate outside `I ∪ J`.
    Escape(usize),
}

/// Symbolic itinerary of `xi`; position `j` records where `f^(j-1)(xi)` lies.
pub fn itinerary(xi: f64, m: usize) -> Itinerary {
    let mut bits = Vec::with_capacity(m);
    let mut y = xi;
    for j in 1..=m {
        let bit = if (-2.0..=0.0).contains(&y) {
            0
        } else if (1.0..=3.0).contains(&y) {
            1
        } else {
            return Itinerary::Escape(j);
        };
        bits.push(bit);
        y = f_apply(y);
    }
    Itinerary::Bits(bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    InLambda(usize),
    IsolatedPoint(usize),
    Outside,
}

impl Membership {
    pub fn in_a(&self) -> bool {
        !matches!(self, Membership::Outside)
    }
}

/// Classify `xi` against the level-`m` approximation of `A`.
///
/// The tolerance at forward step `k` is `tol * 3^k`.
pub fn a_membership(xi: f64, m: usize, tol: f64) -> Result<Membership> {
    if m > MAX_MEMBERSHIP_DEPTH {
        return Err(Error::Invalid(format!("depth {m} exceeds {MAX_MEMBERSHIP_DEPTH}")));
    }
    let mut y = xi;
    let mut scaled = tol;
    for k in 0..=m {
        if y.abs() <= scaled {
            return Ok(Membership::IsolatedPoint(k));
        }
        y = f_apply(y);
        scaled *= 3.0;
    }
    let mut y = xi;
    let mut scaled = tol;
    for k in 0..=m {
        let inside = if k < m {
            (-2.0 - scaled..=scaled).contains(&y) || (1.0 - scaled..=3.0 + scaled).contains(&y)
        } else {
            (-3.0 - scaled..=3.0 + scaled).contains(&y)
        };
        if !inside {
            return Ok(Membership::Outside);
        }
        y = f_apply(y);
        scaled *= 3.0;
    }
    Ok(Membership::InLambda(m))
}

/// A compact set made of intervals and isolated points inside `[-3, 3]`.
pub type SpectralSet = IntervalSet;

/// `f^{-1}(K) ∪ {0, -2}`.
pub fn pullback_spectral_set(k: &SpectralSet) -> SpectralSet {
    let mut intervals = Vec::new();
    for &(a, b) in &k.intervals {
        let a = a.max(-13.0 / 4.0);
        if b < a {
            continue;
        }
        let (la, ra) = f_preimage(a).unwrap();
        let (lb, rb) = f_preimage(b).unwrap();
        intervals.push((lb, la));
        intervals.push((ra, rb));
    }
    let mut points = vec![0.0, -2.0];
    for &p in &k.points {
        if let Some((a, b)) = f_preimage(p) {
            points.push(a);
            points.push(b);
        }
    }
    IntervalSet::new(intervals, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_and_arithmetic() {
        assert_eq!(f_apply(3.0), 3.0);
        assert_eq!(f_apply(-1.0), -1.0);
        assert_eq!(f_apply(0.0), -3.0);
    }

    #[test]
    fn preimages() {
        assert_eq!(f_preimage(3.0), Some((-2.0, 3.0)));
        assert_eq!(f_preimage(-3.0), Some((0.0, 1.0)));
        let (a, b) = f_preimage(0.0).unwrap();
        assert!((a - (1.0 - 13f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((a + 1.302776).abs() < 1e-6 && (b - 2.302776).abs() < 1e-6);
        assert!(f_apply(a).abs() < 1e-12 && f_apply(b).abs() < 1e-12);
        assert_eq!(f_preimage(-3.3), None);
    }

    #[test]
    fn first_levels() {
        assert_eq!(preimage_intervals(0).unwrap().intervals.intervals, vec![(-3.0, 3.0)]);
        assert_eq!(preimage_intervals(1).unwrap().intervals.intervals, vec![(-2.0, 0.0), (1.0, 3.0)]);
        let two = preimage_intervals(2).unwrap().intervals.intervals;
        assert_eq!(two.len(), 4);
        assert!((two[1].0 - (1.0 - 13f64.sqrt()) / 2.0).abs() < 1e-15);
        for (l, r) in two.iter().zip(two.iter().rev()) {
            assert!((l.0 + r.1 - 1.0).abs() < 1e-12 && (l.1 + r.0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn level_interval_matches_materialized() {
        let level = preimage_intervals(5).unwrap();
        for (idx, iv) in level.intervals.intervals.iter().enumerate() {
            let mid = 0.5 * (iv.0 + iv.1);
            let Itinerary::Bits(bits) = itinerary(mid, 5) else { panic!() };
            let direct = level_interval(&bits).unwrap();
            assert!((direct.0 - iv.0).abs() < 1e-12 && (direct.1 - iv.1).abs() < 1e-12, "{idx}");
        }
        assert!(level_interval(&[0; 40]).is_ok());
        assert!(level_interval(&[0; 41]).is_err());
    }

    #[test]
    fn itineraries() {
        assert_eq!(itinerary(3.0, 4), Itinerary::Bits(vec![1, 1, 1, 1]));
        assert_eq!(itinerary(-1.0, 4), Itinerary::Bits(vec![0, 0, 0, 0]));
        assert_eq!(itinerary(-2.0, 4), Itinerary::Bits(vec![0, 1, 1, 1]));
        assert_eq!(itinerary(0.5, 4), Itinerary::Escape(1));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(a_membership(0.0, 3, 1e-9).unwrap(), Membership::IsolatedPoint(0));
        assert_eq!(a_membership(2.303, 3, 1e-2).unwrap(), Membership::IsolatedPoint(1));
        assert_eq!(a_membership(0.5, 3, 1e-9).unwrap(), Membership::Outside);
        assert_eq!(a_membership(-1.0, 12, 1e-9).unwrap(), Membership::InLambda(12));
        assert!(a_membership(0.0, 13, 1e-9).is_err());
    }

    #[test]
    fn pullbacks() {
        let whole = pullback_spectral_set(&IntervalSet::interval(-3.0, 3.0));
        assert_eq!(whole.intervals, vec![(-2.0, 0.0), (1.0, 3.0)]);
        assert!(whole.points.is_empty());
        let three = pullback_spectral_set(&IntervalSet::new(vec![], vec![3.0]));
        assert_eq!(three.points, vec![-2.0, 0.0, 3.0]);
    }

    #[test]
    fn image_of_interval_through_vertex() {
        assert_eq!(f_image_interval(0.0, 1.0), (-3.25, -3.0));
        assert_eq!(f_image_interval(1.0, 3.0), (-3.0, 3.0));
    }
}
