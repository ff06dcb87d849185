//! Planning of gap witnesses: find how many triangle-map iterations push a
//! neighbourhood of a target value into a known spectral gap.

use serde::{Deserialize, Serialize};

use crate::dynamics::f_image_interval;
use crate::error::{Error, Result};
use crate::interval::IntervalSet;

/// Iteration cap for [`plan_gap_witness`].
pub const MAX_WITNESS_DEPTH: usize = 64;

/// Gaps shared by every member of a graph family, inside `[-3, 3]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapFamily {
    pub id: String,
    pub gaps: IntervalSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPlan {
    pub family_id: String,
    /// Number of triangle-map iterations to apply to a family member.
    pub k: usize,
    /// Gap containing the `k`-th image of the neighbourhood.
    pub gap: (f64, f64),
}

const EDGE: f64 = 1e-12;

fn open_gaps(family: &GapFamily) -> Vec<(f64, f64)> {
    // Nothing of a cubic spectrum lies outside [-3, 3].
    let mut gaps = vec![(f64::NEG_INFINITY, -3.0), (3.0, f64::INFINITY)];
    for &(a, b) in &family.gaps.intervals {
        let a = if a <= -3.0 + EDGE { f64::NEG_INFINITY } else { a };
        let b = if b >= 3.0 - EDGE { f64::INFINITY } else { b };
        gaps.push((a, b));
    }
    gaps
}

/// Smallest `k` such that `f^k([xi - delta, xi + delta])` sits strictly
/// inside a gap of some family. Among families reaching the same `k` the one
/// with the widest margin wins, ties going to catalog order.
///
/// Fails if an earlier iterate meets `{0, -2}`, which every further triangle
/// map adds to the spectrum, or if no family works within
/// [`MAX_WITNESS_DEPTH`] steps.
pub fn plan_gap_witness(xi: f64, delta: f64, catalog: &[GapFamily]) -> Result<WitnessPlan> {
    if catalog.is_empty() {
        return Err(Error::Invalid("empty gap catalog".into()));
    }
    if !(delta > 0.0) || !xi.is_finite() {
        return Err(Error::Invalid(format!("bad neighbourhood {xi} ± {delta}")));
    }
    let families: Vec<_> = catalog.iter().map(|f| (f, open_gaps(f))).collect();
    let (mut lo, mut hi) = (xi - delta, xi + delta);
    for k in 0..=MAX_WITNESS_DEPTH {
        let mut best: Option<(f64, &GapFamily, (f64, f64))> = None;
        for (family, gaps) in &families {
            for &(a, b) in gaps {
                if a < lo && hi < b {
                    let margin = (lo - a).min(b - hi);
                    if best.as_ref().map_or(true, |(m, _, _)| margin > *m) {
                        best = Some((margin, family, (a, b)));
                    }
                }
            }
        }
        if let Some((_, family, (a, b))) = best {
            return Ok(WitnessPlan { family_id: family.id.clone(), k, gap: (a.max(-3.25), b.min(9.0)) });
        }
        for bad in [0.0, -2.0] {
            if lo <= bad && bad <= hi {
                return Err(Error::Invalid(format!("iterate {k} of the neighbourhood contains {bad}")));
            }
        }
        (lo, hi) = f_image_interval(lo, hi);
    }
    Err(Error::MaxIterExceeded(MAX_WITNESS_DEPTH))
}
