//! Band structures over a sampled character torus and the gaps between them.

use std::f64::consts::PI;
use std::fmt::Write as _;

use cubicgap_core::{Error, IntervalSet, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::periodic::{twisted_eigenvalues, PeriodicGraph};

pub const DEFAULT_THRESHOLD: f64 = 0.05;
/// Values found at every sample within this tolerance are reported as flat.
pub const FLAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    pub rank: usize,
    pub grid: usize,
    /// Sample angles, one vector of length `rank` per sample.
    pub angles: Vec<Vec<f64>>,
    /// Sorted eigenvalues per sample.
    pub values: Vec<Vec<f64>>,
}

/// `j`-th of `n` equally spaced angles in `[-pi, pi)`.
pub fn grid_angle(j: usize, n: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / n as f64
}

pub fn bands(p: &PeriodicGraph, grid: usize) -> Result<BandStructure> {
    if grid < 16 {
        return Err(Error::Invalid(format!("grid {grid} below 16")));
    }
    let angles: Vec<Vec<f64>> = match p.rank {
        1 => (0..grid).map(|j| vec![grid_angle(j, grid)]).collect(),
        _ => (0..grid * grid).map(|k| vec![grid_angle(k / grid, grid), grid_angle(k % grid, grid)]).collect(),
    };
    let values = angles.par_iter().map(|t| twisted_eigenvalues(p, t)).collect();
    Ok(BandStructure { rank: p.rank, grid, angles, values })
}

impl BandStructure {
    pub fn band_count(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn track(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[j]).collect()
    }

    /// `(min, max)` of every sorted track.
    pub fn track_ranges(&self) -> Vec<(f64, f64)> {
        (0..self.band_count())
            .map(|j| {
                self.values
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v[j]), hi.max(v[j])))
            })
            .collect()
    }

    /// Values at the sample closest to `theta`.
    pub fn at(&self, theta: &[f64]) -> &[f64] {
        let dist = |a: &[f64]| -> f64 {
            a.iter()
                .zip(theta)
                .map(|(x, y)| {
                    let d = (x - y).rem_euclid(2.0 * PI);
                    d.min(2.0 * PI - d)
                })
                .sum()
        };
        let k = (0..self.angles.len())
            .min_by(|&i, &j| dist(&self.angles[i]).total_cmp(&dist(&self.angles[j])))
            .expect("non-empty grid");
        &self.values[k]
    }

    /// Plot-ready CSV: angle columns followed by one column per band.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let heads: Vec<String> =
            if self.rank == 1 { vec!["theta".into()] } else { vec!["theta1".into(), "theta2".into()] };
        let bands: Vec<String> = (1..=self.band_count()).map(|j| format!("l{j}")).collect();
        out.push_str(&[heads, bands].concat().join(","));
        out.push('\n');
        for (t, v) in self.angles.iter().zip(&self.values) {
            let row: Vec<String> = t.iter().chain(v).map(|x| format!("{x:.12}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub spectrum_estimate: IntervalSet,
    pub gaps: IntervalSet,
    /// `(value, number of flat tracks at that value)`.
    pub flat_bands: Vec<(f64, usize)>,
}

/// Spectrum estimate and gaps of a band structure.
///
/// Each sorted track is a continuous function on the torus, so its image is
/// taken to be the interval between its sampled extremes. Holes narrower
/// than `threshold` are filled in.
pub fn gap_report(b: &BandStructure, threshold: f64) -> GapReport {
    report_from_ranges(&b.track_ranges(), threshold, flat_bands(b))
}

/// Values present at every sample, with the smallest number of copies seen.
///
/// Sorted tracks swap where a dispersive band crosses a flat one, so
/// flatness is judged on values rather than on tracks.
pub fn flat_bands(b: &BandStructure) -> Vec<(f64, usize)> {
    let Some(first) = b.values.first() else {
        return Vec::new();
    };
    let mut candidates: Vec<f64> = Vec::new();
    for &x in first {
        if candidates.last().map_or(true, |&c| x - c >= FLAT_TOLERANCE) {
            candidates.push(x);
        }
    }
    let mut flat = Vec::new();
    for c in candidates {
        let copies = b
            .values
            .iter()
            .map(|v| v.iter().filter(|&&x| (x - c).abs() < FLAT_TOLERANCE).count())
            .min()
            .unwrap_or(0);
        if copies > 0 {
            flat.push((c, copies));
        }
    }
    flat
}

fn report_from_ranges(ranges: &[(f64, f64)], threshold: f64, flat: Vec<(f64, usize)>) -> GapReport {
    let mut sorted = ranges.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in sorted {
        match clusters.last_mut() {
            Some(last) if lo - last.1 < threshold => last.1 = last.1.max(hi),
            _ => clusters.push((lo, hi)),
        }
    }
    if let Some(first) = clusters.first_mut() {
        if first.0 + 3.0 < threshold {
            first.0 = first.0.min(-3.0);
        }
    }
    if let Some(last) = clusters.last_mut() {
        if 3.0 - last.1 < threshold {
            last.1 = last.1.max(3.0);
        }
    }
    let mut intervals = Vec::new();
    let mut points = Vec::new();
    for &(lo, hi) in &clusters {
        if hi - lo < FLAT_TOLERANCE {
            points.push(0.5 * (lo + hi));
        } else {
            intervals.push((lo, hi));
        }
    }
    let mut gaps = Vec::new();
    let mut cursor = -3.0f64;
    for &(lo, hi) in &clusters {
        if lo > cursor {
            gaps.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < 3.0 {
        gaps.push((cursor, 3.0));
    }
    GapReport {
        spectrum_estimate: IntervalSet::new(intervals, points),
        // Built directly: gaps sharing an endpoint with a flat band must stay
        // separate, which normalization would undo.
        gaps: IntervalSet { intervals: gaps, points: Vec::new() },
        flat_bands: flat,
    }
}

impl GapReport {
    /// `x` lies strictly inside one of the gaps (open at interior ends).
    pub fn gapped(&self, x: f64) -> bool {
        self.gaps.intervals.iter().any(|&(a, b)| {
            let left = if a <= -3.0 { x >= a } else { x > a };
            left && x < b
        })
    }
}
