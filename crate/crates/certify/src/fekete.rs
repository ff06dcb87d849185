//! Whether the spectrum of a graph can lie inside a finite set `F`.
//!
//! If it does, `P_F(A) = prod (A - f)` vanishes. When the diameter is at
//! least `|F|`, the entry of `P_F(A)` at two vertices at distance `|F|`
//! equals the number of walks of that length between them, which is
//! positive, so the spectrum cannot lie in `F`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use cubicgap_core::Multigraph;

use crate::error::Result;

/// Relative size below which `P_F(A)` is treated as zero.
pub const ANNIHILATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeketeVerdict {
    SpectrumNotContained,
    Contained,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeketeWitness {
    /// `(A^m)[x0, y0]` for `m = 0..=distance`, as decimal strings.
    WalkCounts { x0: usize, y0: usize, distance: usize, counts: Vec<String> },
    /// Largest entry of `P_F(A)` relative to `prod (3 + |f|)`.
    Polynomial { relative_max_entry: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeketeReport {
    pub verdict: FeketeVerdict,
    pub witness: FeketeWitness,
    /// `F` with duplicates within `1e-9` removed.
    pub set: Vec<f64>,
}

fn distinct(set: &[f64]) -> Vec<f64> {
    let mut s = set.to_vec();
    s.sort_by(f64::total_cmp);
    s.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    s
}

/// Walk counts `(A^m)[x, y]` for `m = 0..=k`.
pub fn walk_counts(g: &Multigraph, x: usize, y: usize, k: usize) -> Vec<BigInt> {
    let a = g.adjacency_counts();
    let mut v: Vec<BigInt> = vec![BigInt::zero(); g.n];
    v[y] = BigInt::from(1);
    let mut out = vec![v[x].clone()];
    for _ in 0..k {
        v = (0..g.n).map(|i| (0..g.n).filter(|&j| a[i][j] != 0).map(|j| &v[j] * a[i][j]).sum()).collect();
        out.push(v[x].clone());
    }
    out
}

fn pair_at_distance(g: &Multigraph, k: usize) -> Option<(usize, usize)> {
    (0..g.n).find_map(|x| {
        let dist = g.bfs_distances(x);
        dist.iter().position(|&d| d == Some(k)).map(|y| (x, y))
    })
}

pub fn fekete_finiteness(g: &Multigraph, set: &[f64]) -> Result<FeketeReport> {
    g.validate()?;
    let set = distinct(set);
    let k = set.len();
    if let Some((x0, y0)) = pair_at_distance(g, k) {
        let counts = walk_counts(g, x0, y0, k);
        let separated = counts[..k].iter().all(Zero::is_zero) && counts[k].is_positive();
        if separated {
            return Ok(FeketeReport {
                verdict: FeketeVerdict::SpectrumNotContained,
                witness: FeketeWitness::WalkCounts {
                    x0,
                    y0,
                    distance: k,
                    counts: counts.iter().map(BigInt::to_string).collect(),
                },
                set,
            });
        }
    }
    let a = g.adjacency_matrix();
    let mut p = DMatrix::<f64>::identity(g.n, g.n);
    for &f in &set {
        p = &p * (&a - DMatrix::<f64>::identity(g.n, g.n) * f);
    }
    let scale: f64 = set.iter().map(|f| 3.0 + f.abs()).product();
    let relative_max_entry = p.iter().fold(0.0f64, |m, x| m.max(x.abs())) / scale;
    let verdict = if relative_max_entry < ANNIHILATION_TOLERANCE {
        FeketeVerdict::Contained
    } else {
        FeketeVerdict::SpectrumNotContained
    };
    Ok(FeketeReport { verdict, witness: FeketeWitness::Polynomial { relative_max_entry }, set })
}
