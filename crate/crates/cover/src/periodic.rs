//! Abelian covers given by a unit cell and integer offsets on its edges.
//!
//! Edge `k = (u, v)` with offset `o` joins `u` in cell `c` to `v` in cell
//! `c + o`. Semi-edges of the cell never cross cells.

use std::f64::consts::PI;

use cubicgap_core::{Error, Multigraph, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicGraph {
    pub base: Multigraph,
    pub rank: usize,
    pub offsets: Vec<Vec<i64>>,
}

impl PeriodicGraph {
    pub fn new(base: Multigraph, offsets: Vec<Vec<i64>>) -> Result<Self> {
        base.check_cubic()?;
        if offsets.len() != base.edges.len() {
            return Err(Error::Invalid(format!("{} offsets for {} edges", offsets.len(), base.edges.len())));
        }
        let rank = offsets.first().map_or(1, Vec::len);
        if !(1..=2).contains(&rank) || offsets.iter().any(|o| o.len() != rank) {
            return Err(Error::Invalid("offsets must all have length 1 or all length 2".into()));
        }
        Ok(PeriodicGraph { base, rank, offsets })
    }

    /// Rank-1 cover in which the listed edges jump to the next cell.
    pub fn with_links(base: Multigraph, links: &[usize]) -> Result<Self> {
        let mut offsets = vec![vec![0]; base.edges.len()];
        for &e in links {
            if e >= offsets.len() {
                return Err(Error::Invalid(format!("edge {e} out of range")));
            }
            offsets[e] = vec![1];
        }
        PeriodicGraph::new(base, offsets)
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    /// Number of edges with a nonzero offset.
    pub fn link_count(&self) -> usize {
        self.offsets.iter().filter(|o| o.iter().any(|&x| x != 0)).count()
    }

    /// Connectivity of the infinite cover, tested on the quotient with three
    /// cells along every axis.
    pub fn is_connected(&self) -> bool {
        torus_quotient(self, &vec![3; self.rank]).map_or(false, |q| q.is_connected())
    }
}

/// Twisted adjacency at the character `z` (one unit complex number per axis).
pub fn twisted_adjacency(p: &PeriodicGraph, z: &[Complex64]) -> Result<DMatrix<Complex64>> {
    if z.len() != p.rank {
        return Err(Error::Invalid(format!("character of length {} for rank {}", z.len(), p.rank)));
    }
    if z.iter().any(|w| (w.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::Invalid("character entries must have modulus 1".into()));
    }
    let theta: Vec<f64> = z.iter().map(|w| w.arg()).collect();
    Ok(twisted_adjacency_at(p, &theta))
}

/// Twisted adjacency at angles `theta`, i.e. at `z_i = exp(i theta_i)`.
pub fn twisted_adjacency_at(p: &PeriodicGraph, theta: &[f64]) -> DMatrix<Complex64> {
    let n = p.n();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (&(u, v), o) in p.base.edges.iter().zip(&p.offsets) {
        let phase: f64 = o.iter().zip(theta).map(|(&k, &t)| k as f64 * t).sum();
        let w = Complex64::from_polar(1.0, phase);
        m[(u, v)] += w;
        m[(v, u)] += w.conj();
    }
    for &v in &p.base.semi_edges {
        m[(v, v)] += Complex64::new(1.0, 0.0);
    }
    m
}

/// Sorted eigenvalues of the twisted adjacency at `theta`.
pub fn twisted_eigenvalues(p: &PeriodicGraph, theta: &[f64]) -> Vec<f64> {
    let m = twisted_adjacency_at(p, theta);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Restrict a rank-2 cover to the closed line `theta = t (a, b)`.
///
/// The result is the rank-1 cover whose edge offsets are `a o_1 + b o_2`.
pub fn restrict_subtorus(p: &PeriodicGraph, a: i64, b: i64) -> Result<PeriodicGraph> {
    if p.rank != 2 {
        return Err(Error::Invalid("subtorus restriction needs a rank-2 cover".into()));
    }
    if a == 0 && b == 0 {
        return Err(Error::Invalid("direction (0, 0)".into()));
    }
    if gcd(a, b) != 1 {
        return Err(Error::Invalid(format!("direction ({a}, {b}) is not primitive")));
    }
    let offsets = p.offsets.iter().map(|o| vec![a * o[0] + b * o[1]]).collect();
    PeriodicGraph::new(p.base.clone(), offsets)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive directions `(a, b)` with `|a|, |b| <= bound`, one per line.
pub fn primitive_directions(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in -bound..=bound {
            if (a == 0 && b <= 0) || gcd(a, b) != 1 {
                continue;
            }
            out.push((a, b));
        }
    }
    out
}

/// Quotient by the translations `n_i e_i`: a finite graph on
/// `base.n * prod(n_i)` vertices. Vertex `v` of cell `c` gets index
/// `v + base.n * c` with cells numbered in row-major order.
pub fn torus_quotient(p: &PeriodicGraph, dims: &[usize]) -> Result<Multigraph> {
    if dims.len() != p.rank || dims.iter().any(|&d| d == 0) {
        return Err(Error::Invalid(format!("bad quotient dimensions {dims:?}")));
    }
    let nb = p.n();
    let cells: usize = dims.iter().product();
    let cell_index = |c: &[i64]| -> usize {
        c.iter().zip(dims).fold(0usize, |acc, (&x, &d)| acc * d + x.rem_euclid(d as i64) as usize)
    };
    let mut edges = Vec::with_capacity(cells * p.base.edges.len());
    let mut semi_edges = Vec::with_capacity(cells * p.base.semi_edges.len());
    for idx in 0..cells {
        let mut coords = vec![0i64; dims.len()];
        let mut rest = idx;
        for (slot, &d) in coords.iter_mut().zip(dims).rev() {
            *slot = (rest % d) as i64;
            rest /= d;
        }
        for (&(u, v), o) in p.base.edges.iter().zip(&p.offsets) {
            let target: Vec<i64> = coords.iter().zip(o).map(|(c, k)| c + k).collect();
            let a = u + nb * idx;
            let b = v + nb * cell_index(&target);
            edges.push((a.min(b), a.max(b)));
        }
        semi_edges.extend(p.base.semi_edges.iter().map(|&v| v + nb * idx));
    }
    let mut g = Multigraph::new(nb * cells, edges);
    g.semi_edges = semi_edges;
    Ok(g)
}

/// Wrap `n` cells of a rank-1 cover into a ring.
pub fn cyclic_quotient(p: &PeriodicGraph, n: usize) -> Result<Multigraph> {
    if p.rank != 1 {
        return Err(Error::Invalid("cyclic quotient needs a rank-1 cover".into()));
    }
    torus_quotient(p, &[n])
}

/// Multiset union of the twisted spectra at the `n`-th roots of unity.
pub fn root_of_unity_spectrum(p: &PeriodicGraph, n: usize) -> Vec<f64> {
    let mut all: Vec<f64> =
        (0..n).flat_map(|m| twisted_eigenvalues(p, &[2.0 * PI * m as f64 / n as f64])).collect();
    all.sort_by(f64::total_cmp);
    all
}
