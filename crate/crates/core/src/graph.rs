//! Finite multigraphs with loops, parallel edges and semi-edges.
//!
//! A loop at `v` adds 2 to the diagonal of the adjacency matrix and 2 to the
//! degree of `v`, so a cubic multigraph always has row sums 3. A semi-edge
//! (a half-edge with one free end, as produced when an involution swaps the
//! ends of an edge) adds 1 to both.

use std::collections::VecDeque;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub semi_edges: Vec<usize>,
    #[serde(default)]
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub vertices: Vec<usize>,
    pub length: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    /// Largest elementwise difference, or infinity when lengths differ.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        self.values.iter().map(|v| (v - x).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Eigenvalues inside the open interval `(lo, hi)`.
    pub fn inside(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.values.iter().copied().filter(|&v| v > lo && v < hi).collect()
    }
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Multigraph { n, edges, semi_edges: Vec::new(), name: String::new() }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Empty);
        }
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(Error::VertexOutOfRange(u, v, self.n));
            }
        }
        for &v in &self.semi_edges {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, v, self.n));
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let g: Multigraph = serde_json::from_str(s)?;
        g.validate()?;
        Ok(g)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("multigraph serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        for &v in &self.semi_edges {
            deg[v] += 1;
        }
        deg
    }

    pub fn check_cubic(&self) -> Result<()> {
        self.validate()?;
        for (vertex, &degree) in self.degrees().iter().enumerate() {
            if degree != 3 {
                return Err(Error::NotCubic { vertex, degree });
            }
        }
        Ok(())
    }

    pub fn is_cubic(&self) -> bool {
        self.check_cubic().is_ok()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn has_loops(&self) -> bool {
        self.loop_count() > 0 || !self.semi_edges.is_empty()
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen: Vec<(usize, usize)> =
            self.edges.iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_multi_edges()
    }

    /// Integer adjacency counts with loops on the diagonal counted twice.
    pub fn adjacency_counts(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            if u == v {
                a[u][u] += 2;
            } else {
                a[u][v] += 1;
                a[v][u] += 1;
            }
        }
        for &v in &self.semi_edges {
            a[v][v] += 1;
        }
        a
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let counts = self.adjacency_counts();
        DMatrix::from_fn(self.n, self.n, |i, j| counts[i][j] as f64)
    }

    pub fn spectrum(&self) -> Spectrum {
        let values = self.adjacency_matrix().symmetric_eigenvalues();
        Spectrum::new(values.iter().copied().collect())
    }

    /// Distinct neighbours of each vertex, loops and semi-edges dropped.
    pub fn neighbour_sets(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Neighbour list with multiplicity; a loop lists its vertex twice.
    pub fn neighbour_multiset(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.neighbour_sets(), source)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn diameter_and_geodesic(&self) -> Result<(usize, GeodesicPath)> {
        self.validate()?;
        let adj = self.neighbour_sets();
        let mut best: Option<(usize, usize, usize)> = None;
        for s in 0..self.n {
            let dist = bfs(&adj, s);
            for (t, d) in dist.iter().enumerate() {
                let d = d.ok_or(Error::Disconnected)?;
                if best.map_or(true, |(bd, _, _)| d > bd) {
                    best = Some((d, s, t));
                }
            }
        }
        let (d, s, t) = best.expect("non-empty graph");
        let vertices = shortest_path(&adj, s, t);
        Ok((d, GeodesicPath { vertices, length: d }))
    }

    pub fn is_bipartite(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let adj = self.neighbour_sets();
        let mut colour = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
            semi_edges: self.semi_edges.iter().map(|&v| perm[v]).collect(),
            name: self.name.clone(),
        }
    }

    /// Underlying simple graph: loops, semi-edges and repeated edges removed.
    pub fn simple_skeleton(&self) -> Multigraph {
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Multigraph::new(self.n, edges).named(self.name.clone())
    }

    /// Edge list with each pair ordered and the list sorted.
    pub fn normalized_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges
    }

    /// Disjoint union, with `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.n;
        let mut g = self.clone();
        g.n += other.n;
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        g.semi_edges.extend(other.semi_edges.iter().map(|&v| v + shift));
        g
    }
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest path from `s` to `t`.
pub(crate) fn shortest_path(adj: &[Vec<usize>], s: usize, t: usize) -> Vec<usize> {
    let to_t = bfs(adj, t);
    let mut path = vec![s];
    let mut cur = s;
    while cur != t {
        let d = to_t[cur].unwrap();
        cur = *adj[cur].iter().find(|&&w| to_t[w] == Some(d - 1)).expect("shortest path continues");
        path.push(cur);
    }
    path
}

/// Named graphs used throughout the tests and fixtures.
pub mod named {
    use super::Multigraph;

    pub fn k4() -> Multigraph {
        Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).named("K4")
    }

    /// Three-dimensional cube; vertex labels are bit strings.
    pub fn cube() -> Multigraph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Multigraph::new(8, edges).named("cube")
    }

    /// Triangular prism.
    pub fn prism3() -> Multigraph {
        prism(3).named("prism3")
    }

    /// Circular ladder over an `k`-cycle.
    pub fn prism(k: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((i, (i + 1) % k));
            edges.push((k + i, k + (i + 1) % k));
            edges.push((i, k + i));
        }
        Multigraph::new(2 * k, edges).named(format!("prism{k}"))
    }

    pub fn k33() -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        Multigraph::new(6, edges).named("K33")
    }

    pub fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph::new(10, edges).named("petersen")
    }

    /// Centre joined to three vertices, each carrying a loop.
    pub fn b2() -> Multigraph {
        Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]).named("B2")
    }

    /// A looped vertex hanging off a triangle with one doubled side.
    pub fn b1() -> Multigraph {
        Multigraph::new(4, vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 3), (2, 3)]).named("B1")
    }
}
