//! The triangle map: subdivide every edge, then take the line graph.
//!
//! Equivalently each vertex is replaced by a triangle on its three
//! half-edges, and the two half-edges of every original edge are joined.

use crate::canon::are_isomorphic;
use crate::dynamics::f_preimage;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Spectrum};

pub fn tmap(g: &Multigraph) -> Result<Multigraph> {
    g.check_cubic()?;
    let mut next_port = vec![0usize; g.n];
    let mut take = |v: usize| {
        let p = 3 * v + next_port[v];
        next_port[v] += 1;
        p
    };
    let mut edges = Vec::with_capacity(3 * g.n + g.edges.len());
    for v in 0..g.n {
        edges.push((3 * v, 3 * v + 1));
        edges.push((3 * v, 3 * v + 2));
        edges.push((3 * v + 1, 3 * v + 2));
    }
    for &(u, v) in &g.edges {
        let a = take(u);
        let b = take(v);
        edges.push((a.min(b), a.max(b)));
    }
    let semi_edges = g.semi_edges.iter().map(|&v| take(v)).collect();
    let name = if g.name.is_empty() { String::new() } else { format!("T({})", g.name) };
    Ok(Multigraph { n: 3 * g.n, edges, semi_edges, name })
}

pub fn tmap_iterate(g: &Multigraph, k: usize) -> Result<Multigraph> {
    let mut h = g.clone();
    for _ in 0..k {
        h = tmap(&h)?;
    }
    Ok(h)
}

/// Predicted spectrum of `tmap(Y)` from the spectrum of a cubic `Y` without
/// semi-edges: both preimages of every eigenvalue, plus `n/2` zeros and
/// `n/2` copies of `-2`.
pub fn tmap_spectrum_predict(sigma: &Spectrum) -> Result<Spectrum> {
    let n = sigma.len();
    if n % 2 == 1 {
        return Err(Error::OddSpectrum(n));
    }
    Ok(predict(sigma, n / 2, n / 2))
}

/// Prediction for any cubic multigraph. With `e` full edges and `s`
/// semi-edges the extra eigenvalues are `e + s - n` zeros and `e - n`
/// copies of `-2`.
pub fn tmap_spectrum_predict_graph(g: &Multigraph) -> Result<Spectrum> {
    g.check_cubic()?;
    let (n, e, s) = (g.n, g.edges.len(), g.semi_edges.len());
    Ok(predict(&g.spectrum(), e + s - n, e - n))
}

fn predict(sigma: &Spectrum, zeros: usize, minus_twos: usize) -> Spectrum {
    let mut values = Vec::with_capacity(2 * sigma.len() + zeros + minus_twos);
    for &lambda in &sigma.values {
        let (a, b) = f_preimage(lambda.max(-13.0 / 4.0)).expect("clamped to the domain");
        values.push(a);
        values.push(b);
    }
    values.extend(std::iter::repeat(0.0).take(zeros));
    values.extend(std::iter::repeat(-2.0).take(minus_twos));
    Spectrum::new(values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    Graph(Multigraph),
    NotInImage,
}

/// Find `Z` with `tmap(Z) ≅ G` by partitioning the vertices into triangles.
pub fn tmap_inverse(g: &Multigraph) -> Result<Preimage> {
    g.check_cubic()?;
    if g.n % 3 != 0 {
        return Ok(Preimage::NotInImage);
    }
    let counts = g.adjacency_counts();
    let adj = g.neighbour_sets();
    let mut owner = vec![usize::MAX; g.n];
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    if let Some(z) = partition(g, &counts, &adj, &mut owner, &mut triangles)? {
        return Ok(Preimage::Graph(z));
    }
    Ok(Preimage::NotInImage)
}

fn partition(
    g: &Multigraph,
    counts: &[Vec<i64>],
    adj: &[Vec<usize>],
    owner: &mut Vec<usize>,
    triangles: &mut Vec<[usize; 3]>,
) -> Result<Option<Multigraph>> {
    let Some(v) = (0..g.n).find(|&v| owner[v] == usize::MAX) else {
        let z = contract(g, owner, triangles);
        return Ok(if are_isomorphic(&tmap(&z)?, g) { Some(z) } else { None });
    };
    for (i, &a) in adj[v].iter().enumerate() {
        for &b in &adj[v][i + 1..] {
            if owner[a] != usize::MAX || owner[b] != usize::MAX || counts[a][b] == 0 {
                continue;
            }
            let t = triangles.len();
            for x in [v, a, b] {
                owner[x] = t;
            }
            triangles.push([v, a, b]);
            if let Some(z) = partition(g, counts, adj, owner, triangles)? {
                return Ok(Some(z));
            }
            triangles.pop();
            for x in [v, a, b] {
                owner[x] = usize::MAX;
            }
        }
    }
    Ok(None)
}

fn contract(g: &Multigraph, owner: &[usize], triangles: &[[usize; 3]]) -> Multigraph {
    let mut dropped = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for &(u, w) in &g.edges {
        let key = (u.min(w), u.max(w));
        if u != w && owner[u] == owner[w] && dropped.insert(key) {
            continue;
        }
        let (a, b) = (owner[u], owner[w]);
        edges.push((a.min(b), a.max(b)));
    }
    let semi_edges = g.semi_edges.iter().map(|&v| owner[v]).collect();
    Multigraph { n: triangles.len(), edges, semi_edges, name: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn truncated_tetrahedron() {
        let t = tmap(&k4()).unwrap();
        assert_eq!(t.n, 12);
        assert!(t.is_cubic() && t.is_simple());
        let expected = [-2.0, -2.0, -2.0, -1.0, -1.0, -1.0, 0.0, 0.0, 2.0, 2.0, 2.0, 3.0];
        let s = t.spectrum();
        assert!(s.values.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-9));
        let predicted = tmap_spectrum_predict(&k4().spectrum()).unwrap();
        assert!(predicted.max_deviation(&s) < 1e-9);
    }

    #[test]
    fn rejects_non_cubic_and_odd() {
        let path = Multigraph::new(3, vec![(0, 1), (1, 2)]);
        assert!(tmap(&path).is_err());
        assert!(tmap_spectrum_predict(&Spectrum::new(vec![3.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn inverse_examples() {
        let t = tmap(&k4()).unwrap();
        match tmap_inverse(&t).unwrap() {
            Preimage::Graph(z) => assert!(are_isomorphic(&z, &k4())),
            Preimage::NotInImage => panic!("T(K4) has a preimage"),
        }
        assert_eq!(tmap_inverse(&k4()).unwrap(), Preimage::NotInImage);
        assert_eq!(tmap_inverse(&cube()).unwrap(), Preimage::NotInImage);
    }

    #[test]
    fn loops_become_double_edges() {
        let t = tmap(&b2()).unwrap();
        assert!(t.is_cubic() && t.has_multi_edges() && !t.has_loops());
        match tmap_inverse(&t).unwrap() {
            Preimage::Graph(z) => assert!(are_isomorphic(&z, &b2())),
            Preimage::NotInImage => panic!("T(B2) has a preimage"),
        }
    }

    #[test]
    fn semi_edge_prediction() {
        let mut g = Multigraph::new(2, vec![(0, 1), (0, 1)]);
        g.semi_edges = vec![0, 1];
        let t = tmap(&g).unwrap();
        let predicted = tmap_spectrum_predict_graph(&g).unwrap();
        assert!(predicted.max_deviation(&t.spectrum()) < 1e-9);
    }
}
