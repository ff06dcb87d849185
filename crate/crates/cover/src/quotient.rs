//! Orbit quotients of finite graphs by groups of automorphisms.

use std::collections::{BTreeMap, HashSet, VecDeque};

use cubicgap_core::{Error, Multigraph, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub graph: Multigraph,
    pub has_loops: bool,
    pub has_multi: bool,
    /// Edges whose ends are swapped by some group element fold into
    /// semi-edges.
    pub has_semi_edges: bool,
}

const MAX_GROUP_ORDER: usize = 1 << 16;

pub fn is_automorphism(g: &Multigraph, perm: &[usize]) -> bool {
    if perm.len() != g.n {
        return false;
    }
    let mut seen = vec![false; g.n];
    for &p in perm {
        if p >= g.n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    let counts = g.adjacency_counts();
    (0..g.n).all(|u| (0..g.n).all(|v| counts[u][v] == counts[perm[u]][perm[v]]))
}

fn generate_group(n: usize, gens: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut group = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h: Vec<usize> = g.iter().map(|&x| s[x]).collect();
            if seen.insert(h.clone()) {
                if group.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Invalid("generated group is too large".into()));
                }
                group.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(group)
}

/// Quotient of `g` by the group generated by `perms`.
///
/// The action must be free on vertices. Each edge orbit becomes one edge of
/// the quotient; an orbit containing an edge together with its reversal
/// becomes a semi-edge.
pub fn quotient_by_automorphism(g: &Multigraph, perms: &[Vec<usize>]) -> Result<Quotient> {
    for (i, p) in perms.iter().enumerate() {
        if !is_automorphism(g, p) {
            return Err(Error::Invalid(format!("permutation {i} is not an automorphism")));
        }
    }
    let group = generate_group(g.n, perms)?;
    let mut class = vec![usize::MAX; g.n];
    let mut classes = 0;
    for v in 0..g.n {
        if class[v] != usize::MAX {
            continue;
        }
        let orbit: HashSet<usize> = group.iter().map(|h| h[v]).collect();
        if orbit.len() != group.len() {
            return Err(Error::Invalid(format!("vertex {v} has a nontrivial stabilizer")));
        }
        for w in orbit {
            class[w] = classes;
        }
        classes += 1;
    }

    // Edges are compared as vertex pairs with multiplicity: the k-th copy of
    // a parallel edge is tracked through its copy index.
    let mut copies: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &g.edges {
        *copies.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    let mut semi_edges = Vec::new();
    for (&(u, v), &mult) in &copies {
        if done.contains(&(u, v)) {
            continue;
        }
        let mut flipped = false;
        for h in &group {
            let (a, b) = (h[u], h[v]);
            if a == v && b == u && u != v {
                flipped = true;
            }
            done.insert((a.min(b), a.max(b)));
        }
        let (cu, cv) = (class[u], class[v]);
        for _ in 0..mult {
            if flipped {
                semi_edges.push(cu);
            } else {
                edges.push((cu.min(cv), cu.max(cv)));
            }
        }
    }
    let mut graph = Multigraph::new(classes, edges);
    graph.semi_edges = semi_edges;
    Ok(Quotient {
        has_loops: graph.loop_count() > 0,
        has_multi: graph.has_multi_edges(),
        has_semi_edges: !graph.semi_edges.is_empty(),
        graph,
    })
}
