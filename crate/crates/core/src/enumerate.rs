//! Exhaustive generation of connected cubic multigraphs.
//!
//! Vertices are labelled in the order they are first reached, so every
//! labelled graph produced is connected and only a small fraction of all
//! labellings of an isomorphism class is visited. Duplicates are removed
//! with [`canonical_form`].

use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub const MAX_ENUMERATION_ORDER: usize = 12;

pub fn enumerate_cubic_multigraphs(
    n: usize,
    allow_loops: bool,
    allow_multi: bool,
) -> Result<Vec<Multigraph>> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::OutOfRange(n));
    }
    let mut gen = Generator {
        n,
        allow_loops,
        allow_multi,
        free: vec![3; n],
        counts: vec![vec![0; n]; n],
        edges: Vec::new(),
        introduced: 1,
        found: BTreeMap::new(),
    };
    gen.extend(0);
    let tag = match (allow_loops, allow_multi) {
        (false, false) => "s",
        (true, false) => "l",
        (false, true) => "m",
        (true, true) => "lm",
    };
    Ok(gen.found.into_values().enumerate().map(|(i, g)| g.named(format!("cubic{n}{tag}-{i}"))).collect())
}

struct Generator {
    n: usize,
    allow_loops: bool,
    allow_multi: bool,
    free: Vec<u8>,
    counts: Vec<Vec<u8>>,
    edges: Vec<(usize, usize)>,
    introduced: usize,
    found: BTreeMap<CanonicalForm, Multigraph>,
}

impl Generator {
    fn extend(&mut self, min_partner: usize) {
        let Some(u) = (0..self.n).find(|&v| self.free[v] > 0) else {
            if self.introduced == self.n {
                self.emit();
            }
            return;
        };
        if u >= self.introduced {
            return;
        }
        let floor = if self.free[u] == 3 || min_partner < u { u } else { min_partner };

        if self.allow_loops && self.free[u] >= 2 && floor <= u {
            self.add(u, u);
            self.extend(if self.free[u] > 0 { u } else { 0 });
            self.remove(u, u);
        }
        for w in floor.max(u + 1)..self.introduced {
            if self.free[w] == 0 || (!self.allow_multi && self.counts[u][w] > 0) {
                continue;
            }
            self.add(u, w);
            self.extend(if self.free[u] > 0 { w } else { 0 });
            self.remove(u, w);
        }
        if self.introduced < self.n {
            let w = self.introduced;
            self.introduced += 1;
            self.add(u, w);
            self.extend(if self.free[u] > 0 { w } else { 0 });
            self.remove(u, w);
            self.introduced -= 1;
        }
    }

    fn add(&mut self, u: usize, w: usize) {
        if u == w {
            self.free[u] -= 2;
        } else {
            self.free[u] -= 1;
            self.free[w] -= 1;
        }
        self.counts[u][w] += 1;
        if u != w {
            self.counts[w][u] += 1;
        }
        self.edges.push((u, w));
    }

    fn remove(&mut self, u: usize, w: usize) {
        self.edges.pop();
        if u == w {
            self.free[u] += 2;
        } else {
            self.free[u] += 1;
            self.free[w] += 1;
        }
        self.counts[u][w] -= 1;
        if u != w {
            self.counts[w][u] -= 1;
        }
    }

    fn emit(&mut self) {
        let g = Multigraph::new(self.n, self.edges.clone());
        let (form, perm) = canonical_form(&g);
        self.found.entry(form).or_insert_with(|| {
            let mut h = g.relabel(&perm);
            h.edges = h.normalized_edges();
            h
        });
    }
}
