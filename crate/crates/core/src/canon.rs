//! Canonical labelling by colour refinement and individualization.
//!
//! Every leaf of the individualization tree is visited (no automorphism
//! pruning), which keeps the code short and is fast enough for the graph
//! sizes this crate deals with.

use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u8>,
}

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        let mut s = format!("{:02x}", self.n);
        for b in &self.code {
            s.push_str(&format!("{b:x}"));
        }
        s
    }
}

/// Canonical form and a labelling `perm` with `perm[v]` the canonical
/// position of vertex `v`.
pub fn canonical_form(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let counts = g.adjacency_counts();
    let n = g.n;
    let a: Vec<Vec<u8>> = counts.iter().map(|row| row.iter().map(|&c| c as u8).collect()).collect();
    let mut initial: Vec<(u8, usize)> =
        (0..n).map(|v| (a[v][v], a[v].iter().map(|&c| c as usize).sum())).collect();
    let keys = initial.clone();
    initial.sort_unstable();
    initial.dedup();
    let colours: Vec<usize> = keys.iter().map(|k| initial.binary_search(k).unwrap()).collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(&a, refine(&a, colours), &mut best);
    let (code, perm) = best.unwrap_or_default();
    (CanonicalForm { n, code }, perm)
}

pub fn canonical_graph(g: &Multigraph) -> Multigraph {
    let (_, perm) = canonical_form(g);
    let mut h = g.relabel(&perm);
    h.edges = h.normalized_edges();
    h.semi_edges.sort_unstable();
    h
}

pub fn are_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    g.n == h.n && g.edges.len() == h.edges.len() && canonical_form(g).0 == canonical_form(h).0
}

fn refine(a: &[Vec<u8>], mut colours: Vec<usize>) -> Vec<usize> {
    let n = a.len();
    let mut cells = count_cells(&colours);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> =
                    (0..n).filter(|&w| w != v && a[v][w] > 0).map(|w| (colours[w], a[v][w])).collect();
                s.sort_unstable();
                (colours[v], s)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colours = sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect();
        let new_cells = sorted.len();
        if new_cells == cells {
            return colours;
        }
        cells = new_cells;
    }
}

fn count_cells(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(a: &[Vec<u8>], colours: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = a.len();
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1);
    let Some(cell) = target else {
        let code = encode(a, &colours);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, colours));
        }
        return;
    };
    for v in (0..n).filter(|&v| colours[v] == cell) {
        let split: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(w, &c)| if c > cell || (c == cell && w != v) { c + 1 } else { c })
            .collect();
        search(a, refine(a, split), best);
    }
}

fn encode(a: &[Vec<u8>], perm: &[usize]) -> Vec<u8> {
    let n = a.len();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut code = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            code.push(a[inv[i]][inv[j]]);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn relabelled_graphs_share_a_form() {
        let g = petersen();
        let perm = vec![3, 7, 1, 0, 9, 2, 8, 4, 6, 5];
        assert_eq!(canonical_form(&g).0, canonical_form(&g.relabel(&perm)).0);
    }

    #[test]
    fn distinguishes_small_graphs() {
        assert!(!are_isomorphic(&prism(3), &k33()));
        assert!(!are_isomorphic(&b1(), &b2()));
        assert!(are_isomorphic(&cube(), &cube().relabel(&[7, 6, 5, 4, 3, 2, 1, 0])));
    }

    #[test]
    fn canonical_graph_is_isomorphic() {
        let g = b1();
        let c = canonical_graph(&g);
        assert!(are_isomorphic(&g, &c));
        assert_eq!(canonical_graph(&c), c);
    }
}
