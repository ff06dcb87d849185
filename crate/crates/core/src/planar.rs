//! Planarity testing with witnesses.
//!
//! Each biconnected block of the simple skeleton is embedded by path
//! addition (Demoucron, Malgrange and Pertuiset). A successful run yields the
//! faces of every block. On failure a Kuratowski subdivision is extracted by
//! deleting every edge whose removal keeps the graph non-planar; what remains
//! is a subdivided K3,3 or K5.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K33,
    K5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiSubdivision {
    pub kind: KuratowskiKind,
    /// Branch vertices; for K3,3 the first three form one side.
    pub branch: Vec<usize>,
    /// One path per edge of the underlying K3,3 or K5, endpoints included.
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    /// Faces of each biconnected block with at least three vertices.
    pub blocks: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(KuratowskiSubdivision),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

pub fn is_planar(g: &Multigraph) -> Planarity {
    let skeleton = g.simple_skeleton();
    let edges = skeleton.edges.clone();
    match embed(g.n, &edges) {
        Some(emb) => Planarity::Planar(emb),
        None => Planarity::NonPlanar(
            kuratowski(g.n, &edges).expect("a non-planar graph contains a Kuratowski subdivision"),
        ),
    }
}

impl PlanarEmbedding {
    /// Every block edge lies on exactly two face walks and Euler's formula
    /// holds block by block.
    pub fn verify(&self, g: &Multigraph) -> bool {
        let skeleton: HashSet<(usize, usize)> = g.simple_skeleton().edges.into_iter().collect();
        for faces in &self.blocks {
            let mut count: std::collections::HashMap<(usize, usize), usize> = Default::default();
            let mut verts = BTreeSet::new();
            for face in faces {
                for i in 0..face.len() {
                    let (a, b) = (face[i], face[(i + 1) % face.len()]);
                    let e = (a.min(b), a.max(b));
                    if !skeleton.contains(&e) {
                        return false;
                    }
                    *count.entry(e).or_default() += 1;
                    verts.insert(a);
                }
            }
            if count.values().any(|&c| c != 2) {
                return false;
            }
            let euler = verts.len() as i64 - count.len() as i64 + faces.len() as i64;
            if euler != 2 {
                return false;
            }
        }
        true
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().flatten().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }
}

impl KuratowskiSubdivision {
    /// Paths are internally disjoint, follow edges of `g`, and connect the
    /// branch vertices in the pattern of K3,3 or K5.
    pub fn verify(&self, g: &Multigraph) -> bool {
        let adj = g.neighbour_sets();
        let branch: HashSet<usize> = self.branch.iter().copied().collect();
        let expected: Vec<(usize, usize)> = match self.kind {
            KuratowskiKind::K33 if self.branch.len() == 6 => {
                let mut e = Vec::new();
                for i in 0..3 {
                    for j in 3..6 {
                        e.push((self.branch[i], self.branch[j]));
                    }
                }
                e
            }
            KuratowskiKind::K5 if self.branch.len() == 5 => {
                let mut e = Vec::new();
                for i in 0..5 {
                    for j in i + 1..5 {
                        e.push((self.branch[i], self.branch[j]));
                    }
                }
                e
            }
            _ => return false,
        };
        let mut ends: Vec<(usize, usize)> = self
            .paths
            .iter()
            .filter(|p| p.len() >= 2)
            .map(|p| {
                let (a, b) = (p[0], *p.last().unwrap());
                (a.min(b), a.max(b))
            })
            .collect();
        let mut want: Vec<(usize, usize)> = expected.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        ends.sort_unstable();
        want.sort_unstable();
        if ends != want || branch.len() != self.branch.len() {
            return false;
        }
        let mut interior = HashSet::new();
        for p in &self.paths {
            for w in p.windows(2) {
                if !adj[w[0]].contains(&w[1]) {
                    return false;
                }
            }
            for &v in &p[1..p.len() - 1] {
                if branch.contains(&v) || !interior.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    adj
}

/// Edge sets of the biconnected blocks (Hopcroft and Tarjan), iterative.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let adj = adjacency(n, edges);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = frames.last_mut() {
            if *idx < adj[u].len() {
                let w = adj[u][*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn embed(n: usize, edges: &[(usize, usize)]) -> Option<PlanarEmbedding> {
    let mut result = Vec::new();
    for block in blocks(n, edges) {
        if block.len() < 3 {
            continue;
        }
        result.push(embed_block(n, &block)?);
    }
    Some(PlanarEmbedding { blocks: result })
}

fn find_cycle(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut depth = vec![usize::MAX; adj.len()];
    let mut stack = vec![start];
    depth[start] = 0;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push(w);
            } else if w != parent[u] && depth[w] != usize::MAX && parent[w] != u {
                let (mut a, mut b) = (u, w);
                let (mut left, mut right) = (vec![a], vec![b]);
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                right.reverse();
                left.extend(right);
                return left;
            }
        }
    }
    Vec::new()
}

struct Fragment {
    attachments: Vec<usize>,
    interior: Vec<usize>,
}

fn embed_block(n: usize, block: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let adj = adjacency(n, block);
    let start = block[0].0;
    let cycle = find_cycle(&adj, start);
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    let block_vertices: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();

    while h_edges.len() < block.len() {
        let fragments = fragments(&adj, block, &block_vertices, &in_h, &h_edges);
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&i| fr.attachments.iter().all(|a| face_sets[i].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_idx = admissible[pick][0];
        let path = fragment_path(&adj, &fragments[pick], &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

fn fragments(
    adj: &[Vec<usize>],
    block: &[(usize, usize)],
    block_vertices: &BTreeSet<usize>,
    in_h: &[bool],
    h_edges: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(a, b) in block {
        if in_h[a] && in_h[b] && !h_edges.contains(&(a, b)) {
            out.push(Fragment { attachments: vec![a, b], interior: Vec::new() });
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    for &s in block_vertices {
        if in_h[s] || seen.contains(&s) {
            continue;
        }
        let mut interior = vec![s];
        let mut attach = BTreeSet::new();
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if in_h[w] {
                    attach.insert(w);
                } else if seen.insert(w) {
                    interior.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments: attach.into_iter().collect(), interior });
    }
    out
}

fn fragment_path(adj: &[Vec<usize>], fr: &Fragment, in_h: &[bool]) -> Vec<usize> {
    let (a, b) = (fr.attachments[0], fr.attachments[1]);
    if fr.interior.is_empty() {
        return vec![a, b];
    }
    let inside: HashSet<usize> = fr.interior.iter().copied().collect();
    let mut prev: std::collections::HashMap<usize, usize> = Default::default();
    let mut queue = VecDeque::new();
    for &w in &adj[a] {
        if inside.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if adj[u].contains(&b) {
            let mut path = vec![b, u];
            let mut cur = u;
            while prev[&cur] != a {
                cur = prev[&cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[u] {
            if !in_h[w] && inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment interior connects its attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&v| v == a).unwrap();
    let ib = face.iter().position(|&v| v == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % k;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

fn kuratowski(n: usize, edges: &[(usize, usize)]) -> Option<KuratowskiSubdivision> {
    let mut kept: Vec<(usize, usize)> = edges.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if embed(n, &trial).is_none() {
            kept = trial;
        } else {
            i += 1;
        }
    }
    let adj = adjacency(n, &kept);
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mut paths = Vec::new();
    let branch_set: HashSet<usize> = branch.iter().copied().collect();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !branch_set.contains(&cur) {
                let next = *adj[cur].iter().find(|&&w| w != prev)?;
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if b < cur {
                paths.push(path);
            }
        }
    }
    match (branch.len(), adj[branch[0]].len()) {
        (5, 4) => Some(KuratowskiSubdivision { kind: KuratowskiKind::K5, branch, paths }),
        (6, 3) => {
            let first = branch[0];
            let mut side_a: Vec<usize> = vec![first];
            let far: HashSet<usize> = paths
                .iter()
                .filter(|p| p[0] == first || *p.last().unwrap() == first)
                .map(|p| if p[0] == first { *p.last().unwrap() } else { p[0] })
                .collect();
            side_a.extend(branch.iter().copied().filter(|v| *v != first && !far.contains(v)));
            let mut ordered = side_a.clone();
            ordered.extend(branch.iter().copied().filter(|v| !side_a.contains(v)));
            Some(KuratowskiSubdivision { kind: KuratowskiKind::K33, branch: ordered, paths })
        }
        _ => None,
    }
}
