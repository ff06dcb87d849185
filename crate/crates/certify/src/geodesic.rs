//! Test functions on neighbourhoods of long geodesics.
//!
//! A geodesic `x_0, ..., x_t` of a simple cubic graph has exactly one
//! neighbour off the path at each interior vertex and two at each end.
//! Off-path vertices adjacent to the path are classified by the positions
//! they attach to:
//!
//! | kind | positions              |
//! |------|------------------------|
//! | a    | `p`                    |
//! | b    | `p, p + 2`             |
//! | c    | `p, p + 1` (triangle)  |
//! | d    | `p, p + 1, p + 2`      |
//!
//! No other pattern is possible on a geodesic. Kinds c and d are absorbed
//! into the neighbourhood `N`. The path is then cut into segments: maximal
//! plain runs (type XII) and special segments grown around the absorbed
//! vertices. Whenever a vertex outside `N` is adjacent to two different
//! segments, those segments and everything between them are merged, and
//! the merge is counted as a bridge. Special segments are typed by their
//! content:
//!
//! | type | triangles | fans | bridges |
//! |------|-----------|------|---------|
//! | I    | 0         | 1    | 0       |
//! | II   | 1         | 0    | 0       |
//! | III  | 1         | 0    | 1       |
//! | IV   | 1         | 0    | 2       |
//! | V    | 2         | 0    | 1       |
//! | VI   | 2         | 0    | 2       |
//! | VII  | 2         | 0    | 3       |
//! | VIII | 3         | 0    | 1 to 4  |
//! | IX   | 0         | 1    | 1 or 2  |
//! | X    | 1 or 2    | 1    | 0 to 3  |
//! | XI   | 0         | 2    | 0 to 3  |
//!
//! Anything else is reported as a decomposition failure. Each special
//! segment is traversed by a Hamilton path from its first to its last path
//! vertex, and the concatenation is a Hamilton path of `N` carrying the
//! plane wave. Residuals are charged to the segment containing the vertex,
//! or for a vertex outside `N` to the one segment it touches; a segment
//! passes when its charge is at most its size, plus 9 for each end of the
//! geodesic it contains.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use cubicgap_core::{GeodesicPath, Multigraph};
use serde::{Deserialize, Serialize};

use crate::error::{CertifyError, Result};
use crate::testfn::TestFunction;

const MAX_GEODESICS: usize = 400;
const PATHS_PER_PAIR: usize = 2;
const PATHS_PER_SEGMENT: usize = 64;
const ENDPOINT_ALLOWANCE: f64 = 9.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachmentKind {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub vertex: usize,
    pub positions: Vec<usize>,
    pub kind: AttachmentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SegmentType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
}

impl SegmentType {
    fn classify(triangles: usize, fans: usize, bridges: usize) -> Option<SegmentType> {
        use SegmentType::*;
        Some(match (triangles, fans, bridges) {
            (0, 1, 0) => I,
            (1, 0, 0) => II,
            (1, 0, 1) => III,
            (1, 0, 2) => IV,
            (2, 0, 1) => V,
            (2, 0, 2) => VI,
            (2, 0, 3) => VII,
            (3, 0, 1..=4) => VIII,
            (0, 1, 1..=2) => IX,
            (1..=2, 1, 0..=3) => X,
            (0, 2, 0..=3) => XI,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentType,
    /// First and last geodesic positions covered.
    pub start: usize,
    pub end: usize,
    /// Vertices in the order of the segment's Hamilton path.
    pub path: Vec<usize>,
    pub triangles: usize,
    pub fans: usize,
    pub bridges: usize,
}

impl Segment {
    pub fn alpha(&self) -> usize {
        self.path[0]
    }

    pub fn beta(&self) -> usize {
        self.path[self.path.len() - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDecomposition {
    pub geodesic: GeodesicPath,
    pub attachments: Vec<Attachment>,
    pub segments: Vec<Segment>,
    /// The neighbourhood `N` in Hamilton path order.
    pub neighbourhood: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFailure {
    pub geodesic: Vec<usize>,
    pub position: usize,
    pub reason: String,
    /// Edges among vertices within distance 2 of the offending position.
    pub local_edges: Vec<(usize, usize)>,
}

impl fmt::Display for DecompositionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at geodesic position {} (vertex {}); local edges {:?}",
            self.reason, self.position, self.geodesic[self.position], self.local_edges
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentAccount {
    pub kind: SegmentType,
    pub size: usize,
    pub charge: f64,
    pub allowance: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicBound {
    pub lambda: f64,
    pub rayleigh: f64,
    /// `1 + 18 / L` with `L = log2(|X| / 3)`.
    pub bound: f64,
    pub distance_bound: f64,
    pub log_size: f64,
    pub geodesic_length: usize,
    pub neighbourhood_size: usize,
    pub accounts: Vec<SegmentAccount>,
    /// Geodesics tried before one passed.
    pub attempts: usize,
}

pub fn log_size(n: usize) -> f64 {
    (n as f64 / 3.0).log2()
}

fn check_input(g: &Multigraph) -> Result<Vec<Vec<usize>>> {
    g.check_cubic()?;
    if !g.is_simple() {
        return Err(CertifyError::Invalid("geodesic test functions need a simple graph".into()));
    }
    if !g.is_connected() {
        return Err(CertifyError::Core(cubicgap_core::Error::Disconnected));
    }
    Ok(g.neighbour_sets())
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Geodesics longer than `L`, longest first, a few per endpoint pair.
pub fn candidate_geodesics(g: &Multigraph, limit: usize) -> Vec<Vec<usize>> {
    let adj = g.neighbour_sets();
    let dist: Vec<Vec<usize>> = (0..g.n).map(|s| bfs(&adj, s)).collect();
    let min_len = log_size(g.n).floor().max(0.0) as usize + 1;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..g.n {
        for e in s + 1..g.n {
            if dist[s][e] >= min_len && dist[s][e] != usize::MAX {
                pairs.push((dist[s][e], s, e));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut out = Vec::new();
    for (_, s, e) in pairs {
        let mut found = Vec::new();
        shortest_paths(&adj, &dist[e], vec![s], PATHS_PER_PAIR, &mut found);
        for p in found {
            out.push(p);
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

fn shortest_paths(
    adj: &[Vec<usize>],
    to_end: &[usize],
    path: Vec<usize>,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("non-empty path");
    if to_end[last] == 0 {
        out.push(path);
        return;
    }
    for &w in &adj[last] {
        if out.len() >= cap {
            return;
        }
        if to_end[w] + 1 == to_end[last] {
            let mut next = path.clone();
            next.push(w);
            shortest_paths(adj, to_end, next, cap, out);
        }
    }
}

struct Special {
    lo: usize,
    hi: usize,
    extras: Vec<usize>,
    triangles: usize,
    fans: usize,
    bridges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Owner {
    Special(usize),
    Run(usize),
}

fn failure(g_adj: &[Vec<usize>], geo: &[usize], position: usize, reason: String) -> DecompositionFailure {
    let centre = geo[position];
    let dist = bfs(g_adj, centre);
    let mut local_edges = Vec::new();
    for (u, list) in g_adj.iter().enumerate() {
        for &w in list {
            if u < w && dist[u] <= 2 && dist[w] <= 2 {
                local_edges.push((u, w));
            }
        }
    }
    DecompositionFailure { geodesic: geo.to_vec(), position, reason, local_edges }
}

fn owners(specials: &[Special], geo: &[usize]) -> HashMap<usize, Owner> {
    let mut map = HashMap::new();
    for (q, &v) in geo.iter().enumerate() {
        let owner = match specials.iter().position(|s| s.lo <= q && q <= s.hi) {
            Some(i) => Owner::Special(i),
            None => Owner::Run(specials.iter().filter(|s| s.hi < q).count()),
        };
        map.insert(v, owner);
    }
    for (i, s) in specials.iter().enumerate() {
        for &v in &s.extras {
            map.insert(v, Owner::Special(i));
        }
    }
    map
}

fn merge_specials(specials: &mut Vec<Special>, lo: usize, hi: usize, bridge: bool) {
    let (mut lo, mut hi) = (lo, hi);
    let mut merged =
        Special { lo, hi, extras: Vec::new(), triangles: 0, fans: 0, bridges: usize::from(bridge) };
    loop {
        let Some(i) = specials.iter().position(|s| s.lo <= hi && lo <= s.hi) else { break };
        let s = specials.remove(i);
        lo = lo.min(s.lo);
        hi = hi.max(s.hi);
        merged.extras.extend(s.extras);
        merged.triangles += s.triangles;
        merged.fans += s.fans;
        merged.bridges += s.bridges;
    }
    merged.lo = lo;
    merged.hi = hi;
    specials.push(merged);
    specials.sort_by_key(|s| s.lo);
}

/// Hamilton paths of the subgraph induced on `members` from `start` to
/// `end`, at most `cap` of them.
fn segment_paths(
    adj: &[Vec<usize>],
    members: &[usize],
    start: usize,
    end: usize,
    cap: usize,
) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<usize>],
        inside: &HashMap<usize, bool>,
        path: &mut Vec<usize>,
        used: &mut HashMap<usize, bool>,
        target: (usize, usize),
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("non-empty path");
        if path.len() == target.1 {
            if last == target.0 {
                out.push(path.clone());
            }
            return;
        }
        if last == target.0 {
            return;
        }
        for &w in &adj[last] {
            if out.len() >= cap {
                return;
            }
            if inside.contains_key(&w) && !used[&w] {
                used.insert(w, true);
                path.push(w);
                rec(adj, inside, path, used, target, cap, out);
                path.pop();
                used.insert(w, false);
            }
        }
    }
    let inside: HashMap<usize, bool> = members.iter().map(|&v| (v, true)).collect();
    let mut used: HashMap<usize, bool> = members.iter().map(|&v| (v, false)).collect();
    used.insert(start, true);
    let mut out = Vec::new();
    rec(adj, &inside, &mut vec![start], &mut used, (end, members.len()), cap, &mut out);
    out
}

fn decompose_along(
    adj: &[Vec<usize>],
    geo: &[usize],
) -> std::result::Result<SegmentDecomposition, DecompositionFailure> {
    let n = adj.len();
    let t = geo.len() - 1;
    let mut position = vec![None; n];
    for (q, &v) in geo.iter().enumerate() {
        position[v] = Some(q);
    }
    for (q, &v) in geo.iter().enumerate() {
        for &w in &adj[v] {
            if let Some(r) = position[w] {
                if r.abs_diff(q) > 1 {
                    return Err(failure(
                        adj,
                        geo,
                        q,
                        format!("chord to position {r}: path is not a geodesic"),
                    ));
                }
            }
        }
        if q < t && !adj[v].contains(&geo[q + 1]) {
            return Err(failure(adj, geo, q, "consecutive path vertices are not adjacent".into()));
        }
    }

    let mut attachments = Vec::new();
    let mut specials: Vec<Special> = Vec::new();
    for v in 0..n {
        if position[v].is_some() {
            continue;
        }
        let mut positions: Vec<usize> = adj[v].iter().filter_map(|&w| position[w]).collect();
        if positions.is_empty() {
            continue;
        }
        positions.sort_unstable();
        let kind = match positions.as_slice() {
            [_] => AttachmentKind::A,
            [p, q] if q - p == 2 => AttachmentKind::B,
            [p, q] if q - p == 1 => AttachmentKind::C,
            [p, q, r] if q - p == 1 && r - q == 1 => AttachmentKind::D,
            _ => {
                return Err(failure(
                    adj,
                    geo,
                    positions[0],
                    format!("vertex {v} attaches at {positions:?}: path is not a geodesic"),
                ));
            }
        };
        if matches!(kind, AttachmentKind::C | AttachmentKind::D) {
            let triangles = usize::from(kind == AttachmentKind::C);
            let lo = positions[0];
            let hi = positions[positions.len() - 1];
            specials.push(Special { lo, hi, extras: vec![v], triangles, fans: 1 - triangles, bridges: 0 });
        }
        attachments.push(Attachment { vertex: v, positions, kind });
    }
    specials.sort_by_key(|s| s.lo);
    let seeds: Vec<(usize, usize)> = specials.iter().map(|s| (s.lo, s.hi)).collect();
    let mut merged: Vec<Special> = Vec::new();
    for (s, (lo, hi)) in specials.into_iter().zip(seeds) {
        merged.push(s);
        merge_specials(&mut merged, lo, hi, false);
    }
    let mut specials = merged;

    // Merge across vertices outside N that touch two segments.
    'closure: loop {
        let owner = owners(&specials, geo);
        for u in 0..n {
            if owner.contains_key(&u) {
                continue;
            }
            let touched: BTreeSet<Owner> = adj[u].iter().filter_map(|w| owner.get(w).copied()).collect();
            if touched.len() < 2 {
                continue;
            }
            let mut lo = usize::MAX;
            let mut hi = 0;
            for &w in &adj[u] {
                if let Some(q) = position[w] {
                    lo = lo.min(q);
                    hi = hi.max(q);
                }
            }
            for o in &touched {
                if let Owner::Special(i) = *o {
                    lo = lo.min(specials[i].lo);
                    hi = hi.max(specials[i].hi);
                }
            }
            merge_specials(&mut specials, lo, hi, true);
            continue 'closure;
        }
        break;
    }

    let mut segments = Vec::new();
    let mut cursor = 0;
    let run = |lo: usize, hi: usize| Segment {
        kind: SegmentType::XII,
        start: lo,
        end: hi,
        path: geo[lo..=hi].to_vec(),
        triangles: 0,
        fans: 0,
        bridges: 0,
    };
    for s in &specials {
        if cursor < s.lo {
            segments.push(run(cursor, s.lo - 1));
        }
        let kind = SegmentType::classify(s.triangles, s.fans, s.bridges).ok_or_else(|| {
            failure(
                adj,
                geo,
                s.lo,
                format!(
                    "segment with {} triangles, {} fans and {} bridges is outside the type table",
                    s.triangles, s.fans, s.bridges
                ),
            )
        })?;
        let mut members: Vec<usize> = geo[s.lo..=s.hi].to_vec();
        members.extend(&s.extras);
        let path = segment_paths(adj, &members, geo[s.lo], geo[s.hi], 1).pop().ok_or_else(|| {
            failure(adj, geo, s.lo, format!("no Hamilton path through a type {kind:?} segment"))
        })?;
        segments.push(Segment {
            kind,
            start: s.lo,
            end: s.hi,
            path,
            triangles: s.triangles,
            fans: s.fans,
            bridges: s.bridges,
        });
        cursor = s.hi + 1;
    }
    if cursor <= t {
        segments.push(run(cursor, t));
    }
    let neighbourhood = segments.iter().flat_map(|s| s.path.iter().copied()).collect();
    let d = SegmentDecomposition {
        geodesic: GeodesicPath { vertices: geo.to_vec(), length: t },
        attachments,
        segments,
        neighbourhood,
    };
    validate(adj, &d).map_err(|(q, reason)| failure(adj, geo, q, reason))?;
    Ok(d)
}

/// Chaining and the two closure conditions, checked from scratch.
fn validate(adj: &[Vec<usize>], d: &SegmentDecomposition) -> std::result::Result<(), (usize, String)> {
    let mut segment_of: HashMap<usize, usize> = HashMap::new();
    for (j, s) in d.segments.iter().enumerate() {
        for &v in &s.path {
            if segment_of.insert(v, j).is_some() {
                return Err((s.start, format!("vertex {v} lies in two segments")));
            }
        }
        if s.path.windows(2).any(|w| !adj[w[0]].contains(&w[1])) {
            return Err((s.start, "segment path is not a path".into()));
        }
    }
    for w in d.segments.windows(2) {
        if !adj[w[0].beta()].contains(&w[1].alpha()) || w[0].end + 1 != w[1].start {
            return Err((w[1].start, "segments do not chain".into()));
        }
    }
    for a in &d.attachments {
        if matches!(a.kind, AttachmentKind::C | AttachmentKind::D) && !segment_of.contains_key(&a.vertex) {
            return Err((
                a.positions[0],
                format!("attachment {} of kind {:?} left outside", a.vertex, a.kind),
            ));
        }
    }
    for u in 0..adj.len() {
        if segment_of.contains_key(&u) {
            continue;
        }
        let touched: BTreeSet<usize> = adj[u].iter().filter_map(|w| segment_of.get(w).copied()).collect();
        if touched.len() > 1 {
            let j = *touched.iter().next().expect("non-empty");
            return Err((d.segments[j].start, format!("vertex {u} outside N joins segments {touched:?}")));
        }
    }
    Ok(())
}

/// Segment decomposition along the first suitable geodesic longer than
/// `log2(|X| / 3)`.
pub fn decompose_geodesic(g: &Multigraph) -> Result<SegmentDecomposition> {
    let adj = check_input(g)?;
    let mut first_failure = None;
    for geo in candidate_geodesics(g, MAX_GEODESICS) {
        match decompose_along(&adj, &geo) {
            Ok(d) => return Ok(d),
            Err(f) => {
                first_failure.get_or_insert(f);
            }
        }
    }
    Err(match first_failure {
        Some(f) => CertifyError::Decomposition(f.to_string()),
        None => CertifyError::Invalid("no geodesic longer than log2(n/3)".into()),
    })
}

fn charges(adj: &[Vec<usize>], d: &SegmentDecomposition, residuals: &[f64]) -> Vec<f64> {
    let mut segment_of: HashMap<usize, usize> = HashMap::new();
    for (j, s) in d.segments.iter().enumerate() {
        for &v in &s.path {
            segment_of.insert(v, j);
        }
    }
    let mut charge = vec![0.0; d.segments.len()];
    for (v, r) in residuals.iter().enumerate() {
        let owner =
            segment_of.get(&v).copied().or_else(|| adj[v].iter().find_map(|w| segment_of.get(w).copied()));
        if let Some(j) = owner {
            charge[j] += r * r;
        }
    }
    charge
}

fn residuals_for(g: &Multigraph, d: &SegmentDecomposition, lambda: f64) -> Result<Vec<f64>> {
    Ok(TestFunction::new(d.neighbourhood.clone(), lambda)?.residuals(g))
}

/// Pick, segment by segment, the Hamilton path with the smallest charge.
fn tune_paths(g: &Multigraph, adj: &[Vec<usize>], d: &mut SegmentDecomposition, lambda: f64) -> Result<()> {
    for j in 0..d.segments.len() {
        if d.segments[j].kind == SegmentType::XII {
            continue;
        }
        let s = &d.segments[j];
        let options = segment_paths(adj, &s.path, s.alpha(), s.beta(), PATHS_PER_SEGMENT);
        if options.len() < 2 {
            continue;
        }
        let mut best: Option<(f64, Vec<usize>)> = None;
        for path in options {
            d.segments[j].path = path.clone();
            d.neighbourhood = d.segments.iter().flat_map(|s| s.path.iter().copied()).collect();
            let c = charges(adj, d, &residuals_for(g, d, lambda)?)[j];
            if best.as_ref().map_or(true, |(b, _)| c < *b) {
                best = Some((c, path));
            }
        }
        d.segments[j].path = best.expect("at least two options").1;
        d.neighbourhood = d.segments.iter().flat_map(|s| s.path.iter().copied()).collect();
    }
    Ok(())
}

fn account(
    g: &Multigraph,
    adj: &[Vec<usize>],
    d: &SegmentDecomposition,
    lambda: f64,
    attempts: usize,
) -> Result<GeodesicBound> {
    let residuals = residuals_for(g, d, lambda)?;
    let charge = charges(adj, d, &residuals);
    let t = d.geodesic.length;
    let accounts: Vec<SegmentAccount> = d
        .segments
        .iter()
        .zip(charge)
        .map(|(s, charge)| {
            let ends = usize::from(s.start == 0) + usize::from(s.end == t);
            let allowance = s.path.len() as f64 + ENDPOINT_ALLOWANCE * ends as f64;
            SegmentAccount {
                kind: s.kind,
                size: s.path.len(),
                charge,
                allowance,
                ok: charge <= allowance + 1e-9,
            }
        })
        .collect();
    let log_size = log_size(g.n);
    let rayleigh = residuals.iter().map(|r| r * r).sum::<f64>() / d.neighbourhood.len() as f64;
    Ok(GeodesicBound {
        lambda,
        rayleigh,
        bound: 1.0 + 18.0 / log_size,
        distance_bound: rayleigh.sqrt(),
        log_size,
        geodesic_length: t,
        neighbourhood_size: d.neighbourhood.len(),
        accounts,
        attempts,
    })
}

/// Rayleigh-quotient bound on `distance(lambda, spectrum)` from a test
/// function on a geodesic neighbourhood, for `|lambda| <= sqrt 2`.
///
/// Geodesics are tried in turn until one decomposes and passes the
/// segment accounting; the returned bound then satisfies
/// `rayleigh <= 1 + 18 / L`.
pub fn geodesic_bound(g: &Multigraph, lambda: f64) -> Result<GeodesicBound> {
    if !(lambda.abs() <= std::f64::consts::SQRT_2 + 1e-12) {
        return Err(CertifyError::Invalid(format!("|lambda| = {} exceeds sqrt 2", lambda.abs())));
    }
    let adj = check_input(g)?;
    let mut first_problem: Option<String> = None;
    let mut attempts = 0;
    for geo in candidate_geodesics(g, MAX_GEODESICS) {
        attempts += 1;
        let mut d = match decompose_along(&adj, &geo) {
            Ok(d) => d,
            Err(f) => {
                first_problem.get_or_insert(f.to_string());
                continue;
            }
        };
        tune_paths(g, &adj, &mut d, lambda)?;
        let report = account(g, &adj, &d, lambda, attempts)?;
        if report.accounts.iter().all(|a| a.ok) && report.rayleigh <= report.bound + 1e-12 {
            return Ok(report);
        }
        if let Some(bad) = report.accounts.iter().find(|a| !a.ok) {
            first_problem.get_or_insert(format!(
                "type {:?} segment charged {:.4} against {:.4} along geodesic {geo:?}",
                bad.kind, bad.charge, bad.allowance
            ));
        }
    }
    Err(CertifyError::Decomposition(
        first_problem.unwrap_or_else(|| "no geodesic longer than log2(n/3)".into()),
    ))
}
