//! Exhaustive search over one- and two-link covers of small seed graphs.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write as _};
use std::path::Path;

use cubicgap_core::{is_planar, IntervalSet, Multigraph, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bands::{bands, gap_report, GapReport, DEFAULT_THRESHOLD};
use crate::periodic::{cyclic_quotient, primitive_directions, restrict_subtorus, PeriodicGraph};

/// Cyclic quotient sizes that must all be planar for a planar cover.
pub const PLANAR_QUOTIENT_SIZES: std::ops::RangeInclusive<usize> = 3..=8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// 1: single links, plus two-link restrictions when `two_link` is set.
    /// 2: additionally the full two-dimensional covers of every edge pair.
    pub rank: usize,
    pub two_link: bool,
    /// Grid for rank-1 covers.
    pub grid: usize,
    /// Grid per axis for full rank-2 covers.
    pub torus_grid: usize,
    pub threshold: f64,
    /// Bound on `|a|, |b|` for subtorus directions.
    pub max_coefficient: i64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rank: 2,
            two_link: true,
            grid: 256,
            torus_grid: 64,
            threshold: DEFAULT_THRESHOLD,
            max_coefficient: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub seed: usize,
    pub base: Multigraph,
    pub offsets: Vec<Vec<i64>>,
    pub subtorus: Option<[i64; 2]>,
    pub spectrum: IntervalSet,
    pub gaps: IntervalSet,
    pub flat_bands: Vec<(f64, usize)>,
    pub planar_quotients: Option<bool>,
}

impl CatalogEntry {
    pub fn cover(&self) -> PeriodicGraph {
        PeriodicGraph {
            rank: self.offsets.first().map_or(1, Vec::len),
            base: self.base.clone(),
            offsets: self.offsets.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.offsets.first().map_or(1, Vec::len)
    }

    pub fn report(&self) -> GapReport {
        GapReport {
            spectrum_estimate: self.spectrum.clone(),
            gaps: self.gaps.clone(),
            flat_bands: self.flat_bands.clone(),
        }
    }

    /// `x` lies strictly inside one of the gaps.
    pub fn gapped(&self, x: f64) -> bool {
        self.report().gapped(x)
    }

    /// The spectrum estimate is exactly `target` with endpoints within `tol`.
    pub fn matches_spectrum(&self, target: &[(f64, f64)], tol: f64) -> bool {
        self.spectrum.points.is_empty()
            && self.spectrum.intervals.len() == target.len()
            && self
                .spectrum
                .intervals
                .iter()
                .zip(target)
                .all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
    }
}

/// Content id of a cover: hash of the cell and its offsets.
pub fn cover_id(p: &PeriodicGraph) -> String {
    let content = serde_json::to_string(&(p.base.n, &p.base.edges, &p.base.semi_edges, &p.offsets))
        .expect("serializable");
    hex::encode(&Sha256::digest(content.as_bytes())[..8])
}

struct Candidate {
    seed: usize,
    cover: PeriodicGraph,
    subtorus: Option<[i64; 2]>,
}

fn candidates(seed: usize, g: &Multigraph, opts: &SearchOptions) -> Vec<Candidate> {
    let directions: Vec<(i64, i64)> =
        primitive_directions(opts.max_coefficient).into_iter().filter(|&(a, b)| a != 0 && b != 0).collect();
    let mut out = Vec::new();
    {
        let m = g.edges.len();
        for e in 0..m {
            if let Ok(cover) = PeriodicGraph::with_links(g.clone(), &[e]) {
                out.push(Candidate { seed, cover, subtorus: None });
            }
        }
        if !opts.two_link && opts.rank < 2 {
            return out;
        }
        for e1 in 0..m {
            for e2 in e1 + 1..m {
                let mut offsets = vec![vec![0, 0]; m];
                offsets[e1] = vec![1, 0];
                offsets[e2] = vec![0, 1];
                let Ok(two) = PeriodicGraph::new(g.clone(), offsets) else {
                    continue;
                };
                if opts.rank == 2 {
                    out.push(Candidate { seed, cover: two.clone(), subtorus: None });
                }
                for &(a, b) in &directions {
                    let line = restrict_subtorus(&two, a, b).expect("primitive direction");
                    out.push(Candidate { seed, cover: line, subtorus: Some([a, b]) });
                }
            }
        }
    }
    out
}

fn evaluate(c: &Candidate, opts: &SearchOptions, planar_only: bool) -> Option<CatalogEntry> {
    let planar = if planar_only {
        if c.cover.rank != 1 || !has_planar_quotients(&c.cover) {
            return None;
        }
        Some(true)
    } else {
        None
    };
    if !c.cover.is_connected() {
        return None;
    }
    let grid = if c.cover.rank == 1 { opts.grid } else { opts.torus_grid };
    let b = bands(&c.cover, grid).ok()?;
    let r = gap_report(&b, opts.threshold);
    Some(CatalogEntry {
        id: cover_id(&c.cover),
        seed: c.seed,
        base: c.cover.base.clone(),
        offsets: c.cover.offsets.clone(),
        subtorus: c.subtorus,
        spectrum: r.spectrum_estimate,
        gaps: r.gaps,
        flat_bands: r.flat_bands,
        planar_quotients: planar,
    })
}

/// All cyclic quotients with 3 to 8 cells are planar.
pub fn has_planar_quotients(p: &PeriodicGraph) -> bool {
    PLANAR_QUOTIENT_SIZES
        .into_iter()
        .all(|n| cyclic_quotient(p, n).map_or(false, |q| is_planar(&q).is_planar()))
}

fn spectrum_key(e: &CatalogEntry) -> String {
    let mut key = String::new();
    for &(a, b) in &e.spectrum.intervals {
        let _ = write!(key, "[{a:.6},{b:.6}]");
    }
    for &p in &e.spectrum.points {
        let _ = write!(key, "{{{p:.6}}}");
    }
    for &(v, m) in &e.flat_bands {
        let _ = write!(key, "f{v:.6}x{m}");
    }
    key
}

fn run(
    seeds: &[Multigraph],
    opts: &SearchOptions,
    planar_only: bool,
    on_seed: &mut dyn FnMut(&[CatalogEntry]),
) -> Vec<CatalogEntry> {
    let mut seen = HashSet::new();
    let mut all = Vec::new();
    for (seed, g) in seeds.iter().enumerate() {
        let found: Vec<Option<CatalogEntry>> =
            candidates(seed, g, opts).par_iter().map(|c| evaluate(c, opts, planar_only)).collect();
        let fresh: Vec<CatalogEntry> =
            found.into_iter().flatten().filter(|e| seen.insert(spectrum_key(e))).collect();
        on_seed(&fresh);
        all.extend(fresh);
    }
    all
}

/// Band structures and gaps of every one- and two-link cover of the seeds,
/// in the order (seed, edges, direction), collapsing equal spectra.
pub fn search_covers(seeds: &[Multigraph], opts: &SearchOptions) -> Vec<CatalogEntry> {
    run(seeds, opts, false, &mut |_| {})
}

/// [`search_covers`], handing the new entries of every seed to `on_seed`
/// as soon as that seed is done.
pub fn search_covers_streaming(
    seeds: &[Multigraph],
    opts: &SearchOptions,
    planar_only: bool,
    on_seed: &mut dyn FnMut(&[CatalogEntry]),
) -> Vec<CatalogEntry> {
    let opts = if planar_only { SearchOptions { rank: 1, ..opts.clone() } } else { opts.clone() };
    run(seeds, &opts, planar_only, on_seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarCatalog {
    pub entries: Vec<CatalogEntry>,
    /// Union of all gap sets.
    pub union: IntervalSet,
}

impl PlanarCatalog {
    /// Every grid point `lo, lo + step, ..., hi` is strictly inside a gap of
    /// some entry.
    pub fn covers(&self, lo: f64, hi: f64, step: f64) -> bool {
        self.first_uncovered(lo, hi, step).is_none()
    }

    pub fn first_uncovered(&self, lo: f64, hi: f64, step: f64) -> Option<f64> {
        let count = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=count)
            .map(|k| lo + k as f64 * step)
            .chain([hi])
            .find(|&x| !self.entries.iter().any(|e| e.gapped(x)))
    }

    /// Smallest set of entries, chosen greedily, whose gaps still cover the
    /// grid on `[lo, hi]`.
    pub fn greedy_cover(&self, lo: f64, hi: f64, step: f64) -> Vec<&CatalogEntry> {
        let count = ((hi - lo) / step + 1e-9).floor() as usize;
        let mut todo: Vec<f64> = (0..=count).map(|k| lo + k as f64 * step).chain([hi]).collect();
        let mut chosen: Vec<&CatalogEntry> = Vec::new();
        while !todo.is_empty() {
            let best = self.entries.iter().max_by_key(|e| todo.iter().filter(|&&x| e.gapped(x)).count());
            let Some(best) = best else { break };
            let before = todo.len();
            todo.retain(|&x| !best.gapped(x));
            if todo.len() == before {
                break;
            }
            chosen.push(best);
        }
        chosen
    }
}

/// Rank-1 covers whose cyclic quotients are all planar.
pub fn search_planar_covers(seeds: &[Multigraph], opts: &SearchOptions) -> PlanarCatalog {
    let opts = SearchOptions { rank: 1, ..opts.clone() };
    let entries = run(seeds, &opts, true, &mut |_| {});
    let union = entries.iter().fold(IntervalSet::empty(), |acc, e| acc.union(&e.gaps));
    PlanarCatalog { entries, union }
}

pub fn catalog_to_jsonl(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("serializable"));
        out.push('\n');
    }
    out
}

/// SHA-256 of the JSON-lines serialization.
pub fn catalog_hash(entries: &[CatalogEntry]) -> String {
    hex::encode(Sha256::digest(catalog_to_jsonl(entries).as_bytes()))
}

/// Append entries to a JSON-lines catalog, flushing after every line.
pub fn append_catalog(path: impl AsRef<Path>, entries: &[CatalogEntry]) -> Result<()> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for e in entries {
        writeln!(f, "{}", serde_json::to_string(e)?)?;
        f.flush()?;
    }
    Ok(())
}

pub fn read_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicgap_core::named;

    #[test]
    fn k4_single_links_stay_connected() {
        let opts = SearchOptions { rank: 1, two_link: false, grid: 64, ..Default::default() };
        let cands = candidates(0, &named::k4(), &opts);
        assert_eq!(cands.len(), 6);
        assert!(cands.iter().all(|c| c.cover.is_connected()));
        let cat = search_covers(&[named::k4()], &opts);
        assert!(!cat.is_empty());
        for e in &cat {
            assert!(e.spectrum.contains(3.0, 1e-9));
        }
    }

    #[test]
    fn ids_are_stable() {
        let p = PeriodicGraph::with_links(named::k4(), &[2]).unwrap();
        assert_eq!(cover_id(&p), cover_id(&p.clone()));
        let q = PeriodicGraph::with_links(named::k4(), &[3]).unwrap();
        assert_ne!(cover_id(&p), cover_id(&q));
    }

    #[test]
    fn catalog_round_trip() {
        let opts =
            SearchOptions { rank: 1, two_link: true, grid: 32, max_coefficient: 1, ..Default::default() };
        let cat = search_covers(&[named::k4()], &opts);
        let dir = std::env::temp_dir().join(format!("cubicgap-cat-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("catalog.jsonl");
        let _ = std::fs::remove_file(&path);
        append_catalog(&path, &cat).unwrap();
        let back = read_catalog(&path).unwrap();
        assert_eq!(back, cat);
        assert_eq!(catalog_hash(&back), catalog_hash(&cat));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
