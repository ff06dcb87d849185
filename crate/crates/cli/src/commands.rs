use std::f64::consts::SQRT_2;
use std::fmt::Write as _;
use std::path::Path;

use cubicgap_certify::{
    audit_gap_interval, certify_gap, fekete_finiteness, find_hamilton_path, geodesic_bound, hampath_bound,
    GapCertificate,
};
use cubicgap_core::{
    a_membership, capacity_estimate, enumerate_cubic_multigraphs, is_planar, plan_gap_witness,
    preimage_intervals, random_cubic_graph, tmap_iterate, GapFamily, IntervalSet, Multigraph,
};
use cubicgap_cover::families::{fold, p_a, p_b, reflections, w_a, w_b, wbar_a, wbar_b};
use cubicgap_cover::{
    bands, catalog_hash, catalog_to_jsonl, cover_id, cyclic_quotient, gap_report, search_covers_streaming,
    search_planar_covers, CatalogEntry, PeriodicGraph, SearchOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{envelope, fmt12, Output};
use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Spectrum { graph } => spectrum(&load_graph(graph)?),
        Command::Tmap { graph, k, max_vertices } => tmap(&load_graph(graph)?, *k, *max_vertices, cli.tol),
        Command::Bands { cover } => band_table(&load_cover(cover)?, cli),
        Command::Search { order, rank, max_coefficient, planar } => {
            let seeds = seed_graphs(cli, &[*order])?;
            let opts = SearchOptions {
                rank: *rank,
                grid: cli.grid,
                threshold: cli.threshold,
                max_coefficient: *max_coefficient,
                ..Default::default()
            };
            search(&seeds, &opts, *planar, cli.out.as_deref())
        }
        Command::Quotient { cover, n, fold } => quotient(&load_cover(cover)?, *n, *fold),
        Command::Certify { target, cover } => {
            let target = parse_pair(target)?;
            match cover {
                Some(c) => certify_cover(&load_cover(c)?, target, None, cli),
                None => certify_search(target, cli),
            }
        }
        Command::Capacity { set, points } => capacity(set, *points),
        Command::Witness { xi, delta, order, max_vertices } => {
            let orders: Vec<usize> = (2..=*order).step_by(2).collect();
            witness(*xi, *delta, &seed_graphs(cli, &orders)?, *max_vertices, cli.grid)
        }
        Command::Audit { family, target, n_min, n_max } => audit(family, parse_pair(target)?, *n_min, *n_max),
        Command::Fekete { graph, set } => fekete(&load_graph(graph)?, &parse_list(set)?),
        Command::Bound { graph, random, lambda } => {
            let g = match (graph, random) {
                (Some(path), None) => load_graph(path)?,
                (None, Some(n)) => random_cubic_graph(*n, &mut ChaCha8Rng::seed_from_u64(cli.seed))?,
                _ => return Err(CliError::Input("give a graph file or --random N".into())),
            };
            bound(&g, *lambda)
        }
    }
}

pub fn load_graph(path: &Path) -> Result<Multigraph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Multigraph::from_json_str(&text)?)
}

/// A cover from a JSON file, or one of the built-in names.
pub fn load_cover(name: &str) -> Result<PeriodicGraph> {
    match name {
        "wbar_b" => Ok(wbar_b()),
        "wbar_a" => Ok(wbar_a()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            let p: PeriodicGraph = serde_json::from_str(&text)?;
            Ok(PeriodicGraph::new(p.base, p.offsets)?)
        }
    }
}

/// Graphs from `--seeds` (a JSON array or JSON lines), or every connected
/// cubic multigraph of the given orders.
pub fn seed_graphs(cli: &Cli, orders: &[usize]) -> Result<Vec<Multigraph>> {
    let Some(path) = &cli.seeds else {
        let mut out = Vec::new();
        for &n in orders {
            out.extend(enumerate_cubic_multigraphs(n, true, true)?);
        }
        return Ok(out);
    };
    let text = std::fs::read_to_string(path)?;
    let graphs: Vec<Multigraph> = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text)?
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<std::result::Result<_, _>>()?
    };
    for g in &graphs {
        g.validate()?;
        g.check_cubic()?;
    }
    Ok(graphs)
}

/// `"(a,b)"`, `"[a,b]"` or `"a,b"`.
pub fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let v = parse_list(s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']))?;
    match v[..] {
        [a, b] if a < b => Ok((a, b)),
        _ => Err(CliError::Input(format!("expected an interval (a,b) with a < b, got {s:?}"))),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<f64>().map_err(|e| CliError::Input(format!("{t:?}: {e}"))))
        .collect()
}

fn csv_line(values: &[f64]) -> String {
    values.iter().map(|&x| fmt12(x)).collect::<Vec<_>>().join(",")
}

pub fn spectrum(g: &Multigraph) -> Result<Output> {
    if g.edges.is_empty() && g.semi_edges.is_empty() {
        return Err(cubicgap_core::Error::NoEdges.into());
    }
    if let Err(e) = g.check_cubic() {
        eprintln!("warning: {e}");
    }
    let line = csv_line(&g.spectrum().values);
    let mut out = Output::default();
    out.line(&line);
    out.file("spectrum.csv", format!("{line}\n"));
    Ok(out)
}

#[derive(Serialize)]
struct MembershipRow {
    value: f64,
    membership: cubicgap_core::Membership,
}

pub fn tmap(g: &Multigraph, k: usize, max_vertices: usize, tol: f64) -> Result<Output> {
    g.check_cubic()?;
    let size = 3usize.checked_pow(k as u32).and_then(|p| p.checked_mul(g.n));
    if size.map_or(true, |s| s > max_vertices) {
        return Err(CliError::Input(format!(
            "T^{k} of a {}-vertex graph exceeds {max_vertices} vertices",
            g.n
        )));
    }
    let t = tmap_iterate(g, k)?.named(format!("T^{k}({})", g.name));
    let values = t.spectrum().values;
    let rows = values
        .iter()
        .map(|&value| Ok(MembershipRow { value, membership: a_membership(value, k, tol)? }))
        .collect::<Result<Vec<_>>>()?;
    let inside = rows.iter().filter(|r| r.membership.in_a()).count();
    let mut out = Output::default();
    out.line(format!(
        "{}: {} vertices, {inside} of {} eigenvalues inside A at depth {k}",
        t.name,
        t.n,
        values.len()
    ));
    out.file("tmap.json", t.to_json());
    out.file("spectrum.csv", format!("{}\n", csv_line(&values)));
    out.file("membership.json", envelope("tmap", None, &rows));
    Ok(out)
}

#[derive(Serialize)]
struct BandSummary<'a> {
    cover_id: String,
    grid: usize,
    threshold: f64,
    report: &'a cubicgap_cover::GapReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    exact_flat_bands: Vec<(i64, usize)>,
}

pub fn band_table(p: &PeriodicGraph, cli: &Cli) -> Result<Output> {
    let b = bands(p, cli.grid)?;
    let report = gap_report(&b, cli.threshold);
    let mut exact_flat_bands = Vec::new();
    if cli.exact && p.rank == 1 {
        for &(value, copies) in &report.flat_bands {
            let r = value.round();
            if (value - r).abs() < 1e-9 {
                let m = cubicgap_certify::flat_band_multiplicity(p, &cubicgap_certify::exact::rat(r as i64))?;
                if m < copies {
                    return Err(CliError::Refuted(format!(
                        "flat band {r} has exact multiplicity {m} < {copies}"
                    )));
                }
                exact_flat_bands.push((r as i64, m));
            }
        }
    }
    let mut out = Output::default();
    out.line(format!("cover {} rank {} grid {}", cover_id(p), p.rank, cli.grid));
    out.line(format!("spectrum {}", interval_text(&report.spectrum_estimate)));
    out.line(format!("gaps {}", interval_text(&report.gaps)));
    for &(v, m) in &report.flat_bands {
        out.line(format!("flat band {} x{m}", fmt12(v)));
    }
    out.file("bands.csv", b.to_csv());
    let summary = BandSummary {
        cover_id: cover_id(p),
        grid: cli.grid,
        threshold: cli.threshold,
        report: &report,
        exact_flat_bands,
    };
    out.file("gaps.json", envelope("bands", None, &summary));
    Ok(out)
}

fn interval_text(s: &IntervalSet) -> String {
    let mut t = String::new();
    for &(a, b) in &s.intervals {
        let _ = write!(t, "[{}, {}] ", fmt12(a), fmt12(b));
    }
    for &p in &s.points {
        let _ = write!(t, "{{{}}} ", fmt12(p));
    }
    t.trim_end().to_string()
}

#[derive(Serialize)]
struct SearchSummary {
    seeds: usize,
    entries: usize,
    options: SearchOptions,
    planar: bool,
}

/// Catalog search. With an output directory the catalog is appended there
/// seed by seed, so an interrupted run keeps what it found.
pub fn search(
    seeds: &[Multigraph],
    opts: &SearchOptions,
    planar: bool,
    out_dir: Option<&Path>,
) -> Result<Output> {
    let partial = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join("catalog.jsonl");
            std::fs::write(&path, "")?;
            Some(path)
        }
        None => None,
    };
    let mut flush_error = None;
    let entries = search_covers_streaming(seeds, opts, planar, &mut |fresh| {
        if let Some(path) = &partial {
            if let Err(e) = cubicgap_cover::append_catalog(path, fresh) {
                flush_error.get_or_insert(e);
            }
        }
    });
    if let Some(e) = flush_error {
        return Err(e.into());
    }
    let hash = catalog_hash(&entries);
    let mut out = Output::default();
    out.line(format!("{} seeds, {} covers, catalog {hash}", seeds.len(), entries.len()));
    for e in &entries {
        out.line(format!("  {} {} gaps {}", e.id, e.base.name, interval_text(&e.gaps)));
    }
    out.file("catalog.jsonl", catalog_to_jsonl(&entries));
    let summary = SearchSummary { seeds: seeds.len(), entries: entries.len(), options: opts.clone(), planar };
    out.file("search.json", envelope("search", Some(&hash), &summary));
    Ok(out)
}

#[derive(Serialize)]
struct QuotientSummary {
    cover_id: String,
    cells: usize,
    folded: bool,
    vertices: usize,
    planar: bool,
    spectrum: Vec<f64>,
}

pub fn quotient(p: &PeriodicGraph, n: usize, folded: bool) -> Result<Output> {
    let g = if folded {
        reflections(p)
            .iter()
            .find_map(|r| fold(p, n, r).ok())
            .ok_or_else(|| CliError::Input("no reflection folds this quotient freely".into()))?
            .graph
    } else {
        cyclic_quotient(p, n)?
    };
    let planar = is_planar(&g).is_planar();
    let values = g.spectrum().values;
    let mut out = Output::default();
    out.line(format!("{} vertices, planar {planar}", g.n));
    out.line(csv_line(&values));
    out.file("quotient.json", g.to_json());
    let summary =
        QuotientSummary { cover_id: cover_id(p), cells: n, folded, vertices: g.n, planar, spectrum: values };
    out.file("quotient_summary.json", envelope("quotient", None, &summary));
    Ok(out)
}

#[derive(Serialize)]
struct CertifySummary<'a> {
    cover_id: &'a str,
    target: (f64, f64),
    touch_angle: cubicgap_certify::TouchAngle,
    eigenvalues: Vec<String>,
    gap: Option<[String; 2]>,
    reverified: bool,
}

fn certify_cover(p: &PeriodicGraph, target: (f64, f64), hash: Option<&str>, cli: &Cli) -> Result<Output> {
    let cert = certify_gap(p, target, cli.grid.max(cubicgap_certify::CERTIFICATION_GRID))?;
    let json = cert.to_json();
    if cli.exact {
        let back: GapCertificate = serde_json::from_str(&json)?;
        back.reverify()?;
    }
    let summary = CertifySummary {
        cover_id: &cert.cover_id,
        target,
        touch_angle: cert.touch_angle,
        eigenvalues: cert.eigenpairs.iter().map(|e| e.value.to_string()).collect(),
        gap: cert.gap.as_ref().map(|[a, b]| [a.value.to_string(), b.value.to_string()]),
        reverified: cli.exact,
    };
    let mut out = Output::default();
    out.line(format!("cover {} certified at {:?}", cert.cover_id, cert.touch_angle));
    out.line(format!("eigenvalues {}", summary.eigenvalues.join(",")));
    if let Some([a, b]) = &summary.gap {
        out.line(format!("gap ({a}, {b})"));
    }
    out.file("certify.json", envelope("certify", hash, &summary));
    out.file("certificate.json", json);
    Ok(out)
}

/// Search seeds of order 4, then 6, for a rank-1 cover with a gap matching
/// `target` within `1e-6`, and certify the first one that passes.
fn certify_search(target: (f64, f64), cli: &Cli) -> Result<Output> {
    let opts = SearchOptions { rank: 1, grid: cli.grid, threshold: cli.threshold, ..Default::default() };
    let orders: Vec<Vec<usize>> = if cli.seeds.is_some() { vec![vec![]] } else { vec![vec![4], vec![6]] };
    let mut last_error = None;
    for order in orders {
        let seeds = seed_graphs(cli, &order)?;
        let entries = search_covers_streaming(&seeds, &opts, false, &mut |_| {});
        let hash = catalog_hash(&entries);
        for e in entries.iter().filter(|e| has_gap(e, target)) {
            match certify_cover(&e.cover(), target, Some(&hash), cli) {
                Ok(out) => return Ok(out),
                Err(err) => last_error = Some(err),
            }
        }
    }
    Err(last_error.unwrap_or_else(|| CliError::Refuted(format!("no cover with gap {target:?} found"))))
}

fn has_gap(e: &CatalogEntry, (a, b): (f64, f64)) -> bool {
    e.rank() == 1 && e.gaps.intervals.iter().any(|&(x, y)| (x - a).abs() < 1e-6 && (y - b).abs() < 1e-6)
}

/// `interval:a,b` or `level:m` (the `m`-fold preimage of `[-3, 3]`).
pub fn parse_set(s: &str) -> Result<(IntervalSet, Option<f64>)> {
    match s.split_once(':') {
        Some(("interval", rest)) => {
            let (a, b) = parse_pair(rest)?;
            let expected = (a <= -3.0 && b >= 3.0).then_some(1.5);
            Ok((IntervalSet::interval(a, b), expected))
        }
        Some(("level", m)) => {
            let m: usize = m.trim().parse().map_err(|e| CliError::Input(format!("level {m:?}: {e}")))?;
            Ok((preimage_intervals(m)?.intervals, Some(1.5f64.powf(0.5f64.powi(m as i32)))))
        }
        _ => Err(CliError::Input(format!("unknown set {s:?}; use interval:a,b or level:m"))),
    }
}

#[derive(Serialize)]
struct CapacitySummary {
    set: IntervalSet,
    points: usize,
    estimate: f64,
    expected: Option<f64>,
}

pub fn capacity(set: &str, points: usize) -> Result<Output> {
    let (s, expected) = parse_set(set)?;
    let estimate = capacity_estimate(&s, points)?;
    let mut out = Output::default();
    match expected {
        Some(e) => out.line(format!("capacity {} (expected {})", fmt12(estimate), fmt12(e))),
        None => out.line(format!("capacity {}", fmt12(estimate))),
    }
    out.file(
        "capacity.json",
        envelope("capacity", None, &CapacitySummary { set: s, points, estimate, expected }),
    );
    Ok(out)
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub xi: f64,
    pub delta: f64,
    pub plan: cubicgap_core::WitnessPlan,
    pub vertices: usize,
    pub distance: f64,
}

/// Planar cover catalog over `seeds`, a witness plan for `xi`, and the
/// realized graph `T^k` of the one-cell quotient of the planned cover.
pub fn witness(
    xi: f64,
    delta: f64,
    seeds: &[Multigraph],
    max_vertices: usize,
    grid: usize,
) -> Result<Output> {
    let opts = SearchOptions { rank: 1, grid, max_coefficient: 1, ..Default::default() };
    let catalog = search_planar_covers(seeds, &opts);
    let hash = catalog_hash(&catalog.entries);
    let families: Vec<GapFamily> =
        catalog.entries.iter().map(|e| GapFamily { id: e.id.clone(), gaps: e.gaps.clone() }).collect();
    let plan = plan_gap_witness(xi, delta, &families)?;
    let entry =
        catalog.entries.iter().find(|e| e.id == plan.family_id).expect("planned family is catalogued");
    let base = cyclic_quotient(&entry.cover(), 1)?;
    if base.n.saturating_mul(3usize.saturating_pow(plan.k as u32)) > max_vertices {
        return Err(CliError::Input(format!("witness for k = {} exceeds {max_vertices} vertices", plan.k)));
    }
    let g = tmap_iterate(&base, plan.k)?;
    let distance = g.spectrum().distance_to(xi);
    if distance <= delta {
        return Err(CliError::Refuted(format!("eigenvalue within {distance} of {xi}")));
    }
    let report = WitnessReport { xi, delta, plan, vertices: g.n, distance };
    let mut out = Output::default();
    out.line(format!(
        "xi {} family {} k {} vertices {} distance {}",
        fmt12(xi),
        report.plan.family_id,
        report.plan.k,
        g.n,
        fmt12(distance)
    ));
    out.file("witness.json", envelope("witness", Some(&hash), &report));
    out.file("witness_graph.json", g.to_json());
    Ok(out)
}

pub fn audit(family: &str, target: (f64, f64), n_min: usize, n_max: usize) -> Result<Output> {
    let f: fn(usize) -> cubicgap_core::Result<Multigraph> = match family {
        "w_b" => w_b,
        "w_a" => w_a,
        "p_b" => p_b,
        "p_a" => p_a,
        other => return Err(CliError::Input(format!("unknown family {other:?}"))),
    };
    let report = audit_gap_interval(target, family, &f, n_min..=n_max)?;
    let mut out = Output::default();
    match &report.refutation {
        None => out.line(format!(
            "{family}: ({}, {}) achieved for n in {n_min}..={n_max}",
            fmt12(target.0),
            fmt12(target.1)
        )),
        Some(r) => {
            out.line(format!("{family}: refuted at n = {} by eigenvalue {}", r.order, fmt12(r.eigenvalue)))
        }
    }
    for e in &report.edges {
        out.line(format!(
            "  widened ({}, {}): hit by {} members, {:?} bound, conclusive {}",
            fmt12(e.widened.0),
            fmt12(e.widened.1),
            e.members_hit,
            e.method,
            e.conclusive
        ));
    }
    out.file("audit.json", envelope("audit", None, &report));
    if let Some(r) = &report.refutation {
        out.failure =
            Some(CliError::Refuted(format!("{family} has eigenvalue {} at n = {}", r.eigenvalue, r.order)));
    }
    Ok(out)
}

pub fn fekete(g: &Multigraph, set: &[f64]) -> Result<Output> {
    let r = fekete_finiteness(g, set)?;
    let mut out = Output::default();
    out.line(format!("{:?}", r.verdict));
    out.file("fekete.json", envelope("fekete", None, &r));
    Ok(out)
}

#[derive(Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
enum BoundReport {
    Geodesic(cubicgap_certify::GeodesicBound),
    HamiltonPath(cubicgap_certify::PathBound),
}

pub fn bound(g: &Multigraph, lambda: f64) -> Result<Output> {
    let report = if lambda.abs() <= SQRT_2 {
        BoundReport::Geodesic(geodesic_bound(g, lambda)?)
    } else {
        let path = find_hamilton_path(g)
            .ok_or_else(|| CliError::Numerical("no Hamilton path found; bound inconclusive".into()))?;
        BoundReport::HamiltonPath(hampath_bound(g, lambda, &path)?)
    };
    let distance_bound = match &report {
        BoundReport::Geodesic(b) => b.distance_bound,
        BoundReport::HamiltonPath(b) => b.distance_bound,
    };
    let distance = g.spectrum().distance_to(lambda);
    if distance > distance_bound + 1e-9 {
        return Err(CliError::Numerical(format!("distance {distance} exceeds the bound {distance_bound}")));
    }
    let mut out = Output::default();
    out.line(format!("distance {} <= bound {}", fmt12(distance), fmt12(distance_bound)));
    out.file("bound.json", envelope("bound", None, &report));
    Ok(out)
}
