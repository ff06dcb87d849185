//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use cubicgap_certify::{
    certify_gap, fekete_finiteness, geodesic_bound, FeketeVerdict, GapCertificate, TouchAngle,
    CERTIFICATION_GRID,
};
use cubicgap_core::{
    a_membership, are_isomorphic, capacity_estimate, enumerate_cubic_multigraphs, is_planar, named,
    plan_gap_witness, preimage_intervals, random_cubic_graph, tmap, tmap_iterate, tmap_spectrum_predict,
    GapFamily, IntervalSet, KuratowskiKind, Multigraph, Planarity,
};
use cubicgap_cover::families::{p_b, w_a, w_b, wbar_a, wbar_b};
use cubicgap_cover::{cyclic_quotient, search_covers, search_planar_covers, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn multigraphs_up_to(n_max: usize) -> Vec<Multigraph> {
    (2..=n_max)
        .step_by(2)
        .flat_map(|n| enumerate_cubic_multigraphs(n, true, true).expect("enumeration"))
        .collect()
}

fn sqrt17() -> f64 {
    17f64.sqrt()
}

fn wbar_a_spectrum() -> IntervalSet {
    let s = sqrt17();
    IntervalSet::new(vec![(-(1.0 + s) / 2.0, -2.0), (0.0, (s - 1.0) / 2.0), (2.0, 3.0)], vec![])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let graphs = multigraphs_up_to(10);
    let mut worst = 0.0f64;
    for g in &graphs {
        let predicted = tmap_spectrum_predict(&g.spectrum()).map_err(|e| e.to_string())?;
        let direct = tmap(g).map_err(|e| e.to_string())?.spectrum();
        check(predicted.len() == direct.len(), || format!("{}: length mismatch", g.name))?;
        worst = worst.max(predicted.max_deviation(&direct));
    }
    let elapsed = start.elapsed();
    check(worst < 1e-9, || format!("deviation {worst:e}"))?;
    check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{} multigraphs, max deviation {worst:.1e}, {:.1}s", graphs.len(), elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    for k in 0..=4 {
        let g = tmap_iterate(&named::k4(), k).map_err(|e| e.to_string())?;
        check(g.n == 4 * 3usize.pow(k as u32), || format!("|T^{k}(K4)| = {}", g.n))?;
        for &x in &g.spectrum().values {
            let m = a_membership(x, k, 1e-6).map_err(|e| e.to_string())?;
            check(m.in_a(), || format!("eigenvalue {x} of T^{k}(K4) outside A"))?;
        }
    }
    Ok("all eigenvalues of T^k(K4), k <= 4, inside A; sizes 4*3^k".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions { rank: 2, grid: 256, max_coefficient: 3, ..Default::default() };
    let four = enumerate_cubic_multigraphs(4, true, true).map_err(|e| e.to_string())?;
    let found = search_covers(&four, &opts);
    let b = found
        .iter()
        .find(|e| e.matches_spectrum(&[(-3.0, -1.0), (1.0, 3.0)], 1e-6))
        .ok_or("no [-3,-1] u [1,3] cover over 4-vertex seeds")?;

    let six = enumerate_cubic_multigraphs(6, true, true).map_err(|e| e.to_string())?;
    let found = search_covers(&six, &opts);
    let target = wbar_a_spectrum().intervals;
    let a = found
        .iter()
        .find(|e| e.matches_spectrum(&target, 1e-6))
        .ok_or("no second extremal cover over 6-vertex seeds")?;
    let lo = a.spectrum.intervals[0].0;
    let mid = a.spectrum.intervals[1].1;
    check((lo + 2.5615528128088303).abs() < 1e-6 && (mid - 1.5615528128088303).abs() < 1e-6, || {
        format!("endpoints {lo} {mid}")
    })?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1800), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "found {} and {} ({} over 6-vertex seeds), {:.1}s",
        b.id,
        a.id,
        a.base.name,
        elapsed.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases = [
        (wbar_b(), (-1.0, 1.0), TouchAngle::Pi, vec!["1", "1", "-1", "-1"]),
        (wbar_a(), (-2.0, 0.0), TouchAngle::Zero, vec!["3", "1", "0", "0", "-2", "-2"]),
    ];
    let mut ids = Vec::new();
    for (p, target, angle, want) in cases {
        let cert = certify_gap(&p, target, CERTIFICATION_GRID).map_err(|e| e.to_string())?;
        check(cert.touch_angle == angle, || format!("touch angle {:?}", cert.touch_angle))?;
        let values: Vec<String> = cert.eigenpairs.iter().map(|e| e.value.to_string()).collect();
        check(values == want, || format!("eigenvalues {values:?}"))?;
        check(cert.eigenpairs.iter().all(|e| e.value.is_integer() && e.vector.len() == p.n()), || {
            "non-integer eigenpair".into()
        })?;
        check(cert.symmetry.iter().all(|s| s.holds && s.deltas.len() == 3), || "transpose symmetry".into())?;
        for b in cert.band_extrema.iter().filter(|b| !b.flat) {
            check(b.ok && b.second_derivative.abs() > 1e-3, || {
                format!("band {} second derivative {}", b.band, b.second_derivative)
            })?;
        }
        let path = dir.path().join(format!("{}.json", cert.cover_id));
        cert.save(&path).map_err(|e| e.to_string())?;
        GapCertificate::load(&path).and_then(|c| c.reverify()).map_err(|e| format!("reload: {e}"))?;
        ids.push(cert.cover_id);
    }
    Ok(format!("certificates {} and {} re-verified from disk", ids[0], ids[1]))
}

fn criterion_5() -> Outcome {
    let wa = wbar_a_spectrum();
    for n in 2..=16 {
        let b = w_b(n).map_err(|e| e.to_string())?.spectrum();
        check(b.values.iter().all(|&x| x.abs() >= 1.0 - 1e-9 && x.abs() <= 3.0 + 1e-9), || {
            format!("W_b({n}) eigenvalue inside (-1,1)")
        })?;
        let a = w_a(n).map_err(|e| e.to_string())?.spectrum();
        check(a.values.iter().all(|&x| wa.contains(x, 1e-9)), || format!("W_a({n}) eigenvalue outside"))?;
    }
    check(are_isomorphic(&w_b(2).map_err(|e| e.to_string())?, &named::cube()), || {
        "W_b(2) is not the cube".into()
    })?;
    for n in 3..=8 {
        let g = w_b(n).map_err(|e| e.to_string())?;
        match is_planar(&g) {
            Planarity::NonPlanar(k) if k.kind == KuratowskiKind::K33 && k.verify(&g) => {}
            _ => return Err(format!("W_b({n}) lacks a K3,3 witness")),
        }
    }
    for n in 2..=8 {
        let g = p_b(n).map_err(|e| e.to_string())?;
        check(is_planar(&g).is_planar(), || format!("P_b({n}) not planar"))?;
        check(g.spectrum().inside(-1.0 + 1e-9, 1.0 - 1e-9).is_empty(), || format!("P_b({n}) not gapped"))?;
    }
    Ok("W_b(n), W_a(n) for 2 <= n <= 16; W_b(2) = cube; K3,3 for 3..8; P_b(n) planar, gapped for 2..8".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let lambdas = [-1.4, -0.7, 0.0, 0.7, 1.4];
    let mut failures = Vec::new();
    let mut worst_margin = f64::INFINITY;
    for i in 0..200 {
        let n = 2 * rng.gen_range(10..=60);
        let g = random_cubic_graph(n, &mut rng).map_err(|e| e.to_string())?;
        let spec = g.spectrum();
        for &lambda in &lambdas {
            match geodesic_bound(&g, lambda) {
                Ok(b) => {
                    let d = spec.distance_to(lambda);
                    let accounted = b.accounts.iter().all(|a| a.ok);
                    if d > b.distance_bound + 1e-9 || b.rayleigh > b.bound + 1e-12 || !accounted {
                        failures.push(format!("graph {i} (n = {n}) at {lambda}"));
                    }
                    worst_margin = worst_margin.min(b.bound.sqrt() - d);
                }
                Err(e) => failures.push(format!("graph {i} (n = {n}) at {lambda}: {e}")),
            }
        }
    }
    check(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("1000 bounds hold, zero decomposition failures, smallest slack {worst_margin:.3}"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0usize;
    for g in multigraphs_up_to(10) {
        let spec = g.spectrum();
        let mut distinct: Vec<f64> = Vec::new();
        for &v in &spec.values {
            if distinct.last().map_or(true, |&l| v - l > 1e-6) {
                distinct.push(v);
            }
        }
        for mask in 1u32..(1 << distinct.len()) {
            if mask.count_ones() > 4 {
                continue;
            }
            let set: Vec<f64> =
                (0..distinct.len()).filter(|i| mask >> i & 1 == 1).map(|i| distinct[i]).collect();
            let contained = spec.values.iter().all(|&v| set.iter().any(|&f| (v - f).abs() < 1e-9));
            let verdict = fekete_finiteness(&g, &set).map_err(|e| e.to_string())?.verdict;
            let want = if contained { FeketeVerdict::Contained } else { FeketeVerdict::SpectrumNotContained };
            check(verdict == want, || format!("{} with {set:?}: {verdict:?}", g.name))?;
            checked += 1;
        }
    }
    let prism = fekete_finiteness(&named::prism3(), &[-1.0, 3.0]).map_err(|e| e.to_string())?;
    check(prism.verdict == FeketeVerdict::SpectrumNotContained, || "3-prism verdict".into())?;
    Ok(format!("{checked} (graph, F) pairs agree; 3-prism with {{-1,3}} not contained"))
}

fn criterion_8() -> Outcome {
    let full = capacity_estimate(&IntervalSet::interval(-3.0, 3.0), 64).map_err(|e| e.to_string())?;
    check((full - 1.5).abs() < 0.02, || format!("[-3,3]: {full}"))?;
    let mut estimates = vec![full];
    for m in 1..=6 {
        let set = preimage_intervals(m).map_err(|e| e.to_string())?.intervals;
        let c = capacity_estimate(&set, 64).map_err(|e| e.to_string())?;
        if m <= 4 {
            let want = 1.5f64.powf(0.5f64.powi(m as i32));
            check((c - want).abs() < 0.02, || format!("level {m}: {c} vs {want}"))?;
        }
        check(c < estimates[m - 1] && c > 1.0, || format!("level {m}: {c} after {}", estimates[m - 1]))?;
        estimates.push(c);
    }
    let text: Vec<String> = estimates.iter().map(|c| format!("{c:.4}")).collect();
    Ok(format!("estimates {}", text.join(" > ")))
}

fn planar_catalog() -> cubicgap_cover::PlanarCatalog {
    let seeds = multigraphs_up_to(6);
    search_planar_covers(
        &seeds,
        &SearchOptions { rank: 1, grid: 256, max_coefficient: 1, ..Default::default() },
    )
}

fn criterion_9(catalog: &cubicgap_cover::PlanarCatalog) -> Outcome {
    check(catalog.entries.len() >= 4, || format!("only {} planar covers", catalog.entries.len()))?;
    if let Some(x) = catalog.first_uncovered(-2.0, 0.0, 0.01) {
        return Err(format!("{x} not covered"));
    }
    let stretch = match catalog.first_uncovered(-3.0, 8f64.sqrt() - 0.01, 0.01) {
        None => "stretch goal [-3, 2sqrt2 - 0.01] covered".to_string(),
        Some(x) => format!("stretch goal first uncovered at {x:.2}"),
    };
    Ok(format!("{} planar covers cover [-2, 0]; {stretch}", catalog.entries.len()))
}

fn criterion_10(catalog: &cubicgap_cover::PlanarCatalog) -> Outcome {
    let families: Vec<GapFamily> =
        catalog.entries.iter().map(|e| GapFamily { id: e.id.clone(), gaps: e.gaps.clone() }).collect();
    let (mut max_k, mut max_n, mut min_dist) = (0, 0, f64::INFINITY);
    for j in 0..59 {
        let xi = -2.9 + 0.1 * j as f64;
        let plan = plan_gap_witness(xi, 0.01, &families).map_err(|e| format!("xi {xi:.1}: {e}"))?;
        check(plan.k <= 20, || format!("xi {xi:.1}: k = {}", plan.k))?;
        let entry = catalog.entries.iter().find(|e| e.id == plan.family_id).ok_or("unknown family")?;
        let base = cyclic_quotient(&entry.cover(), 1).map_err(|e| e.to_string())?;
        check(base.n * 3usize.pow(plan.k as u32) <= 10_000, || format!("xi {xi:.1}: witness too large"))?;
        let g = tmap_iterate(&base, plan.k).map_err(|e| e.to_string())?;
        let d = g.spectrum().distance_to(xi);
        check(d > 0.01, || format!("xi {xi:.1}: eigenvalue within {d}"))?;
        max_k = max_k.max(plan.k);
        max_n = max_n.max(g.n);
        min_dist = min_dist.min(d);
    }
    Ok(format!("59 witnesses, k <= {max_k}, at most {max_n} vertices, min distance {min_dist:.4}"))
}

fn main() {
    let catalog = planar_catalog();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 spectral law of T", Box::new(criterion_1)),
        ("2 iterated K4 inside A", Box::new(criterion_2)),
        ("3 extremal cover rediscovery", Box::new(criterion_3)),
        ("4 exact certification", Box::new(criterion_4)),
        ("5 quotient family audits", Box::new(criterion_5)),
        ("6 geodesic lower bound", Box::new(criterion_6)),
        ("7 Fekete gate", Box::new(criterion_7)),
        ("8 capacity", Box::new(criterion_8)),
        ("9 planar gap union", Box::new(|| criterion_9(&catalog))),
        ("10 witness planner", Box::new(|| criterion_10(&catalog))),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1}s]", start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
