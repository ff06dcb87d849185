use std::f64::consts::PI;

use cubicgap_core::{named, random_cubic_graph};
use cubicgap_cover::families::{wbar_a, wbar_b};
use cubicgap_cover::{
    bands, cyclic_quotient, gap_report, restrict_subtorus, root_of_unity_spectrum, twisted_adjacency,
    twisted_adjacency_at, twisted_eigenvalues, PeriodicGraph,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random rank-1 cover: a random cubic cell with offsets in `-1..=1`.
fn random_cover(seed: u64, half: usize, rank: usize) -> PeriodicGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_cubic_graph(2 * half, &mut rng).unwrap();
    let offsets = (0..base.edges.len())
        .map(|i| (0..rank).map(|r| ((seed >> (2 * i + r) % 60) % 3) as i64 - 1).collect())
        .collect();
    PeriodicGraph::new(base, offsets).unwrap()
}

fn sorted_spectrum(g: &cubicgap_core::Multigraph) -> Vec<f64> {
    g.spectrum().values
}

#[test]
fn quotients_match_roots_of_unity() {
    for p in [wbar_b(), wbar_a(), PeriodicGraph::with_links(named::petersen(), &[0, 5]).unwrap()] {
        for n in 1..=12 {
            let direct = sorted_spectrum(&cyclic_quotient(&p, n).unwrap());
            let predicted = root_of_unity_spectrum(&p, n);
            assert_eq!(direct.len(), predicted.len());
            for (a, b) in direct.iter().zip(&predicted) {
                assert!((a - b).abs() < 1e-9, "n = {n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn denser_grids_only_widen() {
    for p in [wbar_b(), wbar_a()] {
        for grid in [64, 128, 256] {
            let coarse = gap_report(&bands(&p, grid).unwrap(), 0.05).spectrum_estimate;
            let fine = gap_report(&bands(&p, 2 * grid).unwrap(), 0.05).spectrum_estimate;
            for &(lo, hi) in &coarse.intervals {
                assert!(fine.intervals.iter().any(|&(a, b)| a <= lo + 1e-9 && hi <= b + 1e-9));
            }
        }
    }
}

#[test]
fn flat_bands_survive_resampling() {
    for p in [wbar_b(), wbar_a()] {
        let report = gap_report(&bands(&p, 64).unwrap(), 0.05);
        assert!(!report.flat_bands.is_empty());
        let dense = bands(&p, 640).unwrap();
        for &(value, copies) in &report.flat_bands {
            assert!([-2.0, -1.0, 0.0, 1.0, 2.0].iter().any(|r: &f64| (r - value).abs() < 1e-9));
            for v in &dense.values {
                let here = v.iter().filter(|&&x| (x - value).abs() < 1e-9).count();
                assert!(here >= copies);
            }
        }
    }
}

#[test]
fn extremal_covers_are_symmetric_about_touch_angles() {
    for (p, t) in [(wbar_b(), PI), (wbar_a(), 0.0)] {
        for delta in [0.1, 0.7, 2.0] {
            let plus = twisted_adjacency_at(&p, &[t + delta]);
            let minus = twisted_adjacency_at(&p, &[t - delta]);
            assert!((plus - minus.transpose()).iter().all(|x| x.norm() < 1e-12));
            let a = twisted_eigenvalues(&p, &[t + delta]);
            let b = twisted_eigenvalues(&p, &[t - delta]);
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
        }
    }
}

#[test]
fn touch_values() {
    let pi = twisted_eigenvalues(&wbar_b(), &[PI]);
    for (x, want) in pi.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
        assert!((x - want).abs() < 1e-9);
    }
    let zero = twisted_eigenvalues(&wbar_a(), &[0.0]);
    for (x, want) in zero.iter().zip([-2.0, -2.0, 0.0, 0.0, 1.0, 3.0]) {
        assert!((x - want).abs() < 1e-9);
    }
}

#[test]
fn restriction_to_the_axes() {
    let base = named::k4();
    let mut offsets = vec![vec![0, 0]; base.edges.len()];
    offsets[0] = vec![1, 0];
    offsets[1] = vec![0, 1];
    let p = PeriodicGraph::new(base, offsets).unwrap();
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, -1)] {
        let r = restrict_subtorus(&p, a, b).unwrap();
        for t in [0.3, 1.2, -2.5] {
            let line = twisted_eigenvalues(&r, &[t]);
            let full = twisted_eigenvalues(&p, &[a as f64 * t, b as f64 * t]);
            assert!(line.iter().zip(&full).all(|(x, y)| (x - y).abs() < 1e-12));
        }
    }
    assert!(restrict_subtorus(&p, 2, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_adjacency_is_hermitian(
        seed in any::<u64>(),
        half in 2usize..6,
        rank in 1usize..3,
        t1 in -PI..PI,
        t2 in -PI..PI,
    ) {
        let p = random_cover(seed, half, rank);
        let z: Vec<Complex64> = [t1, t2][..rank].iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let m: DMatrix<Complex64> = twisted_adjacency(&p, &z).unwrap();
        prop_assert!((&m - m.adjoint()).iter().all(|x| x.norm() < 1e-12));
        let ev = m.clone().schur().eigenvalues().unwrap();
        prop_assert!(ev.iter().all(|x| x.im.abs() < 1e-12 && x.re.abs() <= 3.0 + 1e-9));
    }

    #[test]
    fn quotient_band_consistency_random(seed in any::<u64>(), half in 2usize..5, n in 1usize..8) {
        let p = random_cover(seed, half, 1);
        let direct = sorted_spectrum(&cyclic_quotient(&p, n).unwrap());
        let predicted = root_of_unity_spectrum(&p, n);
        prop_assert!(direct.iter().zip(&predicted).all(|(a, b)| (a - b).abs() < 1e-9));
    }
}

#[test]
fn flat_direction_of_the_first_cover() {
    let base = wbar_b().base;
    let mut offsets = vec![vec![0, 0]; base.edges.len()];
    offsets[1] = vec![1, 0];
    offsets[3] = vec![0, 1];
    let two = PeriodicGraph::new(base, offsets).unwrap();
    let flat_count =
        |a, b| gap_report(&bands(&restrict_subtorus(&two, a, b).unwrap(), 128).unwrap(), 0.05).flat_bands.len();
    let line = restrict_subtorus(&two, 1, -1).unwrap();
    assert_eq!(line.offsets, wbar_b().offsets);
    assert_eq!(flat_count(1, -1), 2);
    assert_eq!(flat_count(1, 1), 0);
}
