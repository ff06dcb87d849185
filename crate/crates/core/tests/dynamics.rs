use cubicgap_core::{
    a_membership, capacity_estimate, f_apply, itinerary, named, preimage_intervals, tmap_iterate,
    IntervalSet, Itinerary,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn itineraries_commute_with_the_map() {
    let level = preimage_intervals(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = 8;
    for _ in 0..1000 {
        let &(a, b) = &level.intervals.intervals[rng.gen_range(0..level.intervals.intervals.len())];
        let xi = a + (b - a) * rng.gen::<f64>();
        let (Itinerary::Bits(long), Itinerary::Bits(short)) =
            (itinerary(xi, m + 1), itinerary(f_apply(xi), m))
        else {
            panic!("point of level 12 escaped early");
        };
        assert_eq!(&long[1..], &short[..]);
    }
}

#[test]
fn levels_are_nested() {
    for m in 0..12 {
        let outer = preimage_intervals(m).unwrap().intervals;
        let inner = preimage_intervals(m + 1).unwrap().intervals;
        assert!(inner.is_subset_of(&outer, 1e-12), "level {}", m + 1);
    }
}

#[test]
fn iterated_k4_spectra_stay_in_the_set() {
    for k in 0..=4 {
        let g = tmap_iterate(&named::k4(), k).unwrap();
        assert_eq!(g.n, 4 * 3usize.pow(k as u32));
        for &x in &g.spectrum().values {
            assert!(a_membership(x, k, 1e-6).unwrap().in_a(), "{x} at depth {k}");
        }
    }
}

#[test]
fn capacities_decrease_towards_one() {
    let full = capacity_estimate(&IntervalSet::interval(-3.0, 3.0), 64).unwrap();
    assert!((full - 1.5).abs() < 0.02);
    let mut previous = full;
    for m in 1..=6 {
        let c = capacity_estimate(&preimage_intervals(m).unwrap().intervals, 64).unwrap();
        if m <= 4 {
            assert!((c - 1.5f64.powf(0.5f64.powi(m as i32))).abs() < 0.02, "level {m}: {c}");
        }
        assert!(c < previous + 0.02 && c > 1.0 - 0.02);
        previous = c;
    }
}
