//! Planar cover search over small seeds, followed by a witness plan for
//! every point of a grid in `(-3, 3)`.
//!
//! Usage: `planar_witnesses [max_order] [max_coefficient]`

use cubicgap_core::{enumerate_cubic_multigraphs, plan_gap_witness, tmap_iterate, GapFamily};
use cubicgap_cover::{cyclic_quotient, search_planar_covers, SearchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let max_order: usize = args.next().map_or(Ok(6), |s| s.parse())?;
    let max_coefficient: i64 = args.next().map_or(Ok(1), |s| s.parse())?;

    let mut seeds = Vec::new();
    for n in (2..=max_order).step_by(2) {
        seeds.extend(enumerate_cubic_multigraphs(n, true, true)?);
    }
    let opts = SearchOptions { rank: 1, grid: 256, max_coefficient, ..Default::default() };
    let catalog = search_planar_covers(&seeds, &opts);
    println!("{} seeds, {} planar covers", seeds.len(), catalog.entries.len());
    println!("first uncovered point of [-2, 0]: {:?}", catalog.first_uncovered(-2.0, 0.0, 0.01));
    for e in catalog.greedy_cover(-3.0, 8f64.sqrt() - 0.01, 0.01) {
        println!("  {} {} gaps {:?}", e.id, e.base.name, e.gaps.intervals);
    }

    let families: Vec<GapFamily> =
        catalog.entries.iter().map(|e| GapFamily { id: e.id.clone(), gaps: e.gaps.clone() }).collect();
    for k in 0..59 {
        let xi = -2.9 + 0.1 * k as f64;
        match plan_gap_witness(xi, 0.01, &families) {
            Ok(plan) => {
                let entry = catalog.entries.iter().find(|e| e.id == plan.family_id).expect("planned family");
                let witness = tmap_iterate(&cyclic_quotient(&entry.cover(), 1)?, plan.k)?;
                let dist = witness.spectrum().distance_to(xi);
                println!("xi {xi:+.1}  k {}  n {:5}  distance {dist:.4}", plan.k, witness.n);
            }
            Err(err) => println!("xi {xi:+.1}  no plan: {err}"),
        }
    }
    Ok(())
}
