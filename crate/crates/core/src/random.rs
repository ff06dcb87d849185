//! Uniform-ish random simple cubic graphs from the pairing model.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

const MAX_ATTEMPTS: usize = 10_000;

/// Random connected simple cubic graph on `n` vertices.
///
/// Pairings with loops or repeated edges are rejected, which yields the
/// uniform distribution on labelled simple cubic graphs; disconnected draws
/// are rejected as well.
pub fn random_cubic_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Multigraph> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n < 4 {
        return Err(Error::OutOfRange(n));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_ATTEMPTS {
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> =
            points.chunks(2).map(|pair| (pair[0].min(pair[1]), pair[0].max(pair[1]))).collect();
        if edges.iter().any(|(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Multigraph::new(n, edges).named(format!("random{n}"));
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::MaxIterExceeded(MAX_ATTEMPTS))
}
