//! The two extremal covers and their finite quotients.
//!
//! The covers were found by [`crate::search_covers`] over 4- and 6-vertex
//! seeds and are stored as fixtures; the integration tests re-run the search
//! and check that both fixtures are among its results.

use cubicgap_core::{is_planar, Error, Multigraph, Planarity, Result};

use crate::periodic::{cyclic_quotient, PeriodicGraph};
use crate::quotient::{quotient_by_automorphism, Quotient};

const WBAR_B: &str = include_str!("../fixtures/wbar_b.json");
const WBAR_A: &str = include_str!("../fixtures/wbar_a.json");

/// Cover with spectrum `[-3, -1] ∪ [1, 3]` and flat bands at `±1`.
pub fn wbar_b() -> PeriodicGraph {
    serde_json::from_str(WBAR_B).expect("fixture parses")
}

/// Cover with spectrum `[-(1+√17)/2, -2] ∪ [0, (√17-1)/2] ∪ [2, 3]` and flat
/// bands at `-2` and `0`.
pub fn wbar_a() -> PeriodicGraph {
    serde_json::from_str(WBAR_A).expect("fixture parses")
}

fn named_quotient(p: &PeriodicGraph, n: usize, name: String) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Invalid("need at least one cell".into()));
    }
    Ok(cyclic_quotient(p, n)?.named(name))
}

/// Cyclic quotient with `n` cells of the first extremal cover; `4n` vertices.
pub fn w_b(n: usize) -> Result<Multigraph> {
    named_quotient(&wbar_b(), n, format!("W_b({n})"))
}

/// Cyclic quotient with `n` cells of the second extremal cover; `6n` vertices.
pub fn w_a(n: usize) -> Result<Multigraph> {
    named_quotient(&wbar_a(), n, format!("W_a({n})"))
}

/// A reflection of a rank-1 cover: vertex `v` of cell `c` goes to vertex
/// `perm[v]` of cell `shifts[v] - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub perm: Vec<usize>,
    pub shifts: Vec<i64>,
}

impl Reflection {
    /// The induced permutation of the `cells`-cell cyclic quotient.
    pub fn on_quotient(&self, nb: usize, cells: usize) -> Vec<usize> {
        let m = cells as i64;
        (0..nb * cells)
            .map(|x| {
                let (v, c) = (x % nb, (x / nb) as i64);
                self.perm[v] + nb * (self.shifts[v] - c).rem_euclid(m) as usize
            })
            .collect()
    }
}

fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        p[i] = i;
        rec(p, out);
        for j in i + 1..p.len() {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                rec(p, out);
                p[j] = usize::MAX;
            }
        }
        p[i] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Involutive reflections of the infinite cover, up to conjugation by
/// translations: the shift of vertex 0 is 0 or 1 and every other shift is
/// within 2 of it.
pub fn reflections(p: &PeriodicGraph) -> Vec<Reflection> {
    let mut edges: Vec<(usize, usize, i64)> =
        p.base.edges.iter().zip(&p.offsets).map(|(&(u, v), o)| orient(u, v, o[0])).collect();
    edges.sort_unstable();
    let mut semi0 = p.base.semi_edges.clone();
    semi0.sort_unstable();
    let mut out = Vec::new();
    for perm in involutions(p.n()) {
        let mut semi: Vec<usize> = p.base.semi_edges.iter().map(|&v| perm[v]).collect();
        semi.sort_unstable();
        if semi != semi0 {
            continue;
        }
        for k0 in 0..2 {
            let mut shifts = vec![i64::MIN; p.n()];
            assign_shifts(p, &perm, &edges, k0, 0, &mut shifts, &mut out);
        }
    }
    out
}

fn assign_shifts(
    p: &PeriodicGraph,
    perm: &[usize],
    edges: &[(usize, usize, i64)],
    k0: i64,
    v: usize,
    shifts: &mut Vec<i64>,
    out: &mut Vec<Reflection>,
) {
    if v == p.n() {
        // Edge (u, v, o) maps to (perm u, perm v) with offset k_v - k_u - o.
        let mut image: Vec<(usize, usize, i64)> =
            edges.iter().map(|&(a, b, o)| orient(perm[a], perm[b], shifts[b] - shifts[a] - o)).collect();
        image.sort_unstable();
        if image == edges {
            out.push(Reflection { perm: perm.to_vec(), shifts: shifts.clone() });
        }
        return;
    }
    if shifts[v] != i64::MIN {
        return assign_shifts(p, perm, edges, k0, v + 1, shifts, out);
    }
    let choices: Vec<i64> = if v == 0 { vec![k0] } else { (k0 - 2..=k0 + 2).collect() };
    for k in choices {
        shifts[v] = k;
        shifts[perm[v]] = k;
        assign_shifts(p, perm, edges, k0, v + 1, shifts, out);
        shifts[perm[v]] = i64::MIN;
        shifts[v] = i64::MIN;
    }
}

fn orient(u: usize, v: usize, o: i64) -> (usize, usize, i64) {
    if u < v || (u == v && o >= 0) {
        (u, v, o)
    } else {
        (v, u, -o)
    }
}

/// Fold the `cells`-cell quotient by a reflection.
pub fn fold(p: &PeriodicGraph, cells: usize, r: &Reflection) -> Result<Quotient> {
    let g = cyclic_quotient(p, cells)?;
    let perm = r.on_quotient(p.n(), cells);
    quotient_by_automorphism(&g, &[perm])
}

fn face_profile(g: &Multigraph) -> Option<Vec<usize>> {
    match is_planar(g) {
        Planarity::Planar(emb) => {
            let mut f = emb.face_sizes();
            f.sort_unstable();
            Some(f)
        }
        Planarity::NonPlanar(_) => None,
    }
}

/// Simple planar quotient of `W_b(2n)` by a reflection, on `4n` vertices,
/// with face sizes `[3; 4]` followed by `[6; 2(n - 1)]`.
pub fn p_b(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::Invalid("P_b(n) needs n >= 2".into()));
    }
    let p = wbar_b();
    let mut want = vec![3; 4];
    want.extend(std::iter::repeat(6).take(2 * (n - 1)));
    for r in reflections(&p) {
        let Ok(q) = fold(&p, 2 * n, &r) else { continue };
        if q.graph.is_simple() && face_profile(&q.graph).as_ref() == Some(&want) {
            return Ok(q.graph.named(format!("P_b({n})")));
        }
    }
    Err(Error::Invalid(format!("no reflection gives P_b({n})")))
}

/// Planar quotient of `W_a(2n)` by a reflection with exactly two folded
/// edges; `6n` vertices.
pub fn p_a(n: usize) -> Result<Multigraph> {
    if n < 1 {
        return Err(Error::Invalid("P_a(n) needs n >= 1".into()));
    }
    let p = wbar_a();
    for r in reflections(&p) {
        let Ok(q) = fold(&p, 2 * n, &r) else { continue };
        if q.graph.semi_edges.len() == 2 && q.graph.loop_count() == 0 && is_planar(&q.graph).is_planar() {
            return Ok(q.graph.named(format!("P_a({n})")));
        }
    }
    Err(Error::Invalid(format!("no reflection gives P_a({n})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicgap_core::{are_isomorphic, named};

    #[test]
    fn involution_counts() {
        assert_eq!(involutions(4).len(), 10);
        assert_eq!(involutions(6).len(), 76);
    }

    #[test]
    fn two_cell_quotient_is_the_cube() {
        let g = w_b(2).unwrap();
        assert!(are_isomorphic(&g, &named::cube()));
    }

    #[test]
    fn sizes() {
        for n in 1..=5 {
            assert_eq!(w_b(n).unwrap().n, 4 * n);
            assert_eq!(w_a(n).unwrap().n, 6 * n);
        }
        assert_eq!(p_b(3).unwrap().n, 12);
        assert_eq!(p_a(2).unwrap().n, 12);
    }
}
