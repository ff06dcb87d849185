//! Plane-wave test functions along paths and the Rayleigh-quotient bounds
//! they give on the distance from a point to the spectrum.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use cubicgap_core::Multigraph;

use crate::error::{CertifyError, Result};

/// `f(path[j]) = w^(j+1)` on the support and zero elsewhere, where `w` is
/// the root of `w^2 - lambda w + 1` in the upper half plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub support: Vec<usize>,
    pub lambda: f64,
}

impl TestFunction {
    pub fn new(support: Vec<usize>, lambda: f64) -> Result<Self> {
        if !(lambda.abs() <= 2.0) {
            return Err(CertifyError::Invalid(format!("|lambda| = {} exceeds 2", lambda.abs())));
        }
        Ok(TestFunction { support, lambda })
    }

    pub fn wave(&self) -> Complex64 {
        Complex64::new(self.lambda / 2.0, (4.0 - self.lambda * self.lambda).max(0.0).sqrt() / 2.0)
    }

    pub fn values(&self, n: usize) -> Vec<Complex64> {
        let w = self.wave();
        let mut f = vec![Complex64::new(0.0, 0.0); n];
        let mut power = w;
        for &v in &self.support {
            f[v] = power;
            power *= w;
        }
        f
    }

    /// `|(A f - lambda f)(v)|` for every vertex.
    pub fn residuals(&self, g: &Multigraph) -> Vec<f64> {
        let f = self.values(g.n);
        let mut af: Vec<Complex64> = f.iter().map(|x| -x * self.lambda).collect();
        for &(u, v) in &g.edges {
            af[u] += f[v];
            af[v] += f[u];
        }
        for &v in &g.semi_edges {
            af[v] += f[v];
        }
        af.iter().map(|x| x.norm()).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.support.len() as f64
    }

    pub fn rayleigh(&self, g: &Multigraph) -> f64 {
        self.residuals(g).iter().map(|r| r * r).sum::<f64>() / self.norm_sq()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathBound {
    pub rayleigh: f64,
    /// `1 + 16 / |X|`.
    pub bound: f64,
    /// `sqrt(rayleigh)`, an upper bound on the distance to the spectrum.
    pub distance_bound: f64,
    pub residual_norm_sq: f64,
    pub endpoint_residuals: [f64; 2],
}

pub fn is_hamilton_path(g: &Multigraph, path: &[usize]) -> bool {
    if path.len() != g.n {
        return false;
    }
    let mut seen = vec![false; g.n];
    if path.iter().any(|&v| v >= g.n || std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    let adj = g.neighbour_sets();
    path.windows(2).all(|w| adj[w[0]].binary_search(&w[1]).is_ok())
}

/// Test function along a Hamilton path of a cubic graph.
pub fn hampath_bound(g: &Multigraph, lambda: f64, path: &[usize]) -> Result<PathBound> {
    g.check_cubic()?;
    if !is_hamilton_path(g, path) {
        return Err(CertifyError::Invalid("not a Hamilton path".into()));
    }
    let f = TestFunction::new(path.to_vec(), lambda)?;
    let res = f.residuals(g);
    let residual_norm_sq: f64 = res.iter().map(|r| r * r).sum();
    let rayleigh = residual_norm_sq / f.norm_sq();
    let bound = 1.0 + 16.0 / g.n as f64;
    if rayleigh > bound + 1e-12 {
        return Err(CertifyError::Numerical(format!("Rayleigh quotient {rayleigh} exceeds {bound}")));
    }
    Ok(PathBound {
        rayleigh,
        bound,
        distance_bound: rayleigh.sqrt(),
        residual_norm_sq,
        endpoint_residuals: [res[path[0]], res[path[path.len() - 1]]],
    })
}

const HAMILTON_BUDGET: usize = 2_000_000;

/// Depth-first search for a Hamilton path, trying low-degree continuations
/// first. `None` when none exists or the search budget runs out.
pub fn find_hamilton_path(g: &Multigraph) -> Option<Vec<usize>> {
    let adj = g.neighbour_sets();
    let mut budget = HAMILTON_BUDGET;
    for start in 0..g.n {
        let mut path = vec![start];
        let mut used = vec![false; g.n];
        used[start] = true;
        if extend(&adj, &mut path, &mut used, &mut budget) {
            return Some(path);
        }
        if budget == 0 {
            return None;
        }
    }
    None
}

fn extend(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], budget: &mut usize) -> bool {
    if path.len() == adj.len() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let last = *path.last().expect("non-empty path");
    let free = |v: usize, used: &[bool]| adj[v].iter().filter(|&&w| !used[w]).count();
    let mut next: Vec<usize> = adj[last].iter().copied().filter(|&w| !used[w]).collect();
    next.sort_by_key(|&w| free(w, used));
    for w in next {
        used[w] = true;
        path.push(w);
        if extend(adj, path, used, budget) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicgap_core::named;

    #[test]
    fn cube_at_zero() {
        let g = named::cube();
        let path = find_hamilton_path(&g).unwrap();
        let b = hampath_bound(&g, 0.0, &path).unwrap();
        assert!(b.rayleigh <= 3.0 + 1e-12);
        assert!((g.spectrum().distance_to(0.0) - 1.0).abs() < 1e-12);
        assert!(1.0 <= b.distance_bound + 1e-12);
    }

    #[test]
    fn interior_residuals_are_one() {
        let g = named::prism(5);
        let path = find_hamilton_path(&g).unwrap();
        for lambda in [-1.7, 0.3, 1.9] {
            let f = TestFunction::new(path.clone(), lambda).unwrap();
            let res = f.residuals(&g);
            for &v in &path[1..path.len() - 1] {
                assert!((res[v] - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = named::k4();
        assert!(hampath_bound(&g, 0.0, &[0, 1, 2]).is_err());
        assert!(hampath_bound(&g, 2.5, &[0, 1, 2, 3]).is_err());
        assert!(hampath_bound(&g, 0.0, &[0, 1, 1, 3]).is_err());
    }

    #[test]
    fn petersen_has_a_hamilton_path() {
        let g = named::petersen();
        assert!(is_hamilton_path(&g, &find_hamilton_path(&g).unwrap()));
    }
}
