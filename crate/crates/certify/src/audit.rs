//! Audits of a candidate gap interval against a family of finite graphs.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use cubicgap_core::{Multigraph, Result as CoreResult};

use crate::error::Result;
use crate::geodesic::geodesic_bound;
use crate::testfn::{find_hamilton_path, hampath_bound};

pub const WIDENING: f64 = 0.1;
const INSIDE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refutation {
    pub order: usize,
    pub vertices: usize,
    pub eigenvalue: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Geodesic,
    HamiltonPath,
    None,
}

/// Evidence that widening one end of the interval makes it meet the
/// spectrum of every large enough member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeEvidence {
    pub widened: (f64, f64),
    /// Members whose spectrum meets the widened interval.
    pub members_hit: usize,
    pub method: BoundMethod,
    /// Bound on the distance from the centre of the widened interval to
    /// the spectrum of the largest member, with the true distance.
    pub largest_member_bound: Option<f64>,
    pub largest_member_distance: f64,
    /// `log2` of the order beyond which the bound forces an eigenvalue into
    /// the widened interval.
    pub forcing_log2_order: Option<f64>,
    pub conclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub family: String,
    pub interval: (f64, f64),
    pub orders: Vec<usize>,
    pub achieved: bool,
    pub refutation: Option<Refutation>,
    pub edges: Vec<EdgeEvidence>,
}

fn edge_evidence(widened: (f64, f64), members: &[(usize, Multigraph, Vec<f64>)]) -> Result<EdgeEvidence> {
    let centre = 0.5 * (widened.0 + widened.1);
    let half = 0.5 * (widened.1 - widened.0);
    let members_hit =
        members.iter().filter(|(_, _, spec)| spec.iter().any(|&v| v > widened.0 && v < widened.1)).count();
    let (_, largest, spec) = members.last().expect("at least one member");
    let largest_member_distance = spec.iter().map(|v| (v - centre).abs()).fold(f64::INFINITY, f64::min);
    let mut evidence = EdgeEvidence {
        widened,
        members_hit,
        method: BoundMethod::None,
        largest_member_bound: None,
        largest_member_distance,
        forcing_log2_order: None,
        conclusive: false,
    };
    if centre.abs() <= std::f64::consts::SQRT_2 && largest.is_simple() {
        let b = geodesic_bound(largest, centre)?;
        evidence.method = BoundMethod::Geodesic;
        evidence.largest_member_bound = Some(b.distance_bound);
        // sqrt(1 + 18 / L) < half once L > 18 / (half^2 - 1).
        if half > 1.0 {
            evidence.forcing_log2_order = Some(18.0 / (half * half - 1.0) + 3f64.log2());
            evidence.conclusive = true;
        }
    } else if centre.abs() <= 2.0 {
        if let Some(path) = find_hamilton_path(largest) {
            let b = hampath_bound(largest, centre, &path)?;
            evidence.method = BoundMethod::HamiltonPath;
            evidence.largest_member_bound = Some(b.distance_bound);
            // sqrt(1 + 16 / n) < half once n > 16 / (half^2 - 1).
            if half > 1.0 {
                evidence.forcing_log2_order = Some((16.0 / (half * half - 1.0)).log2());
                evidence.conclusive = true;
            }
        }
    }
    Ok(evidence)
}

/// Check that no member `family(order)`, `order` in `orders`, has an
/// eigenvalue inside `interval`, and collect evidence that the interval
/// cannot be widened by [`WIDENING`] at either end.
pub fn audit_gap_interval(
    interval: (f64, f64),
    family_name: &str,
    family: &dyn Fn(usize) -> CoreResult<Multigraph>,
    orders: RangeInclusive<usize>,
) -> Result<AuditReport> {
    let (a, b) = interval;
    let mut members = Vec::new();
    let mut refutation = None;
    for order in orders {
        let g = family(order)?;
        let spec = g.spectrum().values;
        if refutation.is_none() {
            if let Some(&v) = spec.iter().find(|&&v| v > a + INSIDE_TOLERANCE && v < b - INSIDE_TOLERANCE) {
                refutation = Some(Refutation { order, vertices: g.n, eigenvalue: v });
            }
        }
        members.push((order, g, spec));
    }
    if members.is_empty() {
        return Err(crate::CertifyError::Invalid("empty family range".into()));
    }
    let edges =
        vec![edge_evidence((a - WIDENING, b), &members)?, edge_evidence((a, b + WIDENING), &members)?];
    Ok(AuditReport {
        family: family_name.to_string(),
        interval,
        orders: members.iter().map(|m| m.0).collect(),
        achieved: refutation.is_none(),
        refutation,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicgap_cover::families::{w_a, w_b};

    #[test]
    fn quotient_families_keep_their_gaps() {
        let r = audit_gap_interval((-1.0, 1.0), "W_b", &w_b, 1..=16).unwrap();
        assert!(r.achieved, "{:?}", r.refutation);
        assert!(r.edges.iter().all(|e| e.conclusive && e.method == BoundMethod::Geodesic));
        let r = audit_gap_interval((-2.0, 0.0), "W_a", &w_a, 1..=16).unwrap();
        assert!(r.achieved);
        for e in &r.edges {
            assert!(e.members_hit > 0);
            assert!(e.largest_member_bound.unwrap() >= e.largest_member_distance - 1e-9);
        }
    }

    #[test]
    fn too_wide_interval_is_refuted() {
        let r = audit_gap_interval((2.0 * 2f64.sqrt(), 3.0), "W_b", &w_b, 1..=16).unwrap();
        assert!(!r.achieved);
        let w = r.refutation.unwrap();
        assert!(w.eigenvalue > 2.0 * 2f64.sqrt() && w.eigenvalue < 3.0);
    }
}
