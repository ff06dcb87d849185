//! Exact certificates for gaps of rank-1 covers.
//!
//! At the characters `z = 1` and `z = -1` the twisted adjacency is an
//! integer matrix, so eigenpairs there can be checked exactly. Flat bands
//! are proved flat by a rank computation at enough rational points of the
//! unit circle: the minors of `A(z) - lambda` are Laurent polynomials of
//! bounded degree, and vanishing at more points than their degree range
//! forces them to vanish identically.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use cubicgap_cover::{
    bands, bands::FLAT_TOLERANCE, cover_id, gap_report, twisted_adjacency_at, twisted_eigenvalues,
    PeriodicGraph, DEFAULT_THRESHOLD,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CertifyError, Result};
use crate::exact::{
    characteristic_polynomial, integer_roots, irrational_quadratic_factors, kernel_basis,
    primitive_integer_vector, rank, rat, reduce_basis, shifted, to_rational_matrix, GaussianRational,
    QuadraticInteger,
};

pub const CERTIFICATION_GRID: usize = 512;
pub const SYMMETRY_DELTAS: [f64; 3] = [0.1, 0.7, 2.0];
pub const EXTREMUM_STEP: f64 = 1e-2;
const ENDPOINT_MATCH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TouchAngle {
    Zero,
    Pi,
}

impl TouchAngle {
    pub fn radians(self) -> f64 {
        match self {
            TouchAngle::Zero => 0.0,
            TouchAngle::Pi => PI,
        }
    }

    /// The character value `exp(i theta)`, which is `1` or `-1`.
    pub fn character(self) -> i64 {
        match self {
            TouchAngle::Zero => 1,
            TouchAngle::Pi => -1,
        }
    }

    pub fn nearest(theta: f64) -> TouchAngle {
        let t = theta.rem_euclid(2.0 * PI);
        if (t - PI).abs() < t.min(2.0 * PI - t) {
            TouchAngle::Pi
        } else {
            TouchAngle::Zero
        }
    }

    pub fn other(self) -> TouchAngle {
        match self {
            TouchAngle::Zero => TouchAngle::Pi,
            TouchAngle::Pi => TouchAngle::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawEigenpair", try_from = "RawEigenpair")]
pub struct ExactEigenpair {
    pub value: BigRational,
    pub vector: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawEigenpair {
    value: String,
    vector: Vec<String>,
}

impl From<ExactEigenpair> for RawEigenpair {
    fn from(p: ExactEigenpair) -> Self {
        RawEigenpair { value: p.value.to_string(), vector: p.vector.iter().map(BigInt::to_string).collect() }
    }
}

impl TryFrom<RawEigenpair> for ExactEigenpair {
    type Error = String;
    fn try_from(raw: RawEigenpair) -> std::result::Result<Self, String> {
        let value = raw.value.parse().map_err(|e| format!("eigenvalue {:?}: {e}", raw.value))?;
        let vector = raw
            .vector
            .iter()
            .map(|s| s.parse().map_err(|e| format!("vector entry {s:?}: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        Ok(ExactEigenpair { value, vector })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawFlatBand", try_from = "RawFlatBand")]
pub struct FlatBand {
    pub value: BigRational,
    pub multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
struct RawFlatBand {
    value: String,
    multiplicity: usize,
}

impl From<FlatBand> for RawFlatBand {
    fn from(f: FlatBand) -> Self {
        RawFlatBand { value: f.value.to_string(), multiplicity: f.multiplicity }
    }
}

impl TryFrom<RawFlatBand> for FlatBand {
    type Error = String;
    fn try_from(raw: RawFlatBand) -> std::result::Result<Self, String> {
        let value = raw.value.parse().map_err(|e| format!("flat band {:?}: {e}", raw.value))?;
        Ok(FlatBand { value, multiplicity: raw.multiplicity })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointKind {
    FlatBand,
    TouchEigenvalue,
    /// `-3` or `3`, the ends of the range every cubic spectrum lies in.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedEndpoint {
    pub value: QuadraticInteger,
    pub kind: EndpointKind,
    /// Angle at which `value` is an exact eigenvalue; absent for boundaries.
    pub angle: Option<TouchAngle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub angle: TouchAngle,
    pub deltas: Vec<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandExtremum {
    pub band: usize,
    pub theta: f64,
    pub value: f64,
    pub flat: bool,
    pub first_derivative: f64,
    pub second_derivative: f64,
    /// Flat, or a critical point with nonvanishing curvature.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub cover_id: String,
    pub cover: PeriodicGraph,
    pub touch_angle: TouchAngle,
    pub eigenpairs: Vec<ExactEigenpair>,
    pub flat_bands: Vec<FlatBand>,
    #[serde(default)]
    pub symmetry: Vec<SymmetryCheck>,
    #[serde(default)]
    pub band_extrema: Vec<BandExtremum>,
    #[serde(default)]
    pub gap: Option<[CertifiedEndpoint; 2]>,
    pub tool_version: String,
}

fn require_rank_one(p: &PeriodicGraph) -> Result<()> {
    if p.rank != 1 {
        return Err(CertifyError::Invalid("certification needs a rank-1 cover".into()));
    }
    Ok(())
}

/// Twisted adjacency at `z = 1` or `z = -1`, as an integer matrix.
pub fn integer_twisted_adjacency(p: &PeriodicGraph, angle: TouchAngle) -> Result<Vec<Vec<i64>>> {
    require_rank_one(p)?;
    let n = p.n();
    let z = angle.character();
    let mut a = vec![vec![0i64; n]; n];
    for (&(u, v), o) in p.base.edges.iter().zip(&p.offsets) {
        let w = if o[0].rem_euclid(2) == 0 { 1 } else { z };
        a[u][v] += w;
        a[v][u] += w;
    }
    for &v in &p.base.semi_edges {
        a[v][v] += 1;
    }
    Ok(a)
}

fn touch_polynomial(p: &PeriodicGraph, angle: TouchAngle) -> Result<Vec<BigInt>> {
    let a = integer_twisted_adjacency(p, angle)?;
    Ok(characteristic_polynomial(&to_rational_matrix(&a)))
}

/// All rational eigenpairs at a real character, from exact kernels of
/// `A - lambda I` over the integer roots of the characteristic polynomial.
/// Eigenvalues are listed in decreasing order.
pub fn exact_eigenpairs(p: &PeriodicGraph, angle: TouchAngle) -> Result<Vec<ExactEigenpair>> {
    let a = to_rational_matrix(&integer_twisted_adjacency(p, angle)?);
    let roots = integer_roots(&characteristic_polynomial(&a));
    let mut out = Vec::new();
    for (root, _) in roots.into_iter().rev() {
        let value = BigRational::from_integer(root);
        let basis: Vec<Vec<BigInt>> =
            kernel_basis(&shifted(&a, &value)).iter().map(|v| primitive_integer_vector(v)).collect();
        for vector in reduce_basis(basis) {
            out.push(ExactEigenpair { value: value.clone(), vector });
        }
    }
    Ok(out)
}

fn gaussian_twisted_adjacency(p: &PeriodicGraph, z: &GaussianRational) -> Vec<Vec<GaussianRational>> {
    let n = p.n();
    let zero = GaussianRational::real(BigRational::zero());
    let mut a = vec![vec![zero; n]; n];
    for (&(u, v), o) in p.base.edges.iter().zip(&p.offsets) {
        let k = o[0].unsigned_abs() as u32;
        let w = if o[0] >= 0 { z.pow(k) } else { z.conj().pow(k) };
        a[u][v] = a[u][v].clone() + w.clone();
        a[v][u] = a[v][u].clone() + w.conj();
    }
    for &v in &p.base.semi_edges {
        a[v][v] = a[v][v].clone() + GaussianRational::real(rat(1));
    }
    a
}

/// Exact multiplicity of `lambda` as a flat band, or 0.
pub fn flat_band_multiplicity(p: &PeriodicGraph, lambda: &BigRational) -> Result<usize> {
    require_rank_one(p)?;
    let n = p.n();
    let reach = p.offsets.iter().map(|o| o[0].unsigned_abs()).max().unwrap_or(0) as i64;
    let points = 2 * n as i64 * reach + 1;
    let mut nullity = n;
    for s in 1..=points {
        let z = GaussianRational::unit_circle_point(s);
        let mut m = gaussian_twisted_adjacency(p, &z);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].clone() - GaussianRational::real(lambda.clone());
        }
        nullity = nullity.min(n - rank(&m));
        if nullity == 0 {
            break;
        }
    }
    Ok(nullity)
}

/// Check claimed eigenpairs at a real character exactly.
///
/// The claims must form a complete eigenbasis: each `A v = lambda v` holds,
/// the vectors claimed for each value are independent and as many as the
/// kernel dimension of `A - lambda I`, and there are `n` claims in all.
/// Flat bands among the claimed values are proved and recorded.
pub fn certify_touchpoint(
    p: &PeriodicGraph,
    angle: TouchAngle,
    claimed: &[ExactEigenpair],
) -> Result<GapCertificate> {
    let a = to_rational_matrix(&integer_twisted_adjacency(p, angle)?);
    let n = p.n();
    if claimed.len() != n {
        return Err(CertifyError::Incomplete(format!(
            "{} eigenpairs claimed for {n} vertices",
            claimed.len()
        )));
    }
    let mut groups: BTreeMap<BigRational, Vec<usize>> = BTreeMap::new();
    for (index, pair) in claimed.iter().enumerate() {
        let refuse = |reason: String| CertifyError::Refused { index, reason };
        if pair.vector.len() != n {
            return Err(refuse(format!("vector has {} entries", pair.vector.len())));
        }
        if pair.vector.iter().all(Zero::is_zero) {
            return Err(refuse("zero vector".into()));
        }
        for (i, row) in a.iter().enumerate() {
            let lhs: BigRational = row.iter().zip(&pair.vector).map(|(x, v)| x * v).sum();
            let rhs = &pair.value * &pair.vector[i];
            if lhs != rhs {
                return Err(refuse(format!("(A v)[{i}] = {lhs} but lambda v[{i}] = {rhs}")));
            }
        }
        groups.entry(pair.value.clone()).or_default().push(index);
    }
    for (value, indices) in &groups {
        let vectors: Vec<Vec<BigRational>> = indices
            .iter()
            .map(|&i| claimed[i].vector.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        if rank(&vectors) != indices.len() {
            return Err(CertifyError::Refused {
                index: indices[0],
                reason: format!("vectors for {value} are dependent"),
            });
        }
        let kernel = n - rank(&shifted(&a, value));
        if kernel != indices.len() {
            return Err(CertifyError::Refused {
                index: indices[0],
                reason: format!(
                    "{value} claimed {} times but its eigenspace has dimension {kernel}",
                    indices.len()
                ),
            });
        }
    }
    let mut flat_bands = Vec::new();
    for (value, indices) in groups.iter().rev() {
        let multiplicity = flat_band_multiplicity(p, value)?;
        if multiplicity > indices.len() {
            return Err(CertifyError::Refused {
                index: indices[0],
                reason: format!("flat band {value} has multiplicity {multiplicity}"),
            });
        }
        if multiplicity > 0 {
            flat_bands.push(FlatBand { value: value.clone(), multiplicity });
        }
    }
    Ok(GapCertificate {
        cover_id: cover_id(p),
        cover: p.clone(),
        touch_angle: angle,
        eigenpairs: claimed.to_vec(),
        flat_bands,
        symmetry: Vec::new(),
        band_extrema: Vec::new(),
        gap: None,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// `A(theta + delta)` equals the transpose of `A(theta - delta)` entrywise
/// within `1e-12`, for every listed `delta`.
pub fn verify_transpose_symmetry(p: &PeriodicGraph, theta: f64, deltas: &[f64]) -> Result<bool> {
    require_rank_one(p)?;
    Ok(deltas.iter().all(|&d| {
        let plus = twisted_adjacency_at(p, &[theta + d]);
        let minus = twisted_adjacency_at(p, &[theta - d]).transpose();
        (&plus - &minus).iter().all(|x| x.norm() < 1e-12)
    }))
}

/// Central differences of every sorted band at `theta`, with steps `h` and
/// `h / 2` combined by Richardson extrapolation. Bands constant on
/// `[theta - h, theta + h]` are reported flat.
pub fn verify_band_extremum(p: &PeriodicGraph, theta: f64, h: f64) -> Result<Vec<BandExtremum>> {
    require_rank_one(p)?;
    if !(h > 0.0 && h < 1.0) {
        return Err(CertifyError::Invalid(format!("step {h} outside (0, 1)")));
    }
    let at = |t: f64| twisted_eigenvalues(p, &[t]);
    let centre = at(theta);
    let (plus, minus) = (at(theta + h), at(theta - h));
    let (plus2, minus2) = (at(theta + h / 2.0), at(theta - h / 2.0));
    let mut out = Vec::new();
    for j in 0..p.n() {
        // Flat near theta, even if the sorted track is not flat globally.
        let local = [plus[j], minus[j], plus2[j], minus2[j]];
        if local.iter().all(|x| (x - centre[j]).abs() < 1e-11) {
            out.push(BandExtremum {
                band: j,
                theta,
                value: centre[j],
                flat: true,
                first_derivative: 0.0,
                second_derivative: 0.0,
                ok: true,
            });
            continue;
        }
        let d1 = |s: f64, a: f64, b: f64| (a - b) / (2.0 * s);
        let d2 = |s: f64, a: f64, b: f64| (a - 2.0 * centre[j] + b) / (s * s);
        let (d1h, d1q) = (d1(h, plus[j], minus[j]), d1(h / 2.0, plus2[j], minus2[j]));
        let (d2h, d2q) = (d2(h, plus[j], minus[j]), d2(h / 2.0, plus2[j], minus2[j]));
        let first = (4.0 * d1q - d1h) / 3.0;
        let second = (4.0 * d2q - d2h) / 3.0;
        let consistent = |a: f64, b: f64, r: f64| (a - b).abs() <= 0.05 * r.abs() + 1e-6;
        if !consistent(d1h, d1q, first) || !consistent(d2h, d2q, second) {
            return Err(CertifyError::Numerical(format!(
                "band {j} at theta {theta}: difference quotients disagree between steps {h} and {}",
                h / 2.0
            )));
        }
        out.push(BandExtremum {
            band: j,
            theta,
            value: centre[j],
            flat: false,
            first_derivative: first,
            second_derivative: second,
            ok: first.abs() < 1e-6 && second.abs() > 1e-3,
        });
    }
    Ok(out)
}

/// Angle in `{0, pi}` nearest to where the other eigenvalues come closest
/// to the given flat band values on a grid.
pub fn locate_touch_angle(p: &PeriodicGraph, flat: &[f64], grid: usize) -> Result<TouchAngle> {
    require_rank_one(p)?;
    if flat.is_empty() {
        return Err(CertifyError::Invalid("no flat band to locate a touch point against".into()));
    }
    let b = bands(p, grid)?;
    let mut best = (f64::INFINITY, 0.0);
    for (angles, values) in b.angles.iter().zip(&b.values) {
        for &f in flat {
            // The flat copies themselves sit within the detection tolerance.
            let d = values
                .iter()
                .map(|v| (v - f).abs())
                .filter(|&d| d >= FLAT_TOLERANCE)
                .fold(f64::INFINITY, f64::min);
            if d < best.0 {
                best = (d, angles[0]);
            }
        }
    }
    Ok(TouchAngle::nearest(best.1))
}

/// Find `value` exactly among the eigenvalues at `angle`: an integer root or
/// a root of an irrational quadratic factor of the characteristic
/// polynomial.
fn exact_eigenvalue_near(
    p: &PeriodicGraph,
    angle: TouchAngle,
    value: f64,
) -> Result<Option<QuadraticInteger>> {
    let poly = touch_polynomial(p, angle)?;
    for (root, _) in integer_roots(&poly) {
        if (root.to_f64().unwrap_or(f64::NAN) - value).abs() < ENDPOINT_MATCH {
            return Ok(Some(QuadraticInteger::rational(&root)));
        }
    }
    for (s, t) in irrational_quadratic_factors(&poly, 3) {
        for q in QuadraticInteger::roots_of_monic_quadratic(&s, &t) {
            if (q.to_f64() - value).abs() < ENDPOINT_MATCH {
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

fn certify_endpoint(
    p: &PeriodicGraph,
    touch: TouchAngle,
    flat: &[FlatBand],
    value: f64,
) -> Result<CertifiedEndpoint> {
    if (value.abs() - 3.0).abs() < ENDPOINT_MATCH {
        let v = QuadraticInteger::rational(&BigInt::from(value.round() as i64));
        return Ok(CertifiedEndpoint { value: v, kind: EndpointKind::Boundary, angle: None });
    }
    for angle in [touch, touch.other()] {
        if let Some(q) = exact_eigenvalue_near(p, angle, value)? {
            let is_flat = q.as_rational().map_or(false, |r| flat.iter().any(|f| f.value == r));
            let kind = if is_flat { EndpointKind::FlatBand } else { EndpointKind::TouchEigenvalue };
            return Ok(CertifiedEndpoint { value: q, kind, angle: Some(angle) });
        }
    }
    Err(CertifyError::Incomplete(format!("gap endpoint {value} is not an exact eigenvalue at 0 or pi")))
}

/// Full certification of one gap of a rank-1 cover: locate the touch angle,
/// compute and check exact eigenpairs there, identify both gap endpoints
/// exactly, and check the reflection symmetry and band extrema at every
/// angle an endpoint comes from.
pub fn certify_gap(p: &PeriodicGraph, target: (f64, f64), grid: usize) -> Result<GapCertificate> {
    require_rank_one(p)?;
    let report = gap_report(&bands(p, grid)?, DEFAULT_THRESHOLD);
    let gap = report
        .gaps
        .intervals
        .iter()
        .copied()
        .find(|&(a, b)| (a - target.0).abs() < ENDPOINT_MATCH && (b - target.1).abs() < ENDPOINT_MATCH)
        .ok_or_else(|| {
            CertifyError::Incomplete(format!(
                "no gap matching {target:?}; gaps are {:?}",
                report.gaps.intervals
            ))
        })?;
    let at_ends: Vec<f64> = report
        .flat_bands
        .iter()
        .map(|f| f.0)
        .filter(|f| (f - gap.0).abs() < ENDPOINT_MATCH || (f - gap.1).abs() < ENDPOINT_MATCH)
        .collect();
    let flat: Vec<f64> =
        if at_ends.is_empty() { report.flat_bands.iter().map(|f| f.0).collect() } else { at_ends };
    let touch = locate_touch_angle(p, &flat, grid)?;
    let claimed = exact_eigenpairs(p, touch)?;
    let mut cert = certify_touchpoint(p, touch, &claimed)?;
    let lower = certify_endpoint(p, touch, &cert.flat_bands, gap.0)?;
    let upper = certify_endpoint(p, touch, &cert.flat_bands, gap.1)?;
    let mut angles: Vec<TouchAngle> = [&lower, &upper].iter().filter_map(|e| e.angle).collect();
    angles.push(touch);
    angles.sort();
    angles.dedup();
    for angle in angles {
        let holds = verify_transpose_symmetry(p, angle.radians(), &SYMMETRY_DELTAS)?;
        if !holds {
            return Err(CertifyError::Numerical(format!("band structure is not symmetric about {angle:?}")));
        }
        cert.symmetry.push(SymmetryCheck { angle, deltas: SYMMETRY_DELTAS.to_vec(), holds });
        let extrema = verify_band_extremum(p, angle.radians(), EXTREMUM_STEP)?;
        if let Some(bad) = extrema.iter().find(|e| !e.ok) {
            return Err(CertifyError::Numerical(format!(
                "band {} is not a nondegenerate extremum at {angle:?} (derivatives {:e}, {:e})",
                bad.band, bad.first_derivative, bad.second_derivative
            )));
        }
        cert.band_extrema.extend(extrema);
    }
    cert.gap = Some([lower, upper]);
    Ok(cert)
}

impl GapCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Repeat every exact check from the stored data alone.
    pub fn reverify(&self) -> Result<()> {
        if cover_id(&self.cover) != self.cover_id {
            return Err(CertifyError::Incomplete("cover id does not match the stored cover".into()));
        }
        let fresh = certify_touchpoint(&self.cover, self.touch_angle, &self.eigenpairs)?;
        if fresh.flat_bands != self.flat_bands {
            return Err(CertifyError::Incomplete(
                "recorded flat bands differ from the recomputed ones".into(),
            ));
        }
        if let Some(gap) = &self.gap {
            for end in gap {
                match (end.kind, end.angle) {
                    (EndpointKind::Boundary, _) => {
                        if end.value.as_rational().map_or(true, |r| r.abs() != rat(3)) {
                            return Err(CertifyError::Incomplete(format!("boundary endpoint {}", end.value)));
                        }
                    }
                    (_, Some(angle)) => {
                        if !end.value.is_root_of(&touch_polynomial(&self.cover, angle)?) {
                            return Err(CertifyError::Incomplete(format!(
                                "{} is not an eigenvalue at {angle:?}",
                                end.value
                            )));
                        }
                        let flat = end
                            .value
                            .as_rational()
                            .map_or(false, |r| self.flat_bands.iter().any(|f| f.value == r));
                        if (end.kind == EndpointKind::FlatBand) != flat {
                            return Err(CertifyError::Incomplete(format!(
                                "endpoint {} misclassified",
                                end.value
                            )));
                        }
                    }
                    (_, None) => return Err(CertifyError::Incomplete("endpoint without an angle".into())),
                }
            }
        }
        for s in &self.symmetry {
            if !verify_transpose_symmetry(&self.cover, s.angle.radians(), &s.deltas)? {
                return Err(CertifyError::Numerical(format!("symmetry about {:?} fails", s.angle)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubicgap_cover::families::{wbar_a, wbar_b};

    fn values(pairs: &[ExactEigenpair]) -> Vec<i64> {
        pairs.iter().map(|p| p.value.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn angles() {
        assert_eq!(TouchAngle::nearest(3.1), TouchAngle::Pi);
        assert_eq!(TouchAngle::nearest(-3.1), TouchAngle::Pi);
        assert_eq!(TouchAngle::nearest(0.2), TouchAngle::Zero);
        assert_eq!(TouchAngle::nearest(6.2), TouchAngle::Zero);
    }

    #[test]
    fn eigenpairs_of_the_extremal_covers() {
        let b = exact_eigenpairs(&wbar_b(), TouchAngle::Pi).unwrap();
        assert_eq!(values(&b), vec![1, 1, -1, -1]);
        assert!(b.iter().all(|p| p.vector.iter().all(|x| x.abs() <= BigInt::from(1))));
        let a = exact_eigenpairs(&wbar_a(), TouchAngle::Zero).unwrap();
        assert_eq!(values(&a), vec![3, 1, 0, 0, -2, -2]);
    }

    #[test]
    fn wrong_eigenvalue_is_refused() {
        let p = wbar_b();
        let mut claimed = exact_eigenpairs(&p, TouchAngle::Pi).unwrap();
        claimed[0].value = rat(2);
        match certify_touchpoint(&p, TouchAngle::Pi, &claimed) {
            Err(CertifyError::Refused { index: 0, .. }) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn duplicated_vector_is_refused() {
        let p = wbar_b();
        let mut claimed = exact_eigenpairs(&p, TouchAngle::Pi).unwrap();
        claimed[1] = claimed[0].clone();
        assert!(matches!(
            certify_touchpoint(&p, TouchAngle::Pi, &claimed),
            Err(CertifyError::Refused { .. })
        ));
        claimed.pop();
        assert!(matches!(certify_touchpoint(&p, TouchAngle::Pi, &claimed), Err(CertifyError::Incomplete(_))));
    }

    #[test]
    fn flat_bands_are_exact() {
        let p = wbar_b();
        assert_eq!(flat_band_multiplicity(&p, &rat(1)).unwrap(), 1);
        assert_eq!(flat_band_multiplicity(&p, &rat(-1)).unwrap(), 1);
        assert_eq!(flat_band_multiplicity(&p, &rat(2)).unwrap(), 0);
        let a = wbar_a();
        assert_eq!(flat_band_multiplicity(&a, &rat(0)).unwrap(), 1);
        assert_eq!(flat_band_multiplicity(&a, &rat(-2)).unwrap(), 1);
    }

    #[test]
    fn shifted_angle_is_not_critical() {
        let p = wbar_b();
        let ext = verify_band_extremum(&p, PI + 0.3, EXTREMUM_STEP).unwrap();
        assert!(ext.iter().any(|e| !e.flat && !e.ok));
    }

    #[test]
    fn gap_certificates() {
        let b = certify_gap(&wbar_b(), (-1.0, 1.0), 256).unwrap();
        assert_eq!(b.touch_angle, TouchAngle::Pi);
        let a = certify_gap(&wbar_a(), (-2.0, 0.0), 256).unwrap();
        assert_eq!(a.touch_angle, TouchAngle::Zero);
        let gap = a.gap.as_ref().unwrap();
        assert!(gap.iter().all(|e| e.kind == EndpointKind::FlatBand));
        b.reverify().unwrap();
        a.reverify().unwrap();
    }
}
