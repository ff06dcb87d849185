//! Exact linear algebra over the rationals, the Gaussian rationals and real
//! quadratic fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_rational_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect()
}

/// `m - lambda I`.
pub fn shifted(m: &[Vec<BigRational>], lambda: &BigRational) -> Vec<Vec<BigRational>> {
    let mut out = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = &row[i] - lambda;
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].vanishes()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].vanishes() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = factor.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    row_reduce(&mut m.to_vec()).len()
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel_basis(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut r = m.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let pivots = row_reduce(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Clear denominators and divide out the content; the first nonzero entry
/// is made positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let sign = v.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if sign {
            *x = -&*x;
        }
    }
}

fn size(v: &[BigInt]) -> (BigInt, BigInt) {
    let max = v.iter().map(|x| x.abs()).max().unwrap_or_default();
    let sum = v.iter().map(|x| x.abs()).fold(BigInt::zero(), |a, b| a + b);
    (max, sum)
}

/// Pairwise size reduction of an integer basis: replace `v_i` by
/// `v_i ± v_j` while that lowers the largest entry, then the entry sum.
pub fn reduce_basis(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1, -1] {
                    let mut cand: Vec<BigInt> =
                        basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b * sign).collect();
                    normalize_content(&mut cand);
                    if size(&cand) < size(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return basis;
        }
    }
}

/// Coefficients `c_0, ..., c_n` of `det(x I - m)` (so `c_n = 1`), by the
/// Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(m: &[Vec<BigRational>]) -> Vec<BigInt> {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut aux = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(m, &aux);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &next);
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / rat(k as i64);
        aux = next;
    }
    coeffs.into_iter().map(|c| c.to_integer()).collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()
        })
        .collect()
}

pub fn eval_poly(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divide a monic polynomial by `x - root`, which must be a root.
fn deflate(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = poly.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &poly[k + 1] + carry * root;
        out[k] = carry.clone();
    }
    out
}

/// Integer roots with multiplicity of a monic integer polynomial. These are
/// all its rational roots.
pub fn integer_roots(poly: &[BigInt]) -> Vec<(BigInt, usize)> {
    let mut p = poly.to_vec();
    let mut out: Vec<(BigInt, usize)> = Vec::new();
    // Roots of a monic polynomial are bounded by 1 + max |c_k|.
    let bound: BigInt = p.iter().map(|c| c.abs()).max().unwrap_or_default() + 1;
    let bound = bound.to_i64().unwrap_or(i64::MAX).min(1 << 20);
    for r in -bound..=bound {
        let r = int(r);
        let mut mult = 0;
        while p.len() > 1 && eval_poly(&p, &r).is_zero() {
            p = deflate(&p, &r);
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out
}

/// Arithmetic needed for Gaussian elimination.
pub trait Field: Clone + Mul<Output = Self> + Sub<Output = Self> {
    fn vanishes(&self) -> bool;
    fn inverse(&self) -> Self;
}

impl Field for BigRational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
}

/// `re + i im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(GaussianRational::real(BigRational::one()), |acc, _| acc * self.clone())
    }

    /// Rational point `((1 - s^2) + 2 s i) / (1 + s^2)` of the unit circle.
    pub fn unit_circle_point(s: i64) -> Self {
        let d = rat(1 + s * s);
        GaussianRational { re: rat(1 - s * s) / &d, im: rat(2 * s) / d }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianRational { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Field for GaussianRational {
    fn vanishes(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inverse(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussianRational { re: &self.re / &norm, im: -&self.im / norm }
    }
}

/// The real quadratic integer `(a + b sqrt(d)) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[String; 3]", try_from = "[String; 3]")]
pub struct QuadraticInteger {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl QuadraticInteger {
    pub fn rational(x: &BigInt) -> Self {
        QuadraticInteger { a: x * 2, b: BigInt::zero(), d: BigInt::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (a + b * d.sqrt()) / 2.0
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            return Some(BigRational::new(self.a.clone(), int(2)));
        }
        if self.d.is_negative() {
            return None;
        }
        let root = self.d.sqrt();
        (&root * &root == self.d).then(|| BigRational::new(&self.a + &self.b * root, int(2)))
    }

    /// Exact test of `poly(self) = 0` in `Q(sqrt d)`.
    pub fn is_root_of(&self, poly: &[BigInt]) -> bool {
        if let Some(r) = self.as_rational() {
            let value = poly
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * &r + BigRational::from_integer(c.clone()));
            return value.is_zero();
        }
        // Horner in p + q sqrt(d), with x = a/2 + (b/2) sqrt(d).
        let xp = BigRational::new(self.a.clone(), int(2));
        let xq = BigRational::new(self.b.clone(), int(2));
        let d = BigRational::from_integer(self.d.clone());
        let (mut p, mut q) = (BigRational::zero(), BigRational::zero());
        for c in poly.iter().rev() {
            let np = &p * &xp + &q * &xq * &d + BigRational::from_integer(c.clone());
            let nq = &p * &xq + &q * &xp;
            (p, q) = (np, nq);
        }
        p.is_zero() && q.is_zero()
    }

    /// Roots of `x^2 + s x + t` as quadratic integers, smaller first.
    pub fn roots_of_monic_quadratic(s: &BigInt, t: &BigInt) -> [QuadraticInteger; 2] {
        let disc: BigInt = s * s - t * 4;
        let lo = QuadraticInteger { a: -s, b: int(-1), d: disc.clone() };
        let hi = QuadraticInteger { a: -s, b: int(1), d: disc };
        [lo, hi]
    }
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "({} + {}*sqrt({}))/2", self.a, self.b, self.d),
        }
    }
}

impl From<QuadraticInteger> for [String; 3] {
    fn from(q: QuadraticInteger) -> Self {
        [q.a.to_string(), q.b.to_string(), q.d.to_string()]
    }
}

impl TryFrom<[String; 3]> for QuadraticInteger {
    type Error = num_bigint::ParseBigIntError;
    fn try_from(s: [String; 3]) -> Result<Self, Self::Error> {
        Ok(QuadraticInteger { a: s[0].parse()?, b: s[1].parse()?, d: s[2].parse()? })
    }
}

impl Neg for QuadraticInteger {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticInteger { a: -self.a, b: -self.b, d: self.d }
    }
}

/// Monic integer quadratic factors `x^2 + s x + t` of `poly` with
/// irrational roots, searched over the coefficient box allowed by the root
/// bound `|root| <= bound`.
pub fn irrational_quadratic_factors(poly: &[BigInt], bound: i64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for s in -2 * bound..=2 * bound {
        for t in -bound * bound..=bound * bound {
            let disc: i64 = s * s - 4 * t;
            if disc <= 0 || disc.sqrt() * disc.sqrt() == disc {
                continue;
            }
            let [lo, _] = QuadraticInteger::roots_of_monic_quadratic(&int(s), &int(t));
            if lo.is_root_of(poly) {
                out.push((int(s), int(t)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let m = to_rational_matrix(&[vec![1, 1, 1], vec![2, 2, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot: BigRational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(Zero::is_zero(&dot));
            }
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![BigRational::new(int(-1), int(2)), BigRational::new(int(1), int(3)), rat(0)];
        assert_eq!(primitive_integer_vector(&v), vec![int(3), int(-2), int(0)]);
    }

    #[test]
    fn basis_reduction_shrinks_entries() {
        let b = reduce_basis(vec![vec![int(1), int(1), int(0)], vec![int(1), int(2), int(1)]]);
        assert!(b.iter().all(|v| v.iter().all(|x| x.abs() <= int(1))));
    }

    #[test]
    fn charpoly_of_k4() {
        // (x - 3)(x + 1)^3 = x^4 - 6x^2 - 8x - 3
        let k4: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
        let p = characteristic_polynomial(&to_rational_matrix(&k4));
        assert_eq!(p, vec![int(-3), int(-8), int(-6), int(0), int(1)]);
        assert_eq!(integer_roots(&p), vec![(int(-1), 3), (int(3), 1)]);
    }

    #[test]
    fn golden_ratio_like_roots() {
        // x^2 + x - 4 has roots (-1 ± sqrt 17)/2.
        let p = vec![int(-4), int(1), int(1)];
        let [lo, hi] = QuadraticInteger::roots_of_monic_quadratic(&int(1), &int(-4));
        assert!(lo.is_root_of(&p) && hi.is_root_of(&p));
        assert!((hi.to_f64() - 1.5615528128088303).abs() < 1e-15);
        assert_eq!(irrational_quadratic_factors(&p, 3), vec![(int(1), int(-4))]);
        let q = QuadraticInteger { a: int(1), b: int(1), d: int(17) };
        assert!(!q.is_root_of(&p));
    }

    #[test]
    fn quadratic_integer_serializes_as_strings() {
        let q = QuadraticInteger { a: int(-1), b: int(1), d: int(17) };
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["-1","1","17"]"#);
        assert_eq!(serde_json::from_str::<QuadraticInteger>(&s).unwrap(), q);
        assert_eq!(QuadraticInteger::rational(&int(-2)).to_string(), "-2");
    }

    #[test]
    fn gaussian_rank() {
        let z = GaussianRational::unit_circle_point(2);
        let norm = &z.re * &z.re + &z.im * &z.im;
        assert!(norm.is_one());
        let one = GaussianRational::real(rat(1));
        let m = vec![vec![one.clone(), z.clone()], vec![z.conj(), one]];
        // [[1, z], [z̄, 1]] is singular because |z| = 1.
        assert_eq!(rank(&m), 1);
    }
}
