use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::charpoly::{char_poly, CharPoly};
use super::power::{spectral_radius, SpectralCertificate, DEFAULT_TOL};
use super::{DECISION_SLACK, ESCALATION_WINDOW};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The larger root of `a x^2 + b x + c` with `a > 0` and a nonnegative
/// discriminant. Every threshold the checks compare against has this shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticThreshold {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticThreshold {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::InvalidArgument(format!("leading coefficient must be positive, got {a}")));
        }
        let q = QuadraticThreshold { a, b, c };
        if q.discriminant() < 0 {
            return Err(Error::InvalidArgument(format!("{q} has no real root")));
        }
        Ok(q)
    }

    /// `sqrt(m)`.
    pub fn sqrt(m: usize) -> Self {
        QuadraticThreshold { a: 1, b: 0, c: -(m as i64) }
    }

    /// `(1 + sqrt(4m - 3)) / 2`, the book value.
    pub fn book(m: usize) -> Self {
        QuadraticThreshold { a: 1, b: -1, c: -(m as i64 - 1) }
    }

    /// `sqrt(2m (1 - 1/r))`.
    pub fn turan(r: usize, m: usize) -> Self {
        let (r, m) = (r as i64, m as i64);
        QuadraticThreshold { a: r, b: 0, c: -2 * m * (r - 1) }
    }

    /// `(k - 1/2 + sqrt(4m + (k - 1/2)^2)) / 2`.
    pub fn pancyclic(k: usize, m: usize) -> Self {
        let k = k as i64;
        QuadraticThreshold { a: 2, b: -(2 * k - 1), c: -2 * m as i64 }
    }

    /// `(k - 1 + sqrt(4m - k^2 + 1)) / 2`, which is `rho(S_{n,k})` when
    /// `m = k(n-k) + k(k-1)/2`.
    pub fn split(k: usize, m: usize) -> Self {
        let (k, m) = (k as i64, m as i64);
        QuadraticThreshold { a: 1, b: -(k - 1), c: -(m - k * (k - 1) / 2) }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn value(&self) -> f64 {
        (-(self.b as f64) + (self.discriminant() as f64).sqrt()) / (2.0 * self.a as f64)
    }

    /// Sign of `p(tau)`, exact.
    pub fn sign_of(&self, poly: &[BigInt]) -> Ordering {
        sign_at_surd(poly, self)
    }

    pub fn is_root_of(&self, poly: &[BigInt]) -> bool {
        self.sign_of(poly) == Ordering::Equal
    }
}

impl std::fmt::Display for QuadraticThreshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x^2 {:+}x {:+}", self.a, self.b, self.c)
    }
}

/// `u + v sqrt(d)`.
#[derive(Clone, Debug)]
struct Surd {
    u: BigInt,
    v: BigInt,
}

fn isqrt_exact(d: &BigInt) -> Option<BigInt> {
    if d.is_negative() {
        return None;
    }
    let s = d.sqrt();
    (&s * &s == *d).then_some(s)
}

fn sign_of_surd(x: &Surd, d: &BigInt) -> Ordering {
    if let Some(s) = isqrt_exact(d) {
        return (&x.u + &x.v * s).sign().cmp_zero();
    }
    let su = x.u.sign().cmp_zero();
    let sv = x.v.sign().cmp_zero();
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        (su, _) => {
            // opposite signs: compare u^2 with v^2 d
            let lhs = &x.u * &x.u;
            let rhs = &x.v * &x.v * d;
            match lhs.cmp(&rhs) {
                Ordering::Greater => su,
                Ordering::Less => su.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// `(2a)^n p(tau)` as an element of `Z[sqrt(D)]`, by homogeneous Horner.
fn scaled_value(poly: &[BigInt], q: &QuadraticThreshold) -> Surd {
    let y_u = BigInt::from(-q.b);
    let z = BigInt::from(2 * q.a);
    let d = BigInt::from(q.discriminant());
    let n = poly.len().saturating_sub(1);
    let mut acc = Surd {
        u: poly.last().cloned().unwrap_or_default(),
        v: BigInt::zero(),
    };
    let mut zpow = BigInt::from(1);
    for i in (0..n).rev() {
        zpow *= &z;
        // acc * (y_u + sqrt(d))
        let u = &acc.u * &y_u + &acc.v * &d;
        let v = &acc.u + &acc.v * &y_u;
        acc = Surd { u: u + &poly[i] * &zpow, v };
    }
    acc
}

/// Exact sign of `poly(tau)` (coefficients lowest degree first).
pub fn sign_at_surd(poly: &[BigInt], q: &QuadraticThreshold) -> Ordering {
    if poly.is_empty() {
        return Ordering::Equal;
    }
    let d = BigInt::from(q.discriminant());
    sign_of_surd(&scaled_value(poly, q), &d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticRemainder {
    pub p: i64,
    pub q: i64,
    /// `c1 x + c0`, exact.
    pub c1: String,
    pub c0: String,
    pub divides: bool,
}

/// Remainder of `char_poly(G)` modulo `x^2 - p x - q`.
pub fn certify_quadratic_eigenfactor(g: &Graph, p: i64, q: i64) -> Result<QuadraticRemainder> {
    let cp = char_poly(g)?;
    let (c1, c0) = quadratic_remainder(&cp, p, q);
    Ok(QuadraticRemainder {
        p,
        q,
        divides: c1.is_zero() && c0.is_zero(),
        c1: c1.to_string(),
        c0: c0.to_string(),
    })
}

pub(crate) fn quadratic_remainder(cp: &CharPoly, p: i64, q: i64) -> (BigInt, BigInt) {
    let mut r = cp.coeffs.clone();
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    for i in (2..r.len()).rev() {
        let lead = std::mem::take(&mut r[i]);
        r[i - 1] += &lead * &p;
        r[i - 2] += &lead * &q;
    }
    let c0 = r.first().cloned().unwrap_or_default();
    let c1 = r.get(1).cloned().unwrap_or_default();
    (c1, c0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtCertificate {
    pub m: usize,
    /// `char_poly(sqrt(m)) = u + v sqrt(m)`; for square `m` this is an
    /// integer and `v` is zero.
    pub u: String,
    pub v: String,
    pub rho: f64,
    pub is_exact: bool,
}

/// Decide `rho(G) = sqrt(m)` exactly.
pub fn certify_rho_equals_sqrt(g: &Graph) -> Result<SqrtCertificate> {
    let m = g.size();
    let cp = char_poly(g)?;
    let mb = BigInt::from(m);
    let (u, v) = match isqrt_exact(&mb) {
        Some(s) => (cp.eval_int(&s), BigInt::zero()),
        None => {
            // Horner in Z[sqrt(m)]
            let mut u = BigInt::zero();
            let mut v = BigInt::zero();
            for c in cp.coeffs.iter().rev() {
                let nu = &v * &mb + c;
                let nv = u;
                u = nu;
                v = nv;
            }
            (u, v)
        }
    };
    let rho = if g.size() == 0 { 0.0 } else { spectral_radius(g, DEFAULT_TOL)?.rho };
    let root = u.is_zero() && v.is_zero();
    let is_exact = root && (rho - (m as f64).sqrt()).abs() <= DECISION_SLACK;
    Ok(SqrtCertificate {
        m,
        u: u.to_string(),
        v: v.to_string(),
        rho,
        is_exact,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCertificate {
    pub threshold: QuadraticThreshold,
    pub threshold_value: f64,
    pub rho: f64,
    pub char_poly_root: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Comparison {
    Below,
    Above,
    Equal(EqualityCertificate),
    /// Too close to call in floating point and exact certification was not
    /// conclusive or not available.
    Unresolved { rho: f64, threshold: f64, reason: String },
}

impl Comparison {
    pub fn exceeds(&self) -> bool {
        matches!(self, Comparison::Above)
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal(_))
    }
}

/// Compare `rho(G)` with `tau`. Far from `tau` the floating value decides;
/// within the escalation window the characteristic polynomial is evaluated
/// exactly at `tau`.
pub fn compare_to_threshold(
    g: &Graph,
    cert: &SpectralCertificate,
    q: &QuadraticThreshold,
) -> Result<Comparison> {
    let tau = q.value();
    let diff = cert.rho - tau;
    let by_sign = |d: f64| if d > 0.0 { Comparison::Above } else { Comparison::Below };
    if diff.abs() > ESCALATION_WINDOW {
        return Ok(by_sign(diff));
    }
    if g.order() > super::MAX_CHARPOLY_VERTICES {
        return Ok(Comparison::Unresolved {
            rho: cert.rho,
            threshold: tau,
            reason: format!("{} vertices is beyond exact certification", g.order()),
        });
    }
    let cp = char_poly(g)?;
    let root = q.is_root_of(&cp.coeffs);
    if root && diff.abs() <= DECISION_SLACK {
        return Ok(Comparison::Equal(EqualityCertificate {
            threshold: *q,
            threshold_value: tau,
            rho: cert.rho,
            char_poly_root: true,
        }));
    }
    if root || diff.abs() > 1e-11 {
        // tau is not an eigenvalue near rho (or is a different eigenvalue),
        // so the floating residual bound settles the side
        return Ok(by_sign(diff));
    }
    Ok(Comparison::Unresolved {
        rho: cert.rho,
        threshold: tau,
        reason: "threshold is not an eigenvalue but lies within 1e-11 of rho".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};
    use crate::spectra::spectral_radius_default;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn surd_signs() {
        let sqrt2 = QuadraticThreshold::sqrt(2);
        // x^2 - 2 vanishes, x - 1 positive, x - 2 negative
        assert_eq!(sign_at_surd(&big(&[-2, 0, 1]), &sqrt2), Ordering::Equal);
        assert_eq!(sign_at_surd(&big(&[-1, 1]), &sqrt2), Ordering::Greater);
        assert_eq!(sign_at_surd(&big(&[-2, 1]), &sqrt2), Ordering::Less);
        // golden ratio is a root of x^2 - x - 1
        let phi = QuadraticThreshold::book(2);
        assert!((phi.value() - 1.618033988749895).abs() < 1e-15);
        assert!(phi.is_root_of(&big(&[-1, -1, 1])));
        // rational root: 2x^2 - 3x - 2 has larger root 2
        let two = QuadraticThreshold::new(2, -3, -2).unwrap();
        assert!(two.is_root_of(&big(&[-2, 1])));
    }

    #[test]
    fn sign_matches_float_on_random_polys() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let q = QuadraticThreshold::sqrt(rng.gen_range(2..40));
            let coeffs: Vec<i64> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(-9..10)).collect();
            let x = q.value();
            let f: f64 = coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64);
            if f.abs() > 1e-6 {
                let expect = if f > 0.0 { Ordering::Greater } else { Ordering::Less };
                assert_eq!(sign_at_surd(&big(&coeffs), &q), expect, "{coeffs:?} at {x}");
            }
        }
    }

    #[test]
    fn quadratic_remainders() {
        let book = build_family(&CompleteSplit(6, 2)).unwrap();
        assert!(certify_quadratic_eigenfactor(&book, 1, 8).unwrap().divides);
        let star = build_family(&Star(4)).unwrap();
        assert!(certify_quadratic_eigenfactor(&star, 0, 4).unwrap().divides);
        // C_5: x^5 - 5x^3 + 5x - 2 mod x^2 - x - 1
        let c5 = build_family(&Cycle(5)).unwrap();
        let r = certify_quadratic_eigenfactor(&c5, 1, 1).unwrap();
        assert!(!r.divides);
        assert_eq!((r.c1.as_str(), r.c0.as_str()), ("0", "-4"));
    }

    #[test]
    fn sqrt_certificates() {
        for (n, k) in [(7, 3), (8, 2), (9, 1)] {
            let g = build_family(&Snk(n, k)).unwrap();
            let c = certify_rho_equals_sqrt(&g).unwrap();
            assert!(c.is_exact, "S_{n}^{k}");
        }
        for (s, t) in [(1, 7), (2, 5), (3, 3), (2, 8)] {
            let g = build_family(&CompleteBipartite(s, t)).unwrap();
            assert!(certify_rho_equals_sqrt(&g).unwrap().is_exact);
        }
        let g = build_family(&Snk(10, 1)).unwrap();
        let c = certify_rho_equals_sqrt(&g).unwrap();
        assert!(!c.is_exact);
        assert!(c.rho < 10f64.sqrt());
    }

    #[test]
    fn comparisons() {
        let book = build_family(&CompleteSplit(6, 2)).unwrap();
        let cert = spectral_radius_default(&book).unwrap();
        assert!(compare_to_threshold(&book, &cert, &QuadraticThreshold::book(9)).unwrap().is_equal());
        assert_eq!(
            compare_to_threshold(&book, &cert, &QuadraticThreshold::sqrt(9)).unwrap(),
            Comparison::Above
        );
        let k33 = build_family(&CompleteBipartite(3, 3)).unwrap();
        let cert = spectral_radius_default(&k33).unwrap();
        assert!(compare_to_threshold(&k33, &cert, &QuadraticThreshold::sqrt(9)).unwrap().is_equal());
        assert!((QuadraticThreshold::turan(2, 9).value() - 3.0).abs() < 1e-15);
        assert!((QuadraticThreshold::split(2, 9).value() - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-15);
        let p = QuadraticThreshold::pancyclic(1, 6);
        assert!((p.value() - (0.5 + (24.25f64).sqrt()) / 2.0).abs() < 1e-15);
    }
}
