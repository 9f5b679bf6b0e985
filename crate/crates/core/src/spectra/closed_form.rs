use crate::error::{Error, Result};
use crate::family::FamilySpec;

/// Real polynomial, lowest degree first.
pub type Poly = Vec<f64>;

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(p: &[f64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// Largest real root of a polynomial with positive leading coefficient and
/// only real roots below `upper`. The bracket is `[r', upper]` where `r'` is
/// the largest root of the derivative (or 0 when that is smaller), refined by
/// bisection to width 1e-13.
pub fn largest_real_root(p: &[f64], upper: f64) -> Result<f64> {
    let mut p = p.to_vec();
    while p.last() == Some(&0.0) {
        p.pop();
    }
    match p.len() {
        0 | 1 => return Err(Error::InvalidArgument("constant polynomial has no root".into())),
        2 => return Ok(-p[0] / p[1]),
        _ => {}
    }
    if p[p.len() - 1] < 0.0 {
        return Err(Error::InvalidArgument("leading coefficient must be positive".into()));
    }
    let mut lo = largest_real_root(&derivative(&p), upper).map_or(0.0, |r| r.max(0.0));
    if eval(&p, lo) > 0.0 {
        return Err(Error::InvalidArgument(format!("no real root above {lo}")));
    }
    let mut hi = upper.max(lo + 1.0);
    while eval(&p, hi) <= 0.0 {
        hi *= 2.0;
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(&p, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `x^3 - x^2 - (n-1)x + n - 1 - 2k`, whose largest root is `rho(S_n^k)`.
pub fn snk_cubic(n: usize, k: usize) -> Poly {
    let (n, k) = (n as f64, k as f64);
    vec![n - 1.0 - 2.0 * k, -(n - 1.0), -1.0, 1.0]
}

/// `x^3 - 2x^2 - (3k+t)x + 2t`, whose largest root is `rho(H_{t,0}∘R_k)`.
pub fn hts_cubic(k: usize, t: usize) -> Poly {
    let (k, t) = (k as f64, t as f64);
    vec![2.0 * t, -(3.0 * k + t), -2.0, 1.0]
}

/// Spectral radius from the defining polynomial of a named family.
pub fn family_rho_closed_form(spec: &FamilySpec) -> Result<f64> {
    spec.validate()?;
    let n = spec.vertex_count() as f64;
    let poly: Poly = match *spec {
        FamilySpec::Star(m) => vec![-(m as f64), 0.0, 1.0],
        FamilySpec::CompleteBipartite(s, t) => vec![-((s * t) as f64), 0.0, 1.0],
        FamilySpec::Snk(n, k) => snk_cubic(n, k),
        FamilySpec::CompleteSplit(nn, k) => {
            vec![-((k * (nn - k)) as f64), -(k as f64 - 1.0), 1.0]
        }
        FamilySpec::Book(r) => vec![-(2.0 * r as f64), -1.0, 1.0],
        FamilySpec::HtsRk { t, s: 0, k, ref edges } if edges.is_empty() => hts_cubic(k, t),
        _ => {
            return Err(Error::UnsupportedFamily(format!(
                "no closed form for {spec}; supported: star, S_n^k, complete split, book, \
                 complete bipartite, H_(t,0)∘R_k without extra edges"
            )))
        }
    };
    largest_real_root(&poly, n)
}
