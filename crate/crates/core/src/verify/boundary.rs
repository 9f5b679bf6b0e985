use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{Finding, Report};
use crate::error::Result;
use crate::family::{build_family, FamilySpec};
use crate::graph6;
use crate::patterns::{contains, Pattern};
use crate::spectra::{
    certify_rho_equals_sqrt, char_poly, hts_cubic, largest_real_root, sign_at_surd, spectral_radius_default,
    QuadraticThreshold,
};

/// One exactly decided statement about a named graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryItem {
    pub id: String,
    pub subject: String,
    pub graph6: String,
    pub claim: String,
    pub m: usize,
    pub rho: f64,
    pub threshold: f64,
    pub exact: Value,
    pub holds: bool,
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn sign_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "negative",
        Ordering::Equal => "zero",
        Ordering::Greater => "positive",
    }
}

/// `rho(S_m^1) > sqrt(m)` for `4 <= m <= 8`, and `rho(S_n^k) = 3` for the
/// three size-9 graphs.
pub fn star_boundary_items() -> Result<Vec<BoundaryItem>> {
    let mut items = Vec::new();
    for m in 4..=8usize {
        let spec = FamilySpec::Snk(m, 1);
        let g = build_family(&spec)?;
        let mi = m as i64;
        let cubic = ints(&[mi - 3, -(mi - 1), -1, 1]);
        let th = QuadraticThreshold::sqrt(m);
        let s_cubic = sign_at_surd(&cubic, &th);
        let s_char = sign_at_surd(&char_poly(&g)?.coeffs, &th);
        let rho = spectral_radius_default(&g)?.rho;
        items.push(BoundaryItem {
            id: "R2.1".into(),
            subject: spec.to_string(),
            graph6: graph6::write(&g),
            claim: format!("rho(S_{m}^1) > sqrt({m})"),
            m,
            rho,
            threshold: th.value(),
            exact: json!({
                "polynomial": format!("x^3 - x^2 - {}x + {}", m - 1, mi - 3),
                "point": format!("sqrt({m})"),
                "cubic_sign": sign_str(s_cubic),
                "char_poly_sign": sign_str(s_char),
            }),
            holds: s_cubic == Ordering::Less && s_char == Ordering::Less && rho > th.value(),
        });
    }
    for (n, k) in [(9usize, 1usize), (8, 2), (7, 3)] {
        let spec = FamilySpec::Snk(n, k);
        let g = build_family(&spec)?;
        let cert = certify_rho_equals_sqrt(&g)?;
        // quotient cubic of {centre, matched leaves, free leaves}; it factors
        // as (x - 3)(x^2 + 2x - n + 7)
        let ni = n as i64;
        let cubic = ints(&[ni - 1 - 2 * k as i64, -(ni - 1), -1, 1]);
        let product = ints(&[-3 * (7 - ni), (7 - ni) - 6, -1, 1]);
        let factored = cubic == product;
        let cp = char_poly(&g)?;
        // with no free leaves the empty class contributes a spurious root 0
        let quotient = if n == 2 * k + 1 { &cubic[1..] } else { &cubic[..] };
        let divides = divides_exactly(&cp.coeffs, quotient);
        items.push(BoundaryItem {
            id: "L4.2".into(),
            subject: spec.to_string(),
            graph6: graph6::write(&g),
            claim: format!("rho(S_{n}^{k}) = 3 = sqrt(9)"),
            m: g.size(),
            rho: cert.rho,
            threshold: 3.0,
            exact: json!({
                "char_poly_at_3": cert.u,
                "factorisation": format!("(x - 3)(x^2 + 2x - {})", n - 7),
                "cubic_factors": factored,
                "cubic_divides_char_poly": divides,
            }),
            holds: cert.is_exact && factored && divides,
        });
    }
    Ok(items)
}

/// Exact division test for monic `d`.
fn divides_exactly(p: &[BigInt], d: &[BigInt]) -> bool {
    let mut r = p.to_vec();
    let dn = d.len() - 1;
    if r.len() <= dn {
        return r.iter().all(Zero::is_zero);
    }
    for i in (dn..r.len()).rev() {
        let lead = r[i].clone();
        if lead.is_zero() {
            continue;
        }
        for j in 0..=dn {
            r[i - dn + j] -= &lead * &d[j];
        }
    }
    r.iter().all(Zero::is_zero)
}

/// `H_{1,0}∘R_1` is `C_5`-free with seven edges and spectral radius above the
/// book value 3.
pub fn hts_c5_items() -> Result<Vec<BoundaryItem>> {
    let spec = FamilySpec::HtsRk { t: 1, s: 0, k: 1, edges: vec![] };
    let g = build_family(&spec)?;
    // integer coefficients, so the f64 evaluation is exact
    let f3 = hts_cubic(1, 1).iter().rev().fold(0.0, |acc, c| acc * 3.0 + c) as i64;
    let cp3 = char_poly(&g)?.eval_int(&BigInt::from(3));
    let c5_free = !contains(&g, &Pattern::CycleLen(5))?;
    let rho = spectral_radius_default(&g)?.rho;
    let th = QuadraticThreshold::book(7);
    Ok(vec![BoundaryItem {
        id: "R4.1".into(),
        subject: spec.to_string(),
        graph6: graph6::write(&g),
        claim: "rho(H_{1,0}∘R_1) > (1 + sqrt(25))/2 = 3 at m = 7".into(),
        m: g.size(),
        rho,
        threshold: th.value(),
        exact: json!({
            "polynomial": "x^3 - 2x^2 - 4x + 2",
            "value_at_3": f3,
            "char_poly_at_3": cp3.to_string(),
            "c5_free": c5_free,
        }),
        holds: f3 == -1 && cp3 < BigInt::zero() && c5_free && rho > 3.0,
    }])
}

/// `rho(H_{t,0}∘R_k)` below the book bound for every `k >= 1`, `t >= 0` with
/// `6k + t` in `[max(lo, 8), hi]`, by at least `1e-10`.
pub fn hts_sweep_items(lo: usize, hi: usize) -> Result<Vec<BoundaryItem>> {
    let mut items = Vec::new();
    for m in lo.max(8)..=hi {
        for k in 1..=m / 6 {
            let t = m - 6 * k;
            items.push(hts_sweep_item(k, t)?);
        }
    }
    Ok(items)
}

pub(crate) fn hts_sweep_item(k: usize, t: usize) -> Result<BoundaryItem> {
    let spec = FamilySpec::HtsRk { t, s: 0, k, edges: vec![] };
    let g = build_family(&spec)?;
    let m = 6 * k + t;
    let th = QuadraticThreshold::book(m);
    let tau = th.value();
    let root = largest_real_root(&hts_cubic(k, t), g.order() as f64)?;
    let (ki, ti) = (k as i64, t as i64);
    let f = ints(&[2 * ti, -(3 * ki + ti), -2, 1]);
    let df = ints(&[-(3 * ki + ti), -4, 3]);
    let s_f = sign_at_surd(&f, &th);
    let s_df = sign_at_surd(&df, &th);
    let rho = spectral_radius_default(&g)?.rho;
    let margin = tau - root;
    Ok(BoundaryItem {
        id: "L5.4".into(),
        subject: spec.to_string(),
        graph6: graph6::write(&g),
        claim: format!("rho(H_{{{t},0}}∘R_{k}) < (1 + sqrt({}))/2", 4 * m - 3),
        m,
        rho,
        threshold: tau,
        exact: json!({
            "polynomial": format!("x^3 - 2x^2 - {}x + {}", 3 * k + t, 2 * t),
            "root": root,
            "margin": margin,
            "sign_at_threshold": sign_str(s_f),
            "derivative_sign_at_threshold": sign_str(s_df),
        }),
        holds: margin >= 1e-10
            && s_f == Ordering::Greater
            && s_df == Ordering::Greater
            && (rho - root).abs() <= 1e-9,
    })
}

pub(crate) fn items_report(id: &str, m_range: [usize; 2], items: Vec<BoundaryItem>, started: Instant) -> Report {
    let mut r = Report::new("boundary", id.into(), m_range, "exact");
    r.graphs_checked = items.len();
    for it in &items {
        if !it.holds {
            r.violations.push(Finding {
                m: it.m,
                graph6: it.graph6.clone(),
                rho: it.rho,
                threshold: it.threshold,
                family: Some(it.subject.clone()),
                reason: format!("{} fails: {}", it.id, it.claim),
                certificate: Some(it.exact.clone()),
            });
        }
    }
    r.items = items;
    r.finish(started);
    r
}

/// All boundary examples: the `S_m^1` items with the size-9 equalities, the
/// `C_5`-free example at size 7 and the `H_{t,0}∘R_k` sweep up to 40 edges.
pub fn boundary_checks() -> Result<Report> {
    let started = Instant::now();
    let mut items = star_boundary_items()?;
    items.extend(hts_c5_items()?);
    items.extend(hts_sweep_items(8, 40)?);
    Ok(items_report("boundary", [4, 40], items, started))
}
