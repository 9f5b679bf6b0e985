use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};
use crate::patterns::{is_cycle, longest_path_in_mask};
use crate::spectra::{compare_to_threshold, spectral_radius_default, Comparison, QuadraticThreshold};

/// Cycles of every length `3..=2k+2` through one vertex, found by the column
/// sum argument for `A^2 - (k - 1/2) A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm15Witness {
    pub k: usize,
    pub rho: f64,
    pub threshold: f64,
    pub j_star: usize,
    /// Column sums of `A^2 - (k - 1/2) A`.
    pub f_column_sums: Vec<f64>,
    /// Edges inside `N(j*)`.
    pub neighborhood_edges: usize,
    pub path: Vec<usize>,
    pub cycles: BTreeMap<usize, Vec<usize>>,
}

/// `None` when `rho(G)` does not exceed the threshold (equality included).
/// An error of kind `Consistency` means a step of the argument failed on a
/// graph above the threshold.
pub fn thm15_witness(g: &Graph, k: usize) -> Result<Option<Thm15Witness>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k >= 1".into()));
    }
    let m = g.size();
    if m == 0 {
        return Ok(None);
    }
    let th = QuadraticThreshold::pancyclic(k, m);
    let cert = spectral_radius_default(g)?;
    match compare_to_threshold(g, &cert, &th)? {
        Comparison::Above => {}
        Comparison::Unresolved { reason, .. } => {
            return Err(Error::Consistency(format!("threshold comparison unresolved: {reason}")))
        }
        _ => return Ok(None),
    }
    let n = g.order();
    let deg = g.degrees();
    // doubled column sums keep everything integral
    let twice: Vec<i64> = (0..n)
        .map(|j| {
            let s: usize = iter_bits(g.neighbors(j)).map(|i| deg[i]).sum();
            2 * s as i64 - (2 * k as i64 - 1) * deg[j] as i64
        })
        .collect();
    let best = *twice.iter().max().expect("nonempty graph");
    if best <= 2 * m as i64 {
        return Err(Error::Consistency(format!(
            "rho = {} exceeds {} but no column sum exceeds m = {m}",
            cert.rho,
            th.value()
        )));
    }
    let j_star = twice.iter().position(|&x| x == best).unwrap();
    let nb = g.neighbors(j_star);
    let inside = g.edges_within(nb);
    if 2 * inside <= (2 * k - 1) * deg[j_star] {
        return Err(Error::Consistency(format!(
            "e(N({j_star})) = {inside} is not above (2k-1)d/2 = {}",
            (2 * k - 1) as f64 * deg[j_star] as f64 / 2.0
        )));
    }
    let path = longest_path_in_mask(g, nb)?;
    if path.len() < 2 * k + 1 {
        return Err(Error::Consistency(format!(
            "longest path in N({j_star}) has {} vertices, need {}",
            path.len(),
            2 * k + 1
        )));
    }
    let mut cycles = BTreeMap::new();
    for t in 3..=2 * k + 2 {
        let mut c = vec![j_star];
        c.extend_from_slice(&path[..t - 1]);
        if !is_cycle(g, &c) {
            return Err(Error::Consistency(format!("assembled {t}-cycle {c:?} is not a cycle")));
        }
        cycles.insert(t, c);
    }
    Ok(Some(Thm15Witness {
        k,
        rho: cert.rho,
        threshold: th.value(),
        j_star,
        f_column_sums: twice.iter().map(|&x| x as f64 / 2.0).collect(),
        neighborhood_edges: inside,
        path,
        cycles,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};

    #[test]
    fn examples() {
        let k4 = build_family(&Complete(4)).unwrap();
        let w = thm15_witness(&k4, 1).unwrap().unwrap();
        assert_eq!(w.cycles.len(), 2);
        assert_eq!(w.cycles[&3].len(), 3);
        assert_eq!(w.cycles[&4].len(), 4);
        assert!((w.threshold - (0.5 + 24.25f64.sqrt()) / 2.0).abs() < 1e-12);
        let k33 = build_family(&CompleteBipartite(3, 3)).unwrap();
        assert!(thm15_witness(&k33, 1).unwrap().is_none());
        let c5 = build_family(&Cycle(5)).unwrap();
        assert!(thm15_witness(&c5, 1).unwrap().is_none());
        let k6 = build_family(&Complete(6)).unwrap();
        let w = thm15_witness(&k6, 2).unwrap().unwrap();
        assert_eq!(w.cycles.keys().copied().collect::<Vec<_>>(), vec![3, 4, 5, 6]);
    }
}
