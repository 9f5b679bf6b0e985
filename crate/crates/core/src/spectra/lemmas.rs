use serde::{Deserialize, Serialize};

use super::power::spectral_radius_default;
use super::DECISION_SLACK;
use crate::error::{Error, Result};
use crate::family::is_star;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeletionCheck {
    pub vertex: usize,
    pub rho: f64,
    /// `sqrt(rho(G - v)^2 + 2 d(v) - 1)`.
    pub bound: f64,
    pub holds: bool,
    /// Numerically tight within the decision slack.
    pub equality: bool,
    /// `G` is complete, or a star and `v` a leaf.
    pub equality_expected: bool,
}

/// `rho(G) <= sqrt(rho^2(G - v) + 2 d(v) - 1)`.
pub fn deletion_bound_check(g: &Graph, v: usize) -> Result<DeletionCheck> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
    }
    let d = g.degree(v);
    if d == 0 {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let rho = spectral_radius_default(g)?.rho;
    let rest = spectral_radius_default(&g.remove_vertex(v)?)?.rho;
    let bound = (rest * rest + 2.0 * d as f64 - 1.0).sqrt();
    let n = g.order();
    let complete = g.size() == n * (n - 1) / 2;
    Ok(DeletionCheck {
        vertex: v,
        rho,
        bound,
        holds: rho <= bound + DECISION_SLACK,
        equality: (rho - bound).abs() <= DECISION_SLACK,
        equality_expected: complete || (is_star(g) && d == 1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronCheck {
    pub max_coordinate: f64,
    pub argmax: usize,
    pub bound: f64,
    pub holds: bool,
    pub equality: bool,
}

/// Largest Perron coordinate is at most `1/sqrt(2)`.
pub fn perron_coordinate_bound_check(g: &Graph) -> Result<PerronCheck> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if g.size() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    let cert = spectral_radius_default(g)?;
    let (argmax, max_coordinate) = cert
        .perron
        .iter()
        .cloned()
        .enumerate()
        .fold((0, f64::MIN), |b, (i, x)| if x > b.1 { (i, x) } else { b });
    let bound = std::f64::consts::FRAC_1_SQRT_2;
    Ok(PerronCheck {
        max_coordinate,
        argmax,
        bound,
        holds: max_coordinate <= bound + DECISION_SLACK,
        equality: (max_coordinate - bound).abs() <= DECISION_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};

    #[test]
    fn deletion_examples() {
        let k5 = build_family(&Complete(5)).unwrap();
        for v in 0..5 {
            let c = deletion_bound_check(&k5, v).unwrap();
            assert!(c.holds && c.equality && c.equality_expected);
        }
        let star = build_family(&Star(6)).unwrap();
        let c = deletion_bound_check(&star, 3).unwrap();
        assert!(c.equality && c.equality_expected);
        let c = deletion_bound_check(&star, 0).unwrap();
        assert!(c.holds && !c.equality && !c.equality_expected);
        let c6 = build_family(&Cycle(6)).unwrap();
        let c = deletion_bound_check(&c6, 2).unwrap();
        assert!(c.holds && !c.equality);
        assert!((c.bound - 6f64.sqrt()).abs() < 1e-9);
        let iso = Graph::empty(3).unwrap();
        assert!(deletion_bound_check(&iso, 0).is_err());
    }

    #[test]
    fn perron_examples() {
        let k2 = build_family(&Complete(2)).unwrap();
        assert!(perron_coordinate_bound_check(&k2).unwrap().equality);
        let s8 = build_family(&Star(8)).unwrap();
        let c = perron_coordinate_bound_check(&s8).unwrap();
        assert!(c.equality && c.argmax == 0);
        let k5 = build_family(&Complete(5)).unwrap();
        let c = perron_coordinate_bound_check(&k5).unwrap();
        assert!(c.holds && (c.max_coordinate - 0.2f64.sqrt()).abs() < 1e-12);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(perron_coordinate_bound_check(&two).is_err());
    }
}
