use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{iter_bits, Graph};
use crate::patterns::{contains, Pattern};
use crate::spectra::spectral_radius_default;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditResult {
    pub clause: String,
    /// The hypotheses on the forbidden family hold for this clause.
    pub applicable: bool,
    pub passed: bool,
    pub witness: Option<String>,
}

const TIE: f64 = 1e-9;

/// Structural properties of an extremal graph: (i) connected, (ii) no cut
/// vertex other than an extremal vertex and no vertex of degree one outside
/// `N[u*]`, (iii) non-adjacent degree-two vertices share their neighbourhood.
/// (i) and (ii) apply when every forbidden graph is 2-connected, (iii) when
/// they are in addition `C_4`-free.
pub fn extremal_structure_audit(g: &Graph, forbid: &[Pattern]) -> Result<Vec<AuditResult>> {
    let mut two_connected = !forbid.is_empty();
    let mut c4_free = true;
    for p in forbid {
        let h = p.to_graph()?;
        two_connected &= h.is_two_connected();
        c4_free &= !contains(&h, &Pattern::CycleLen(4))?;
    }
    let mut out = Vec::new();

    let comps = g.components();
    out.push(AuditResult {
        clause: "(i) connected".into(),
        applicable: two_connected,
        passed: comps.len() == 1,
        witness: (comps.len() > 1).then(|| {
            let parts: Vec<String> = comps
                .iter()
                .map(|c| format!("{:?}", iter_bits(*c).collect::<Vec<_>>()))
                .collect();
            format!("components {}", parts.join(" "))
        }),
    });

    let cert = spectral_radius_default(g)?;
    let xmax = cert.max_coordinate();
    let extremal: u64 = (0..g.order())
        .filter(|&v| cert.perron[v] >= xmax - TIE)
        .fold(0, |acc, v| acc | (1u64 << v));
    let bad_cut = g.cut_vertices() & !extremal;
    let mut witness = None;
    if bad_cut != 0 {
        witness = Some(format!("cut vertex {}", bad_cut.trailing_zeros()));
    } else {
        // a vertex of degree one must hang off some extremal vertex
        let near: u64 = iter_bits(extremal).fold(extremal, |acc, u| acc | g.neighbors(u));
        if let Some(v) = (0..g.order()).find(|&v| near & (1u64 << v) == 0 && g.degree(v) < 2) {
            witness = Some(format!("vertex {v} of degree {} outside N[u*]", g.degree(v)));
        }
    }
    out.push(AuditResult {
        clause: "(ii) no cut vertex except an extremal vertex".into(),
        applicable: two_connected,
        passed: witness.is_none(),
        witness,
    });

    let deg2: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
    let mut witness = None;
    'pairs: for (i, &a) in deg2.iter().enumerate() {
        for &b in &deg2[i + 1..] {
            if !g.has_edge(a, b) && g.neighbors(a) != g.neighbors(b) {
                witness = Some(format!("vertices {a} and {b}"));
                break 'pairs;
            }
        }
    }
    out.push(AuditResult {
        clause: "(iii) non-adjacent degree-two vertices have equal neighbourhoods".into(),
        applicable: two_connected && c4_free,
        passed: witness.is_none(),
        witness,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};

    #[test]
    fn examples() {
        let book = build_family(&CompleteSplit(6, 2)).unwrap();
        let r = extremal_structure_audit(&book, &[Pattern::CycleLen(5)]).unwrap();
        assert!(r.iter().all(|c| c.applicable && c.passed), "{r:?}");

        let star = build_family(&Star(9)).unwrap();
        let r = extremal_structure_audit(&star, &[Pattern::CycleLen(4)]).unwrap();
        assert!(r[1].passed && r[1].applicable);
        assert!(!r[2].applicable);

        let two = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = extremal_structure_audit(&two, &[Pattern::CycleLen(5)]).unwrap();
        assert!(!r[0].passed);
        assert!(r[0].witness.as_deref().unwrap().starts_with("components"));
    }
}
