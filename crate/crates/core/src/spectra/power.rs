use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Spectral radius with its Perron vector and the residual that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub rho: f64,
    /// Unit Perron vector of the achieving component, zero elsewhere.
    pub perron: Vec<f64>,
    /// `max_u |(A x)_u - rho x_u|`.
    pub residual: f64,
    pub iterations: usize,
    /// Index into `Graph::components()` of the achieving component.
    pub component: usize,
}

impl SpectralCertificate {
    pub fn max_coordinate(&self) -> f64 {
        self.perron.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn spectral_radius_default(g: &Graph) -> Result<SpectralCertificate> {
    spectral_radius(g, DEFAULT_TOL)
}

/// Power iteration on `A + I`, component by component, from the all-ones
/// vector. The shift keeps bipartite components from oscillating.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralCertificate> {
    spectral_radius_from(g, None, tol)
}

/// As [`spectral_radius`], seeding each component with the matching entries
/// of `start` (nonpositive entries are lifted to a small positive value).
pub fn spectral_radius_from(g: &Graph, start: Option<&[f64]>, tol: f64) -> Result<SpectralCertificate> {
    if g.order() == 0 {
        return Err(Error::Precondition("spectral radius of the empty graph".into()));
    }
    // written negated so NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = g.order();
    let mut best: Option<(f64, Vec<f64>, f64, usize, usize)> = None;
    for (idx, comp) in g.components().into_iter().enumerate() {
        let verts: Vec<usize> = iter_bits(comp).collect();
        let (rho, x, residual, iterations) = if verts.len() == 1 {
            (0.0, vec![1.0], 0.0, 0)
        } else {
            let seed: Option<Vec<f64>> =
                start.map(|s| verts.iter().map(|&v| s.get(v).copied().unwrap_or(0.0).max(1e-3)).collect());
            component_radius(g, &verts, seed.as_deref(), tol)?
        };
        let better = match &best {
            None => true,
            Some((r, ..)) => rho > *r,
        };
        if better {
            let mut full = vec![0.0; n];
            for (i, &v) in verts.iter().enumerate() {
                full[v] = x[i];
            }
            best = Some((rho, full, residual, iterations, idx));
        }
    }
    let (rho, perron, residual, iterations, component) = best.expect("at least one component");
    Ok(SpectralCertificate {
        rho,
        perron,
        residual,
        iterations,
        component,
    })
}

/// Power iteration on one component; `start` (indexed like `verts`) seeds the
/// iteration when given.
pub(crate) fn component_radius(
    g: &Graph,
    verts: &[usize],
    start: Option<&[f64]>,
    tol: f64,
) -> Result<(f64, Vec<f64>, f64, usize)> {
    let k = verts.len();
    let mut local = [usize::MAX; 64];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| iter_bits(g.neighbors(v)).map(|w| local[w]).collect())
        .collect();
    let mut x: Vec<f64> = match start {
        Some(s) if s.len() == k && s.iter().all(|&v| v > 0.0) => s.to_vec(),
        _ => vec![1.0; k],
    };
    normalize(&mut x);
    let mut ax = vec![0.0; k];
    let mut best = (0.0, x.clone(), f64::INFINITY);
    for it in 1..=MAX_ITERATIONS {
        for i in 0..k {
            ax[i] = adj[i].iter().map(|&j| x[j]).sum();
        }
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - rho * xi).abs())
            .fold(0.0, f64::max);
        if residual < best.2 {
            best = (rho, x.clone(), residual);
        }
        if residual <= tol {
            return Ok((rho, x, residual, it));
        }
        for i in 0..k {
            x[i] += ax[i];
        }
        normalize(&mut x);
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        rho: best.0,
        residual: best.2,
    })
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in x.iter_mut() {
        *v /= norm;
    }
}
