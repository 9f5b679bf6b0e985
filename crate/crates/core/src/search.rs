//! Hill climbing of the spectral radius over graphs with a fixed number of
//! edges that avoid a family of forbidden subgraphs.
//!
//! Moves are edge rotations (delete one edge, add one non-edge, possibly to a
//! fresh vertex) and vertex shifts toward vertices with a larger Perron
//! coordinate. Candidate moves are ranked by their Rayleigh-quotient gain
//! with the current Perron vector and the best `eval_budget` are evaluated
//! exactly; the first strict improvement is taken.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};
use crate::family::{build_family, FamilySpec};
use crate::graph::{iter_bits, Graph, MAX_VERTICES};
use crate::patterns::{free_of_all, Pattern};
use crate::spectra::{spectral_radius, spectral_radius_from, SpectralCertificate, DEFAULT_TOL};

/// Smallest accepted improvement.
pub const IMPROVEMENT: f64 = 1e-12;

const START_TRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub m: usize,
    pub forbid: Vec<Pattern>,
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub edge_rotation: bool,
    pub vertex_shift: bool,
    /// Moves evaluated exactly per step, best Rayleigh gain first.
    pub eval_budget: usize,
}

impl SearchConfig {
    pub fn new(m: usize, forbid: Vec<Pattern>) -> Self {
        SearchConfig {
            m,
            forbid,
            restarts: 10,
            max_steps: 1000,
            seed: 0,
            edge_rotation: true,
            vertex_shift: true,
            eval_budget: 256,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || 2 * self.m > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "search needs 1 <= m <= {}, got {}",
                MAX_VERTICES / 2,
                self.m
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if !self.edge_rotation && !self.vertex_shift {
            return Err(Error::InvalidArgument("no move type enabled".into()));
        }
        for p in &self.forbid {
            p.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub restart: usize,
    pub step: usize,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartOutcome {
    pub restart: usize,
    pub start_rho: f64,
    pub rho: f64,
    pub steps: usize,
    pub form: CanonicalForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Canonically labelled.
    pub best: Graph,
    pub form: CanonicalForm,
    pub cert: SpectralCertificate,
    pub restarts: Vec<RestartOutcome>,
    pub trace: Vec<TraceEntry>,
}

/// Move every edge `vw` with `w` outside `N[u]` to `uw`.
pub fn vertex_shift(g: &Graph, from: usize, to: usize) -> Result<Graph> {
    let n = g.order();
    for x in [from, to] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if from == to {
        return Err(Error::InvalidArgument("shift needs two distinct vertices".into()));
    }
    let mut h = g.clone();
    for w in iter_bits(shift_set(g, from, to)) {
        h.clear_edge(from, w);
        h.set_edge(to, w);
    }
    Ok(h)
}

fn shift_set(g: &Graph, v: usize, u: usize) -> u64 {
    g.neighbors(v) & !g.neighbors(u) & !(1u64 << u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Move {
    Rotate { del: (usize, usize), add: (usize, usize) },
    Shift { from: usize, to: usize },
}

/// Apply a move and drop isolated vertices. Also returns, for each vertex of
/// the result, its index in `g` (or `None` for a fresh vertex).
pub fn apply_move(g: &Graph, mv: Move) -> (Graph, Vec<Option<usize>>) {
    let n = g.order();
    let mut h = g.clone();
    match mv {
        Move::Rotate { del, add } => {
            h.clear_edge(del.0, del.1);
            if add.1 >= n {
                h.grow(add.1 + 1 - n);
            }
            h.set_edge(add.0, add.1);
        }
        Move::Shift { from, to } => {
            for w in iter_bits(shift_set(g, from, to)) {
                h.clear_edge(from, w);
                h.set_edge(to, w);
            }
        }
    }
    let keep: Vec<usize> = (0..h.order()).filter(|&v| h.degree(v) > 0).collect();
    let origin = keep.iter().map(|&v| (v < n).then_some(v)).collect();
    if keep.len() < h.order() {
        h = h.without_isolated();
    }
    (h, origin)
}

/// All moves of the enabled kinds with their Rayleigh gains under `x`.
/// Shifts are only proposed toward a vertex with a coordinate at least as
/// large, unless `x` is `None`.
pub fn candidate_moves(g: &Graph, x: Option<&[f64]>, cfg: &SearchConfig) -> Vec<(f64, Move)> {
    let n = g.order();
    let xv = |v: usize| x.and_then(|x| x.get(v).copied()).unwrap_or(0.0);
    let cap = 2 * cfg.m;
    let mut out = Vec::new();
    if cfg.edge_rotation {
        let edges = g.edges();
        let mut targets = Vec::new();
        for c in 0..n {
            for d in c + 1..n {
                if !g.has_edge(c, d) {
                    targets.push((c, d));
                }
            }
            if n < cap {
                targets.push((c, n));
            }
        }
        for &(a, b) in &edges {
            for &(c, d) in &targets {
                let gain = 2.0 * (xv(c) * xv(d) - xv(a) * xv(b));
                out.push((gain, Move::Rotate { del: (a, b), add: (c, d) }));
            }
        }
    }
    if cfg.vertex_shift {
        for v in 0..n {
            for u in 0..n {
                if u == v || (x.is_some() && xv(u) < xv(v)) {
                    continue;
                }
                let w = shift_set(g, v, u);
                if w == 0 {
                    continue;
                }
                let s: f64 = iter_bits(w).map(xv).sum();
                out.push((2.0 * (xv(u) - xv(v)) * s, Move::Shift { from: v, to: u }));
            }
        }
    }
    out
}

fn climb(cfg: &SearchConfig, restart: usize, start: Graph) -> Result<(Graph, SpectralCertificate, Vec<TraceEntry>)> {
    let mut g = start;
    let mut cert = spectral_radius(&g, DEFAULT_TOL)?;
    let mut trace = vec![TraceEntry { restart, step: 0, rho: cert.rho }];
    for step in 1..=cfg.max_steps {
        let mut moves = candidate_moves(&g, Some(&cert.perron), cfg);
        // stable: equal gains keep generation order
        moves.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut next = None;
        for &(_, mv) in moves.iter().take(cfg.eval_budget) {
            let (h, origin) = apply_move(&g, mv);
            if !cfg.forbid.is_empty() && !free_of_all(&h, &cfg.forbid)? {
                continue;
            }
            let start: Vec<f64> = origin.iter().map(|o| o.map_or(0.0, |v| cert.perron[v])).collect();
            let c = spectral_radius_from(&h, Some(&start), DEFAULT_TOL)?;
            if c.rho > cert.rho + IMPROVEMENT {
                next = Some((h, c));
                break;
            }
        }
        match next {
            Some((h, c)) => {
                assert_eq!(h.size(), cfg.m, "moves preserve the edge count");
                g = h;
                cert = c;
                trace.push(TraceEntry { restart, step, rho: cert.rho });
            }
            None => break,
        }
    }
    Ok((g, cert, trace))
}

/// Random graph with `m` edges avoiding `forbid`: edges are added one at a
/// time, each to a fresh vertex with probability 1/2, skipping edges that
/// create a forbidden subgraph.
pub fn random_free_graph(m: usize, forbid: &[Pattern], rng: &mut ChaCha8Rng) -> Result<Option<Graph>> {
    'attempt: for _ in 0..START_TRIES {
        let mut g = Graph::from_edges(2, &[(0, 1)])?;
        if !free_of_all(&g, forbid)? {
            return Ok(None);
        }
        while g.size() < m {
            let mut placed = false;
            for _ in 0..50 {
                let n = g.order();
                let non_edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| !g.has_edge(u, v))
                    .collect();
                let fresh = n < 2 * m && (non_edges.is_empty() || rng.gen_bool(0.5));
                let h = if fresh {
                    let u = rng.gen_range(0..n);
                    let mut h = g.clone();
                    h.grow(1);
                    h.set_edge(u, n);
                    h
                } else if !non_edges.is_empty() {
                    let (u, v) = non_edges[rng.gen_range(0..non_edges.len())];
                    let mut h = g.clone();
                    h.set_edge(u, v);
                    h
                } else {
                    continue 'attempt;
                };
                if free_of_all(&h, forbid)? {
                    g = h;
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Ok(Some(g));
    }
    Ok(None)
}

/// A star, a book or a complete bipartite graph with `m` edges avoiding
/// `forbid`, in that order of preference.
pub fn feasible_start(m: usize, forbid: &[Pattern]) -> Result<Option<Graph>> {
    let mut specs = vec![FamilySpec::Star(m)];
    if m % 2 == 1 && m >= 3 {
        specs.push(FamilySpec::Book((m - 1) / 2));
    }
    for s in 2..=m {
        if s * s > m {
            break;
        }
        if m.is_multiple_of(s) {
            specs.push(FamilySpec::CompleteBipartite(s, m / s));
        }
    }
    for spec in specs {
        let g = build_family(&spec)?;
        if 2 * m >= g.order() && free_of_all(&g, forbid)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

struct Outcome {
    graph: Graph,
    form: CanonicalForm,
    cert: SpectralCertificate,
    start_rho: f64,
    trace: Vec<TraceEntry>,
}

fn run_restart(cfg: &SearchConfig, restart: usize) -> Result<Outcome> {
    let mut rng = restart_rng(cfg.seed, restart);
    let start = match random_free_graph(cfg.m, &cfg.forbid, &mut rng)? {
        Some(g) => g,
        None => feasible_start(cfg.m, &cfg.forbid)?.ok_or_else(|| Error::Infeasible {
            m: cfg.m,
            forbid: crate::patterns::describe_family(&cfg.forbid),
        })?,
    };
    let (g, _, trace) = climb(cfg, restart, start)?;
    let lab = canonical_labeling(&g);
    let canon = lab.canonical_graph(&g);
    let cert = spectral_radius(&canon, DEFAULT_TOL)?;
    Ok(Outcome {
        form: lab.form(&g),
        graph: canon,
        cert,
        start_rho: trace[0].rho,
        trace,
    })
}

/// Best graph over all restarts. Restarts run on the current rayon pool and
/// are merged in index order, so the result does not depend on threading.
pub fn maximize_rho(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let outcomes: Vec<Outcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r))
        .collect::<Result<_>>()?;
    let mut best: Option<&Outcome> = None;
    for o in &outcomes {
        best = match best {
            None => Some(o),
            Some(b) if o.cert.rho > b.cert.rho || (o.cert.rho == b.cert.rho && o.form < b.form) => Some(o),
            keep => keep,
        };
    }
    let best = best.expect("at least one restart");
    let restarts = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| RestartOutcome {
            restart: i,
            start_rho: o.start_rho,
            rho: o.cert.rho,
            steps: o.trace.len() - 1,
            form: o.form.clone(),
        })
        .collect();
    let trace = outcomes.iter().flat_map(|o| o.trace.iter().copied()).collect();
    Ok(SearchResult {
        best: best.graph.clone(),
        form: best.form.clone(),
        cert: best.cert.clone(),
        restarts,
        trace,
    })
}

/// Every graph one move away from `g` (all rotations and all shifts),
/// without isolated vertices.
pub fn neighborhood(g: &Graph, cfg: &SearchConfig) -> Vec<Graph> {
    candidate_moves(g, None, cfg)
        .into_iter()
        .map(|(_, mv)| apply_move(g, mv).0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};

    fn rho(g: &Graph) -> f64 {
        spectral_radius(g, DEFAULT_TOL).unwrap().rho
    }

    #[test]
    fn shift_on_p4() {
        let p4 = build_family(&Path(4)).unwrap();
        let h = vertex_shift(&p4, 2, 1).unwrap();
        assert_eq!(h.size(), 3);
        assert!(crate::family::is_star(&h));
        assert!((rho(&p4) - 1.618033988749895).abs() < 1e-12);
        assert!((rho(&h) - 3f64.sqrt()).abs() < 1e-12);
        assert!(vertex_shift(&p4, 1, 1).is_err());
        let p3 = build_family(&Path(3)).unwrap();
        let h = vertex_shift(&p3, 1, 2).unwrap();
        assert_eq!(h.size(), 2);
    }

    #[test]
    fn small_targets() {
        let mut cfg = SearchConfig::new(9, vec![Pattern::CycleLen(4)]);
        cfg.restarts = 4;
        let r = maximize_rho(&cfg).unwrap();
        // at m = 9 the star ties with S_7^3, S_8^2 and S_9^1, all C_4-free
        assert!((r.cert.rho - 3.0).abs() < 1e-9);
        assert!(crate::family::is_star(&r.best) || crate::family::is_snk(&r.best));

        let mut cfg = SearchConfig::new(9, vec![Pattern::CycleLen(5)]);
        cfg.restarts = 6;
        let r = maximize_rho(&cfg).unwrap();
        assert!((r.cert.rho - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(crate::family::is_book(&r.best));

        let mut cfg = SearchConfig::new(6, vec![Pattern::CycleLen(3)]);
        cfg.restarts = 6;
        let r = maximize_rho(&cfg).unwrap();
        assert!((r.cert.rho - 6f64.sqrt()).abs() < 1e-9);
        assert!(crate::family::is_complete_bipartite(&r.best));
    }

    #[test]
    fn deterministic() {
        let mut cfg = SearchConfig::new(10, vec![Pattern::CycleLen(4)]);
        cfg.restarts = 3;
        cfg.seed = 42;
        let a = maximize_rho(&cfg).unwrap();
        let b = maximize_rho(&cfg).unwrap();
        assert_eq!(a, b);
    }
}
