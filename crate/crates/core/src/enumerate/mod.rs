//! One representative per isomorphism class of graphs with a given number
//! of edges, built one edge at a time by canonical augmentation.
//!
//! A child `G' = P + e` of a class representative `P` is kept when `e` is
//! equivalent under `Aut(G')` to the designated edge `e*` of `G'`, or
//! equivalently when `G' - e*` (without isolated vertices) is isomorphic to
//! `P`. The designated edge maximises the invariant `(deg, deg, triangles)`,
//! broken by canonical labels. Each class then has exactly one parent class,
//! and duplicates among siblings are removed by canonical form.

mod canon;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, Labeling};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patterns::{free_of_all, Pattern};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumConstraints {
    pub m: usize,
    pub no_isolated: bool,
    pub connected_only: bool,
    pub forbid: Vec<Pattern>,
    /// Defaults to `2m`.
    pub max_vertices: Option<usize>,
}

impl EnumConstraints {
    pub fn new(m: usize) -> Self {
        EnumConstraints {
            m,
            no_isolated: true,
            connected_only: false,
            forbid: Vec::new(),
            max_vertices: None,
        }
    }

    pub fn forbid(mut self, patterns: impl IntoIterator<Item = Pattern>) -> Self {
        self.forbid.extend(patterns);
        self
    }

    pub fn connected(mut self, yes: bool) -> Self {
        self.connected_only = yes;
        self
    }

    pub fn vertex_cap(&self) -> usize {
        self.max_vertices.unwrap_or(2 * self.m).min(crate::graph::MAX_VERTICES)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("edge count must be at least 1".into()));
        }
        if let Some(cap) = self.max_vertices {
            if cap > 2 * self.m {
                return Err(Error::InvalidArgument(format!(
                    "max_vertices {cap} exceeds 2m = {}",
                    2 * self.m
                )));
            }
        }
        if 2 * self.m > crate::graph::MAX_VERTICES && self.max_vertices.is_none() {
            return Err(Error::SizeLimit {
                what: "edge count (2m vertices must fit)",
                got: self.m,
                limit: crate::graph::MAX_VERTICES / 2,
            });
        }
        for p in &self.forbid {
            p.validate()?;
        }
        Ok(())
    }
}

/// One emitted class: its canonical form and the canonically labelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Emitted {
    pub form: CanonicalForm,
    pub graph: Graph,
}

/// A subtree of the generation tree rooted at a class with `depth` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkUnit {
    pub depth: usize,
    pub prefix: Graph,
}

struct Node {
    graph: Graph,
    form: CanonicalForm,
    generators: Vec<Vec<usize>>,
}

impl Node {
    fn new(graph: Graph) -> Node {
        let lab = canonical_labeling(&graph);
        let canon = lab.canonical_graph(&graph);
        // carry generators over to the canonical labelling
        let mut inv = vec![0; graph.order()];
        for (v, &l) in lab.lab.iter().enumerate() {
            inv[l] = v;
        }
        let generators = lab
            .generators
            .iter()
            .map(|gen| (0..graph.order()).map(|i| lab.lab[gen[inv[i]]]).collect())
            .collect();
        Node {
            form: CanonicalForm(crate::graph6::write(&canon)),
            graph: canon,
            generators,
        }
    }

    fn root() -> Node {
        Node {
            graph: Graph::empty(0).expect("empty graph"),
            form: CanonicalForm(crate::graph6::write(&Graph::empty(0).expect("empty graph"))),
            generators: vec![],
        }
    }
}

type Kappa = (u32, u32, u32);

fn kappa(g: &Graph, deg: &[u32], u: usize, v: usize) -> Kappa {
    let (a, b) = (deg[u], deg[v]);
    let tri = (g.neighbors(u) & g.neighbors(v)).count_ones();
    (a.max(b), a.min(b), tri)
}

/// Candidate edges of `p` up to `Aut(p)`, including edges to fresh vertices.
fn candidates(p: &Node, cap: usize) -> Vec<(usize, usize)> {
    let g = &p.graph;
    let n = g.order();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push_orbit = |a: usize, b: usize, out: &mut Vec<(usize, usize)>| {
        if !seen.insert((a, b)) {
            return;
        }
        out.push((a, b));
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            for gen in &p.generators {
                let img = |z: usize| if z < n { gen[z] } else { z };
                let (s, t) = (img(x), img(y));
                let e = (s.min(t), s.max(t));
                if seen.insert(e) {
                    stack.push(e);
                }
            }
        }
    };
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                push_orbit(u, v, &mut out);
            }
        }
    }
    if n < cap {
        for u in 0..n {
            push_orbit(u, n, &mut out);
        }
    }
    if n + 2 <= cap {
        out.push((n, n + 1));
    }
    out
}

fn children(c: &EnumConstraints, p: &Node) -> Vec<Node> {
    let cap = c.vertex_cap();
    let mut siblings = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in candidates(p, cap) {
        let mut g = p.graph.clone();
        if b >= g.order() {
            g.grow(b + 1 - g.order());
        }
        g.set_edge(a, b);
        let deg: Vec<u32> = (0..g.order()).map(|v| g.degree(v) as u32).collect();
        let k_new = kappa(&g, &deg, a, b);
        let edges = g.edges();
        let k_max = edges.iter().map(|&(u, v)| kappa(&g, &deg, u, v)).max().unwrap();
        if k_new < k_max {
            continue;
        }
        if !c.forbid.is_empty() && !free_of_all(&g, &c.forbid).expect("patterns validated") {
            continue;
        }
        let lab = canonical_labeling(&g);
        let star = edges
            .iter()
            .copied()
            .filter(|&(u, v)| kappa(&g, &deg, u, v) == k_max)
            .max_by_key(|&(u, v)| {
                let (x, y) = (lab.lab[u], lab.lab[v]);
                (x.max(y), x.min(y))
            })
            .unwrap();
        let accept = star == (a, b)
            || edge_orbit_contains(&lab.generators, star, (a, b))
            || canonical_form(&g.without_edge(star.0, star.1).unwrap().without_isolated()) == p.form;
        if !accept {
            continue;
        }
        let form = lab.form(&g);
        if siblings.insert(form) {
            out.push(Node::new(g));
        }
    }
    out
}

fn edge_orbit_contains(gens: &[Vec<usize>], from: (usize, usize), target: (usize, usize)) -> bool {
    if gens.is_empty() {
        return false;
    }
    let mut seen = HashSet::from([from]);
    let mut stack = vec![from];
    while let Some((x, y)) = stack.pop() {
        for gen in gens {
            let (s, t) = (gen[x], gen[y]);
            let e = (s.min(t), s.max(t));
            if e == target {
                return true;
            }
            if seen.insert(e) {
                stack.push(e);
            }
        }
    }
    false
}

fn dfs(c: &EnumConstraints, node: Node, depth: usize, out: &mut Vec<Emitted>) {
    if depth == c.m {
        emit(c, node, out);
        return;
    }
    for child in children(c, &node) {
        dfs(c, child, depth + 1, out);
    }
}

fn emit(c: &EnumConstraints, node: Node, out: &mut Vec<Emitted>) {
    if c.connected_only && !node.graph.is_connected() {
        return;
    }
    if !c.no_isolated {
        let cap = c.vertex_cap();
        let mut g = node.graph.clone();
        while g.order() < cap {
            g.grow(1);
            let lab = canonical_labeling(&g);
            out.push(Emitted {
                form: lab.form(&g),
                graph: lab.canonical_graph(&g),
            });
        }
    }
    out.push(Emitted {
        form: node.form,
        graph: node.graph,
    });
}

/// The classes with `depth` edges that root independent subtrees.
pub fn shard(c: &EnumConstraints, depth: usize) -> Result<Vec<WorkUnit>> {
    c.validate()?;
    if depth > c.m {
        return Err(Error::InvalidArgument(format!(
            "prefix depth {depth} exceeds edge count {}",
            c.m
        )));
    }
    let mut level = vec![Node::root()];
    for _ in 0..depth {
        let mut next: Vec<Node> = level.iter().flat_map(|p| children(c, p)).collect();
        next.sort_by(|a, b| a.form.cmp(&b.form));
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|n| WorkUnit { depth, prefix: n.graph })
        .collect())
}

/// All classes below one work unit, sorted by canonical form.
pub fn run_unit(c: &EnumConstraints, unit: &WorkUnit) -> Result<Vec<Emitted>> {
    c.validate()?;
    let node = if unit.depth == 0 { Node::root() } else { Node::new(unit.prefix.clone()) };
    let mut out = Vec::new();
    dfs(c, node, unit.depth, &mut out);
    out.sort_by(|a, b| a.form.cmp(&b.form));
    Ok(out)
}

fn default_depth(m: usize) -> usize {
    m.saturating_sub(1).min(4)
}

/// Every class satisfying `c`, sorted by canonical form. Subtrees run on the
/// current rayon pool; the result does not depend on the thread count.
pub fn enumerate_all(c: &EnumConstraints) -> Result<Vec<Emitted>> {
    let units = shard(c, default_depth(c.m))?;
    let parts: Vec<Vec<Emitted>> = units
        .par_iter()
        .map(|u| run_unit(c, u))
        .collect::<Result<_>>()?;
    let mut all: Vec<Emitted> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.form.cmp(&b.form));
    Ok(all)
}

/// Visit every class in canonical-form order; returns the count.
pub fn enumerate_by_edges(c: &EnumConstraints, mut visitor: impl FnMut(&Emitted)) -> Result<usize> {
    let all = enumerate_all(c)?;
    for e in &all {
        visitor(e);
    }
    Ok(all.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let expect = [1, 2, 5, 11, 26, 68, 177];
        for (i, &n) in expect.iter().enumerate() {
            let m = i + 1;
            let got = enumerate_all(&EnumConstraints::new(m)).unwrap();
            assert_eq!(got.len(), n, "m = {m}");
        }
    }

    #[test]
    fn shards_partition_output() {
        let c = EnumConstraints::new(6);
        assert_eq!(shard(&c, 0).unwrap().len(), 1);
        let whole = enumerate_all(&c).unwrap();
        for d in 0..=3 {
            let mut union: Vec<Emitted> = shard(&c, d)
                .unwrap()
                .iter()
                .flat_map(|u| run_unit(&c, u).unwrap())
                .collect();
            union.sort_by(|a, b| a.form.cmp(&b.form));
            assert_eq!(union, whole);
        }
    }
}
