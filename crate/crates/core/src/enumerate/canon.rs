//! Canonical labelling by individualisation and refinement.
//!
//! Partitions are ordered lists of vertex bitsets. Refinement splits cells by
//! neighbour counts into a splitter cell until the partition is equitable. The
//! search tree individualises vertices of the first smallest non-singleton
//! cell; leaves are compared by their relabelled adjacency rows and the
//! largest one is canonical. Automorphisms found at equal leaves prune the
//! tree by orbits and by jumping back to the common ancestor.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, iter_bits, Graph};
use crate::graph6;

/// graph6 text of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Labeling {
    /// `lab[v]` is the canonical position of vertex `v`.
    pub lab: Vec<usize>,
    /// Generators of the automorphism group, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        g.permuted(&self.lab)
    }

    pub fn form(&self, g: &Graph) -> CanonicalForm {
        CanonicalForm(graph6::write(&self.canonical_graph(g)))
    }

    /// Orbit representative (smallest vertex) of every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        orbits_of(self.lab.len(), self.generators.iter())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form(g)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling { lab: vec![], generators: vec![] };
    }
    let all = g.vertex_mask();
    let mut cells = vec![all];
    refine(g, &mut cells, VecDeque::from([all]));
    let mut s = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    s.node(cells, &mut path);
    let best = s.best.expect("search reaches a leaf");
    Labeling {
        lab: best.lab,
        generators: s.generators,
    }
}

pub(crate) fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, gen[v]));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Split cells by neighbour counts into splitters until stable.
fn refine(g: &Graph, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let n = g.order();
    let rows = g.rows();
    let mut groups = [0u64; 65];
    while let Some(w) = queue.pop_front() {
        if cells.len() == n {
            return;
        }
        let mut i = 0;
        while i < cells.len() {
            let c = cells[i];
            if c & (c - 1) == 0 {
                i += 1;
                continue;
            }
            let mut used = 0u128;
            for v in iter_bits(c) {
                let k = (rows[v] & w).count_ones() as usize;
                groups[k] |= bit(v);
                used |= 1u128 << k;
            }
            if used & (used - 1) == 0 {
                groups[used.trailing_zeros() as usize] = 0;
                i += 1;
                continue;
            }
            let mut frags = Vec::with_capacity(used.count_ones() as usize);
            while used != 0 {
                let k = used.trailing_zeros() as usize;
                used &= used - 1;
                frags.push(groups[k]);
                groups[k] = 0;
            }
            let len = frags.len();
            queue.extend(frags.iter().copied());
            cells.splice(i..=i, frags);
            i += len;
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns the depth to resume at when an automorphism lets the search
    /// skip the rest of a subtree.
    fn node(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.g.order();
        if cells.len() == n {
            return self.leaf(&cells, path);
        }
        let depth = path.len();
        let (t, tc) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored = 0u64;
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for v in iter_bits(tc) {
            if explored != 0 {
                let stale = orbit_cache.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    let fixing = self
                        .generators
                        .iter()
                        .filter(|gen| path.iter().all(|&p| gen[p] == p));
                    orbit_cache = Some((self.generators.len(), orbits_of(n, fixing)));
                }
                let orb = &orbit_cache.as_ref().unwrap().1;
                if iter_bits(explored).any(|w| orb[w] == orb[v]) {
                    continue;
                }
            }
            explored |= bit(v);
            let mut child = cells.clone();
            child[t] = tc & !bit(v);
            child.insert(t, bit(v));
            refine(self.g, &mut child, VecDeque::from([bit(v)]));
            path.push(v);
            let r = self.node(child, path);
            path.pop();
            if let Some(j) = r {
                if j < depth {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let mut lab = vec![0; n];
        for (i, &c) in cells.iter().enumerate() {
            lab[c.trailing_zeros() as usize] = i;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            cert[lab[v]] = iter_bits(self.g.neighbors(v)).fold(0, |acc, w| acc | bit(lab[w]));
        }
        let leaf = Leaf { cert, lab, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let gen = automorphism(&leaf.lab, &first.lab);
            let back = common_prefix(&leaf.path, &first.path);
            self.generators.push(gen);
            return Some(back);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let gen = automorphism(&leaf.lab, &best.lab);
                let back = common_prefix(&leaf.path, &best.path);
                self.generators.push(gen);
                Some(back)
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

/// Two labellings with the same certificate differ by an automorphism:
/// `v` maps to the vertex carrying `v`'s label in `other`.
fn automorphism(lab: &[usize], other: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; other.len()];
    for (v, &l) in other.iter().enumerate() {
        inv[l] = v;
    }
    lab.iter().map(|&l| inv[l]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec::*};
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
        g.permuted(p) == *g
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let specs = [Cycle(4), Cycle(9), Complete(6), Star(7), Book(4), Snk(9, 2), CompleteBipartite(3, 4), Rk(3)];
        for spec in specs {
            let g = build_family(&spec).unwrap();
            let f = canonical_form(&g);
            let lab = canonical_labeling(&g);
            for gen in &lab.generators {
                assert!(is_automorphism(&g, gen));
            }
            for _ in 0..20 {
                let mut p: Vec<usize> = (0..g.order()).collect();
                p.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permuted(&p)), f, "{spec}");
            }
        }
        let p4 = build_family(&Path(4)).unwrap();
        let k13 = build_family(&Star(3)).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&k13));
    }

    #[test]
    fn random_graphs_up_to_40_vertices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let n = rng.gen_range(1..=40);
            let p = rng.gen_range(0.0..1.0);
            let mut edges = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
        }
    }

    #[test]
    fn group_orders() {
        // orbit sizes on highly symmetric graphs
        let k = build_family(&Complete(64)).unwrap();
        let lab = canonical_labeling(&k);
        assert!(lab.orbits().iter().all(|&r| r == 0));
        let star = build_family(&Star(30)).unwrap();
        let orb = canonical_labeling(&star).orbits();
        assert_eq!(orb[0], 0);
        assert!(orb[1..].iter().all(|&r| r == 1));
        let mut edges = vec![];
        for i in 0..32 {
            edges.push((2 * i, 2 * i + 1));
        }
        let matching = Graph::from_edges(64, &edges).unwrap();
        assert!(canonical_labeling(&matching).orbits().iter().all(|&r| r == 0));
    }
}
