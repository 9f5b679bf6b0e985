//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! library's canonical labelling or pattern code.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Small graph as an adjacency matrix.
#[derive(Clone, Debug)]
pub struct Small {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Small {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Small {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Small { n, adj }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Upper triangle under `perm`, packed row-major into bits.
    fn code(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[perm[i]][perm[j]] {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Minimum code over all `n!` relabellings.
    pub fn brute_canonical(&self) -> (usize, u64) {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = u64::MAX;
        permutations(&mut perm, 0, &mut |p| best = best.min(self.code(p)));
        (self.n, best)
    }

    /// Some `a b c d` with `ab, bc, cd, da` edges.
    pub fn has_c4(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                        if distinct && self.adj[a][b] && self.adj[b][c] && self.adj[c][d] && self.adj[d][a] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    pub fn has_c3(&self) -> bool {
        let n = self.n;
        (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| self.adj[a][b] && self.adj[b][c] && self.adj[a][c])))
    }
}

pub fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Connected graphs by edge count, `classes[j]` holding one representative per
/// isomorphism class with `j` edges, for `j <= max_edges`.
pub fn connected_classes(max_edges: usize) -> Vec<Vec<Small>> {
    let mut classes: Vec<Vec<Small>> = vec![vec![]; max_edges + 1];
    classes[0].push(Small::from_edges(1, &[]));
    for j in 0..max_edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &classes[j] {
            let mut grown = Vec::new();
            for u in 0..g.n {
                for v in u + 1..g.n {
                    if !g.adj[u][v] {
                        let mut e = g.edges();
                        e.push((u, v));
                        grown.push(Small::from_edges(g.n, &e));
                    }
                }
                let mut e = g.edges();
                e.push((u, g.n));
                grown.push(Small::from_edges(g.n + 1, &e));
            }
            for h in grown {
                if seen.insert(h.brute_canonical()) {
                    next.push(h);
                }
            }
        }
        classes[j + 1] = next;
    }
    classes
}

/// Multisets of size `r` drawn from `t` types.
fn multichoose(t: u64, r: u64) -> u64 {
    if r == 0 {
        return 1;
    }
    if t == 0 {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (t + i) / (i + 1))
}

/// Number of classes with `m` edges and no isolated vertices whose
/// components all satisfy `keep` (a property closed under disjoint union).
pub fn count_by_components(classes: &[Vec<Small>], m: usize, keep: impl Fn(&Small) -> bool) -> u64 {
    let types: Vec<u64> = classes.iter().map(|c| c.iter().filter(|g| keep(g)).count() as u64).collect();
    // multisets of component types, edge count j >= 1 contributing j per copy
    let mut ways = vec![0u64; m + 1];
    ways[0] = 1;
    for j in 1..=m {
        let mut next = vec![0u64; m + 1];
        for (total, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let mut copies = 0;
            while total + copies * j <= m {
                next[total + copies * j] += w * multichoose(types[j], copies as u64);
                copies += 1;
            }
        }
        ways = next;
    }
    ways[m]
}
