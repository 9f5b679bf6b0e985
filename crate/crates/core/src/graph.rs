//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitset per vertex. A `Graph` is
//! immutable once built; edits go through [`Graph::with_edge`] and friends,
//! which return a new value.

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// Bitset of vertices.
pub type VertexMask = u64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate the set bits of a mask in increasing order.
#[inline]
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                got: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
            m: 0,
        })
    }

    /// Build a graph from an edge list. Loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Construction(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Construction(format!("repeated edge {u}-{v}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Build from adjacency rows; rows must be symmetric with a zero diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                got: n,
                limit: MAX_VERTICES,
            });
        }
        let full = full_mask(n);
        let mut degree_sum = 0usize;
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::Construction(format!(
                    "row {u} references a vertex >= {n}"
                )));
            }
            if row & bit(u) != 0 {
                return Err(Error::Construction(format!("loop at vertex {u}")));
            }
            for v in iter_bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::Construction(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
            degree_sum += row.count_ones() as usize;
        }
        Ok(Graph {
            n,
            rows,
            m: degree_sum / 2,
        })
    }

    /// Rows are trusted to be symmetric with zero diagonal.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        let m = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        debug_assert!(rows.len() <= MAX_VERTICES);
        Graph {
            n: rows.len(),
            rows,
            m,
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.rows[u] & bit(v) == 0 {
            self.rows[u] |= bit(v);
            self.rows[v] |= bit(u);
            self.m += 1;
        }
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        if self.rows[u] & bit(v) != 0 {
            self.rows[u] &= !bit(v);
            self.rows[v] &= !bit(u);
            self.m -= 1;
        }
    }

    /// Append `k` isolated vertices.
    pub(crate) fn grow(&mut self, k: usize) {
        self.n += k;
        self.rows.resize(self.n, 0);
        debug_assert!(self.n <= MAX_VERTICES);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `e(G)`.
    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    /// Neighbourhood `N(v)` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in iter_bits(self.rows[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_isolated(&self) -> bool {
        self.rows.contains(&0)
    }

    /// Copy with edge `uv` added. Fails on loops, existing edges, bad ids.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || self.has_edge(u, v) {
            return Err(Error::InvalidArgument(format!("cannot add edge {u}-{v}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Copy with edge `uv` removed (vertex set unchanged).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::InvalidArgument(format!("no edge {u}-{v}")));
        }
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    /// Induced subgraph on the vertices of `mask`, relabelled in increasing
    /// order. Returns the subgraph and the old vertex id of each new vertex.
    pub fn induced(&self, mask: VertexMask) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = iter_bits(mask & self.vertex_mask()).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let rows = keep
            .iter()
            .map(|&v| {
                iter_bits(self.rows[v] & mask).fold(0u64, |acc, w| acc | bit(index[w]))
            })
            .collect();
        (Graph::from_rows_unchecked(rows), keep)
    }

    /// `G - v`.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced(self.vertex_mask() & !bit(v)).0)
    }

    /// Drop isolated vertices, keeping the relative order of the others.
    pub fn without_isolated(&self) -> Graph {
        let mask = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0u64, |acc, (v, _)| acc | bit(v));
        if mask == self.vertex_mask() {
            self.clone()
        } else {
            self.induced(mask).0
        }
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            rows[perm[v]] = iter_bits(self.rows[v]).fold(0u64, |acc, w| acc | bit(perm[w]));
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    pub(crate) fn mask_of(&self, vertices: &[usize]) -> Result<VertexMask> {
        let mut mask = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= bit(v);
        }
        Ok(mask)
    }

    /// `e(S, T)`: edges with one end in `S` and the other in `T`. Edges inside
    /// `S ∩ T` count once, so `e(S, S)` is the number of edges of `G[S]`.
    pub fn edges_between(&self, s: &[usize], t: &[usize]) -> Result<usize> {
        let sm = self.mask_of(s)?;
        let tm = self.mask_of(t)?;
        Ok(self.edges_between_masks(sm, tm))
    }

    pub fn edges_between_masks(&self, s: VertexMask, t: VertexMask) -> usize {
        let mut count = 0;
        for u in iter_bits(s | t) {
            for v in iter_bits(self.rows[u] & !full_mask(u + 1)) {
                let hit = (s & bit(u) != 0 && t & bit(v) != 0)
                    || (s & bit(v) != 0 && t & bit(u) != 0);
                if hit {
                    count += 1;
                }
            }
        }
        count
    }

    /// `e(S)`: number of edges inside `S`.
    pub fn edges_within(&self, s: VertexMask) -> usize {
        iter_bits(s)
            .map(|u| (self.rows[u] & s).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexMask> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.rows[u] & self.rows[v])
    }

    /// `N^2(v)`: vertices at distance exactly two.
    pub fn second_neighborhood(&self, v: usize) -> Result<VertexMask> {
        self.check_vertex(v)?;
        let closed = self.rows[v] | bit(v);
        let reach = iter_bits(self.rows[v]).fold(0u64, |acc, w| acc | self.rows[w]);
        Ok(reach & !closed)
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexMask> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.component_of(s);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, s: usize) -> VertexMask {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let next = iter_bits(frontier).fold(0u64, |acc, w| acc | self.rows[w]) & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0) == self.vertex_mask()
    }

    /// Two-colouring if the graph is bipartite: mask of one colour class.
    pub fn bipartition(&self) -> Option<VertexMask> {
        let mut color = [u8::MAX; MAX_VERTICES];
        let mut side = 0u64;
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in iter_bits(self.rows[u]) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        for v in 0..self.n {
            if color[v] == 0 {
                side |= bit(v);
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Cut vertices via the DFS low-link method.
    pub fn cut_vertices(&self) -> VertexMask {
        struct State<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            cuts: u64,
        }
        fn dfs(st: &mut State<'_>, u: usize, parent: Option<usize>) {
            st.time += 1;
            st.disc[u] = st.time;
            st.low[u] = st.time;
            let mut children = 0;
            for w in iter_bits(st.g.rows[u]) {
                if st.disc[w] == 0 {
                    children += 1;
                    dfs(st, w, Some(u));
                    st.low[u] = st.low[u].min(st.low[w]);
                    if parent.is_some() && st.low[w] >= st.disc[u] {
                        st.cuts |= bit(u);
                    }
                } else if Some(w) != parent {
                    st.low[u] = st.low[u].min(st.disc[w]);
                }
            }
            if parent.is_none() && children > 1 {
                st.cuts |= bit(u);
            }
        }
        let mut st = State {
            g: self,
            disc: vec![0; self.n],
            low: vec![0; self.n],
            time: 0,
            cuts: 0,
        };
        for s in 0..self.n {
            if st.disc[s] == 0 {
                dfs(&mut st, s, None);
            }
        }
        st.cuts
    }

    /// A graph with at least three vertices that is connected and has no cut
    /// vertex; `K_2` also counts as 2-connected for block purposes.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 2 && self.is_connected() && self.cut_vertices() == 0
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Bundle of basic statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub degrees: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    pub is_connected: bool,
    pub is_bipartite: bool,
}

pub fn stats(g: &Graph) -> Stats {
    Stats {
        degrees: g.degrees(),
        components: g.components().into_iter().map(|c| iter_bits(c).collect()).collect(),
        cut_vertices: iter_bits(g.cut_vertices()).collect(),
        is_connected: g.is_connected(),
        is_bipartite: g.is_bipartite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut edges = vec![];
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn basic_counts() {
        let g = k(4);
        assert_eq!(g.size(), 6);
        assert_eq!(g.degrees(), vec![3; 4]);
        assert_eq!(g.cut_vertices(), 0);
        for u in 0..4 {
            for v in u + 1..4 {
                assert_eq!(g.common_neighbors(u, v).unwrap().count_ones(), 2);
            }
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn edge_counts_between_sets() {
        // path 0-1-2-3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.edges_between(&[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap(), 3);
        assert_eq!(g.edges_between(&[0, 1], &[2, 3]).unwrap(), 1);
        assert_eq!(g.edges_between(&[1, 2], &[0, 1, 2]).unwrap(), 2);
        assert!(g.edges_between(&[4], &[0]).is_err());
    }

    #[test]
    fn second_neighborhood_excludes_closed_neighborhood() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.second_neighborhood(0).unwrap(), bit(3));
        assert_eq!(g.second_neighborhood(3).unwrap(), bit(0) | bit(1));
    }

    #[test]
    fn star_cut_vertex_and_bipartite() {
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(star.cut_vertices(), bit(0));
        assert!(star.is_bipartite());
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.cut_vertices(), 0);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(g.components().len(), 3);
        assert!(!g.is_connected());
        assert!(!g.is_bipartite());
        assert!(g.has_isolated());
        let h = g.without_isolated();
        assert_eq!(h.order(), 5);
        assert_eq!(h.size(), 4);
    }

    #[test]
    fn cut_vertices_match_deletion_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=10);
            let mut edges = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let comps = g.components().len();
            let mut oracle = 0u64;
            for v in 0..n {
                let h = g.remove_vertex(v).unwrap();
                // removing an isolated vertex drops a component without cutting anything
                let base = if g.degree(v) == 0 { comps - 1 } else { comps };
                if h.components().len() > base {
                    oracle |= bit(v);
                }
            }
            assert_eq!(g.cut_vertices(), oracle, "{g:?}");
        }
    }
}
