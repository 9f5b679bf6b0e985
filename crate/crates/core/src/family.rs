//! Named graph families and recognisers.
//!
//! Constructors label hub or dominating vertices first so that tests can
//! refer to vertices by index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, iter_bits, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// `K_{1,m}`.
    Star(usize),
    /// `S_n^k`: `K_{1,n-1}` plus `k` disjoint edges among the leaves.
    Snk(usize, usize),
    /// `S_{n,k}`: `K_k` joined to `n-k` independent vertices.
    CompleteSplit(usize, usize),
    CompleteBipartite(usize, usize),
    /// `B_r = S_{r+2,2}`: `r` triangles sharing an edge.
    Book(usize),
    /// `k` copies of `K_4` sharing one vertex.
    Rk(usize),
    /// `H_{t,s}∘R_k`: the dominating vertex of `R_k` joined to the `T` side of
    /// a bipartite graph between `T` (size `t`) and `S` (size `s`). Edges are
    /// `(i, j)` with `i < t` indexing `T` and `j < s` indexing `S`.
    HtsRk {
        t: usize,
        s: usize,
        k: usize,
        edges: Vec<(usize, usize)>,
    },
    /// `K_{1,r}•R_k`: the dominating vertex of `R_k` joined to every vertex
    /// of a star `K_{1,r}`.
    K1rBulletRk(usize, usize),
    Cycle(usize),
    /// `C_t^+`: `C_t` and `C_3` glued along an edge.
    CtPlus(usize),
    /// Path on `v` vertices.
    Path(usize),
    Complete(usize),
}

fn domain(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction(format!("parameter domain violated: {what}")))
    }
}

impl FamilySpec {
    /// Number of edges implied by the definition.
    pub fn edge_count(&self) -> usize {
        match self {
            FamilySpec::Star(m) => *m,
            FamilySpec::Snk(n, k) => n - 1 + k,
            FamilySpec::CompleteSplit(n, k) => k * (n - k) + k * (k - 1) / 2,
            FamilySpec::CompleteBipartite(s, t) => s * t,
            FamilySpec::Book(r) => 2 * r + 1,
            FamilySpec::Rk(k) => 6 * k,
            FamilySpec::HtsRk { t, k, edges, .. } => 6 * k + t + edges.len(),
            FamilySpec::K1rBulletRk(r, k) => 6 * k + 2 * r + 1,
            FamilySpec::Cycle(t) => *t,
            FamilySpec::CtPlus(t) => t + 2,
            FamilySpec::Path(v) => v.saturating_sub(1),
            FamilySpec::Complete(n) => n * n.saturating_sub(1) / 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Star(m) => domain(*m >= 1, "Star(m) needs m >= 1"),
            FamilySpec::Snk(n, k) => {
                domain(*n >= 2, "Snk(n,k) needs n >= 2")?;
                domain(2 * k < *n, "Snk(n,k) needs 2k <= n-1")
            }
            FamilySpec::CompleteSplit(n, k) => {
                domain(*k >= 1 && k < n, "CompleteSplit(n,k) needs 1 <= k < n")
            }
            FamilySpec::CompleteBipartite(s, t) => {
                domain(*s >= 1 && *t >= 1, "CompleteBipartite(s,t) needs s,t >= 1")
            }
            FamilySpec::Book(r) => domain(*r >= 1, "Book(r) needs r >= 1"),
            FamilySpec::Rk(k) => domain(*k >= 1, "Rk(k) needs k >= 1"),
            FamilySpec::HtsRk { t, s, k, edges } => {
                domain(*k >= 1, "HtsRk needs k >= 1")?;
                let mut seen = std::collections::HashSet::new();
                for &(i, j) in edges {
                    domain(i < *t && j < *s, "HtsRk edge list must be a subset of T x S")?;
                    domain(seen.insert((i, j)), "HtsRk edge list has a repeated edge")?;
                }
                Ok(())
            }
            FamilySpec::K1rBulletRk(r, k) => {
                domain(*r >= 1 && *k >= 1, "K1rBulletRk(r,k) needs r,k >= 1")
            }
            FamilySpec::Cycle(t) => domain(*t >= 3, "Cycle(t) needs t >= 3"),
            FamilySpec::CtPlus(t) => domain(*t >= 3, "CtPlus(t) needs t >= 3"),
            FamilySpec::Path(v) => domain(*v >= 2, "Path(v) needs v >= 2"),
            FamilySpec::Complete(n) => domain(*n >= 2, "Complete(n) needs n >= 2"),
        }
    }

    /// Vertex count implied by the definition.
    pub fn vertex_count(&self) -> usize {
        match self {
            FamilySpec::Star(m) => m + 1,
            FamilySpec::Snk(n, _) | FamilySpec::CompleteSplit(n, _) => *n,
            FamilySpec::CompleteBipartite(s, t) => s + t,
            FamilySpec::Book(r) => r + 2,
            FamilySpec::Rk(k) => 3 * k + 1,
            FamilySpec::HtsRk { t, s, k, .. } => 1 + 3 * k + t + s,
            FamilySpec::K1rBulletRk(r, k) => 1 + 3 * k + 1 + r,
            FamilySpec::Cycle(t) => *t,
            FamilySpec::CtPlus(t) => t + 1,
            FamilySpec::Path(v) => *v,
            FamilySpec::Complete(n) => *n,
        }
    }
}

/// Edges of `R_k` with hub 0 and blocks `{0, 3i+1, 3i+2, 3i+3}`.
fn rk_edges(k: usize, edges: &mut Vec<(usize, usize)>) {
    for i in 0..k {
        let a = 3 * i + 1;
        let block = [0, a, a + 1, a + 2];
        for x in 0..4 {
            for y in x + 1..4 {
                edges.push((block[x], block[y]));
            }
        }
    }
}

/// Build a member of a named family.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut edges = Vec::with_capacity(spec.edge_count());
    match spec {
        FamilySpec::Star(m) => edges.extend((1..=*m).map(|v| (0, v))),
        FamilySpec::Snk(n, k) => {
            edges.extend((1..*n).map(|v| (0, v)));
            edges.extend((0..*k).map(|i| (2 * i + 1, 2 * i + 2)));
        }
        FamilySpec::CompleteSplit(n, k) => {
            for u in 0..*k {
                for v in u + 1..*n {
                    edges.push((u, v));
                }
            }
        }
        FamilySpec::CompleteBipartite(s, t) => {
            for u in 0..*s {
                for v in *s..s + t {
                    edges.push((u, v));
                }
            }
        }
        FamilySpec::Book(r) => return build_family(&FamilySpec::CompleteSplit(r + 2, 2)),
        FamilySpec::Rk(k) => rk_edges(*k, &mut edges),
        FamilySpec::HtsRk { t, k, edges: h, .. } => {
            rk_edges(*k, &mut edges);
            let t0 = 3 * k + 1;
            let s0 = t0 + t;
            edges.extend((0..*t).map(|i| (0, t0 + i)));
            edges.extend(h.iter().map(|&(i, j)| (t0 + i, s0 + j)));
        }
        FamilySpec::K1rBulletRk(r, k) => {
            rk_edges(*k, &mut edges);
            let c = 3 * k + 1;
            edges.push((0, c));
            for i in 0..*r {
                edges.push((0, c + 1 + i));
                edges.push((c, c + 1 + i));
            }
        }
        FamilySpec::Cycle(t) => edges.extend((0..*t).map(|i| (i, (i + 1) % t))),
        FamilySpec::CtPlus(t) => {
            edges.extend((0..*t).map(|i| (i, (i + 1) % t)));
            edges.push((0, *t));
            edges.push((1, *t));
        }
        FamilySpec::Path(v) => edges.extend((1..*v).map(|i| (i - 1, i))),
        FamilySpec::Complete(n) => {
            for u in 0..*n {
                for v in u + 1..*n {
                    edges.push((u, v));
                }
            }
        }
    }
    let g = Graph::from_edges(n, &edges)?;
    debug_assert_eq!(g.size(), spec.edge_count());
    Ok(g)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Star(m) => write!(f, "star:{m}"),
            FamilySpec::Snk(n, k) => write!(f, "S:{n}:{k}"),
            FamilySpec::CompleteSplit(n, k) => write!(f, "split:{n}:{k}"),
            FamilySpec::CompleteBipartite(s, t) => write!(f, "K:{s}:{t}"),
            FamilySpec::Book(r) => write!(f, "book:{r}"),
            FamilySpec::Rk(k) => write!(f, "R:{k}"),
            FamilySpec::HtsRk { t, s, k, edges } => {
                write!(f, "H:{t}:{s}:{k}")?;
                if !edges.is_empty() {
                    let list: Vec<String> = edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
                    write!(f, ":{}", list.join(","))?;
                }
                Ok(())
            }
            FamilySpec::K1rBulletRk(r, k) => write!(f, "KR:{r}:{k}"),
            FamilySpec::Cycle(t) => write!(f, "C:{t}"),
            FamilySpec::CtPlus(t) => write!(f, "C+:{t}"),
            FamilySpec::Path(v) => write!(f, "P:{v}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Grammar: `tag:int[:int...]` with tags `star`, `S`, `split`, `K`,
    /// `book`, `R`, `H` (optional fourth field `i-j,i-j,...`), `KR`, `C`,
    /// `C+`, `P`, `complete`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse family spec {s:?}"));
        let mut parts = s.split(':');
        let tag = parts.next().ok_or_else(bad)?;
        let rest: Vec<&str> = parts.collect();
        let ints = |count: usize| -> Result<Vec<usize>> {
            if rest.len() < count {
                return Err(bad());
            }
            rest[..count]
                .iter()
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let exact = |count: usize| -> Result<Vec<usize>> {
            if rest.len() != count {
                return Err(bad());
            }
            ints(count)
        };
        Ok(match tag {
            "star" => FamilySpec::Star(exact(1)?[0]),
            "S" => {
                let v = exact(2)?;
                FamilySpec::Snk(v[0], v[1])
            }
            "split" => {
                let v = exact(2)?;
                FamilySpec::CompleteSplit(v[0], v[1])
            }
            "K" => {
                let v = exact(2)?;
                FamilySpec::CompleteBipartite(v[0], v[1])
            }
            "book" => FamilySpec::Book(exact(1)?[0]),
            "R" => FamilySpec::Rk(exact(1)?[0]),
            "H" => {
                let v = ints(3)?;
                let edges = match rest.len() {
                    3 => vec![],
                    4 if rest[3].is_empty() => vec![],
                    4 => rest[3]
                        .split(',')
                        .map(|e| {
                            let (a, b) = e.split_once('-').ok_or_else(bad)?;
                            Ok((
                                a.parse::<usize>().map_err(|_| bad())?,
                                b.parse::<usize>().map_err(|_| bad())?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    _ => return Err(bad()),
                };
                FamilySpec::HtsRk {
                    t: v[0],
                    s: v[1],
                    k: v[2],
                    edges,
                }
            }
            "KR" => {
                let v = exact(2)?;
                FamilySpec::K1rBulletRk(v[0], v[1])
            }
            "C" => FamilySpec::Cycle(exact(1)?[0]),
            "C+" => FamilySpec::CtPlus(exact(1)?[0]),
            "P" => FamilySpec::Path(exact(1)?[0]),
            "complete" => FamilySpec::Complete(exact(1)?[0]),
            _ => return Err(bad()),
        })
    }
}

// ---------------------------------------------------------------------------
// Recognisers (up to isomorphism)
// ---------------------------------------------------------------------------

fn universal_vertices(g: &Graph) -> u64 {
    let n = g.order();
    (0..n)
        .filter(|&v| g.degree(v) + 1 == n)
        .fold(0u64, |acc, v| acc | bit(v))
}

/// `K_{1,m}` with `m >= 1`.
pub fn is_star(g: &Graph) -> bool {
    let n = g.order();
    n >= 2 && g.size() == n - 1 && universal_vertices(g) != 0
}

/// Part sizes `(s, t)` with `s <= t` when `g` is complete bipartite without
/// isolated vertices.
pub fn complete_bipartite_parts(g: &Graph) -> Option<(usize, usize)> {
    if g.order() < 2 || g.has_isolated() || !g.is_connected() {
        return None;
    }
    let side = g.bipartition()?;
    let s = side.count_ones() as usize;
    let t = g.order() - s;
    if s * t == g.size() {
        Some((s.min(t), s.max(t)))
    } else {
        None
    }
}

pub fn is_complete_bipartite(g: &Graph) -> bool {
    complete_bipartite_parts(g).is_some()
}

/// `S_{n,k}` with `n = g.order()`.
pub fn is_complete_split(g: &Graph, k: usize) -> bool {
    let n = g.order();
    k >= 1
        && n > k
        && (universal_vertices(g).count_ones() as usize) >= k
        && g.size() == k * (n - k) + k * (k - 1) / 2
}

/// Books `B_r = S_{r+2,2}` with at least two pages.
pub fn is_book(g: &Graph) -> bool {
    g.order() >= 4 && is_complete_split(g, 2)
}

/// Number of pages when `g` is a book.
pub fn book_pages(g: &Graph) -> Option<usize> {
    is_book(g).then(|| g.order() - 2)
}

/// `(n, k)` when `g ≅ S_n^k`. For `K_3` this reports `(3, 1)`.
pub fn snk_params(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    for c in iter_bits(universal_vertices(g)) {
        let rest = g.vertex_mask() & !bit(c);
        let ok = iter_bits(rest).all(|v| (g.neighbors(v) & rest).count_ones() <= 1);
        if ok {
            let k = g.edges_within(rest);
            return Some((n, k));
        }
    }
    None
}

pub fn is_snk(g: &Graph) -> bool {
    snk_params(g).is_some()
}

/// Part sizes (sorted) when `g` is a complete multipartite graph: non-adjacency
/// is an equivalence relation on the vertex set.
pub fn complete_multipartite_parts(g: &Graph) -> Option<Vec<usize>> {
    if g.order() == 0 || g.has_isolated() {
        return None;
    }
    let n = g.order();
    let mut seen = 0u64;
    let mut parts = Vec::new();
    for v in 0..n {
        if seen & bit(v) != 0 {
            continue;
        }
        let class = g.vertex_mask() & !g.neighbors(v);
        for w in iter_bits(class) {
            if g.vertex_mask() & !g.neighbors(w) != class {
                return None;
            }
        }
        seen |= class;
        parts.push(class.count_ones() as usize);
    }
    parts.sort_unstable();
    Some(parts)
}

/// Complete `r`-partite graph with all parts of equal size.
pub fn is_complete_regular_multipartite(g: &Graph, r: usize) -> bool {
    match complete_multipartite_parts(g) {
        Some(parts) => parts.len() == r && parts.iter().all(|&p| p == parts[0]),
        None => false,
    }
}

/// Short human label of the named family `g` belongs to, if any.
pub fn describe(g: &Graph) -> Option<String> {
    if is_star(g) {
        return Some(format!("K1,{}", g.size()));
    }
    if let Some((s, t)) = complete_bipartite_parts(g) {
        return Some(format!("K{s},{t}"));
    }
    if let Some(r) = book_pages(g) {
        return Some(format!("B{r}=S{},2", r + 2));
    }
    if let Some((n, k)) = snk_params(g) {
        return Some(format!("S{n}^{k}"));
    }
    if let Some(parts) = complete_multipartite_parts(g) {
        if parts.len() >= 3 {
            let list: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            return Some(format!("K{}", list.join(",")));
        }
    }
    for k in 3..g.order() {
        if is_complete_split(g, k) {
            return Some(format!("S{},{k}", g.order()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_definitions() {
        let cases = [
            (FamilySpec::Star(9), 10, 9),
            (FamilySpec::Snk(7, 3), 7, 9),
            (FamilySpec::CtPlus(4), 5, 6),
            (FamilySpec::Book(3), 5, 7),
            (FamilySpec::Rk(2), 7, 12),
            (FamilySpec::K1rBulletRk(2, 1), 7, 11),
            (
                FamilySpec::HtsRk {
                    t: 1,
                    s: 0,
                    k: 1,
                    edges: vec![],
                },
                5,
                7,
            ),
        ];
        for (spec, n, m) in cases {
            let g = build_family(&spec).unwrap();
            assert_eq!((g.order(), g.size()), (n, m), "{spec}");
        }
    }

    #[test]
    fn star_has_center_first() {
        let g = build_family(&FamilySpec::Star(9)).unwrap();
        assert_eq!(g.degree(0), 9);
        assert!(is_star(&g));
    }

    #[test]
    fn hts_rk_pendant_on_k4() {
        let g = build_family(&FamilySpec::HtsRk {
            t: 1,
            s: 0,
            k: 1,
            edges: vec![],
        })
        .unwrap();
        assert_eq!(g.degrees(), vec![4, 3, 3, 3, 1]);
    }

    #[test]
    fn ct_plus_shape() {
        let g = build_family(&FamilySpec::CtPlus(4)).unwrap();
        assert_eq!(g.neighbors(4), bit(0) | bit(1));
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn domain_errors_name_constraint() {
        let err = build_family(&FamilySpec::Snk(6, 3)).unwrap_err();
        assert!(err.to_string().contains("2k <= n-1"));
        assert!(build_family(&FamilySpec::HtsRk {
            t: 1,
            s: 1,
            k: 1,
            edges: vec![(1, 0)]
        })
        .is_err());
        assert!(build_family(&FamilySpec::Cycle(2)).is_err());
    }

    #[test]
    fn recognisers() {
        let k33 = build_family(&FamilySpec::CompleteBipartite(3, 3)).unwrap();
        assert!(is_complete_bipartite(&k33));
        assert!(!is_star(&k33));
        let b4 = build_family(&FamilySpec::Book(4)).unwrap();
        assert!(is_book(&b4));
        assert!(is_complete_split(&b4, 2));
        let s91 = build_family(&FamilySpec::Snk(9, 1)).unwrap();
        assert_eq!(snk_params(&s91), Some((9, 1)));
        let k4 = build_family(&FamilySpec::Complete(4)).unwrap();
        assert!(!is_book(&k4));
        assert!(is_complete_regular_multipartite(&k4, 4));
        let k222 = Graph::from_edges(
            6,
            &[
                (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (1, 3), (1, 4), (1, 5),
                (2, 4), (2, 5), (3, 4), (3, 5),
            ],
        )
        .unwrap();
        assert!(is_complete_regular_multipartite(&k222, 3));
        assert_eq!(describe(&k222).unwrap(), "K2,2,2");
    }

    #[test]
    fn recognisers_work_up_to_relabelling() {
        let g = build_family(&FamilySpec::Snk(8, 2)).unwrap();
        let perm = [5, 3, 7, 0, 1, 6, 2, 4];
        let h = g.permuted(&perm);
        assert_eq!(snk_params(&h), Some((8, 2)));
        let b = build_family(&FamilySpec::Book(5)).unwrap().permuted(&[6, 0, 5, 1, 4, 2, 3]);
        assert_eq!(book_pages(&b), Some(5));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["star:9", "S:7:3", "split:6:2", "K:3:4", "book:3", "R:2", "H:2:2:1:0-0,1-1", "H:1:0:1", "KR:2:1", "C:5", "C+:4", "P:7", "complete:5"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("S:7".parse::<FamilySpec>().is_err());
        assert!("Q:1".parse::<FamilySpec>().is_err());
    }
}
