//! Forbidden-subgraph detection.
//!
//! Containment is ordinary (not induced) subgraph containment. Every named
//! pattern has a dedicated search; `Explicit` patterns of up to eight
//! vertices go through a generic backtracking monomorphism search, which also
//! serves as the cross-check for the dedicated searches.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{build_family, FamilySpec};
use crate::graph::{bit, full_mask, iter_bits, Graph, VertexMask};
use crate::graph6;

/// Largest explicit pattern accepted by the generic matcher.
pub const MAX_EXPLICIT_VERTICES: usize = 8;

/// Largest vertex set accepted by [`longest_path_in`].
pub const MAX_PATH_SET: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    CycleLen(usize),
    CtPlus(usize),
    /// `K_{2,t}`, stored by its larger side `t` (`K_{2,r+1}`).
    K2r(usize),
    /// `K_{s,t}` with `s <= t` and `s != 2`; use [`Pattern::complete_bipartite`].
    CompleteBipartite(usize, usize),
    Book(usize),
    Clique(usize),
    PathVertices(usize),
    Explicit(Graph),
}

impl Pattern {
    /// Normalising constructor: sides are ordered and `K_{2,t}` maps to `K2r`.
    pub fn complete_bipartite(s: usize, t: usize) -> Pattern {
        let (s, t) = (s.min(t), s.max(t));
        if s == 2 {
            Pattern::K2r(t)
        } else {
            Pattern::CompleteBipartite(s, t)
        }
    }

    pub fn explicit(g: Graph) -> Result<Pattern> {
        let p = Pattern::Explicit(g);
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidArgument(s.to_string()));
        match self {
            Pattern::CycleLen(t) | Pattern::CtPlus(t) if *t < 3 => bad("cycle patterns need t >= 3"),
            Pattern::K2r(t) if *t < 1 => bad("K2,t needs t >= 1"),
            Pattern::CompleteBipartite(s, t) if *s < 1 || *t < 1 => bad("Ks,t needs s,t >= 1"),
            Pattern::Book(r) if *r < 1 => bad("books need r >= 1"),
            Pattern::Clique(r) if *r < 2 => bad("cliques need r >= 2"),
            Pattern::PathVertices(v) if *v < 2 => bad("paths need at least 2 vertices"),
            Pattern::Explicit(g) => {
                if g.order() > MAX_EXPLICIT_VERTICES {
                    return Err(Error::UnsupportedPattern(format!(
                        "explicit pattern has {} vertices, limit {MAX_EXPLICIT_VERTICES}",
                        g.order()
                    )));
                }
                if g.order() == 0 || g.has_isolated() {
                    return bad("explicit pattern must have no isolated vertices");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The pattern as a concrete graph.
    pub fn to_graph(&self) -> Result<Graph> {
        self.validate()?;
        match self {
            Pattern::CycleLen(t) => build_family(&FamilySpec::Cycle(*t)),
            Pattern::CtPlus(t) => build_family(&FamilySpec::CtPlus(*t)),
            Pattern::K2r(t) => build_family(&FamilySpec::CompleteBipartite(2, *t)),
            Pattern::CompleteBipartite(s, t) => build_family(&FamilySpec::CompleteBipartite(*s, *t)),
            Pattern::Book(r) => build_family(&FamilySpec::Book(*r)),
            Pattern::Clique(r) => build_family(&FamilySpec::Complete(*r)),
            Pattern::PathVertices(v) => build_family(&FamilySpec::Path(*v)),
            Pattern::Explicit(g) => Ok(g.clone()),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::CycleLen(t) => write!(f, "C{t}"),
            Pattern::CtPlus(t) => write!(f, "C{t}+"),
            Pattern::K2r(t) => write!(f, "K2,{t}"),
            Pattern::CompleteBipartite(s, t) => write!(f, "K{s},{t}"),
            Pattern::Book(r) => write!(f, "B{r}"),
            Pattern::Clique(r) => write!(f, "K{r}"),
            Pattern::PathVertices(v) => write!(f, "P{v}"),
            Pattern::Explicit(g) => write!(f, "g6:{}", graph6::write(g)),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// `C5`, `C4+`, `K2,4`, `K1,3`, `B3`, `K4`, `P7`, `g6:<graph6>`.
    fn from_str(s: &str) -> Result<Pattern> {
        let bad = || Error::InvalidArgument(format!("cannot parse pattern {s:?}"));
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let p = if let Some(rest) = s.strip_prefix("g6:") {
            Pattern::Explicit(graph6::parse(rest)?)
        } else if let Some(rest) = s.strip_prefix('C') {
            match rest.strip_suffix('+') {
                Some(t) => Pattern::CtPlus(num(t)?),
                None => Pattern::CycleLen(num(rest)?),
            }
        } else if let Some(rest) = s.strip_prefix('K') {
            match rest.split_once(',') {
                Some((a, b)) => Pattern::complete_bipartite(num(a)?, num(b)?),
                None => Pattern::Clique(num(rest)?),
            }
        } else if let Some(rest) = s.strip_prefix('B') {
            Pattern::Book(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('P') {
            Pattern::PathVertices(num(rest)?)
        } else {
            return Err(bad());
        };
        p.validate()?;
        Ok(p)
    }
}

/// Comma-joined pattern list, used in reports.
pub fn describe_family(patterns: &[Pattern]) -> String {
    if patterns.is_empty() {
        return "none".to_string();
    }
    patterns.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Does `g` contain `p` as a subgraph?
pub fn contains(g: &Graph, p: &Pattern) -> Result<bool> {
    p.validate()?;
    Ok(match p {
        Pattern::CycleLen(t) => has_cycle_of_length(g, *t),
        Pattern::CtPlus(t) => has_ct_plus(g, *t),
        Pattern::K2r(t) => has_complete_bipartite(g, 2, *t),
        Pattern::CompleteBipartite(s, t) => has_complete_bipartite(g, *s, *t),
        Pattern::Book(r) => has_book(g, *r),
        Pattern::Clique(r) => has_clique(g, *r),
        Pattern::PathVertices(v) => has_path(g, *v),
        Pattern::Explicit(h) => contains_subgraph(g, h),
    })
}

/// `true` when `g` contains none of the patterns. Short-circuits.
pub fn free_of_all(g: &Graph, patterns: &[Pattern]) -> Result<bool> {
    for p in patterns {
        if contains(g, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `t` in `3..=max_len` with no `C_t` in `g`.
pub fn missing_cycle_length(g: &Graph, max_len: usize) -> Result<Option<usize>> {
    if max_len < 3 {
        return Err(Error::InvalidArgument("missing_cycle_length needs T >= 3".into()));
    }
    Ok((3..=max_len).find(|&t| !has_cycle_of_length(g, t)))
}

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

/// Above this length cycles are found by joining two half-paths.
const MEET_IN_MIDDLE_ABOVE: usize = 10;

pub fn has_cycle_of_length(g: &Graph, t: usize) -> bool {
    find_cycle(g, t).is_some()
}

/// A cycle of exact length `t` as a vertex sequence, if one exists.
pub fn find_cycle(g: &Graph, t: usize) -> Option<Vec<usize>> {
    if t < 3 || t > g.order() || g.size() < t {
        return None;
    }
    if t > MEET_IN_MIDDLE_ABOVE {
        find_cycle_mitm(g, t)
    } else {
        find_cycle_dfs(g, t)
    }
}

/// Cycles are rooted at their smallest vertex `s`; all other vertices are > s.
fn find_cycle_dfs(g: &Graph, t: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, t: usize, allowed: u64, path: &mut Vec<usize>, used: u64) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == t {
            return g.has_edge(last, s);
        }
        for w in iter_bits(g.neighbors(last) & allowed & !used) {
            if path.len() == t - 1 && !g.has_edge(w, s) {
                continue;
            }
            path.push(w);
            if extend(g, t, allowed, path, used | bit(w)) {
                return true;
            }
            path.pop();
        }
        false
    }
    let n = g.order();
    for s in 0..n {
        let allowed = g.vertex_mask() & !full_mask(s + 1);
        if (g.neighbors(s) & allowed).count_ones() < 2 {
            continue;
        }
        let mut path = vec![s];
        if extend(g, t, allowed, &mut path, bit(s)) {
            return Some(path);
        }
    }
    None
}

/// Meet in the middle: for each root `s`, collect simple paths from `s` of
/// `h1` and `h2` edges (`h1 + h2 = t`) through vertices above `s`, grouped by
/// end vertex, and join two with disjoint interiors.
fn find_cycle_mitm(g: &Graph, t: usize) -> Option<Vec<usize>> {
    use std::collections::HashMap;
    fn collect(
        g: &Graph,
        allowed: u64,
        len: usize,
        path: &mut Vec<usize>,
        used: u64,
        out: &mut HashMap<usize, Vec<(u64, Vec<usize>)>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == len + 1 {
            out.entry(last).or_default().push((used, path.clone()));
            return;
        }
        for w in iter_bits(g.neighbors(last) & allowed & !used) {
            path.push(w);
            collect(g, allowed, len, path, used | bit(w), out);
            path.pop();
        }
    }
    let h1 = t.div_ceil(2);
    let h2 = t / 2;
    for s in 0..g.order() {
        let allowed = g.vertex_mask() & !full_mask(s + 1);
        let mut long = HashMap::new();
        let mut short = HashMap::new();
        collect(g, allowed, h1, &mut vec![s], bit(s), &mut long);
        collect(g, allowed, h2, &mut vec![s], bit(s), &mut short);
        for (end, a_paths) in &long {
            let Some(b_paths) = short.get(end) else { continue };
            let ends = bit(s) | bit(*end);
            for (a_used, a) in a_paths {
                for (b_used, b) in b_paths {
                    if a_used & b_used & !ends == 0 && a[1] != b[1] {
                        let mut cycle = a[..a.len() - 1].to_vec();
                        cycle.push(*end);
                        cycle.extend(b[1..b.len() - 1].iter().rev());
                        return Some(cycle);
                    }
                }
            }
        }
    }
    None
}

/// Path from `a` to `b` on exactly `vertices` vertices inside `allowed`.
fn path_between(g: &Graph, a: usize, b: usize, vertices: usize, allowed: u64) -> Option<Vec<usize>> {
    fn go(g: &Graph, b: usize, vertices: usize, allowed: u64, path: &mut Vec<usize>, used: u64) -> bool {
        let last = *path.last().unwrap();
        if path.len() == vertices - 1 {
            if g.has_edge(last, b) {
                path.push(b);
                return true;
            }
            return false;
        }
        for w in iter_bits(g.neighbors(last) & allowed & !used & !bit(b)) {
            path.push(w);
            if go(g, b, vertices, allowed, path, used | bit(w)) {
                return true;
            }
            path.pop();
        }
        false
    }
    if vertices < 2 || allowed & bit(a) == 0 || allowed & bit(b) == 0 {
        return None;
    }
    let mut path = vec![a];
    go(g, b, vertices, allowed, &mut path, bit(a)).then_some(path)
}

/// `C_t^+`: a `t`-cycle through an edge `ab` plus a vertex `w` off the cycle
/// adjacent to both `a` and `b`.
fn has_ct_plus(g: &Graph, t: usize) -> bool {
    if g.order() < t + 1 || g.size() < t + 2 {
        return false;
    }
    for (a, b) in g.edges() {
        let common = g.neighbors(a) & g.neighbors(b);
        for w in iter_bits(common) {
            let allowed = g.vertex_mask() & !bit(w);
            if t == 3 {
                if (common & !bit(w)) != 0 {
                    return true;
                }
                continue;
            }
            // a path on t >= 4 vertices from a to b cannot use the edge ab
            if path_between(g, a, b, t, allowed).is_some() {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Dense patterns
// ---------------------------------------------------------------------------

/// `K_{s,t}` ⇔ some `s`-set has at least `t` common neighbours.
fn has_complete_bipartite(g: &Graph, s: usize, t: usize) -> bool {
    let (s, t) = (s.min(t), s.max(t));
    if g.order() < s + t || g.size() < s * t {
        return false;
    }
    fn choose(g: &Graph, s: usize, t: usize, start: usize, chosen: usize, common: u64) -> bool {
        if (common.count_ones() as usize) < t {
            return false;
        }
        if chosen == s {
            return true;
        }
        for v in start..g.order() {
            if g.degree(v) < t {
                continue;
            }
            if choose(g, s, t, v + 1, chosen + 1, common & g.neighbors(v)) {
                return true;
            }
        }
        false
    }
    choose(g, s, t, 0, 0, g.vertex_mask())
}

fn has_book(g: &Graph, r: usize) -> bool {
    g.edges()
        .into_iter()
        .any(|(u, v)| (g.neighbors(u) & g.neighbors(v)).count_ones() as usize >= r)
}

fn has_clique(g: &Graph, r: usize) -> bool {
    fn grow(g: &Graph, need: usize, cand: u64) -> bool {
        if need == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < need {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if grow(g, need - 1, rest & g.neighbors(v)) {
                return true;
            }
        }
        false
    }
    grow(g, r, g.vertex_mask())
}

fn has_path(g: &Graph, v: usize) -> bool {
    fn go(g: &Graph, remaining: usize, last: usize, used: u64) -> bool {
        if remaining == 0 {
            return true;
        }
        iter_bits(g.neighbors(last) & !used).any(|w| go(g, remaining - 1, w, used | bit(w)))
    }
    if g.order() < v || g.size() < v - 1 {
        return false;
    }
    (0..g.order()).any(|s| go(g, v - 1, s, bit(s)))
}

// ---------------------------------------------------------------------------
// Generic subgraph monomorphism
// ---------------------------------------------------------------------------

/// Backtracking subgraph monomorphism with degree pruning.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    find_subgraph(g, h).is_some()
}

/// An injective map from `h` into `g` preserving edges, if one exists.
pub fn find_subgraph(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let hn = h.order();
    if hn > g.order() || h.size() > g.size() {
        return None;
    }
    // match pattern vertices in an order where each has an earlier neighbour
    let mut order = Vec::with_capacity(hn);
    let mut placed = 0u64;
    while order.len() < hn {
        let next = (0..hn)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| ((h.neighbors(v) & placed).count_ones(), h.degree(v), usize::MAX - v))
            .unwrap();
        order.push(next);
        placed |= bit(next);
    }
    let gdeg = g.degrees();
    let mut map = vec![usize::MAX; hn];
    fn go(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        gdeg: &[usize],
        idx: usize,
        map: &mut [usize],
        used: u64,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let hv = order[idx];
        let mut cand = g.vertex_mask() & !used;
        for hw in iter_bits(h.neighbors(hv)) {
            if map[hw] != usize::MAX {
                cand &= g.neighbors(map[hw]);
            }
        }
        for gv in iter_bits(cand) {
            if gdeg[gv] < h.degree(hv) {
                continue;
            }
            map[hv] = gv;
            if go(g, h, order, gdeg, idx + 1, map, used | bit(gv)) {
                return true;
            }
            map[hv] = usize::MAX;
        }
        false
    }
    go(g, h, &order, &gdeg, 0, &mut map, 0).then_some(map)
}

// ---------------------------------------------------------------------------
// Longest paths
// ---------------------------------------------------------------------------

/// A longest path of `G[S]`, lexicographically least among the longest.
pub fn longest_path_in(g: &Graph, s: &[usize]) -> Result<Vec<usize>> {
    let mask = g.mask_of(s)?;
    longest_path_in_mask(g, mask)
}

pub fn longest_path_in_mask(g: &Graph, mask: VertexMask) -> Result<Vec<usize>> {
    let size = mask.count_ones() as usize;
    if size == 0 {
        return Err(Error::InvalidArgument("longest_path_in needs a nonempty set".into()));
    }
    if size > MAX_PATH_SET {
        return Err(Error::SizeLimit {
            what: "longest-path vertex set",
            got: size,
            limit: MAX_PATH_SET,
        });
    }
    struct Ctx<'a> {
        g: &'a Graph,
        mask: u64,
        target: usize,
        best: Vec<usize>,
    }
    // depth-first in increasing vertex order visits paths in lexicographic
    // order, so the first path reaching a new maximum length is the least one
    fn go(ctx: &mut Ctx<'_>, path: &mut Vec<usize>, used: u64) -> bool {
        if path.len() > ctx.best.len() {
            ctx.best = path.clone();
            if path.len() == ctx.target {
                return true;
            }
        }
        let last = *path.last().unwrap();
        let cand = ctx.g.neighbors(last) & ctx.mask & !used;
        // component-reachability bound
        let mut reach = bit(last);
        let mut frontier = bit(last);
        let free = ctx.mask & !used;
        while frontier != 0 {
            let next = iter_bits(frontier).fold(0u64, |a, w| a | ctx.g.neighbors(w)) & free & !reach;
            reach |= next;
            frontier = next;
        }
        if path.len() + reach.count_ones() as usize - 1 <= ctx.best.len() {
            return false;
        }
        for w in iter_bits(cand) {
            path.push(w);
            if go(ctx, path, used | bit(w)) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut ctx = Ctx {
        g,
        mask,
        target: size,
        best: Vec::new(),
    };
    for s in iter_bits(mask) {
        let mut path = vec![s];
        if go(&mut ctx, &mut path, bit(s)) {
            break;
        }
    }
    Ok(ctx.best)
}

/// `true` when `seq` is a cycle of `g` of exactly `seq.len()` distinct vertices.
pub fn is_cycle(g: &Graph, seq: &[usize]) -> bool {
    let t = seq.len();
    if t < 3 {
        return false;
    }
    let mut used = 0u64;
    for &v in seq {
        if v >= g.order() || used & bit(v) != 0 {
            return false;
        }
        used |= bit(v);
    }
    (0..t).all(|i| g.has_edge(seq[i], seq[(i + 1) % t]))
}

pub fn is_path(g: &Graph, seq: &[usize]) -> bool {
    let mut used = 0u64;
    for &v in seq {
        if v >= g.order() || used & bit(v) != 0 {
            return false;
        }
        used |= bit(v);
    }
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec::*;

    fn fam(spec: FamilySpec) -> Graph {
        build_family(&spec).unwrap()
    }

    #[test]
    fn spec_examples() {
        let k4 = fam(Complete(4));
        assert!(contains(&k4, &Pattern::CycleLen(3)).unwrap());
        assert!(!contains(&k4, &Pattern::CycleLen(5)).unwrap());
        for m in 1..20 {
            assert!(!contains(&fam(Star(m)), &Pattern::K2r(2)).unwrap());
        }
        let s91 = fam(Snk(9, 1));
        assert!(!contains(&s91, &Pattern::CtPlus(3)).unwrap());
        assert!(!contains(&s91, &Pattern::CtPlus(4)).unwrap());
        assert!(contains(&fam(Book(2)), &Pattern::Book(2)).unwrap());
        assert!(!contains(&fam(Cycle(5)), &Pattern::Book(1)).unwrap());
    }

    #[test]
    fn free_of_all_examples() {
        for m in [9, 11, 13, 15] {
            let book = fam(CompleteSplit((m + 3) / 2, 2));
            assert!(free_of_all(&book, &[Pattern::CycleLen(5), Pattern::CycleLen(6)]).unwrap());
        }
        assert!(!free_of_all(&fam(Complete(4)), &[Pattern::CycleLen(3)]).unwrap());
        assert!(free_of_all(&fam(Cycle(6)), &[Pattern::CtPlus(3), Pattern::CtPlus(4)]).unwrap());
    }

    #[test]
    fn missing_cycles() {
        assert_eq!(missing_cycle_length(&fam(Complete(5)), 5).unwrap(), None);
        assert_eq!(missing_cycle_length(&fam(CompleteBipartite(3, 3)), 4).unwrap(), Some(3));
        assert_eq!(missing_cycle_length(&fam(Book(3)), 6).unwrap(), Some(5));
        assert!(missing_cycle_length(&fam(Complete(5)), 2).is_err());
    }

    #[test]
    fn longest_paths() {
        let k3 = fam(Complete(3));
        assert_eq!(longest_path_in(&k3, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        let k4 = fam(Complete(4));
        assert_eq!(longest_path_in(&k4, &[0, 1, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
        // star: best path is leaf-center-leaf, least is 1-0-2
        let star = fam(Star(4));
        assert_eq!(longest_path_in(&star, &[0, 1, 2, 3, 4]).unwrap(), vec![1, 0, 2]);
        assert!(longest_path_in(&k4, &[]).is_err());
    }

    #[test]
    fn pattern_strings_round_trip() {
        for s in ["C5", "C4+", "K2,4", "K1,3", "K3,3", "B3", "K4", "P7", "g6:Bw"] {
            let p: Pattern = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("K4,2".parse::<Pattern>().unwrap(), Pattern::K2r(4));
        assert!("C2".parse::<Pattern>().is_err());
        assert!("X".parse::<Pattern>().is_err());
        let big = fam(Cycle(9));
        assert!(matches!(
            contains(&big, &Pattern::Explicit(big.clone())),
            Err(Error::UnsupportedPattern(_))
        ));
    }

    #[test]
    fn long_cycles_use_both_strategies() {
        for t in 3..=16 {
            let c = fam(Cycle(t));
            assert_eq!(find_cycle(&c, t).map(|s| s.len()), Some(t));
            assert!(is_cycle(&c, &find_cycle(&c, t).unwrap()));
            assert!(!has_cycle_of_length(&c, t - 1));
        }
        let p = fam(Path(14));
        assert!(!has_cycle_of_length(&p, 12));
        // K4 with a 12-cycle sharing an edge: has C12 (via the cycle) and C13
        let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        edges.extend([(0, 12), (1, 12)]);
        let g = Graph::from_edges(13, &edges).unwrap();
        assert!(has_cycle_of_length(&g, 12));
        assert!(has_cycle_of_length(&g, 13));
        assert!(!has_cycle_of_length(&g, 11));
    }
}
