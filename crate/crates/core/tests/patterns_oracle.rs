mod common;

use common::Small;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sizebound::enumerate::{enumerate_all, EnumConstraints};
use sizebound::graph::Graph;
use sizebound::patterns::{contains, contains_subgraph, free_of_all, Pattern};

/// Injective edge-preserving map from `h` into `g`, by plain backtracking.
fn brute_contains(g: &Small, h: &Small) -> bool {
    fn extend(g: &Small, h: &Small, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == h.n {
            return true;
        }
        for v in 0..g.n {
            if used[v] || !(0..i).all(|j| !h.adj[i][j] || g.adj[v][map[j]]) {
                continue;
            }
            map.push(v);
            used[v] = true;
            if extend(g, h, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    h.n <= g.n && extend(g, h, &mut Vec::new(), &mut vec![false; g.n])
}

fn small(g: &Graph) -> Small {
    Small::from_edges(g.order(), &g.edges())
}

fn patterns() -> Vec<Pattern> {
    let mut v = Vec::new();
    for t in 3..=8 {
        v.push(Pattern::CycleLen(t));
    }
    for t in 3..=6 {
        v.push(Pattern::CtPlus(t));
    }
    for s in ["K2,2", "K2,3", "K2,4", "K1,3", "K1,4", "K3,3", "B1", "B2", "B3", "K3", "K4", "K5", "P4", "P6", "P8"] {
        v.push(s.parse().unwrap());
    }
    v
}

#[test]
fn named_patterns_match_generic_and_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pats: Vec<(Pattern, Graph)> = patterns().into_iter().map(|p| (p.clone(), p.to_graph().unwrap())).collect();
    for _ in 0..300 {
        let n = rng.gen_range(3..=8);
        let p: f64 = rng.gen_range(0.15..0.9);
        let edges: Vec<_> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
        let g = Graph::from_edges(n, &edges).unwrap();
        for (pat, h) in &pats {
            let fast = contains(&g, pat).unwrap();
            assert_eq!(fast, contains_subgraph(&g, h), "{pat} in {edges:?}");
            assert_eq!(fast, brute_contains(&small(&g), &small(h)), "{pat} in {edges:?} (brute force)");
        }
    }
}

#[test]
fn pattern_strings_round_trip() {
    for p in patterns() {
        assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
    }
    let p: Pattern = "g6:Bw".parse().unwrap();
    assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
}

/// C_3+ and C_4+ both contain C_3 and C_4, so excluding either cycle excludes both.
#[test]
fn short_cycle_free_implies_ct_plus_free() {
    let plus = [Pattern::CtPlus(3), Pattern::CtPlus(4)];
    for m in 1..=9 {
        for e in enumerate_all(&EnumConstraints::new(m)).unwrap() {
            let g = &e.graph;
            let c3_free = !contains(g, &Pattern::CycleLen(3)).unwrap();
            let c4_free = !contains(g, &Pattern::CycleLen(4)).unwrap();
            if c3_free || c4_free {
                assert!(free_of_all(g, &plus).unwrap(), "{}", e.form.0);
            }
        }
    }
}
