use proptest::prelude::*;
use sizebound::graph::Graph;
use sizebound::search::vertex_shift;
use sizebound::spectra::spectral_radius_default;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_filter("connected", |g| g.is_connected())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Two-step walks: rho^2 x_u equals the sum of x over walks of length two
    /// from u; the closed ones number 2m in total.
    #[test]
    fn walk_identities(g in connected_graph(12)) {
        let c = spectral_radius_default(&g).unwrap();
        let n = g.order();
        let walks2 = |u: usize| -> f64 {
            (0..n).filter(|&w| g.has_edge(u, w))
                .map(|w| (0..n).filter(|&v| g.has_edge(w, v)).map(|v| c.perron[v]).sum::<f64>())
                .sum()
        };
        for u in 0..n {
            prop_assert!((c.rho * c.rho * c.perron[u] - walks2(u)).abs() < 1e-8);
        }
        let closed: usize = (0..n).map(|u| g.degree(u)).sum();
        prop_assert_eq!(closed, 2 * g.size());
        let d2: usize = g.degrees().iter().map(|d| d * d).sum();
        prop_assert!(c.rho * c.rho >= d2 as f64 / n as f64 - 1e-9);
        prop_assert!(c.rho >= 2.0 * g.size() as f64 / n as f64 - 1e-9);
    }

    /// Adding an edge to a connected graph strictly increases rho.
    #[test]
    fn edge_monotonicity(g in connected_graph(12), seed in any::<u64>()) {
        let non_edges: Vec<_> = (0..g.order())
            .flat_map(|u| (u + 1..g.order()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[seed as usize % non_edges.len()];
        let before = spectral_radius_default(&g).unwrap().rho;
        let after = spectral_radius_default(&g.with_edge(u, v).unwrap()).unwrap().rho;
        prop_assert!(after > before + 1e-12);
    }

    /// Shifting neighbours of `from` to a vertex with at least its Perron
    /// weight never lowers rho.
    #[test]
    fn shift_toward_heavier_vertex(g in connected_graph(12), a in any::<usize>(), b in any::<usize>()) {
        let n = g.order();
        let (from, to) = (a % n, b % n);
        prop_assume!(from != to);
        let c = spectral_radius_default(&g).unwrap();
        let (from, to) = if c.perron[to] >= c.perron[from] { (from, to) } else { (to, from) };
        let h = vertex_shift(&g, from, to).unwrap();
        prop_assert_eq!(h.size(), g.size());
        prop_assert!(spectral_radius_default(&h).unwrap().rho >= c.rho - 1e-9);
    }
}
