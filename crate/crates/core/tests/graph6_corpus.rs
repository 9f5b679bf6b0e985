//! Reference strings produced by an independent graph6 writer.

use sizebound::graph6;

#[test]
fn reference_corpus_round_trips() {
    let corpus = include_str!("data/graph6_corpus.tsv");
    let mut count = 0;
    for line in corpus.lines() {
        let mut cols = line.split('\t');
        let (text, n, edges) = (cols.next().unwrap(), cols.next().unwrap(), cols.next().unwrap_or(""));
        let n: usize = n.parse().unwrap();
        let want: Vec<(usize, usize)> = edges
            .split_whitespace()
            .map(|e| {
                let (u, v) = e.split_once('-').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        let g = graph6::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(g.order(), n, "{text}");
        let mut got = g.edges();
        got.sort();
        assert_eq!(got, want, "{text}");
        assert_eq!(graph6::write(&g), text);
        count += 1;
    }
    assert_eq!(count, 45);
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["", "~", "A~", "B", "Bww", "\u{7f}"] {
        assert!(graph6::parse(bad).is_err(), "{bad:?}");
    }
}
