mod common;

use common::{connected_classes, count_by_components};
use sizebound::enumerate::{enumerate_all, EnumConstraints};
use sizebound::patterns::Pattern;

#[test]
fn class_counts_match_brute_force() {
    let classes = connected_classes(6);
    for m in 1..=6 {
        let all = enumerate_all(&EnumConstraints::new(m)).unwrap().len() as u64;
        assert_eq!(all, count_by_components(&classes, m, |_| true), "all, m = {m}");

        let conn = enumerate_all(&EnumConstraints::new(m).connected(true)).unwrap().len() as u64;
        assert_eq!(conn, classes[m].len() as u64, "connected, m = {m}");

        let c4 = enumerate_all(&EnumConstraints::new(m).forbid([Pattern::CycleLen(4)])).unwrap().len() as u64;
        assert_eq!(c4, count_by_components(&classes, m, |g| !g.has_c4()), "C4-free, m = {m}");

        let c3 = enumerate_all(&EnumConstraints::new(m).forbid([Pattern::Clique(3)])).unwrap().len() as u64;
        assert_eq!(c3, count_by_components(&classes, m, |g| !g.has_c3()), "K3-free, m = {m}");
    }
}

#[test]
fn known_totals() {
    let classes = connected_classes(6);
    let totals: Vec<u64> = (1..=6).map(|m| count_by_components(&classes, m, |_| true)).collect();
    assert_eq!(totals, [1, 2, 5, 11, 26, 68]);
}
