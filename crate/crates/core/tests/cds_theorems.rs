mod common;

use std::collections::BTreeSet;

use cdsort::*;
use common::{all_plays, CdsGraph};

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn pile_characterises_sortability_and_fixed_points() {
    let mut graph = CdsGraph::default();
    for n in 1..=6 {
        for p in permutations(n) {
            let reach = graph.reachable(&p);
            let pile = strategic_pile(&p);
            assert_eq!(is_cds_sortable(&p), pile.is_empty(), "{p}");
            assert_eq!(reach.contains(&Permutation::identity(n)), pile.is_empty(), "{p}");
            let starts: BTreeSet<usize> = reach.iter().map(|f| f.rotation_start().unwrap()).collect();
            assert_eq!(starts, reachable_cds_fixed_points(&p), "{p}");
        }
    }
}

#[test]
fn every_play_has_the_formula_length() {
    for n in 1..=6 {
        for p in permutations(n) {
            let d = cds_duration(&p);
            let sortable = is_cds_sortable(&p);
            all_plays(&p, 0, &mut |len, end| {
                assert_eq!(len, d, "{p}");
                if sortable {
                    assert!(end.is_identity(), "{p} ended at {end}");
                }
            });
        }
    }
}

#[test]
fn pile_shrinks_by_at_most_the_context_lows() {
    for n in 3..=6 {
        for p in permutations(n) {
            let before = strategic_pile(&p).set();
            for ctx in list_cds_contexts(&p) {
                let after = strategic_pile(&apply_cds(&p, &ctx).unwrap()).set();
                let (x, y) = ctx.lows();
                assert!(after.is_subset(&before), "{p} {ctx}");
                assert!(before.iter().all(|b| *b == x || *b == y || after.contains(b)), "{p} {ctx}");
            }
        }
    }
}

#[test]
fn removal_and_retention_always_exist() {
    for n in 3..=6 {
        for p in permutations(n) {
            let pile = strategic_pile(&p);
            if pile.len() < 2 {
                continue;
            }
            for &x in pile.elements() {
                let rest: BTreeSet<usize> = pile.set().into_iter().filter(|&b| b != x).collect();
                let removed = strategic_pile(&apply_cds(&p, &removal_move(&p, x).unwrap()).unwrap());
                assert!(removed.set().is_subset(&rest), "{p} remove {x}");
                let kept = strategic_pile(&apply_cds(&p, &retention_move(&p, x).unwrap()).unwrap());
                assert!(kept.contains(x), "{p} keep {x}");
            }
        }
    }
}

#[test]
fn pile_structure_corollaries() {
    for n in 1..=7 {
        for p in permutations(n) {
            let a = p.letters();
            let (first, last) = (a[0] as usize, a[n - 1] as usize);
            let pile = strategic_pile(&p);
            assert_eq!(pile.len() == 1, first - 1 == last && last < n, "{p}");
            if first == 1 || last == n {
                assert!(is_cds_sortable(&p), "{p}");
            }
            if pile.len() > 1 {
                assert!(pile.contains(first - 1) && pile.contains(last), "{p}");
            }
            assert_eq!(is_cds_sortable(&p), is_cds_sortable(&p.inverse()), "{p}");
            assert_eq!(c_of_inverse(&p), build_c(&p.inverse()), "{p}");
        }
    }
}

#[test]
fn parity_classes_are_invariant() {
    for n in 1..=7 {
        for p in permutations(n) {
            let class = parity_class(&p);
            if class == ParityClass::Switching {
                assert!(n % 2 == 0 && !is_cds_sortable(&p), "{p}");
            }
            if class == ParityClass::Neither {
                continue;
            }
            for ctx in list_cds_contexts(&p) {
                assert_eq!(parity_class(&apply_cds(&p, &ctx).unwrap()), class, "{p} {ctx}");
            }
        }
    }
}

#[test]
fn reverse_order_piles() {
    for n in 1..=5 {
        let alpha = Permutation::reversed(2 * n);
        let odd: BTreeSet<usize> = (0..n).map(|i| 2 * i + 1).collect();
        assert_eq!(strategic_pile(&alpha).set(), odd);
    }
}

#[test]
fn sortable_set_is_not_closed_under_composition() {
    let (sigma, pi) = (perm("[3 2 4 1 5]"), perm("[1 4 2 5 3]"));
    assert!(is_cds_sortable(&sigma) && is_cds_sortable(&pi));
    let product = Permutation::compose(&sigma, &pi).unwrap();
    assert_eq!(product, perm("[2 4 5 1 3]"));
    assert!(!is_cds_sortable(&product));
    assert_eq!(strategic_pile(&product).set(), BTreeSet::from([1, 2, 3]));
}

#[test]
fn moves_add_adjacencies() {
    for n in 3..=6 {
        for p in permutations(n) {
            for ctx in list_cds_contexts(&p) {
                let q = apply_cds(&p, &ctx).unwrap();
                assert!(q.adjacencies().len() > p.adjacencies().len(), "{p} {ctx}");
            }
        }
    }
}

#[test]
fn greedy_sort_matches_duration() {
    for n in 1..=6 {
        for p in permutations(n).filter(is_cds_sortable) {
            assert_eq!(sort_by_cds(&p).unwrap().len(), cds_duration(&p), "{p}");
        }
    }
}
