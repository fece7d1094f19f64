//! Exact solutions of the sorting games, with the parity shortcut and the
//! greedy bound for comparison.

use std::collections::BTreeSet;

use cdsort::{
    cds_parity_fast_path, greedy_bound, greedy_strategy_move, reachable_cdr_fixed_points, solve, GameSpec, Goal,
    Permutation, SignedPermutation,
};

fn main() {
    let alpha: Permutation = "[6 5 4 3 2 1]".parse().unwrap();
    // favorable sets hold rotation starts: pile element x stands for start x + 1
    for f in [vec![2], vec![2, 4], vec![2, 4, 6]] {
        let spec = GameSpec::cds(alpha.clone(), Goal::FixedPoint, f.iter().copied().collect()).unwrap();
        let out = solve(&spec);
        let pile_f: BTreeSet<usize> = f.iter().map(|k| k - 1).collect();
        println!(
            "{alpha} F = {:?}: {} wins ({} positions), greedy bound {:?}, greedy move {}",
            spec.favorable_text(),
            out.winner,
            out.states_explored,
            greedy_bound(&alpha, &pile_f).unwrap(),
            greedy_strategy_move(&alpha, &pile_f).unwrap(),
        );
    }

    let pi: Permutation = "[4 2 6 7 1 3 5]".parse().unwrap();
    for goal in [Goal::Normal, Goal::Misere] {
        let out = solve(&GameSpec::cds(pi.clone(), goal, BTreeSet::new()).unwrap());
        println!("{pi} {goal:?}: {} (parity says {})", out.winner, cds_parity_fast_path(&pi, goal).unwrap());
    }

    let sp: SignedPermutation = "[2 4 3 5 -1 6]".parse().unwrap();
    let reach = reachable_cdr_fixed_points(&sp);
    let first: BTreeSet<_> = reach.iter().take(1).cloned().collect();
    let out = solve(&GameSpec::cdr(sp.clone(), Goal::FixedPoint, first.clone()).unwrap());
    let line: Vec<String> = out.principal_variation.iter().map(|m| m.to_string()).collect();
    println!(
        "{sp} F = {{{}}}: {} wins, line {}",
        first.iter().next().unwrap(),
        out.winner,
        line.join(" ")
    );
}
