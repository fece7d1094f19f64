//! Brute-force oracles shared by the integration tests and the acceptance run.
//! None of them consult the cycle products or the strategic pile.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use cdsort::{apply_cds, list_cds_contexts, OneLine, Permutation};

/// Memoized exploration of the cds move graph.
#[derive(Default)]
pub struct CdsGraph {
    fixed: HashMap<Permutation, BTreeSet<Permutation>>,
    lengths: HashMap<Permutation, BTreeSet<usize>>,
}

impl CdsGraph {
    pub fn successors(p: &Permutation) -> Vec<Permutation> {
        list_cds_contexts(p)
            .iter()
            .map(|c| apply_cds(p, c).unwrap())
            .collect()
    }

    /// Every fixed point reachable from `p`.
    pub fn reachable(&mut self, p: &Permutation) -> BTreeSet<Permutation> {
        if let Some(hit) = self.fixed.get(p) {
            return hit.clone();
        }
        let next = Self::successors(p);
        let out = if next.is_empty() {
            BTreeSet::from([p.clone()])
        } else {
            next.iter().flat_map(|s| self.reachable(s)).collect()
        };
        self.fixed.insert(p.clone(), out.clone());
        out
    }

    /// Lengths of all maximal plays from `p`.
    pub fn play_lengths(&mut self, p: &Permutation) -> BTreeSet<usize> {
        if let Some(hit) = self.lengths.get(p) {
            return hit.clone();
        }
        let next = Self::successors(p);
        let out = if next.is_empty() {
            BTreeSet::from([0])
        } else {
            next.iter()
                .flat_map(|s| self.play_lengths(s))
                .map(|l| l + 1)
                .collect()
        };
        self.lengths.insert(p.clone(), out.clone());
        out
    }
}

/// Walks every maximal play without memoization, calling `visit` with each
/// play length and end state.
pub fn all_plays(p: &Permutation, depth: usize, visit: &mut impl FnMut(usize, &Permutation)) {
    let next = CdsGraph::successors(p);
    if next.is_empty() {
        visit(depth, p);
    }
    for s in &next {
        all_plays(s, depth + 1, visit);
    }
}

/// Pointer occurrences of a signed permutation as (pointer, gap), written
/// straight from the left/right pointer formulas. Pointers are encoded as
/// ordered letter pairs, `(x, x+1)` or `(-(x+1), -x)`.
fn oracle_pointers(a: &[i32]) -> Vec<((i32, i32), usize)> {
    let n = a.len() as i32;
    let mut out = Vec::new();
    for (i, &v) in a.iter().enumerate() {
        if v > 0 {
            if v > 1 {
                out.push(((v - 1, v), i));
            }
            if v < n {
                out.push(((v, v + 1), i + 1));
            }
        } else {
            let m = -v;
            if m < n {
                out.push(((-(m + 1), -m), i));
            }
            if m > 1 {
                out.push(((-m, -(m - 1)), i + 1));
            }
        }
    }
    out
}

/// Successors under cdr, computed without the library.
pub fn oracle_cdr_moves(a: &[i32]) -> Vec<Vec<i32>> {
    let occ = oracle_pointers(a);
    let mut out = Vec::new();
    for x in 1..a.len() as i32 {
        let pos: Vec<usize> = occ.iter().filter(|(p, _)| *p == (x, x + 1)).map(|&(_, g)| g).collect();
        let neg: Vec<usize> = occ.iter().filter(|(p, _)| *p == (-(x + 1), -x)).map(|&(_, g)| g).collect();
        if let ([g1], [g2]) = (pos.as_slice(), neg.as_slice()) {
            let (c1, c2) = ((*g1).min(*g2), (*g1).max(*g2));
            let mut b = a[..c1].to_vec();
            b.extend(a[c1..c2].iter().rev().map(|v| -v));
            b.extend_from_slice(&a[c2..]);
            out.push(b);
        }
    }
    out
}

/// Fixed points reachable under cdr, computed without the library.
pub fn oracle_cdr_reach(a: &[i32], memo: &mut HashMap<Vec<i32>, BTreeSet<Vec<i32>>>) -> BTreeSet<Vec<i32>> {
    if let Some(hit) = memo.get(a) {
        return hit.clone();
    }
    let next = oracle_cdr_moves(a);
    let out = if next.is_empty() {
        BTreeSet::from([a.to_vec()])
    } else {
        next.iter().flat_map(|b| oracle_cdr_reach(b, memo)).collect()
    };
    memo.insert(a.to_vec(), out.clone());
    out
}

/// Plain minimax over the cds move graph with no table and no move merging.
/// `terminal` scores a fixed point given the number of moves played; true
/// means ONE wins.
pub fn naive_cds_one_wins(p: &Permutation, plies: usize, terminal: &impl Fn(&Permutation, usize) -> bool) -> bool {
    let next = CdsGraph::successors(p);
    if next.is_empty() {
        return terminal(p, plies);
    }
    let one_to_move = plies.is_multiple_of(2);
    let mut results = next.iter().map(|s| naive_cds_one_wins(s, plies + 1, terminal));
    if one_to_move {
        results.any(|w| w)
    } else {
        results.all(|w| w)
    }
}

pub fn letters(p: &impl OneLine) -> Vec<i32> {
    p.letters().to_vec()
}

/// All subsets of a small set.
pub fn subsets<T: Ord + Clone>(items: &BTreeSet<T>) -> Vec<BTreeSet<T>> {
    let v: Vec<T> = items.iter().cloned().collect();
    (0u32..1 << v.len())
        .map(|mask| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}
