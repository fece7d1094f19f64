#![allow(dead_code)]

//! Standalone cds game oracle on raw letter vectors.

/// Alternating pointer pairs of `letters` and their successors, found by
/// scanning every pair of pointers.
pub fn successors(letters: &[i32]) -> Vec<Vec<i32>> {
    let n = letters.len() as i32;
    let pos = |v: i32| letters.iter().position(|&a| a == v).unwrap();
    // slots of the two occurrences of (x, x+1): right of x, left of x+1
    let slots: Vec<(usize, usize)> = (1..n)
        .map(|x| {
            let a = 2 * pos(x) + 1;
            let b = 2 * pos(x + 1);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..slots.len() {
        for j in i + 1..slots.len() {
            let (p, q) = (slots[i], slots[j]);
            let alternate = (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1);
            if !alternate {
                continue;
            }
            let mut cuts = [p.0, p.1, q.0, q.1].map(|s: usize| s.div_ceil(2));
            cuts.sort();
            let [c1, c2, c3, c4] = cuts;
            let mut next = letters[..c1].to_vec();
            next.extend_from_slice(&letters[c3..c4]);
            next.extend_from_slice(&letters[c2..c3]);
            next.extend_from_slice(&letters[c1..c2]);
            next.extend_from_slice(&letters[c4..]);
            out.push(next);
        }
    }
    out
}

/// Whether the player to move wins the fixed-point game, where `one_to_move`
/// says whose turn it is and `favorable` lists pile elements `x` (the
/// rotation starting at `x + 1`).
pub fn mover_wins(letters: &[i32], one_to_move: bool, favorable: &[i32]) -> bool {
    let next = successors(letters);
    if next.is_empty() {
        let k = letters[0];
        let one_wins = favorable.contains(&(k - 1));
        return one_wins == one_to_move;
    }
    next.iter().any(|s| !mover_wins(s, !one_to_move, favorable))
}

pub fn one_wins(letters: &[i32], one_to_move: bool, favorable: &[i32]) -> bool {
    mover_wins(letters, one_to_move, favorable) == one_to_move
}

pub fn letters(text: &str) -> Vec<i32> {
    text.trim_matches(|c| c == '[' || c == ']')
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}
