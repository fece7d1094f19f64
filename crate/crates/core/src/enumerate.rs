//! Exhaustive sweeps over S_n and S_n^±.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdr::{is_cdr_fixed_point, CdrSearch, CdrTarget};
use crate::cds::{is_cds_fixed_point, is_signed_cds_fixed_point, sortable_letters};
use crate::perm::{OneLine, Permutation, SignedPermutation};

/// Largest `n` swept over S_n by default.
pub const MAX_UNSIGNED: usize = 11;
/// Largest `n` swept over S_n^± by default.
pub const MAX_SIGNED: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("n = {n} is outside the supported range 1..={max}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub count: u64,
    pub elapsed_ms: u64,
    pub method: Method,
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>3}  {:>12}  {:>8} ms", self.n, self.count, self.elapsed_ms)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Cds,
    Cdr,
}

fn check(n: usize, max: usize) -> Result<(), EnumerateError> {
    if n == 0 || n > max {
        Err(EnumerateError::TooLarge { n, max })
    } else {
        Ok(())
    }
}

fn timed(n: usize, f: impl FnOnce() -> u64) -> CountReport {
    let start = Instant::now();
    let count = f();
    CountReport {
        n,
        count,
        elapsed_ms: start.elapsed().as_millis() as u64,
        method: Method::Exhaustive,
    }
}

/// Steps `v` to its lexicographic successor; false (leaving `v` sorted) once
/// the last arrangement has been passed.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All of S_n in lexicographic order of one-line forms.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<i32>> = Some((1..=n as i32).collect());
    std::iter::from_fn(move || {
        let letters = current.take()?;
        let mut next = letters.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation::new(letters).expect("arrangement of 1..=n"))
    })
}

/// All of S_n^±: each arrangement with each sign pattern.
pub fn signed_permutations(n: usize) -> impl Iterator<Item = SignedPermutation> {
    permutations(n).flat_map(move |p| {
        (0u32..1 << n).map(move |mask| {
            let letters = p
                .letters()
                .iter()
                .enumerate()
                .map(|(i, &a)| if mask >> i & 1 == 1 { -a } else { a })
                .collect();
            SignedPermutation::new(letters).expect("signs keep magnitudes")
        })
    })
}

/// Sweeps S_n in parallel, one partition per first letter, counting the
/// arrangements accepted by `keep`.
fn sweep(n: usize, keep: impl Fn(&[i32], &mut [usize]) -> bool + Sync) -> u64 {
    (1..=n as i32)
        .into_par_iter()
        .map(|first| {
            let mut letters: Vec<i32> = std::iter::once(first)
                .chain((1..=n as i32).filter(|&v| v != first))
                .collect();
            let mut scratch = vec![0usize; n + 1];
            let mut count = 0u64;
            loop {
                if keep(&letters, &mut scratch) {
                    count += 1;
                }
                if !next_permutation(&mut letters[1..]) {
                    break;
                }
            }
            count
        })
        .sum()
}

pub fn count_cds_sortable(n: usize) -> Result<CountReport, EnumerateError> {
    check(n, MAX_UNSIGNED)?;
    Ok(timed(n, || sweep(n, sortable_letters)))
}

/// `(k+1)·(2k)!`, the conjectured number of cds-sortable permutations in S_{2k+1}.
pub fn odd_formula_value(k: usize) -> u64 {
    (k as u64 + 1) * (1..=2 * k as u64).product::<u64>()
}

/// Compares the exhaustive count for `n = 2k+1` with `(k+1)·(2k)!`.
pub fn odd_formula_check(k: usize) -> Result<bool, EnumerateError> {
    let n = 2 * k + 1;
    check(n, MAX_UNSIGNED)?;
    Ok(count_cds_sortable(n)?.count == odd_formula_value(k))
}

/// Members of S_n^± that can be cdr-sorted to `target`.
pub fn count_cdr(n: usize, target: CdrTarget) -> Result<CountReport, EnumerateError> {
    check(n, MAX_SIGNED)?;
    let search = CdrSearch::global();
    Ok(timed(n, || {
        signed_permutations(n)
            .par_bridge()
            .filter(|sp| search.can_reach(sp, target))
            .count() as u64
    }))
}

/// Size of the fixed-point set of `op` in S_n (unsigned) or S_n^± (signed).
/// Signed cds fixed points are those with no cds and no cdr context.
pub fn count_fixed_points(n: usize, op: Operation, signed: bool) -> Result<CountReport, EnumerateError> {
    check(n, if signed { MAX_SIGNED } else { MAX_UNSIGNED - 2 })?;
    Ok(timed(n, || match (op, signed) {
        (Operation::Cds, false) => permutations(n).filter(is_cds_fixed_point).count() as u64,
        // every unsigned permutation is all-positive
        (Operation::Cdr, false) => permutations(n).count() as u64,
        (Operation::Cds, true) => signed_permutations(n).filter(is_signed_cds_fixed_point).count() as u64,
        (Operation::Cdr, true) => signed_permutations(n).filter(is_cdr_fixed_point).count() as u64,
    }))
}

/// Signed permutations with no cds context, counted literally (mixed signs
/// allowed). Larger than `2n` once `n ≥ 2`.
pub fn count_signed_without_cds_context(n: usize) -> Result<CountReport, EnumerateError> {
    check(n, MAX_SIGNED)?;
    Ok(timed(n, || signed_permutations(n).filter(is_cds_fixed_point).count() as u64))
}
