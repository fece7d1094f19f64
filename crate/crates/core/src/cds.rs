//! Context directed swaps.
//!
//! A cds context is a pair of pointers whose four occurrences alternate
//! `p ... q ... p ... q`. With the occurrence cuts `c1 <= c2 <= c3 <= c4`
//! the operation swaps the letters between `c1..c2` with those between
//! `c3..c4`. The cycle product `C_π = Y_π X` on `{0..n}` and the segment of
//! its `0`/`n` cycle after `n` (the strategic pile) decide which rotations a
//! permutation can still reach.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cycle::CyclePermutation;
use crate::perm::{occurrence_pairs, OneLine, ParseError, Permutation, Pointer, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdsError {
    #[error("{0} is not a cds context of {1}")]
    InvalidContext(String, String),
    #[error("{0} is not cds-sortable")]
    NotSortable(String),
    #[error("strategic pile has fewer than two elements")]
    PileTooSmall,
    #[error("{0} is not in the strategic pile")]
    NotInPile(usize),
    #[error("no context witnesses the requested pile change")]
    NoWitness,
}

/// An alternating pointer pair with its occurrence cuts. `p` is the pointer
/// whose first occurrence comes first in the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CdsContext {
    pub cuts: [usize; 4],
    pub p: Pointer,
    pub q: Pointer,
}

impl CdsContext {
    /// Finds the context formed by the two given pointers in `letters`, if
    /// their occurrences alternate. Both occurrences of each pointer must
    /// carry the same sign.
    pub fn locate(letters: &[i32], a: Pointer, b: Pointer) -> Option<Self> {
        let pairs = occurrence_pairs(letters);
        let get = |ptr: Pointer| {
            pairs
                .get((ptr.low as usize).checked_sub(1)?)
                .filter(|[o1, o2]| o1.pointer == ptr && o2.pointer == ptr)
        };
        let (pa, pb) = (get(a)?, get(b)?);
        let (first, second) = if pa[0].slot() < pb[0].slot() {
            (pa, pb)
        } else {
            (pb, pa)
        };
        let alternating = first[0].slot() < second[0].slot()
            && second[0].slot() < first[1].slot()
            && first[1].slot() < second[1].slot();
        alternating.then(|| CdsContext {
            cuts: [first[0].cut, second[0].cut, first[1].cut, second[1].cut],
            p: first[0].pointer,
            q: second[0].pointer,
        })
    }

    /// The low entries `x`, `y` of the two pointers, ascending.
    pub fn lows(&self) -> (usize, usize) {
        let (a, b) = (self.p.low as usize, self.q.low as usize);
        (a.min(b), a.max(b))
    }

    pub fn pointers(&self) -> PointerPair {
        PointerPair::new(self.p, self.q)
    }

    pub fn involves(&self, low: usize) -> bool {
        self.p.low as usize == low || self.q.low as usize == low
    }
}

impl fmt::Display for CdsContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pointers().fmt(f)
    }
}

impl Serialize for CdsContext {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An unordered pointer pair as written in context text, `{(x,x+1),(y,y+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointerPair(pub Pointer, pub Pointer);

impl PointerPair {
    pub fn new(a: Pointer, b: Pointer) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }
}

impl fmt::Display for PointerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl FromStr for PointerPair {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::BadToken(s.trim().to_string());
        let body = compact
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        // split at the comma that closes the first pointer
        let split = body.find("),").ok_or_else(bad)?;
        let a: Pointer = body[..=split].parse()?;
        let b: Pointer = body[split + 2..].parse()?;
        if a.low == b.low {
            return Err(bad());
        }
        Ok(Self::new(a, b))
    }
}

/// Every cds context of `perm`, sorted by cut positions.
pub fn list_cds_contexts<T: OneLine>(perm: &T) -> Vec<CdsContext> {
    let pairs = occurrence_pairs(perm.letters());
    let usable: Vec<_> = pairs
        .iter()
        .filter(|[a, b]| a.pointer == b.pointer)
        .collect();
    let mut out = Vec::new();
    for (i, first) in usable.iter().enumerate() {
        for second in &usable[i + 1..] {
            let (f, s) = if first[0].slot() < second[0].slot() {
                (first, second)
            } else {
                (second, first)
            };
            if f[0].slot() < s[0].slot() && s[0].slot() < f[1].slot() && f[1].slot() < s[1].slot() {
                out.push(CdsContext {
                    cuts: [f[0].cut, s[0].cut, f[1].cut, s[1].cut],
                    p: f[0].pointer,
                    q: s[0].pointer,
                });
            }
        }
    }
    out.sort();
    out
}

fn swap_blocks(letters: &[i32], [c1, c2, c3, c4]: [usize; 4]) -> Vec<i32> {
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[..c1]);
    out.extend_from_slice(&letters[c3..c4]);
    out.extend_from_slice(&letters[c2..c3]);
    out.extend_from_slice(&letters[c1..c2]);
    out.extend_from_slice(&letters[c4..]);
    out
}

/// Applies cds with the given context.
pub fn apply_cds<T: OneLine>(perm: &T, ctx: &CdsContext) -> Result<T, CdsError> {
    match CdsContext::locate(perm.letters(), ctx.p, ctx.q) {
        Some(found) if found.cuts == ctx.cuts => {
            Ok(perm.with_letters(swap_blocks(perm.letters(), found.cuts)))
        }
        _ => Err(CdsError::InvalidContext(ctx.to_string(), perm.to_string())),
    }
}

/// Applies cds for a pointer pair given without cut positions.
pub fn apply_cds_pair<T: OneLine>(perm: &T, pair: PointerPair) -> Result<(CdsContext, T), CdsError> {
    let ctx = CdsContext::locate(perm.letters(), pair.0, pair.1)
        .ok_or_else(|| CdsError::InvalidContext(pair.to_string(), perm.to_string()))?;
    let next = perm.with_letters(swap_blocks(perm.letters(), ctx.cuts));
    Ok((ctx, next))
}

/// No alternating pointer pair exists. In S_n these are exactly the rotations.
pub fn is_cds_fixed_point<T: OneLine>(perm: &T) -> bool {
    list_cds_contexts(perm).is_empty()
}

/// Fixed point of cds within S_n^± in the sense that matches the dihedral
/// family `[k .. n 1 .. k-1]`, `[-(k-1) .. -1 -n .. -k]`: no cds context and
/// no cdr context (all letters share one sign).
pub fn is_signed_cds_fixed_point(sp: &SignedPermutation) -> bool {
    (sp.is_all_positive() || sp.is_all_negative()) && is_cds_fixed_point(sp)
}

/// `C_π = Y_π X` with `X = (0 1 ... n)` and `Y_π = (a_n ... a_1 0)`.
pub fn build_c(pi: &Permutation) -> CyclePermutation {
    let a = pi.letters();
    let n = a.len();
    let x = CyclePermutation::from_map((0..=n).map(|i| (i + 1) % (n + 1)).collect());
    let mut y = vec![0; n + 1];
    y[0] = a[n - 1] as usize;
    y[a[0] as usize] = 0;
    for k in 1..n {
        y[a[k] as usize] = a[k - 1] as usize;
    }
    CyclePermutation::compose(&CyclePermutation::from_map(y), &x)
}

/// `c(π)`, the number of cycles of `C_π`.
pub fn cycle_count(pi: &Permutation) -> usize {
    build_c(pi).cycle_count()
}

/// The strategic pile: the segment `b_1 ... b_r` of the `C_π` cycle
/// `(0 ... n b_1 ... b_r)`, empty when `0` and `n` lie in different cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StrategicPile {
    elements: Vec<usize>,
}

impl StrategicPile {
    /// Pile elements in cycle order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn set(&self) -> BTreeSet<usize> {
        self.elements.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }
}

impl fmt::Display for StrategicPile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

pub fn strategic_pile(pi: &Permutation) -> StrategicPile {
    let n = pi.n();
    StrategicPile {
        elements: build_c(pi).segment(n, 0).unwrap_or_default(),
    }
}

/// Linear-time sortability test straight off the letters: walks the cycle of
/// `C_π` through `n` without materialising `C_π`. `pos` is scratch space of
/// length at least `n + 1`.
pub(crate) fn sortable_letters(a: &[i32], pos: &mut [usize]) -> bool {
    let n = a.len();
    for (i, &v) in a.iter().enumerate() {
        pos[v as usize] = i;
    }
    // C(n) = a_n; for i < n, C(i) = Y(i + 1) = a_{k-1} where a_k = i + 1, or 0 if k = 1
    let mut v = a[n - 1] as usize;
    while v != n && v != 0 {
        let k = pos[v + 1];
        v = if k == 0 { 0 } else { a[k - 1] as usize };
    }
    v == n
}

pub fn is_cds_sortable(pi: &Permutation) -> bool {
    let mut pos = vec![0; pi.n() + 1];
    sortable_letters(pi.letters(), &mut pos)
}

/// Rotation starts `k` of the cds fixed points reachable from `pi`.
pub fn reachable_cds_fixed_points(pi: &Permutation) -> BTreeSet<usize> {
    let pile = strategic_pile(pi);
    if pile.is_empty() {
        BTreeSet::from([1])
    } else {
        pile.elements.iter().map(|&x| x + 1).collect()
    }
}

/// Number of cds applications from `pi` to a fixed point; every maximal
/// sequence has this length.
pub fn cds_duration(pi: &Permutation) -> usize {
    if is_cds_fixed_point(pi) {
        return 0;
    }
    let steps = (pi.n() + 1 - cycle_count(pi)) / 2;
    if is_cds_sortable(pi) {
        steps
    } else {
        steps - 1
    }
}

/// Sorts a cds-sortable permutation by always taking the first listed context.
pub fn sort_by_cds(pi: &Permutation) -> Result<Vec<CdsContext>, CdsError> {
    if !is_cds_sortable(pi) {
        return Err(CdsError::NotSortable(pi.to_string()));
    }
    let mut moves = Vec::new();
    let mut current = pi.clone();
    while let Some(ctx) = list_cds_contexts(&current).into_iter().next() {
        current = apply_cds(&current, &ctx)?;
        moves.push(ctx);
    }
    debug_assert!(current.is_identity());
    Ok(moves)
}

fn check_pile(pile: &StrategicPile, x: usize) -> Result<(), CdsError> {
    if pile.len() < 2 {
        return Err(CdsError::PileTooSmall);
    }
    if !pile.contains(x) {
        return Err(CdsError::NotInPile(x));
    }
    Ok(())
}

/// A context built on the pointer `(x, x+1)` whose application removes `x`
/// from the pile without adding anything; the least such by cuts.
pub fn removal_move(pi: &Permutation, x: usize) -> Result<CdsContext, CdsError> {
    let pile = strategic_pile(pi);
    check_pile(&pile, x)?;
    let remaining: BTreeSet<usize> = pile.set().into_iter().filter(|&b| b != x).collect();
    list_cds_contexts(pi)
        .into_iter()
        .filter(|ctx| ctx.involves(x))
        .find(|ctx| {
            let next = apply_cds(pi, ctx).expect("listed context applies");
            strategic_pile(&next).set().is_subset(&remaining)
        })
        .ok_or(CdsError::NoWitness)
}

/// A context whose application keeps `x` in the pile; the least such by cuts.
pub fn retention_move(pi: &Permutation, x: usize) -> Result<CdsContext, CdsError> {
    let pile = strategic_pile(pi);
    check_pile(&pile, x)?;
    list_cds_contexts(pi)
        .into_iter()
        .find(|ctx| {
            let next = apply_cds(pi, ctx).expect("listed context applies");
            strategic_pile(&next).contains(x)
        })
        .ok_or(CdsError::NoWitness)
}

/// `C_{π⁻¹}`, obtained from `C_π⁻¹` by renaming each `i ∈ 1..=n` to `π(i)`.
pub fn c_of_inverse(pi: &Permutation) -> CyclePermutation {
    let mut image = vec![0; pi.n() + 1];
    for (i, &a) in pi.letters().iter().enumerate() {
        image[a as usize] = i + 1;
    }
    build_c(pi).inverse().relabel(|i| image[i])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    /// `π(j)` even iff `j` even, for all `j`.
    Preserving,
    /// `π(j)` odd iff `j` even, for all `j`.
    Switching,
    Neither,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::Preserving => "preserving",
            ParityClass::Switching => "switching",
            ParityClass::Neither => "neither",
        })
    }
}

/// Classifies by the parity of each letter's magnitude against its position.
/// A sign never changes parity.
pub fn parity_class<T: OneLine>(perm: &T) -> ParityClass {
    let matches = |(i, a): (usize, &i32)| (a.unsigned_abs() as usize) % 2 == (i + 1) % 2;
    let letters = perm.letters();
    if letters.iter().enumerate().all(matches) {
        ParityClass::Preserving
    } else if !letters.iter().enumerate().any(matches) {
        ParityClass::Switching
    } else {
        ParityClass::Neither
    }
}
