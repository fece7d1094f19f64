//! Context directed reversals on signed permutations.
//!
//! A cdr context is a pointer `p` that occurs once as `(x, x+1)` and once as
//! `-(x+1, x)`. The block between the two occurrences is reversed and every
//! letter in it negated. Unlike cds, the fixed point reached depends on play
//! order, so sortability and reachability are answered by memoized search.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::cds::{is_signed_cds_fixed_point, parity_class, ParityClass};
use crate::cycle::CyclePermutation;
use crate::perm::{occurrence_pairs, OneLine, ParseError, Pointer, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdrError {
    #[error("{0} is not a cdr context of {1}")]
    InvalidContext(String, String),
}

/// A pointer value whose two occurrences carry opposite signs, with the cuts
/// of those occurrences (`c1 < c2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CdrContext {
    /// Always the positive form `(x, x+1)`.
    pub p: Pointer,
    pub cuts: [usize; 2],
}

impl CdrContext {
    pub fn locate(letters: &[i32], pointer: Pointer) -> Option<Self> {
        let low = pointer.low as usize;
        let [o1, o2] = *occurrence_pairs(letters).get(low.checked_sub(1)?)?;
        (o1.pointer.negative != o2.pointer.negative).then_some(CdrContext {
            p: Pointer::positive(pointer.low),
            cuts: [o1.cut, o2.cut],
        })
    }

    pub fn low(&self) -> usize {
        self.p.low as usize
    }
}

impl fmt::Display for CdrContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.p.fmt(f)
    }
}

impl Serialize for CdrContext {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The pointer named by cdr context text: `(x,x+1)`, `-(x+1,x)` or `±(x,x+1)`,
/// normalised to the positive form.
pub fn parse_cdr_pointer(text: &str) -> Result<Pointer, ParseError> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix('±').unwrap_or(trimmed);
    let p: Pointer = body.parse()?;
    Ok(Pointer::positive(p.low))
}

/// Every cdr context, in ascending pointer order.
pub fn list_cdr_contexts(sp: &SignedPermutation) -> Vec<CdrContext> {
    occurrence_pairs(sp.letters())
        .into_iter()
        .filter(|[a, b]| a.pointer.negative != b.pointer.negative)
        .map(|[a, b]| CdrContext {
            p: Pointer::positive(a.pointer.low),
            cuts: [a.cut, b.cut],
        })
        .collect()
}

fn reverse_negate(letters: &[i32], [c1, c2]: [usize; 2]) -> Vec<i32> {
    let mut out = letters.to_vec();
    out[c1..c2].reverse();
    for a in &mut out[c1..c2] {
        *a = -*a;
    }
    out
}

pub fn apply_cdr(sp: &SignedPermutation, ctx: &CdrContext) -> Result<SignedPermutation, CdrError> {
    match CdrContext::locate(sp.letters(), ctx.p) {
        Some(found) if found == *ctx => Ok(sp.with_letters(reverse_negate(sp.letters(), found.cuts))),
        _ => Err(CdrError::InvalidContext(ctx.to_string(), sp.to_string())),
    }
}

/// Applies cdr at a pointer given without cut positions.
pub fn apply_cdr_pointer(
    sp: &SignedPermutation,
    pointer: Pointer,
) -> Result<(CdrContext, SignedPermutation), CdrError> {
    let ctx = CdrContext::locate(sp.letters(), pointer)
        .ok_or_else(|| CdrError::InvalidContext(Pointer::positive(pointer.low).to_string(), sp.to_string()))?;
    let next = sp.with_letters(reverse_negate(sp.letters(), ctx.cuts));
    Ok((ctx, next))
}

/// All letters share one sign.
pub fn is_cdr_fixed_point(sp: &SignedPermutation) -> bool {
    sp.is_all_positive() || sp.is_all_negative()
}

/// `π* = f(a_1) ‖ ... ‖ f(a_n)` with `f(m) = [2m-1, 2m]` for `m > 0` and
/// `f(m) = [2|m|, 2|m|-1]` for `m < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpandedString {
    pub values: Vec<usize>,
}

impl fmt::Display for ExpandedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for ExpandedString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn expand_star(sp: &SignedPermutation) -> ExpandedString {
    let mut values = Vec::with_capacity(2 * sp.n());
    for &a in sp.letters() {
        let m = a.unsigned_abs() as usize;
        if a > 0 {
            values.extend([2 * m - 1, 2 * m]);
        } else {
            values.extend([2 * m, 2 * m - 1]);
        }
    }
    ExpandedString { values }
}

/// `D_π = V_π U` on `{0..2n+1}` with `U = (0 1)(2 3)...(2n 2n+1)` and
/// `V_π = (0 b_1)(b_2 b_3)...(b_2n 2n+1)`.
pub fn build_d(sp: &SignedPermutation) -> CyclePermutation {
    let n = sp.n();
    let size = 2 * n + 2;
    let u = CyclePermutation::from_map((0..size).map(|i| i ^ 1).collect());
    let mut b = Vec::with_capacity(size);
    b.push(0);
    b.extend(expand_star(sp).values);
    b.push(2 * n + 1);
    let mut v = vec![0; size];
    for pair in b.chunks(2) {
        v[pair[0]] = pair[1];
        v[pair[1]] = pair[0];
    }
    CyclePermutation::compose(&CyclePermutation::from_map(v), &u)
}

/// `0` and `2n` lie in distinct cycles of `D_π`. Necessary, not sufficient,
/// for cdr-sortability.
pub fn cdr_necessary_condition(sp: &SignedPermutation) -> bool {
    !build_d(sp).same_cycle(0, 2 * sp.n())
}

/// The segment of `D_π` strictly between `2n` and `0`, or `None` when they
/// lie in different cycles. Exposed for inspection only.
pub fn pile_analogue(sp: &SignedPermutation) -> Option<Vec<usize>> {
    build_d(sp).segment(2 * sp.n(), 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CdrTarget {
    Identity,
    #[serde(alias = "reverse")]
    ReversedNegative,
}

impl CdrTarget {
    pub fn state(self, n: usize) -> SignedPermutation {
        match self {
            CdrTarget::Identity => SignedPermutation::identity(n),
            CdrTarget::ReversedNegative => SignedPermutation::reversed_negative(n),
        }
    }

    fn index(self) -> usize {
        match self {
            CdrTarget::Identity => 0,
            CdrTarget::ReversedNegative => 1,
        }
    }
}

impl fmt::Display for CdrTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CdrTarget::Identity => "identity",
            CdrTarget::ReversedNegative => "reversed_negative",
        })
    }
}

impl FromStr for CdrTarget {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "identity" => Ok(CdrTarget::Identity),
            "reverse" | "reversed_negative" | "reversed-negative" => Ok(CdrTarget::ReversedNegative),
            other => Err(ParseError::BadToken(other.to_string())),
        }
    }
}

/// Memoized cdr search. Verdicts depend only on the state, so one table per
/// target serves every query; concurrent writers always store equal values.
#[derive(Debug, Default)]
pub struct CdrSearch {
    reaches: [DashMap<SignedPermutation, bool>; 2],
    fixed_points: DashMap<SignedPermutation, Arc<BTreeSet<SignedPermutation>>>,
}

impl CdrSearch {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by the free functions.
    pub fn global() -> &'static CdrSearch {
        static GLOBAL: OnceLock<CdrSearch> = OnceLock::new();
        GLOBAL.get_or_init(CdrSearch::new)
    }

    fn successors(sp: &SignedPermutation) -> impl Iterator<Item = (CdrContext, SignedPermutation)> + '_ {
        list_cdr_contexts(sp).into_iter().map(move |ctx| {
            let next = sp.with_letters(reverse_negate(sp.letters(), ctx.cuts));
            (ctx, next)
        })
    }

    /// Whether some cdr sequence from `sp` ends at `target`.
    pub fn can_reach(&self, sp: &SignedPermutation, target: CdrTarget) -> bool {
        if is_cdr_fixed_point(sp) {
            return *sp == target.state(sp.n());
        }
        let table = &self.reaches[target.index()];
        if let Some(hit) = table.get(sp) {
            return *hit;
        }
        let verdict = Self::successors(sp).any(|(_, next)| self.can_reach(&next, target));
        table.insert(sp.clone(), verdict);
        verdict
    }

    /// A sorting sequence to `target`, exploring contexts in ascending pointer
    /// order and returning the first success.
    pub fn sort(&self, sp: &SignedPermutation, target: CdrTarget) -> Option<Vec<CdrContext>> {
        if !self.can_reach(sp, target) {
            return None;
        }
        let mut moves = Vec::new();
        let mut current = sp.clone();
        while !is_cdr_fixed_point(&current) {
            let (ctx, next) = Self::successors(&current)
                .find(|(_, next)| self.can_reach(next, target))
                .expect("a reaching state has a reaching successor");
            moves.push(ctx);
            current = next;
        }
        Some(moves)
    }

    /// Every cdr fixed point reachable from `sp`.
    pub fn reachable_fixed_points(&self, sp: &SignedPermutation) -> Arc<BTreeSet<SignedPermutation>> {
        if is_cdr_fixed_point(sp) {
            return Arc::new(BTreeSet::from([sp.clone()]));
        }
        if let Some(hit) = self.fixed_points.get(sp) {
            return Arc::clone(&hit);
        }
        let mut out = BTreeSet::new();
        for (_, next) in Self::successors(sp) {
            out.extend(self.reachable_fixed_points(&next).iter().cloned());
        }
        let out = Arc::new(out);
        self.fixed_points.insert(sp.clone(), Arc::clone(&out));
        out
    }
}

pub fn search_cdr_sort(sp: &SignedPermutation, target: CdrTarget) -> Option<Vec<CdrContext>> {
    CdrSearch::global().sort(sp, target)
}

pub fn is_cdr_sortable(sp: &SignedPermutation, target: CdrTarget) -> bool {
    CdrSearch::global().can_reach(sp, target)
}

pub fn reachable_cdr_fixed_points(sp: &SignedPermutation) -> BTreeSet<SignedPermutation> {
    CdrSearch::global().reachable_fixed_points(sp).as_ref().clone()
}

pub fn signed_parity_class(sp: &SignedPermutation) -> ParityClass {
    parity_class(sp)
}

/// Generators `μ_n = [2 3 ... n 1]` (order `n`) and `ν_n = [-n ... -2 -1]`
/// (order 2) of the dihedral group of signed cds fixed points.
pub fn dihedral_generators(n: usize) -> (SignedPermutation, SignedPermutation) {
    let mu: Vec<i32> = (0..n).map(|i| ((i + 1) % n) as i32 + 1).collect();
    (
        SignedPermutation::new(mu).expect("rotation is a bijection"),
        SignedPermutation::reversed_negative(n),
    )
}

/// Closure of the identity under composition with `μ_n` and `ν_n`.
pub fn dihedral_group(n: usize) -> BTreeSet<SignedPermutation> {
    let (mu, nu) = dihedral_generators(n);
    let mut group = BTreeSet::from([SignedPermutation::identity(n)]);
    let mut frontier = vec![SignedPermutation::identity(n)];
    while let Some(g) = frontier.pop() {
        for gen in [&mu, &nu] {
            let h = SignedPermutation::compose(gen, &g).expect("same size");
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    debug_assert!(group.iter().all(is_signed_cds_fixed_point));
    group
}
