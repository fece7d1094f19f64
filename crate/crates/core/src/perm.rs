//! Unsigned and signed permutations in one-line inverse-image notation,
//! together with the pointer machinery both sorting operations act on.
//!
//! A permutation `[a_1 a_2 ... a_n]` lists `a_i = π⁻¹(i)`. Pointers sit in
//! the `n + 1` gaps ("cuts") between letters: the left pointer of the letter
//! at 1-based index `i` occupies cut `i - 1`, its right pointer cut `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty permutation")]
    Empty,
    #[error("unrecognised token `{0}`")]
    BadToken(String),
    #[error("zero is not a valid letter")]
    ZeroEntry,
    #[error("signed letter {0} in an unsigned permutation")]
    SignedEntryInUnsignedMode(i64),
    #[error("letters are not a bijection of 1..={n}: {detail}")]
    NotABijection { n: usize, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("rotation start {k} out of range 1..={n}")]
    OutOfRange { n: usize, k: usize },
}

/// Read access to the one-line letters shared by [`Permutation`] and
/// [`SignedPermutation`]. The sorting operations are written against this.
pub trait OneLine: Clone + Eq + std::hash::Hash + fmt::Display {
    fn letters(&self) -> &[i32];

    /// Rebuilds a value of the same kind from letters that are already known
    /// to be valid (a block rearrangement of `self`, for example).
    #[doc(hidden)]
    fn with_letters(&self, letters: Vec<i32>) -> Self;

    fn n(&self) -> usize {
        self.letters().len()
    }

    fn pointer_occurrences(&self) -> Vec<PointerOccurrence> {
        pointer_occurrences(self.letters())
    }

    fn adjacencies(&self) -> Vec<Adjacency> {
        adjacencies(self.letters())
    }
}

/// An element of S_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<i32>,
}

/// An element of S_n^±, a bijection on `{±1..±n}` with `π(-i) = -π(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    letters: Vec<i32>,
}

fn tokens(text: &str) -> Result<Vec<i64>, ParseError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .map(|rest| rest.strip_suffix(']').unwrap_or(rest))
        .unwrap_or(trimmed);
    let mut out = Vec::new();
    for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        // accept the typographic minus as well as ASCII
        let normalised = tok.replace('\u{2212}', "-");
        let value = normalised
            .parse::<i64>()
            .map_err(|_| ParseError::BadToken(tok.to_string()))?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(out)
}

fn check_magnitudes(values: &[i64]) -> Result<Vec<i32>, ParseError> {
    let n = values.len();
    let mut seen = vec![false; n + 1];
    for &v in values {
        if v == 0 {
            return Err(ParseError::ZeroEntry);
        }
        let m = v.unsigned_abs() as usize;
        if m > n {
            return Err(ParseError::NotABijection {
                n,
                detail: format!("{v} is out of range"),
            });
        }
        if seen[m] {
            return Err(ParseError::NotABijection {
                n,
                detail: format!("{m} appears more than once"),
            });
        }
        seen[m] = true;
    }
    Ok(values.iter().map(|&v| v as i32).collect())
}

impl Permutation {
    pub fn new(letters: Vec<i32>) -> Result<Self, ParseError> {
        let values: Vec<i64> = letters.iter().map(|&v| v as i64).collect();
        if values.is_empty() {
            return Err(ParseError::Empty);
        }
        if let Some(&neg) = values.iter().find(|&&v| v < 0) {
            return Err(ParseError::SignedEntryInUnsignedMode(neg));
        }
        Ok(Self {
            letters: check_magnitudes(&values)?,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            letters: (1..=n as i32).collect(),
        }
    }

    /// The reverse order `[n ... 2 1]`.
    pub fn reversed(n: usize) -> Self {
        Self {
            letters: (1..=n as i32).rev().collect(),
        }
    }

    /// The cds fixed point `[k (k+1) ... n 1 ... (k-1)]`; `k = 1` is the identity.
    pub fn rotation(n: usize, k: usize) -> Result<Self, PermError> {
        if k == 0 || k > n {
            return Err(PermError::OutOfRange { n, k });
        }
        let letters = (k..=n).chain(1..k).map(|v| v as i32).collect();
        Ok(Self { letters })
    }

    /// Returns `Some(k)` when `self` is the rotation starting at `k`.
    pub fn rotation_start(&self) -> Option<usize> {
        let n = self.n() as i32;
        let k = self.letters[0];
        self.letters
            .iter()
            .enumerate()
            .all(|(i, &a)| a == (k - 1 + i as i32) % n + 1)
            .then_some(k as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().enumerate().all(|(i, &a)| a == i as i32 + 1)
    }

    /// `π(v)`: the 1-based position of the letter `v`.
    pub fn image(&self, v: usize) -> usize {
        self.letters.iter().position(|&a| a == v as i32).unwrap() + 1
    }

    pub fn inverse(&self) -> Self {
        let mut letters = vec![0; self.n()];
        for (i, &a) in self.letters.iter().enumerate() {
            letters[a as usize - 1] = i as i32 + 1;
        }
        Self { letters }
    }

    /// Functional composition `outer ∘ inner` (apply `inner` first).
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, PermError> {
        if outer.n() != inner.n() {
            return Err(PermError::SizeMismatch(outer.n(), inner.n()));
        }
        let letters = outer
            .letters
            .iter()
            .map(|&s| inner.letters[s as usize - 1])
            .collect();
        Ok(Self { letters })
    }

    pub fn to_signed(&self) -> SignedPermutation {
        SignedPermutation {
            letters: self.letters.clone(),
        }
    }
}

impl SignedPermutation {
    pub fn new(letters: Vec<i32>) -> Result<Self, ParseError> {
        let values: Vec<i64> = letters.iter().map(|&v| v as i64).collect();
        if values.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(Self {
            letters: check_magnitudes(&values)?,
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation::identity(n).to_signed()
    }

    /// `[-n -(n-1) ... -1]`, the goal of reverse cdr-sorting.
    pub fn reversed_negative(n: usize) -> Self {
        Self {
            letters: (1..=n as i32).rev().map(|v| -v).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().enumerate().all(|(i, &a)| a == i as i32 + 1)
    }

    pub fn is_all_positive(&self) -> bool {
        self.letters.iter().all(|&a| a > 0)
    }

    pub fn is_all_negative(&self) -> bool {
        self.letters.iter().all(|&a| a < 0)
    }

    /// The unsigned permutation, if every letter is positive.
    pub fn to_unsigned(&self) -> Option<Permutation> {
        self.is_all_positive().then(|| Permutation {
            letters: self.letters.clone(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut letters = vec![0; self.n()];
        for (i, &a) in self.letters.iter().enumerate() {
            letters[a.unsigned_abs() as usize - 1] = a.signum() * (i as i32 + 1);
        }
        Self { letters }
    }

    /// Functional composition `outer ∘ inner` on `{±1..±n}`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, PermError> {
        if outer.n() != inner.n() {
            return Err(PermError::SizeMismatch(outer.n(), inner.n()));
        }
        let letters = outer
            .letters
            .iter()
            .map(|&s| s.signum() * inner.letters[s.unsigned_abs() as usize - 1])
            .collect();
        Ok(Self { letters })
    }
}

impl OneLine for Permutation {
    fn letters(&self) -> &[i32] {
        &self.letters
    }

    fn with_letters(&self, letters: Vec<i32>) -> Self {
        debug_assert_eq!(letters.len(), self.letters.len());
        Self { letters }
    }
}

impl OneLine for SignedPermutation {
    fn letters(&self) -> &[i32] {
        &self.letters
    }

    fn with_letters(&self, letters: Vec<i32>) -> Self {
        debug_assert_eq!(letters.len(), self.letters.len());
        Self { letters }
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[i32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, a) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("]")
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = tokens(s)?;
        if let Some(&neg) = values.iter().find(|&&v| v < 0) {
            return Err(ParseError::SignedEntryInUnsignedMode(neg));
        }
        Ok(Self {
            letters: check_magnitudes(&values)?,
        })
    }
}

impl FromStr for SignedPermutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self {
            letters: check_magnitudes(&tokens(s)?)?,
        })
    }
}

macro_rules! text_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let text = String::deserialize(deserializer)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

text_serde!(Permutation);
text_serde!(SignedPermutation);

/// Either kind of permutation, as produced by [`parse`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyPermutation {
    Unsigned(Permutation),
    Signed(SignedPermutation),
}

impl fmt::Display for AnyPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPermutation::Unsigned(p) => p.fmt(f),
            AnyPermutation::Signed(p) => p.fmt(f),
        }
    }
}

/// Parses `[a_1 a_2 ... a_n]` (brackets optional) as an unsigned or signed
/// permutation.
pub fn parse(text: &str, signed: bool) -> Result<AnyPermutation, ParseError> {
    if signed {
        text.parse().map(AnyPermutation::Signed)
    } else {
        text.parse().map(AnyPermutation::Unsigned)
    }
}

/// A pointer: positive `(x, x+1)` or its negative `-(x+1, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pointer {
    pub low: u32,
    pub negative: bool,
}

impl Pointer {
    pub const fn positive(low: u32) -> Self {
        Self {
            low,
            negative: false,
        }
    }

    pub const fn negated(low: u32) -> Self {
        Self {
            low,
            negative: true,
        }
    }

    pub fn opposite(self) -> Self {
        Self {
            low: self.low,
            negative: !self.negative,
        }
    }
}

impl fmt::Display for Pointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-({},{})", self.low + 1, self.low)
        } else {
            write!(f, "({},{})", self.low, self.low + 1)
        }
    }
}

impl FromStr for Pointer {
    type Err = ParseError;

    /// Accepts `(x,x+1)` and `-(x+1,x)`, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let bad = || ParseError::BadToken(s.trim().to_string());
        let (negative, body) = match compact.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, compact.as_str()),
        };
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (first, second) = body.split_once(',').ok_or_else(bad)?;
        let first: u32 = first.parse().map_err(|_| bad())?;
        let second: u32 = second.parse().map_err(|_| bad())?;
        let low = match (negative, second.checked_sub(first), first.checked_sub(second)) {
            (false, Some(1), _) => first,
            (true, _, Some(1)) => second,
            _ => return Err(bad()),
        };
        if low == 0 {
            return Err(bad());
        }
        Ok(Self { low, negative })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointerOccurrence {
    pub pointer: Pointer,
    /// 1-based index of the letter carrying the pointer.
    pub element_index: usize,
    pub side: Side,
    pub cut: usize,
}

impl PointerOccurrence {
    /// Total order of occurrences along the string: each letter contributes a
    /// left slot followed by a right slot.
    pub fn slot(&self) -> usize {
        2 * (self.element_index - 1) + usize::from(self.side == Side::Right)
    }
}

fn left_pointer(a: i32, n: i32) -> Option<Pointer> {
    if a > 1 {
        Some(Pointer::positive(a as u32 - 1))
    } else if a < 0 && -a < n {
        Some(Pointer::negated(a.unsigned_abs()))
    } else {
        None
    }
}

fn right_pointer(a: i32, n: i32) -> Option<Pointer> {
    if a > 0 && a < n {
        Some(Pointer::positive(a as u32))
    } else if a < -1 {
        Some(Pointer::negated(a.unsigned_abs() - 1))
    } else {
        None
    }
}

/// Every pointer occurrence, left to right; a letter's left pointer precedes
/// its right pointer.
pub fn pointer_occurrences(letters: &[i32]) -> Vec<PointerOccurrence> {
    let n = letters.len() as i32;
    let mut out = Vec::with_capacity(2 * letters.len());
    for (i, &a) in letters.iter().enumerate() {
        if let Some(pointer) = left_pointer(a, n) {
            out.push(PointerOccurrence {
                pointer,
                element_index: i + 1,
                side: Side::Left,
                cut: i,
            });
        }
        if let Some(pointer) = right_pointer(a, n) {
            out.push(PointerOccurrence {
                pointer,
                element_index: i + 1,
                side: Side::Right,
                cut: i + 1,
            });
        }
    }
    out
}

/// The two occurrences of every pointer value `x = 1..n-1`, indexed by `x - 1`,
/// in string order.
pub(crate) fn occurrence_pairs(letters: &[i32]) -> Vec<[PointerOccurrence; 2]> {
    let n = letters.len();
    let mut slots: Vec<Vec<PointerOccurrence>> = vec![Vec::with_capacity(2); n.saturating_sub(1)];
    for occ in pointer_occurrences(letters) {
        slots[occ.pointer.low as usize - 1].push(occ);
    }
    slots
        .into_iter()
        .map(|v| {
            debug_assert_eq!(v.len(), 2);
            [v[0], v[1]]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Adjacency {
    /// 1-based index `i` with `a_i + 1 = a_{i+1}`.
    pub position: usize,
}

pub fn adjacencies(letters: &[i32]) -> Vec<Adjacency> {
    letters
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] + 1 == w[1])
        .map(|(i, _)| Adjacency { position: i + 1 })
        .collect()
}
