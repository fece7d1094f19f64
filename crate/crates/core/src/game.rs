//! Two-player sorting games and an exact solver.
//!
//! Players alternate cds (or cdr) moves, ONE first, until a fixed point is
//! reached. In the fixed-point games ONE wins iff that fixed point is in the
//! favorable set `F`; in normal play the player making the last move wins; in
//! misère play that player loses. A game that starts at a fixed point has no
//! moves: normal play is then lost by ONE and misère play won by ONE.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cds::{
    apply_cds, cds_duration, is_cds_sortable, list_cds_contexts, strategic_pile, CdsContext,
};
use crate::cdr::{apply_cdr, is_cdr_fixed_point, list_cdr_contexts, CdrContext};
use crate::perm::{AnyPermutation, OneLine, Permutation, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid favorable set: {0}")]
    InvalidF(String),
    #[error("favorable set is not contained in the strategic pile")]
    FNotSubsetOfPile,
    #[error("{0} is cds-sortable; the greedy bound needs a nonempty pile")]
    Sortable(String),
    #[error("no legal move from a fixed point")]
    NoMove,
    #[error("{0} games need a {1} permutation")]
    WrongPermutationKind(GameKind, &'static str),
    #[error("normal or misère goal required")]
    NotPlayCountGoal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// The player to move after `plies` moves from the start.
    pub fn after(plies: usize) -> Self {
        if plies.is_multiple_of(2) {
            Player::One
        } else {
            Player::Two
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::One => "ONE",
            Player::Two => "TWO",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    FixedPoint,
    Normal,
    Misere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    CdsFixedPoint,
    CdsNormal,
    CdsMisere,
    CdrFixedPoint,
    CdrNormal,
    CdrMisere,
}

impl GameKind {
    pub fn goal(self) -> Goal {
        match self {
            GameKind::CdsFixedPoint | GameKind::CdrFixedPoint => Goal::FixedPoint,
            GameKind::CdsNormal | GameKind::CdrNormal => Goal::Normal,
            GameKind::CdsMisere | GameKind::CdrMisere => Goal::Misere,
        }
    }

    pub fn is_cdr(self) -> bool {
        matches!(self, GameKind::CdrFixedPoint | GameKind::CdrNormal | GameKind::CdrMisere)
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::CdsFixedPoint => "cds_fixed_point",
            GameKind::CdsNormal => "cds_normal",
            GameKind::CdsMisere => "cds_misere",
            GameKind::CdrFixedPoint => "cdr_fixed_point",
            GameKind::CdrNormal => "cdr_normal",
            GameKind::CdrMisere => "cdr_misere",
        })
    }
}

/// A validated game. For cds the favorable set holds rotation starts `k`
/// (the fixed point `[k ... n 1 ... k-1]`); for cdr it holds the fixed
/// points themselves. Only the fixed-point goal consults it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSpec {
    Cds {
        start: Permutation,
        goal: Goal,
        favorable: BTreeSet<usize>,
    },
    Cdr {
        start: SignedPermutation,
        goal: Goal,
        favorable: BTreeSet<SignedPermutation>,
    },
}

impl GameSpec {
    pub fn cds(start: Permutation, goal: Goal, favorable: BTreeSet<usize>) -> Result<Self, GameError> {
        let n = start.n();
        if let Some(bad) = favorable.iter().find(|&&k| k == 0 || k > n) {
            return Err(GameError::InvalidF(format!("rotation start {bad} is outside 1..={n}")));
        }
        Ok(GameSpec::Cds { start, goal, favorable })
    }

    pub fn cdr(
        start: SignedPermutation,
        goal: Goal,
        favorable: BTreeSet<SignedPermutation>,
    ) -> Result<Self, GameError> {
        for f in &favorable {
            if f.n() != start.n() {
                return Err(GameError::InvalidF(format!("{f} has a different size than {start}")));
            }
            if !is_cdr_fixed_point(f) {
                return Err(GameError::InvalidF(format!("{f} is not a cdr fixed point")));
            }
        }
        Ok(GameSpec::Cdr { start, goal, favorable })
    }

    /// Builds a spec from a kind and an untyped start; cds kinds need an
    /// unsigned start. Signed input with all letters positive is accepted.
    pub fn from_parts(
        kind: GameKind,
        start: AnyPermutation,
        favorable_cds: BTreeSet<usize>,
        favorable_cdr: BTreeSet<SignedPermutation>,
    ) -> Result<Self, GameError> {
        if kind.is_cdr() {
            let start = match start {
                AnyPermutation::Signed(s) => s,
                AnyPermutation::Unsigned(p) => p.to_signed(),
            };
            Self::cdr(start, kind.goal(), favorable_cdr)
        } else {
            let start = match start {
                AnyPermutation::Unsigned(p) => p,
                AnyPermutation::Signed(s) => s
                    .to_unsigned()
                    .ok_or(GameError::WrongPermutationKind(kind, "unsigned"))?,
            };
            Self::cds(start, kind.goal(), favorable_cds)
        }
    }

    pub fn kind(&self) -> GameKind {
        match (self, self.goal()) {
            (GameSpec::Cds { .. }, Goal::FixedPoint) => GameKind::CdsFixedPoint,
            (GameSpec::Cds { .. }, Goal::Normal) => GameKind::CdsNormal,
            (GameSpec::Cds { .. }, Goal::Misere) => GameKind::CdsMisere,
            (GameSpec::Cdr { .. }, Goal::FixedPoint) => GameKind::CdrFixedPoint,
            (GameSpec::Cdr { .. }, Goal::Normal) => GameKind::CdrNormal,
            (GameSpec::Cdr { .. }, Goal::Misere) => GameKind::CdrMisere,
        }
    }

    pub fn goal(&self) -> Goal {
        match self {
            GameSpec::Cds { goal, .. } | GameSpec::Cdr { goal, .. } => *goal,
        }
    }

    pub fn start(&self) -> AnyPermutation {
        match self {
            GameSpec::Cds { start, .. } => AnyPermutation::Unsigned(start.clone()),
            GameSpec::Cdr { start, .. } => AnyPermutation::Signed(start.clone()),
        }
    }

    /// The favorable set in text form: rotations for cds, signed fixed points
    /// for cdr.
    pub fn favorable_text(&self) -> Vec<String> {
        match self {
            GameSpec::Cds { start, favorable, .. } => favorable
                .iter()
                .map(|&k| Permutation::rotation(start.n(), k).expect("validated").to_string())
                .collect(),
            GameSpec::Cdr { favorable, .. } => favorable.iter().map(|f| f.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameMove {
    Cds(CdsContext),
    Cdr(CdrContext),
}

impl fmt::Display for GameMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameMove::Cds(c) => c.fmt(f),
            GameMove::Cdr(c) => c.fmt(f),
        }
    }
}

impl Serialize for GameMove {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Move generation and terminal scoring for one game.
pub trait Rules: Send + Sync {
    type State: Clone + Eq + Hash + Send + Sync + fmt::Display;

    /// Legal moves with their successors, one move per distinct successor,
    /// keeping the first in context order. Empty exactly at fixed points.
    fn successors(&self, state: &Self::State) -> Vec<(GameMove, Self::State)>;

    /// Winner at a fixed point, given the player who would move next.
    fn terminal_winner(&self, state: &Self::State, to_move: Player) -> Player;
}

fn dedup_successors<S: Eq + Hash + Clone>(moves: impl Iterator<Item = (GameMove, S)>) -> Vec<(GameMove, S)> {
    let mut seen = std::collections::HashSet::new();
    moves.filter(|(_, s)| seen.insert(s.clone())).collect()
}

fn goal_winner(goal: Goal, to_move: Player, favorable: bool) -> Player {
    match goal {
        Goal::FixedPoint if favorable => Player::One,
        Goal::FixedPoint => Player::Two,
        Goal::Normal => to_move.other(),
        Goal::Misere => to_move,
    }
}

#[derive(Debug, Clone)]
pub struct CdsRules {
    pub goal: Goal,
    /// Rotation starts favorable to ONE.
    pub favorable: BTreeSet<usize>,
}

impl Rules for CdsRules {
    type State = Permutation;

    fn successors(&self, state: &Permutation) -> Vec<(GameMove, Permutation)> {
        dedup_successors(list_cds_contexts(state).into_iter().map(|ctx| {
            let next = apply_cds(state, &ctx).expect("listed context applies");
            (GameMove::Cds(ctx), next)
        }))
    }

    fn terminal_winner(&self, state: &Permutation, to_move: Player) -> Player {
        let favorable = state.rotation_start().is_some_and(|k| self.favorable.contains(&k));
        goal_winner(self.goal, to_move, favorable)
    }
}

#[derive(Debug, Clone)]
pub struct CdrRules {
    pub goal: Goal,
    pub favorable: BTreeSet<SignedPermutation>,
}

impl Rules for CdrRules {
    type State = SignedPermutation;

    fn successors(&self, state: &SignedPermutation) -> Vec<(GameMove, SignedPermutation)> {
        dedup_successors(list_cdr_contexts(state).into_iter().map(|ctx| {
            let next = apply_cdr(state, &ctx).expect("listed context applies");
            (GameMove::Cdr(ctx), next)
        }))
    }

    fn terminal_winner(&self, state: &SignedPermutation, to_move: Player) -> Player {
        goal_winner(self.goal, to_move, self.favorable.contains(state))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameOutcome {
    pub winner: Player,
    /// One optimal line: the winner always plays its first winning move, the
    /// loser its first legal move.
    pub principal_variation: Vec<GameMove>,
    pub states_explored: usize,
}

/// Backward induction with a transposition table keyed by position and side
/// to move. Safe to share between threads.
pub struct Solver<R: Rules> {
    rules: R,
    table: DashMap<(R::State, Player), Player>,
}

impl<R: Rules> Solver<R> {
    pub fn new(rules: R) -> Self {
        Self {
            rules,
            table: DashMap::new(),
        }
    }

    pub fn rules(&self) -> &R {
        &self.rules
    }

    pub fn states_explored(&self) -> usize {
        self.table.len()
    }

    pub fn moves(&self, state: &R::State) -> Vec<(GameMove, R::State)> {
        self.rules.successors(state)
    }

    /// The winner under optimal play from `state` with `to_move` to play.
    pub fn winner(&self, state: &R::State, to_move: Player) -> Player {
        let key = (state.clone(), to_move);
        if let Some(hit) = self.table.get(&key) {
            return *hit;
        }
        let moves = self.rules.successors(state);
        let verdict = if moves.is_empty() {
            self.rules.terminal_winner(state, to_move)
        } else if moves.iter().any(|(_, next)| self.winner(next, to_move.other()) == to_move) {
            to_move
        } else {
            to_move.other()
        };
        self.table.insert(key, verdict);
        verdict
    }

    /// The mover's first winning move if one exists, else its first move.
    pub fn best_move(&self, state: &R::State, to_move: Player) -> Option<(GameMove, R::State)> {
        let moves = self.rules.successors(state);
        let winning = moves
            .iter()
            .position(|(_, next)| self.winner(next, to_move.other()) == to_move)
            .unwrap_or(0);
        moves.into_iter().nth(winning)
    }

    pub fn principal_variation(&self, state: &R::State, to_move: Player) -> Vec<GameMove> {
        let mut line = Vec::new();
        let (mut current, mut mover) = (state.clone(), to_move);
        while let Some((mv, next)) = self.best_move(&current, mover) {
            line.push(mv);
            current = next;
            mover = mover.other();
        }
        line
    }

    pub fn solve_from(&self, state: &R::State) -> GameOutcome {
        let winner = self.winner(state, Player::One);
        GameOutcome {
            winner,
            principal_variation: self.principal_variation(state, Player::One),
            states_explored: self.states_explored(),
        }
    }
}

/// A solver for either operation, working on untyped permutations.
pub enum GameEngine {
    Cds(Solver<CdsRules>),
    Cdr(Solver<CdrRules>),
}

impl GameEngine {
    pub fn new(spec: &GameSpec) -> Self {
        match spec {
            GameSpec::Cds { goal, favorable, .. } => GameEngine::Cds(Solver::new(CdsRules {
                goal: *goal,
                favorable: favorable.clone(),
            })),
            GameSpec::Cdr { goal, favorable, .. } => GameEngine::Cdr(Solver::new(CdrRules {
                goal: *goal,
                favorable: favorable.clone(),
            })),
        }
    }

    pub fn moves(&self, state: &AnyPermutation) -> Vec<(GameMove, AnyPermutation)> {
        match (self, state) {
            (GameEngine::Cds(s), AnyPermutation::Unsigned(p)) => s
                .moves(p)
                .into_iter()
                .map(|(m, n)| (m, AnyPermutation::Unsigned(n)))
                .collect(),
            (GameEngine::Cdr(s), AnyPermutation::Signed(p)) => s
                .moves(p)
                .into_iter()
                .map(|(m, n)| (m, AnyPermutation::Signed(n)))
                .collect(),
            _ => panic!("state kind does not match the game"),
        }
    }

    pub fn winner(&self, state: &AnyPermutation, to_move: Player) -> Player {
        match (self, state) {
            (GameEngine::Cds(s), AnyPermutation::Unsigned(p)) => s.winner(p, to_move),
            (GameEngine::Cdr(s), AnyPermutation::Signed(p)) => s.winner(p, to_move),
            _ => panic!("state kind does not match the game"),
        }
    }

    pub fn best_move(&self, state: &AnyPermutation, to_move: Player) -> Option<(GameMove, AnyPermutation)> {
        match (self, state) {
            (GameEngine::Cds(s), AnyPermutation::Unsigned(p)) => {
                s.best_move(p, to_move).map(|(m, n)| (m, AnyPermutation::Unsigned(n)))
            }
            (GameEngine::Cdr(s), AnyPermutation::Signed(p)) => {
                s.best_move(p, to_move).map(|(m, n)| (m, AnyPermutation::Signed(n)))
            }
            _ => panic!("state kind does not match the game"),
        }
    }

    /// Winner declared at a fixed point reached after `plies` moves.
    pub fn terminal_winner(&self, state: &AnyPermutation, plies: usize) -> Player {
        let to_move = Player::after(plies);
        match (self, state) {
            (GameEngine::Cds(s), AnyPermutation::Unsigned(p)) => s.rules().terminal_winner(p, to_move),
            (GameEngine::Cdr(s), AnyPermutation::Signed(p)) => s.rules().terminal_winner(p, to_move),
            _ => panic!("state kind does not match the game"),
        }
    }

    pub fn states_explored(&self) -> usize {
        match self {
            GameEngine::Cds(s) => s.states_explored(),
            GameEngine::Cdr(s) => s.states_explored(),
        }
    }
}

/// Solves the game exactly by full search.
pub fn solve(spec: &GameSpec) -> GameOutcome {
    match spec {
        GameSpec::Cds { start, goal, favorable } => Solver::new(CdsRules {
            goal: *goal,
            favorable: favorable.clone(),
        })
        .solve_from(start),
        GameSpec::Cdr { start, goal, favorable } => Solver::new(CdrRules {
            goal: *goal,
            favorable: favorable.clone(),
        })
        .solve_from(start),
    }
}

/// Winner of the cds normal or misère game from the parity of the duration:
/// every maximal play has the same length.
pub fn cds_parity_fast_path(pi: &Permutation, goal: Goal) -> Result<Player, GameError> {
    let last_mover_wins = match goal {
        Goal::Normal => true,
        Goal::Misere => false,
        Goal::FixedPoint => return Err(GameError::NotPlayCountGoal),
    };
    let duration = cds_duration(pi);
    // with no moves at all, ONE is the player unable to move
    let last_mover = Player::after(duration + 1);
    Ok(if last_mover_wins { last_mover } else { last_mover.other() })
}

/// The greedy thresholds on counts alone: ONE when `|F| ≥ 3/4·|SP|`, TWO when
/// `|F| < 1/4·|SP| - 2`, otherwise no verdict.
pub fn greedy_threshold(pile_size: usize, favorable_count: usize) -> Option<Player> {
    if 4 * favorable_count >= 3 * pile_size {
        Some(Player::One)
    } else if 4 * favorable_count + 8 < pile_size {
        Some(Player::Two)
    } else {
        None
    }
}

fn check_favorable(pi: &Permutation, favorable: &BTreeSet<usize>) -> Result<BTreeSet<usize>, GameError> {
    let pile = strategic_pile(pi).set();
    if !favorable.is_subset(&pile) {
        return Err(GameError::FNotSubsetOfPile);
    }
    Ok(pile)
}

/// Greedy verdict for `CDS(pi, F)`. Here `favorable` lists pile elements
/// `x`, each standing for the rotation starting at `x + 1`.
pub fn greedy_bound(pi: &Permutation, favorable: &BTreeSet<usize>) -> Result<Option<Player>, GameError> {
    if is_cds_sortable(pi) {
        return Err(GameError::Sortable(pi.to_string()));
    }
    let pile = check_favorable(pi, favorable)?;
    Ok(greedy_threshold(pile.len(), favorable.len()))
}

/// The greedy move for the player favored by `favorable` (pile elements):
/// remove as many opposing pile elements as possible, ties broken by cut
/// order.
pub fn greedy_strategy_move(pi: &Permutation, favorable: &BTreeSet<usize>) -> Result<CdsContext, GameError> {
    let pile = check_favorable(pi, favorable)?;
    let opposing: BTreeSet<usize> = pile.difference(favorable).copied().collect();
    let mut best: Option<(usize, CdsContext)> = None;
    for ctx in list_cds_contexts(pi) {
        let next = strategic_pile(&apply_cds(pi, &ctx).expect("listed context applies")).set();
        let removed = opposing.difference(&next).count();
        if best.is_none_or(|(score, _)| removed > score) {
            best = Some((removed, ctx));
        }
    }
    best.map(|(_, ctx)| ctx).ok_or(GameError::NoMove)
}
