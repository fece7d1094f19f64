//! Game sessions: a game, the moves played so far, and the engine that
//! answers for either side.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use cdsort::{
    apply_cds_pair, apply_cdr_pointer, list_cds_contexts, list_cdr_contexts, parse, parse_cdr_pointer,
    reachable_cdr_fixed_points, reachable_cds_fixed_points, strategic_pile, AnyPermutation, GameEngine, GameError,
    GameKind, GameMove, GameSpec, ParseError, Permutation, Player, SignedPermutation,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest sizes a session accepts, to keep solver latency interactive.
pub const MAX_CDS_N: usize = 10;
pub const MAX_CDR_N: usize = 7;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("cannot parse {what}: {source}")]
    Parse {
        what: &'static str,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("{0} letters is too many for an interactive session (limit {1})")]
    TooLarge(usize, usize),
    #[error("no session with id {0}")]
    NotFound(String),
    #[error("{0} is not a legal move from {1}")]
    IllegalMove(String, String),
    #[error("the game is finished")]
    Finished,
    #[error("journal: {0}")]
    Journal(String),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::Parse { .. } => "parse_error",
            SessionError::Game(GameError::InvalidF(_)) => "invalid_f",
            SessionError::Game(_) => "invalid_spec",
            SessionError::TooLarge(..) => "too_large",
            SessionError::NotFound(_) => "not_found",
            SessionError::IllegalMove(..) => "illegal_move",
            SessionError::Finished => "finished",
            SessionError::Journal(_) => "journal_error",
        }
    }
}

fn parse_err(what: &'static str) -> impl FnOnce(ParseError) -> SessionError {
    move |source| SessionError::Parse { what, source }
}

/// A favorable fixed point as sent by clients. For cds an integer `x` names
/// the strategic pile element whose fixed point is `[x+1 ... n 1 ... x]`;
/// text is a bracketed fixed point for either operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FavorableItem {
    PileElement(usize),
    Text(String),
}

impl FavorableItem {
    /// Splits a comma list such as `1,3` or `[1 2 3],[-3 -2 -1]`.
    pub fn parse_list(list: &str) -> Vec<FavorableItem> {
        let mut items = Vec::new();
        let mut rest = list.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let end = if rest.starts_with('[') {
                rest.find(']').map_or(rest.len(), |i| i + 1)
            } else {
                rest.find(',').unwrap_or(rest.len())
            };
            let token = rest[..end].trim();
            items.push(match token.parse() {
                Ok(x) => FavorableItem::PileElement(x),
                Err(_) => FavorableItem::Text(token.to_string()),
            });
            rest = &rest[end..];
        }
        items
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateSession {
    pub kind: GameKind,
    pub start: String,
    #[serde(default)]
    pub favorable: Vec<FavorableItem>,
}

impl CreateSession {
    /// Validates the request, including the interactive size limits.
    pub fn to_spec(&self) -> Result<GameSpec, SessionError> {
        let spec = build_spec(self.kind, &self.start, &self.favorable)?;
        let n = match spec.start() {
            AnyPermutation::Unsigned(p) => cdsort::OneLine::n(&p),
            AnyPermutation::Signed(s) => cdsort::OneLine::n(&s),
        };
        let limit = if self.kind.is_cdr() { MAX_CDR_N } else { MAX_CDS_N };
        if n > limit {
            return Err(SessionError::TooLarge(n, limit));
        }
        Ok(spec)
    }
}

/// Builds a game from client text without size limits.
pub fn build_spec(kind: GameKind, start: &str, favorable: &[FavorableItem]) -> Result<GameSpec, SessionError> {
    let start = parse(start, kind.is_cdr()).map_err(parse_err("start"))?;
    let n = match &start {
        AnyPermutation::Unsigned(p) => cdsort::OneLine::n(p),
        AnyPermutation::Signed(s) => cdsort::OneLine::n(s),
    };
    let mut cds_f = BTreeSet::new();
    let mut cdr_f = BTreeSet::new();
    for item in favorable {
        match (item, kind.is_cdr()) {
            (FavorableItem::PileElement(x), false) => {
                if *x == 0 || *x >= n {
                    return Err(GameError::InvalidF(format!("pile element {x} is outside 1..{n}")).into());
                }
                cds_f.insert(x + 1);
            }
            (FavorableItem::Text(t), false) => {
                let p: Permutation = t.parse().map_err(parse_err("favorable fixed point"))?;
                if cdsort::OneLine::n(&p) != n {
                    return Err(GameError::InvalidF(format!("{p} has the wrong size")).into());
                }
                let k = p
                    .rotation_start()
                    .ok_or_else(|| GameError::InvalidF(format!("{p} is not a cds fixed point")))?;
                cds_f.insert(k);
            }
            (FavorableItem::Text(t), true) => {
                let s: SignedPermutation = t.parse().map_err(parse_err("favorable fixed point"))?;
                cdr_f.insert(s);
            }
            (FavorableItem::PileElement(x), true) => {
                return Err(GameError::InvalidF(format!(
                    "cdr favorable sets list fixed points, not pile elements ({x})"
                ))
                .into())
            }
        }
    }
    Ok(GameSpec::from_parts(kind, start, cds_f, cdr_f)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub ply: usize,
    pub mover: Player,
    #[serde(rename = "move")]
    pub mv: String,
    pub state: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InPlay,
    Finished,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub kind: GameKind,
    pub start: String,
    pub favorable: Vec<String>,
    /// Pile elements standing for the favorable fixed points, cds games only.
    pub favorable_pile: Option<Vec<usize>>,
    pub state: String,
    pub status: Status,
    /// Set once the game is finished.
    pub winner: Option<Player>,
    /// Side to move; absent when finished.
    pub to_move: Option<Player>,
    /// Winner under optimal play from the current position.
    pub evaluation: Player,
    /// Strategic pile of the current state, cds games only.
    pub pile: Option<Vec<usize>>,
    /// Favorable fixed points still reachable from the current state.
    pub favorable_reachable: Vec<String>,
    pub history: Vec<HistoryEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MoveAnnotation {
    #[serde(rename = "move")]
    pub mv: String,
    pub successor: String,
    pub successor_pile: Option<Vec<usize>>,
    pub favorable_reachable: Vec<String>,
    /// Winner under optimal play if this move is taken.
    pub verdict: Player,
    pub finishes: bool,
}

pub struct Session {
    id: String,
    spec: GameSpec,
    engine: GameEngine,
    state: AnyPermutation,
    history: Vec<HistoryEntry>,
    journal: Option<File>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum JournalLine {
    Create { id: String, request: CreateSession },
    Move(HistoryEntry),
}

impl Session {
    pub fn new(id: String, request: &CreateSession) -> Result<Self, SessionError> {
        let spec = request.to_spec()?;
        Ok(Self {
            id,
            engine: GameEngine::new(&spec),
            state: spec.start(),
            spec,
            history: Vec::new(),
            journal: None,
        })
    }

    /// Rebuilds a session from a journal written by [`SessionStore`].
    pub fn replay(path: &Path) -> Result<Self, SessionError> {
        let err = |e: String| SessionError::Journal(e);
        let file = File::open(path).map_err(|e| err(e.to_string()))?;
        let mut lines = BufReader::new(file).lines();
        let first = lines.next().ok_or_else(|| err("empty journal".into()))?;
        let JournalLine::Create { id, request } =
            serde_json::from_str(&first.map_err(|e| err(e.to_string()))?).map_err(|e| err(e.to_string()))?
        else {
            return Err(err("journal does not start with a create record".into()));
        };
        let mut session = Session::new(id, &request)?;
        for line in lines {
            let line = line.map_err(|e| err(e.to_string()))?;
            match serde_json::from_str(&line).map_err(|e| err(e.to_string()))? {
                JournalLine::Move(entry) => {
                    session.play(&entry.mv)?;
                    if session.state.to_string() != entry.state {
                        return Err(err(format!("replay diverged at ply {}", entry.ply)));
                    }
                }
                JournalLine::Create { .. } => return Err(err("duplicate create record".into())),
            }
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn state(&self) -> &AnyPermutation {
        &self.state
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn to_move(&self) -> Player {
        Player::after(self.history.len())
    }

    pub fn is_finished(&self) -> bool {
        self.engine.moves(&self.state).is_empty()
    }

    fn favorable_reachable(&self, state: &AnyPermutation) -> Vec<String> {
        match (&self.spec, state) {
            (GameSpec::Cds { favorable, .. }, AnyPermutation::Unsigned(p)) => reachable_cds_fixed_points(p)
                .intersection(favorable)
                .map(|&k| Permutation::rotation(cdsort::OneLine::n(p), k).unwrap().to_string())
                .collect(),
            (GameSpec::Cdr { favorable, .. }, AnyPermutation::Signed(s)) => reachable_cdr_fixed_points(s)
                .intersection(favorable)
                .map(|f| f.to_string())
                .collect(),
            _ => unreachable!("state kind follows the game"),
        }
    }

    fn pile(state: &AnyPermutation) -> Option<Vec<usize>> {
        match state {
            AnyPermutation::Unsigned(p) => Some(strategic_pile(p).elements().to_vec()),
            AnyPermutation::Signed(_) => None,
        }
    }

    pub fn view(&self) -> SessionView {
        let finished = self.is_finished();
        SessionView {
            id: self.id.clone(),
            kind: self.spec.kind(),
            start: self.spec.start().to_string(),
            favorable: self.spec.favorable_text(),
            favorable_pile: match &self.spec {
                GameSpec::Cds { favorable, .. } => Some(favorable.iter().filter(|&&k| k > 1).map(|k| k - 1).collect()),
                GameSpec::Cdr { .. } => None,
            },
            state: self.state.to_string(),
            status: if finished { Status::Finished } else { Status::InPlay },
            winner: finished.then(|| self.engine.terminal_winner(&self.state, self.history.len())),
            to_move: (!finished).then(|| self.to_move()),
            evaluation: self.engine.winner(&self.state, self.to_move()),
            pile: Self::pile(&self.state),
            favorable_reachable: self.favorable_reachable(&self.state),
            history: self.history.clone(),
        }
    }

    /// Every legal context from the current state, annotated with what
    /// happens if it is played.
    pub fn legal_moves(&self) -> Result<Vec<MoveAnnotation>, SessionError> {
        if self.is_finished() {
            return Err(SessionError::Finished);
        }
        let mover = self.to_move();
        let successors: Vec<(GameMove, AnyPermutation)> = match &self.state {
            AnyPermutation::Unsigned(p) => list_cds_contexts(p)
                .into_iter()
                .map(|c| {
                    let next = cdsort::apply_cds(p, &c).expect("listed context applies");
                    (GameMove::Cds(c), AnyPermutation::Unsigned(next))
                })
                .collect(),
            AnyPermutation::Signed(s) => list_cdr_contexts(s)
                .into_iter()
                .map(|c| {
                    let next = cdsort::apply_cdr(s, &c).expect("listed context applies");
                    (GameMove::Cdr(c), AnyPermutation::Signed(next))
                })
                .collect(),
        };
        Ok(successors
            .into_iter()
            .map(|(mv, next)| MoveAnnotation {
                mv: mv.to_string(),
                successor_pile: Self::pile(&next),
                favorable_reachable: self.favorable_reachable(&next),
                verdict: self.engine.winner(&next, mover.other()),
                finishes: self.engine.moves(&next).is_empty(),
                successor: next.to_string(),
            })
            .collect())
    }

    fn resolve(&self, text: &str) -> Result<(String, AnyPermutation), SessionError> {
        let illegal = || SessionError::IllegalMove(text.trim().to_string(), self.state.to_string());
        match &self.state {
            AnyPermutation::Unsigned(p) => {
                let pair = text.parse().map_err(|_| illegal())?;
                let (ctx, next) = apply_cds_pair(p, pair).map_err(|_| illegal())?;
                Ok((ctx.to_string(), AnyPermutation::Unsigned(next)))
            }
            AnyPermutation::Signed(s) => {
                let pointer = parse_cdr_pointer(text).map_err(|_| illegal())?;
                let (ctx, next) = apply_cdr_pointer(s, pointer).map_err(|_| illegal())?;
                Ok((ctx.to_string(), AnyPermutation::Signed(next)))
            }
        }
    }

    fn advance(&mut self, mv: String, next: AnyPermutation) -> Result<&HistoryEntry, SessionError> {
        let entry = HistoryEntry {
            ply: self.history.len() + 1,
            mover: self.to_move(),
            mv,
            state: next.to_string(),
        };
        if let Some(journal) = &mut self.journal {
            let line = serde_json::to_string(&JournalLine::Move(entry.clone())).expect("entry serialises");
            writeln!(journal, "{line}").map_err(|e| SessionError::Journal(e.to_string()))?;
        }
        self.state = next;
        self.history.push(entry);
        Ok(self.history.last().expect("just pushed"))
    }

    /// Plays a move given as context text.
    pub fn play(&mut self, text: &str) -> Result<&HistoryEntry, SessionError> {
        if self.is_finished() {
            return Err(SessionError::Finished);
        }
        let (mv, next) = self.resolve(text)?;
        self.advance(mv, next)
    }

    /// Plays the solver's choice for the side to move.
    pub fn engine_move(&mut self) -> Result<&HistoryEntry, SessionError> {
        let (mv, next) = self
            .engine
            .best_move(&self.state, self.to_move())
            .ok_or(SessionError::Finished)?;
        self.advance(mv.to_string(), next)
    }
}

/// All live sessions. Each session sits behind its own lock, so requests for
/// one session run one at a time while different sessions proceed in
/// parallel.
#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    journal_dir: Option<PathBuf>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends each session's history to `<dir>/<id>.jsonl`.
    pub fn with_journal(dir: impl Into<PathBuf>) -> Self {
        Self {
            sessions: RwLock::default(),
            journal_dir: Some(dir.into()),
        }
    }

    pub fn create(&self, request: &CreateSession) -> Result<Arc<Mutex<Session>>, SessionError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let mut session = Session::new(id.clone(), request)?;
        if let Some(dir) = &self.journal_dir {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(dir.join(format!("{id}.jsonl")))
                .map_err(|e| SessionError::Journal(e.to_string()))?;
            let line = serde_json::to_string(&JournalLine::Create {
                id: id.clone(),
                request: request.clone(),
            })
            .expect("request serialises");
            writeln!(file, "{line}").map_err(|e| SessionError::Journal(e.to_string()))?;
            session.journal = Some(file);
        }
        let session = Arc::new(Mutex::new(session));
        self.sessions
            .write()
            .expect("session map lock")
            .insert(id, Arc::clone(&session));
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
