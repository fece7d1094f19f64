//! The `cdsort` command line. [`run`] does all the work and returns a
//! [`CommandResult`]; the binary only prints it.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::net::SocketAddr;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use cdsort::enumerate::count_signed_without_cds_context;
use cdsort::report::analyze;
use cdsort::{
    apply_cds_pair, apply_cdr, apply_cdr_pointer, apply_cds, count_cdr, count_cds_sortable,
    count_fixed_points, greedy_bound, odd_formula_value, is_cds_sortable, parse, parse_cdr_pointer,
    search_cdr_sort, solve, sort_by_cds, strategic_pile, AnyPermutation, CdrTarget, CdsError, CountReport, GameKind,
    GameSpec, Operation, Permutation, PointerPair,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

/// Exit codes beyond 0.
pub const EXIT_NOT_SORTABLE: i32 = 1;
pub const EXIT_INVALID_CONTEXT: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub code: i32,
    pub text: String,
    pub json: Option<Value>,
}

impl CommandResult {
    fn ok(text: String, json: Value) -> Self {
        Self {
            code: 0,
            text,
            json: Some(json),
        }
    }

    fn fail(code: i32, message: impl ToString) -> Self {
        let message = message.to_string();
        Self {
            code,
            json: Some(json!({ "error": message })),
            text: message,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cdsort", version, about = "Context directed swaps and reversals: analysis, sorting, games")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Cds,
    Cdr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Identity,
    Reverse,
}

impl From<Target> for CdrTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::Identity => CdrTarget::Identity,
            Target::Reverse => CdrTarget::ReversedNegative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateMode {
    /// Unsigned permutations sortable by cds.
    CdsSortable,
    /// Signed permutations sortable by cdr to the chosen target.
    CdrSortable,
    /// cds fixed points (unsigned, or signed with --signed).
    CdsFixedPoints,
    /// Signed cdr fixed points.
    CdrFixedPoints,
    /// Signed permutations without any cds context.
    SignedNoCdsContext,
    /// Compares the cds-sortable count at odd n = 2k+1 with (k+1)(2k)!.
    OddFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    CdsGame,
    CdsNormal,
    CdsMisere,
    CdrGame,
    CdrNormal,
    CdrMisere,
}

impl From<SolveKind> for GameKind {
    fn from(k: SolveKind) -> Self {
        match k {
            SolveKind::CdsGame => GameKind::CdsFixedPoint,
            SolveKind::CdsNormal => GameKind::CdsNormal,
            SolveKind::CdsMisere => GameKind::CdsMisere,
            SolveKind::CdrGame => GameKind::CdrFixedPoint,
            SolveKind::CdrNormal => GameKind::CdrNormal,
            SolveKind::CdrMisere => GameKind::CdrMisere,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cycle structure, pile, sortability, duration, reachable fixed points, parity.
    Analyze {
        permutation: String,
        #[arg(long)]
        signed: bool,
    },
    /// Applies one context and prints the successor.
    Apply {
        op: Op,
        permutation: String,
        /// `{(x,x+1),(y,y+1)}` for cds, `(x,x+1)` for cdr.
        context: String,
        /// Read a signed permutation for cds.
        #[arg(long)]
        signed: bool,
    },
    /// Sorts by repeated applications, or reports that it cannot be done.
    Sort {
        op: Op,
        permutation: String,
        #[arg(long, value_enum, default_value = "identity")]
        target: Target,
    },
    /// Exhaustive counts over all permutations of each size.
    Enumerate {
        mode: EnumerateMode,
        /// A size `N` or an inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value = "identity")]
        target: Target,
        #[arg(long)]
        signed: bool,
    },
    /// Solves a game exactly.
    Solve {
        kind: SolveKind,
        permutation: String,
        /// Favorable fixed points, comma separated: strategic pile elements
        /// or bracketed fixed points for cds, bracketed fixed points for cdr.
        #[arg(long = "F", value_name = "LIST", default_value = "")]
        favorable: String,
    },
    /// Runs the HTTP play service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Append session journals to this directory.
        #[arg(long)]
        journal: Option<PathBuf>,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = |_| format!("expected N or A..B, got {text:?}");
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
            if a > b {
                return Err(format!("empty range {text:?}"));
            }
            Ok(a..=b)
        }
        None => {
            let n = text.trim().parse().map_err(bad)?;
            Ok(n..=n)
        }
    }
}

/// Parses `args` (program name first) and runs the command. `serve` blocks
/// until the server stops.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(err) => {
            let code = if err.use_stderr() { EXIT_ERROR } else { 0 };
            CommandResult {
                code,
                text: err.to_string(),
                json: None,
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Analyze { permutation, signed } => cmd_analyze(permutation, *signed),
        Command::Apply {
            op,
            permutation,
            context,
            signed,
        } => cmd_apply(*op, permutation, context, *signed),
        Command::Sort { op, permutation, target } => cmd_sort(*op, permutation, (*target).into()),
        Command::Enumerate { mode, n, target, signed } => cmd_enumerate(*mode, n.clone(), (*target).into(), *signed),
        Command::Solve {
            kind,
            permutation,
            favorable,
        } => cmd_solve((*kind).into(), permutation, favorable),
        Command::Serve { addr, journal } => cmd_serve(*addr, journal.clone()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("engine outputs serialise")
}

pub fn cmd_analyze(text: &str, signed: bool) -> CommandResult {
    match parse(text, signed) {
        Ok(p) => {
            let analysis = analyze(&p);
            CommandResult::ok(analysis_text(&analysis), to_json(&analysis))
        }
        Err(e) => CommandResult::fail(EXIT_ERROR, format!("cannot parse {text:?}: {e}")),
    }
}

fn analysis_text(a: &cdsort::report::Analysis) -> String {
    match a {
        cdsort::report::Analysis::Cds(x) => x.to_string(),
        cdsort::report::Analysis::Cdr(x) => x.to_string(),
    }
}

pub fn cmd_apply(op: Op, text: &str, context: &str, signed: bool) -> CommandResult {
    let signed = signed || op == Op::Cdr;
    let perm = match parse(text, signed) {
        Ok(p) => p,
        Err(e) => return CommandResult::fail(EXIT_ERROR, format!("cannot parse {text:?}: {e}")),
    };
    let invalid = |why: String| CommandResult::fail(EXIT_INVALID_CONTEXT, why);
    let applied: Result<(String, String), String> = match (op, &perm) {
        (Op::Cds, _) => match context.parse::<PointerPair>() {
            Err(e) => return invalid(format!("cannot parse context {context:?}: {e}")),
            Ok(pair) => match &perm {
                AnyPermutation::Unsigned(p) => {
                    apply_cds_pair(p, pair).map(|(c, q)| (c.to_string(), q.to_string()))
                }
                AnyPermutation::Signed(s) => {
                    apply_cds_pair(s, pair).map(|(c, q)| (c.to_string(), q.to_string()))
                }
            }
            .map_err(|e| e.to_string()),
        },
        (Op::Cdr, AnyPermutation::Signed(s)) => match parse_cdr_pointer(context) {
            Err(e) => return invalid(format!("cannot parse context {context:?}: {e}")),
            Ok(pointer) => apply_cdr_pointer(s, pointer)
                .map(|(c, q)| (c.to_string(), q.to_string()))
                .map_err(|e| e.to_string()),
        },
        (Op::Cdr, AnyPermutation::Unsigned(_)) => unreachable!("cdr input is parsed as signed"),
    };
    match applied {
        Ok((ctx, result)) => CommandResult::ok(
            result.clone(),
            json!({
                "operation": op_name(op),
                "permutation": perm.to_string(),
                "context": ctx,
                "result": result,
            }),
        ),
        Err(why) => invalid(why),
    }
}

fn op_name(op: Op) -> &'static str {
    match op {
        Op::Cds => "cds",
        Op::Cdr => "cdr",
    }
}

pub fn cmd_sort(op: Op, text: &str, target: CdrTarget) -> CommandResult {
    let parsed = parse(text, op == Op::Cdr);
    let perm = match parsed {
        Ok(p) => p,
        Err(e) => return CommandResult::fail(EXIT_ERROR, format!("cannot parse {text:?}: {e}")),
    };
    let steps: Option<Vec<(String, String)>> = match &perm {
        AnyPermutation::Unsigned(p) => match sort_by_cds(p) {
            Ok(moves) => Some(
                moves
                    .iter()
                    .scan(p.clone(), |state, ctx| {
                        *state = apply_cds(state, ctx).expect("sorting move applies");
                        Some((ctx.to_string(), state.to_string()))
                    })
                    .collect(),
            ),
            Err(CdsError::NotSortable(_)) => None,
            Err(e) => return CommandResult::fail(EXIT_ERROR, e),
        },
        AnyPermutation::Signed(s) => search_cdr_sort(s, target).map(|moves| {
            moves
                .iter()
                .scan(s.clone(), |state, ctx| {
                    *state = apply_cdr(state, ctx).expect("sorting move applies");
                    Some((ctx.to_string(), state.to_string()))
                })
                .collect()
        }),
    };
    let target_name = (op == Op::Cdr).then(|| target.to_string());
    match steps {
        None => {
            let mut res = CommandResult::fail(EXIT_NOT_SORTABLE, format!("{perm} is not sortable"));
            res.json = Some(json!({
                "operation": op_name(op),
                "permutation": perm.to_string(),
                "target": target_name,
                "sortable": false,
            }));
            res
        }
        Some(steps) => {
            let mut text = String::new();
            writeln!(text, "{perm}").unwrap();
            for (ctx, state) in &steps {
                writeln!(text, "  {ctx:<16} -> {state}").unwrap();
            }
            write!(text, "sorted in {} moves", steps.len()).unwrap();
            let result = steps.last().map_or(perm.to_string(), |(_, s)| s.clone());
            CommandResult::ok(
                text,
                json!({
                    "operation": op_name(op),
                    "permutation": perm.to_string(),
                    "target": target_name,
                    "sortable": true,
                    "moves": steps.iter().map(|(c, _)| c).collect::<Vec<_>>(),
                    "states": steps.iter().map(|(_, s)| s).collect::<Vec<_>>(),
                    "result": result,
                }),
            )
        }
    }
}

pub fn cmd_enumerate(mode: EnumerateMode, sizes: RangeInclusive<usize>, target: CdrTarget, signed: bool) -> CommandResult {
    if mode == EnumerateMode::OddFormula {
        return odd_formula(sizes);
    }
    let mut reports: Vec<CountReport> = Vec::new();
    for n in sizes {
        let report = match mode {
            EnumerateMode::CdsSortable => count_cds_sortable(n),
            EnumerateMode::CdrSortable => count_cdr(n, target),
            EnumerateMode::CdsFixedPoints => count_fixed_points(n, Operation::Cds, signed),
            EnumerateMode::CdrFixedPoints => count_fixed_points(n, Operation::Cdr, true),
            EnumerateMode::SignedNoCdsContext => count_signed_without_cds_context(n),
            EnumerateMode::OddFormula => unreachable!(),
        };
        match report {
            Ok(r) => reports.push(r),
            Err(e) => return CommandResult::fail(EXIT_ERROR, e),
        }
    }
    let text = if reports.len() == 1 {
        reports[0].count.to_string()
    } else {
        reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
    };
    CommandResult::ok(text, to_json(&reports))
}

fn odd_formula(sizes: RangeInclusive<usize>) -> CommandResult {
    let mut rows = Vec::new();
    let mut text = String::new();
    for n in sizes.filter(|n| n % 2 == 1) {
        let k = n / 2;
        let report = match count_cds_sortable(n) {
            Ok(r) => r,
            Err(e) => return CommandResult::fail(EXIT_ERROR, e),
        };
        let expected = odd_formula_value(k);
        writeln!(
            text,
            "n = {n:>2}  count {:>10}  (k+1)(2k)! {expected:>10}  {}",
            report.count,
            if report.count == expected { "holds" } else { "fails" }
        )
        .unwrap();
        rows.push(json!({
            "n": n,
            "k": k,
            "count": report.count,
            "expected": expected,
            "holds": report.count == expected,
            "elapsed_ms": report.elapsed_ms,
        }));
    }
    if rows.is_empty() {
        return CommandResult::fail(EXIT_ERROR, "odd-formula needs an odd n in range");
    }
    CommandResult::ok(text.trim_end().to_string(), Value::Array(rows))
}

pub fn cmd_solve(kind: GameKind, text: &str, favorable: &str) -> CommandResult {
    let items = crate::FavorableItem::parse_list(favorable);
    let spec = match crate::session::build_spec(kind, text, &items) {
        Ok(s) => s,
        Err(e) => return CommandResult::fail(EXIT_ERROR, e),
    };
    let outcome = solve(&spec);
    let pv: Vec<String> = outcome.principal_variation.iter().map(|m| m.to_string()).collect();
    let greedy = match &spec {
        GameSpec::Cds {
            start,
            favorable,
            goal: cdsort::Goal::FixedPoint,
        } => greedy_verdict(start, favorable),
        _ => None,
    };
    let mut out = String::new();
    writeln!(out, "game        {kind}").unwrap();
    writeln!(out, "start       {}", spec.start()).unwrap();
    if kind.goal() == cdsort::Goal::FixedPoint {
        writeln!(out, "F           {}", spec.favorable_text().join(" ")).unwrap();
    }
    if let Some(w) = greedy {
        writeln!(out, "greedy      {w}").unwrap();
    }
    writeln!(out, "winner      {}", outcome.winner).unwrap();
    writeln!(out, "line        {}", pv.join(" ")).unwrap();
    write!(out, "positions   {}", outcome.states_explored).unwrap();
    CommandResult::ok(
        out,
        json!({
            "kind": kind,
            "start": spec.start().to_string(),
            "favorable": spec.favorable_text(),
            "winner": outcome.winner,
            "principal_variation": pv,
            "states_explored": outcome.states_explored,
            "greedy_bound": greedy,
        }),
    )
}

/// Greedy verdict when every favorable rotation corresponds to a pile element.
fn greedy_verdict(start: &Permutation, favorable: &BTreeSet<usize>) -> Option<cdsort::Player> {
    if is_cds_sortable(start) {
        return None;
    }
    let pile = strategic_pile(start).set();
    let as_pile: BTreeSet<usize> = favorable.iter().filter(|&&k| k > 1).map(|k| k - 1).collect();
    if as_pile.len() != favorable.len() || !as_pile.is_subset(&pile) {
        return None;
    }
    greedy_bound(start, &as_pile).ok().flatten()
}

fn cmd_serve(addr: SocketAddr, journal: Option<PathBuf>) -> CommandResult {
    let store = match journal {
        Some(dir) => {
            if let Err(e) = std::fs::create_dir_all(&dir) {
                return CommandResult::fail(EXIT_ERROR, format!("cannot create {}: {e}", dir.display()));
            }
            crate::SessionStore::with_journal(dir)
        }
        None => crate::SessionStore::new(),
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => return CommandResult::fail(EXIT_ERROR, e),
    };
    eprintln!("listening on http://{addr}");
    match runtime.block_on(crate::http::serve(addr, store)) {
        Ok(()) => CommandResult::ok(String::new(), Value::Null),
        Err(e) => CommandResult::fail(EXIT_ERROR, e),
    }
}
