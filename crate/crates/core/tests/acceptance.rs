//! Acceptance run: one PASS/FAIL line per criterion, with failing sub-checks
//! listed underneath. Exits nonzero on failure only when
//! `ACCEPTANCE_STRICT=1` is set.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use cdsort::*;
use common::{all_plays, letters, oracle_cdr_reach, subsets, CdsGraph};

struct Report {
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn sp(s: &str) -> SignedPermutation {
    s.parse().unwrap()
}

fn rotations(n: usize, starts: impl IntoIterator<Item = usize>) -> BTreeSet<Permutation> {
    starts.into_iter().map(|k| Permutation::rotation(n, k).unwrap()).collect()
}

fn table_reproduction() -> Report {
    let mut r = Report::new("table reproduction, n = 1..10");
    let want = [1u64, 1, 4, 13, 72, 390, 2880, 21672, 201600, 1935360];
    let start = Instant::now();
    let got: Vec<u64> = (1..=10).map(|n| count_cds_sortable(n).unwrap().count).collect();
    r.expect_eq("counts", got.as_slice(), &want[..]);
    let secs = start.elapsed().as_secs_f64();
    r.check(secs < 300.0, || format!("took {secs:.1}s"));
    r.note(format!("counts {got:?} in {secs:.2}s"));
    r
}

fn worked_examples() -> Report {
    let mut r = Report::new("worked-example suite");

    let pi = perm("[4 2 6 7 1 3 5]");
    r.expect_eq("C [4 2 6 7 1 3 5]", build_c(&pi).to_string(), "(0 7 5 2 1 4 3)(6)".into());
    r.expect_eq("SP [4 2 6 7 1 3 5]", strategic_pile(&pi).to_string(), "{5,2,1,4,3}".into());
    r.expect_eq(
        "fixed points [4 2 6 7 1 3 5]",
        rotations(7, reachable_cds_fixed_points(&pi)),
        ["[6 7 1 2 3 4 5]", "[5 6 7 1 2 3 4]", "[4 5 6 7 1 2 3]", "[3 4 5 6 7 1 2]", "[2 3 4 5 6 7 1]"]
            .into_iter()
            .map(perm)
            .collect(),
    );
    r.expect_eq("inverse", pi.inverse().to_string(), "[5 2 6 1 7 3 4]".into());
    r.expect_eq("C inverse of C", build_c(&pi).inverse().to_string(), "(0 3 4 1 2 5 7)(6)".into());
    r.expect_eq("C of inverse", c_of_inverse(&pi).to_string(), "(0 6 1 5 2 7 4)(3)".into());
    r.expect_eq("SP of inverse", strategic_pile(&pi.inverse()).set(), BTreeSet::from([4]));
    let (_, sigma) = apply_cds_pair(&pi, "{(3,4),(5,6)}".parse().unwrap()).unwrap();
    r.expect_eq("cds {(3,4),(5,6)}", sigma.to_string(), "[5 6 7 1 3 4 2]".into());

    let small = perm("[4 1 3 2]");
    r.expect_eq("C [4 1 3 2]", build_c(&small).to_string(), "(0 4 1 3 2)".into());
    r.expect_eq("SP [4 1 3 2] as a set", strategic_pile(&small).set(), BTreeSet::from([1, 3, 2]));
    r.expect_eq(
        "fixed points [4 1 3 2]",
        rotations(4, reachable_cds_fixed_points(&small)),
        ["[4 1 2 3]", "[3 4 1 2]", "[2 3 4 1]"].into_iter().map(perm).collect(),
    );

    let other = perm("[4 6 2 7 1 3 5]");
    r.expect_eq("SP [4 6 2 7 1 3 5]", strategic_pile(&other).set(), BTreeSet::from([3, 4, 5]));
    r.check(
        !rotations(7, reachable_cds_fixed_points(&other)).contains(&perm("[3 4 5 6 7 1 2]")),
        || "[3 4 5 6 7 1 2] reported reachable from [4 6 2 7 1 3 5]".into(),
    );

    let product = Permutation::compose(&perm("[3 2 4 1 5]"), &perm("[1 4 2 5 3]")).unwrap();
    r.expect_eq("composition", product.to_string(), "[2 4 5 1 3]".into());
    r.expect_eq("SP of composition", strategic_pile(&product).set(), BTreeSet::from([1, 2, 3]));

    let s = sp("[3 -1 -2 5 4]");
    r.expect_eq("star [3 -1 -2 5 4]", expand_star(&s).to_string(), "[5 6 2 1 4 3 9 10 7 8]".into());
    r.expect_eq("D [3 -1 -2 5 4]", build_d(&s).to_string(), "(0 4)(1 5)(2 9 11 7)(3 6 10 8)".into());
    let t = sp("[1 -3 -2 5 4]");
    r.expect_eq("star [1 -3 -2 5 4]", expand_star(&t).to_string(), "[1 2 6 5 4 3 9 10 7 8]".into());
    r.expect_eq("D [1 -3 -2 5 4]", build_d(&t).to_string(), "(0)(1)(2 9 11 7)(3 6 10 8)(4)(5)".into());

    let u = sp("[2 4 3 5 -1 6]");
    r.expect_eq("star [2 4 3 5 -1 6]", expand_star(&u).to_string(), "[3 4 7 8 5 6 9 10 2 1 11 12]".into());
    let d = build_d(&u).to_string();
    r.expect_eq("D [2 4 3 5 -1 6]", d.clone(), "(0 11 2)(1 3 10)(4 8 6)(5 7 9)(12)".into());
    r.note(format!("D [2 4 3 5 -1 6] renders as {d}; 13 = 2n+1 is a fixed point of the domain"));

    let printed: BTreeSet<SignedPermutation> = [
        "[5 6 7 1 2 3 4]",
        "[5 1 2 3 4 7 6]",
        "[7 4 5 1 2 3 6]",
        "[7 1 2 3 4 5 6]",
        "[-1 -5 -4 -7 -6 -3 -2]",
        "[-1 -7 -6 -5 -4 -3 -2]",
    ]
    .into_iter()
    .map(sp)
    .collect();
    let reached = reachable_cdr_fixed_points(&sp("[5 -2 7 4 -1 3 6]"));
    r.check(printed.is_subset(&reached), || "a listed cdr fixed point is unreachable".into());
    let extra: Vec<String> = reached.difference(&printed).map(|f| f.to_string()).collect();
    r.expect_eq("cdr fixed points of [5 -2 7 4 -1 3 6]", reached.len(), printed.len());
    if !extra.is_empty() {
        r.note(format!("also reachable from [5 -2 7 4 -1 3 6]: {}", extra.join(" ")));
    }
    r
}

fn theorem_oracles() -> Report {
    let mut r = Report::new("theorem oracles, S_n for n <= 7");
    let start = Instant::now();
    let mut graph = CdsGraph::default();
    let mut witnesses = 0usize;
    for n in 1..=7 {
        let identity = Permutation::identity(n);
        for p in permutations(n) {
            let pile = strategic_pile(&p);
            let set = pile.set();

            for ctx in list_cds_contexts(&p) {
                let q = apply_cds(&p, &ctx).unwrap();
                let after = strategic_pile(&q).set();
                let (x, y) = ctx.lows();
                let ok = after.is_subset(&set) && set.iter().all(|b| *b == x || *b == y || after.contains(b));
                r.check(ok, || format!("pile monotonicity {p} {ctx}"));
                let class = parity_class(&p);
                if class != ParityClass::Neither {
                    r.check(parity_class(&q) == class, || format!("parity {p} {ctx}"));
                }
            }

            if pile.len() > 1 {
                for &x in pile.elements() {
                    let rest: BTreeSet<usize> = set.iter().copied().filter(|&b| b != x).collect();
                    let removed = removal_move(&p, x)
                        .map(|c| strategic_pile(&apply_cds(&p, &c).unwrap()).set().is_subset(&rest));
                    r.check(removed == Ok(true), || format!("removal {p} x={x}"));
                    let kept = retention_move(&p, x).map(|c| strategic_pile(&apply_cds(&p, &c).unwrap()).contains(x));
                    r.check(kept == Ok(true), || format!("retention {p} x={x}"));
                    witnesses += 2;
                }
            }

            let reach = graph.reachable(&p);
            let sortable = is_cds_sortable(&p);
            r.check(sortable == set.is_empty() && sortable == reach.contains(&identity), || {
                format!("sortability {p}")
            });
            r.check(rotations(n, reachable_cds_fixed_points(&p)) == reach, || {
                format!("reachable fixed points {p}")
            });

            let d = cds_duration(&p);
            if n <= 6 {
                let mut lengths = BTreeSet::new();
                all_plays(&p, 0, &mut |len, _| {
                    lengths.insert(len);
                });
                r.check(lengths == BTreeSet::from([d]), || format!("duration (all plays) {p}"));
            }
            r.check(graph.play_lengths(&p) == BTreeSet::from([d]), || format!("duration {p}"));

            if parity_class(&p) == ParityClass::Switching {
                r.check(!sortable && n % 2 == 0, || format!("switching class {p}"));
            }
            r.check(sortable == is_cds_sortable(&p.inverse()), || format!("inverse {p}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    r.check(secs < 600.0, || format!("took {secs:.1}s"));
    r.note(format!("{witnesses} removal/retention witnesses checked in {secs:.2}s"));
    r
}

fn game_laws() -> Report {
    let mut r = Report::new("game laws");
    let fixed_game = |p: &Permutation, f: BTreeSet<usize>| GameSpec::cds(p.clone(), Goal::FixedPoint, f).unwrap();

    for n in 2..=4 {
        let alpha = Permutation::reversed(2 * n);
        for f in subsets(&reachable_cds_fixed_points(&alpha)) {
            let one = solve(&fixed_game(&alpha, f.clone())).winner == Player::One;
            r.check(one == (2 * f.len() >= n), || format!("reverse order n={n} F={f:?}"));
        }
    }

    let mut fired = [0usize; 2];
    for p in permutations(6).filter(|p| !is_cds_sortable(p)) {
        for f in subsets(&strategic_pile(&p).set()) {
            if let Some(w) = greedy_bound(&p, &f).unwrap() {
                let starts = f.iter().map(|x| x + 1).collect();
                r.check(solve(&fixed_game(&p, starts)).winner == w, || format!("greedy {p} F={f:?}"));
                fired[(w == Player::Two) as usize] += 1;
            }
        }
    }
    r.note(format!("greedy verdicts on S_6: {} for ONE, {} for TWO", fired[0], fired[1]));

    for n in 1..=6 {
        for p in permutations(n) {
            for goal in [Goal::Normal, Goal::Misere] {
                let spec = GameSpec::cds(p.clone(), goal, BTreeSet::new()).unwrap();
                r.check(solve(&spec).winner == cds_parity_fast_path(&p, goal).unwrap(), || {
                    format!("parity fast path {p} {goal:?}")
                });
            }
            if strategic_pile(&p).len() <= 2 {
                for f in subsets(&reachable_cds_fixed_points(&p)).into_iter().filter(|f| !f.is_empty()) {
                    r.check(solve(&fixed_game(&p, f.clone())).winner == Player::One, || {
                        format!("small pile {p} F={f:?}")
                    });
                }
            }
        }
    }
    r
}

fn cdr_laws() -> Report {
    let mut r = Report::new("cdr laws, S_n^± for n <= 5");
    let factorial = |n: usize| (1..=n as u64).product::<u64>();
    let mut memo = HashMap::new();
    for n in 1..=5 {
        for s in signed_permutations(n) {
            let reach = reachable_cdr_fixed_points(&s);
            let oracle: BTreeSet<Vec<i32>> = oracle_cdr_reach(s.letters(), &mut memo);
            r.check(reach.iter().map(letters).collect::<BTreeSet<_>>() == oracle, || {
                format!("reachable set {s}")
            });
            if is_cdr_sortable(&s, CdrTarget::Identity) {
                r.check(cdr_necessary_condition(&s), || format!("necessary condition {s}"));
                r.check(reach.iter().all(|f| f.is_all_positive()), || format!("positive fixed points {s}"));
            }
            if is_cdr_sortable(&s, CdrTarget::ReversedNegative) {
                r.check(reach.iter().all(|f| f.is_all_negative()), || format!("negative fixed points {s}"));
            }
        }
        let id = count_cdr(n, CdrTarget::Identity).unwrap().count;
        let rev = count_cdr(n, CdrTarget::ReversedNegative).unwrap().count;
        r.check(id == rev, || format!("n={n}: {id} sortable vs {rev} reverse-sortable"));
        let fix = count_fixed_points(n, Operation::Cdr, true).unwrap().count;
        r.check(fix == 2 * factorial(n), || format!("n={n}: |Fix(cdr)| = {fix}"));
        let cds_fix = count_fixed_points(n, Operation::Cds, true).unwrap().count;
        r.check(cds_fix == 2 * n as u64, || format!("n={n}: signed cds fixed points = {cds_fix}"));
        let literal = cdsort::enumerate::count_signed_without_cds_context(n).unwrap().count;
        r.note(format!(
            "n={n}: {id} sortable, {rev} reverse-sortable, {fix} cdr fixed points, {cds_fix} dihedral cds fixed points ({literal} with no cds context at all)"
        ));
    }
    let witness = sp("[2 4 3 5 -1 6]");
    r.check(
        cdr_necessary_condition(&witness) && !is_cdr_sortable(&witness, CdrTarget::Identity),
        || "converse counterexample [2 4 3 5 -1 6] does not reproduce".into(),
    );
    r
}

fn odd_formula() -> Report {
    let mut r = Report::new("conjectured (k+1)(2k)! counts, k = 1..4");
    for k in 1..=4 {
        let count = count_cds_sortable(2 * k + 1).unwrap().count;
        r.expect_eq(&format!("k={k}"), count, odd_formula_value(k));
    }
    r
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [fn() -> Report; 6] =
        [table_reproduction, worked_examples, theorem_oracles, game_laws, cdr_laws, odd_formula];
    let mut passed = 0;
    for run in criteria {
        let start = Instant::now();
        let report = run();
        let ok = report.failures.is_empty();
        passed += ok as usize;
        println!(
            "{}  {}  ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            report.name,
            start.elapsed().as_secs_f64()
        );
        for f in report.failures.iter().take(20) {
            println!("        mismatch: {f}");
        }
        for n in &report.notes {
            println!("        note: {n}");
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if strict && passed != criteria.len() {
        std::process::exit(1);
    }
}
