//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Built without the libtest harness so the
//! summary is always shown.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use col_core::delay::{enumerate_delays, is_delay};
use col_core::games::{negate, offender, won_by};
use col_core::run::project;
use col_core::sim::{
    verify_static_theorems, verify_theorem_6_1, verify_theorem_6_1_with, Direction,
    DEFAULT_MAX_STEPS,
};
use col_core::strategy::Routine2;
use col_core::suite;
use col_core::{
    make_recurrence, Bitstring, EnumBounds, Game, GameRef, LabMove, Player, Polarity, Ray,
    RecurrenceKind, Run, Version,
};

use Player::{Bot as B, Top as T};

/// Budget and address bound of the exhaustive adversaries.
const BUDGET: usize = 3;
const THEOREM_BOUNDS: EnumBounds = EnumBounds {
    max_address_len: 2,
    max_run_len: 4,
};

fn bases() -> Vec<GameRef> {
    suite::static_suite()
        .into_iter()
        .map(suite::as_ref)
        .collect()
}

fn run(moves: &[(Player, &str)]) -> Run {
    moves.iter().map(|&(p, m)| LabMove::new(p, m)).collect()
}

fn runs_up_to(alphabet: &[LabMove], max_len: usize) -> Vec<Run> {
    let mut all = vec![Run::new()];
    let mut layer = vec![Run::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|r| alphabet.iter().map(move |lm| r.with(lm.clone())))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Each criterion returns a one-line summary on success and panics on
/// failure.
type Check = fn() -> String;

fn projection_golden() -> String {
    let omega = run(&[
        (B, "0.β1"),
        (T, "111.β2"),
        (T, "01.β2"),
        (T, "011.β3"),
        (B, "010.β4"),
    ]);
    let v = Ray::new(Bitstring::new("0100").unwrap());
    let got = project(&omega, &v);
    assert_eq!(got.to_string(), "⟨⊥β1, ⊤β2, ⊥β4⟩");

    // Two payload letters at nested and incomparable addresses.
    let alphabet = [
        LabMove::new(B, "0.a"),
        LabMove::new(T, "01.b"),
        LabMove::new(B, "1.a"),
        LabMove::new(T, ".b"),
    ];
    let runs = runs_up_to(&alphabet, 6);
    let stems: Vec<Ray> = Bitstring::all_up_to(4).map(Ray::new).collect();
    let mut checked = 0usize;
    for whole in &runs {
        for cut in 0..=whole.len() {
            let (a, b) = (whole.prefix(cut), Run::from(whole[cut..].to_vec()));
            for r in &stems {
                assert_eq!(
                    project(whole, r),
                    project(&a, r).concat(&project(&b, r)),
                    "{whole} cut at {cut} along {r}"
                );
                checked += 1;
            }
        }
    }
    format!("golden example exact; {checked} concatenation splits agree")
}

fn delay_symmetry() -> String {
    let alphabet = [
        LabMove::top("a"),
        LabMove::top("b"),
        LabMove::bot("a"),
        LabMove::bot("b"),
    ];
    let mut related = 0usize;
    let mut by_len: Vec<Vec<Run>> = vec![Vec::new(); 6];
    for r in runs_up_to(&alphabet, 5) {
        by_len[r.len()].push(r);
    }
    for runs in &by_len {
        for pi in runs {
            for p in Player::BOTH {
                // every delay of a run has the same length
                for sigma in runs {
                    if is_delay(pi, sigma, p) {
                        related += 1;
                        assert!(is_delay(sigma, pi, p.neg()), "{pi} vs {sigma} for {p}");
                    }
                }
            }
        }
    }
    assert!(related > 0);
    format!("{related} delay pairs, 0 violations")
}

/// Brute-force static check over every run up to `max_len` built from the
/// game's labmoves and a junk move per player.
fn brute_force_static(game: &dyn Game, labmoves: &[LabMove], max_len: usize) -> bool {
    let mut alphabet = labmoves.to_vec();
    alphabet.push(LabMove::top("junk"));
    alphabet.push(LabMove::bot("junk"));
    runs_up_to(&alphabet, max_len).iter().all(|g| {
        Player::BOTH.iter().all(|&p| {
            !won_by(game, g, p)
                || enumerate_delays(g, p)
                    .unwrap()
                    .iter()
                    .all(|d| won_by(game, d, p))
        })
    })
}

fn tree_labmoves(tree: &col_core::GameTree, out: &mut Vec<LabMove>) {
    for (lm, child) in &tree.moves {
        if !out.contains(lm) {
            out.push(lm.clone());
        }
        tree_labmoves(child, out);
    }
}

fn static_preservation() -> String {
    let bounds = EnumBounds::new(2, 5);
    let mut runs = 0;
    let suite = suite::static_suite();
    assert!(suite.len() >= 3);
    for g in suite {
        let mut labmoves = Vec::new();
        tree_labmoves(&g.tree(), &mut labmoves);
        assert!(
            brute_force_static(&g, &labmoves, 5),
            "{} not static",
            g.name()
        );
        let report = verify_static_theorems(&suite::as_ref(g), bounds).unwrap();
        assert!(
            report.passed(),
            "{}: {:?} {:?}",
            report.subject,
            report.precondition,
            report.failures
        );
        runs += report.exercised;
    }
    format!("3 bases x 4 kinds static, lemma clean; {runs} runs examined")
}

fn both_directions() -> String {
    let mut plays = 0;
    let mut per: Vec<String> = Vec::new();
    for base in bases() {
        for d in Direction::BOTH {
            let report = verify_theorem_6_1(&base, d, THEOREM_BOUNDS, BUDGET).unwrap();
            assert!(
                report.passed(),
                "{}: {} failures, first {:?}",
                report.subject,
                report.failures.len(),
                report.failures.first()
            );
            assert!(report.exercised > 1);
            plays += report.exercised;
            per.push(format!("{}/{d}={}", base.name(), report.exercised));
        }
    }
    format!("{plays} plays all won by T ({})", per.join(" "))
}

fn de_morgan() -> String {
    let moves = [
        "", "0", "1", ":", "0:", ".a", ".b", ".c", "0.a", "1.b", "1.c", "01.a",
    ];
    let alphabet: Vec<LabMove> = moves
        .iter()
        .flat_map(|m| [LabMove::top(*m), LabMove::bot(*m)])
        .collect();
    let mut compared = 0usize;
    for base in bases() {
        for version in [Version::Tight, Version::Loose] {
            let co = make_recurrence(
                base.clone(),
                RecurrenceKind::new(version, Polarity::Corecurrence),
            );
            let dual = negate(make_recurrence(
                negate(base.clone()),
                RecurrenceKind::new(version, Polarity::Recurrence),
            ));
            // Illegal runs are settled by their first illegal move, so only
            // legal runs need extending.
            let mut stack = vec![Run::new()];
            while let Some(pos) = stack.pop() {
                for next in std::iter::once(pos.clone()).chain(
                    alphabet
                        .iter()
                        .filter(|_| pos.len() < 4)
                        .map(|lm| pos.with(lm.clone())),
                ) {
                    compared += 1;
                    assert_eq!(
                        offender(&*co, &next),
                        offender(&*dual, &next),
                        "{} on {next}",
                        co.name()
                    );
                    for p in Player::BOTH {
                        assert_eq!(won_by(&*co, &next, p), won_by(&*dual, &next, p), "{next}");
                    }
                    if next.len() > pos.len() && co.is_legal(&next) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    format!("{compared} runs agree on legality and winner")
}

fn mutation_is_caught() -> String {
    let mut failures = 0;
    let mut props = std::collections::BTreeSet::new();
    for base in bases() {
        let report = verify_theorem_6_1_with(
            &base,
            Direction::LooseToTight,
            THEOREM_BOUNDS,
            BUDGET,
            DEFAULT_MAX_STEPS,
            &|g| Box::new(Routine2::without_case1_update(g)),
        )
        .unwrap();
        failures += report.failures.len();
        props.extend(report.failures.iter().map(|f| f.property.to_string()));
    }
    assert!(failures >= 1, "mutant passed the suite");
    format!(
        "mutant caught: {failures} failures ({})",
        props.into_iter().collect::<Vec<_>>().join(", ")
    )
}

fn deterministic_simulation() -> String {
    let dir = std::env::temp_dir().join(format!("col-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let defs = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/suite.json");
    let mut outputs = Vec::new();
    for (i, direction) in [
        "loose-to-tight",
        "loose-to-tight",
        "loose-to-tight",
        "tight-to-loose",
        "tight-to-loose",
    ]
    .iter()
    .enumerate()
    {
        let path = dir.join(format!("trace{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_col"))
            .args(["simulate", "--direction", direction, "--defs", defs])
            .args(["--atom", "commute", "--adversary", "random", "--seed", "42"])
            .arg("--out")
            .arg(&path)
            .env_remove("COL_SEED")
            .output()
            .unwrap();
        assert!(status.status.success(), "{status:?}");
        outputs.push(std::fs::read(&path).unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
    assert!(outputs[0] == outputs[1] && outputs[1] == outputs[2]);
    assert!(outputs[3] == outputs[4]);
    assert!(!outputs[0].is_empty());
    format!(
        "repeated traces byte-identical ({} bytes)",
        outputs[0].len()
    )
}

fn main() {
    let criteria: [(u32, &str, Check); 7] = [
        (1, "projection golden", projection_golden),
        (2, "delay symmetry", delay_symmetry),
        (3, "static preservation", static_preservation),
        (
            4,
            "tight/loose translation, both directions",
            both_directions,
        ),
        (5, "corecurrence duality", de_morgan),
        (6, "mutation sensitivity", mutation_is_caught),
        (7, "deterministic simulate", deterministic_simulation),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (n, name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(summary) => println!("criterion {n} {name}: PASS in {secs:.1}s: {summary}"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n} {name}: FAIL in {secs:.1}s: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
