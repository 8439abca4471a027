//! Subcommand definitions and their implementations.
//!
//! Every command writes to a caller-supplied sink and returns the process
//! exit code for a completed run: 0, or 1 when the checked property fails.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use col_core::delay::{check_illegality_lemma, enumerate_delays, is_delay, is_static};
use col_core::games::{component_run, offender, outcome};
use col_core::recurrence::{actual_nodes, last_switch_ray, outer_nodes};
use col_core::run::project;
use col_core::sim::{
    check_trace, run_interaction, verify_theorem_6_1_with, Direction, Failure, Trace,
    DEFAULT_MAX_STEPS,
};
use col_core::strategy::{RandomAdversary, ScriptedAdversary, Strategy};
use col_core::{
    Bitstring, EnumBounds, FiniteGame, GameRef, LabMove, Move, Player, Ray, RecurrenceKind, Run,
};

use crate::error::{CliError, EXIT_FAILURE};
use crate::expr::{parse_game_expr, GameExpr};
use crate::files::{load_game_file, TraceFile, TraceHeader};

#[derive(Debug, Parser)]
#[command(
    name = "col",
    version,
    about = "Toggling-branching recurrence games: checks, simulation and play"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlayerArg {
    #[value(name = "T")]
    T,
    #[value(name = "B")]
    B,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Self {
        match p {
            PlayerArg::T => Player::Top,
            PlayerArg::B => Player::Bot,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    TightToLoose,
    LooseToTight,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::TightToLoose => Direction::TightToLoose,
            DirectionArg::LooseToTight => Direction::LooseToTight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdversaryArg {
    Exhaustive,
    Random,
    Script(PathBuf),
}

fn parse_adversary(s: &str) -> Result<AdversaryArg, String> {
    match s {
        "exhaustive" => Ok(AdversaryArg::Exhaustive),
        "random" => Ok(AdversaryArg::Random),
        _ => match s.strip_prefix("script:") {
            Some(path) if !path.is_empty() => Ok(AdversaryArg::Script(path.into())),
            _ => Err("expected `exhaustive`, `random` or `script:FILE`".into()),
        },
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the projection of a recorded run along the ray STEM·000…
    Project {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        ray: String,
    },
    /// Legality, first offender and winner of a recorded run in a game.
    Eval {
        #[arg(long)]
        game: String,
        #[arg(long)]
        defs: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Actual and outer nodes of a recorded position.
    Nodes {
        #[arg(long)]
        trace: PathBuf,
        /// Player whose replications split the tree.
        #[arg(long, value_enum, default_value = "B")]
        by: PlayerArg,
        /// Look only at component 1 or 2 of a disjunction.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        component: Option<u8>,
    },
    /// Check or enumerate delays of a recorded run.
    #[command(group(ArgGroup::new("mode").required(true).args(["check", "enumerate"])))]
    Delays {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum)]
        player: PlayerArg,
        /// Trace whose run should be a delay of the first.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Bounded static check with the illegality lemma.
    Static {
        #[arg(long)]
        game: String,
        #[arg(long)]
        defs: PathBuf,
        #[arg(long)]
        max_run: usize,
        #[arg(long)]
        max_addr: usize,
    },
    /// Play a routine against an adversary and check the plays.
    Simulate {
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        defs: PathBuf,
        #[arg(long)]
        atom: String,
        #[arg(long, value_parser = parse_adversary)]
        adversary: AdversaryArg,
        /// Most moves the adversary makes.
        #[arg(long, default_value_t = 3)]
        budget: usize,
        #[arg(long, env = "COL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, default_value_t = 2)]
        max_addr: usize,
        /// Run length for the base game's static precondition.
        #[arg(long, default_value_t = 4)]
        max_run: usize,
        /// Where to write the trace. With the exhaustive adversary this is
        /// the first failing play, if any.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play as ⊥ against the routine for a compound, one move per line.
    Play {
        #[arg(long)]
        game: String,
        #[arg(long)]
        defs: PathBuf,
    },
}

fn load_game(expr: &str, defs: &Path) -> Result<(GameExpr, GameRef), CliError> {
    let e = parse_game_expr(expr)?;
    let defs = load_game_file(defs)?;
    let g = e.elaborate(&defs)?;
    Ok((e, g))
}

fn join_nodes<'a>(nodes: impl IntoIterator<Item = &'a Bitstring>) -> String {
    let v: Vec<String> = nodes.into_iter().map(|b| b.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn run(cli: Cli, out: &mut dyn Write, input: &mut dyn BufRead) -> Result<i32, CliError> {
    match cli.command {
        Command::Project { trace, ray } => {
            let run = TraceFile::load(&trace)?.run();
            let stem = Bitstring::new(ray.as_str())
                .map_err(|e| CliError::Usage(format!("--ray {ray:?}: {e}")))?;
            writeln!(out, "{}", project(&run, &Ray::new(stem)))?;
            Ok(0)
        }
        Command::Eval { game, defs, trace } => {
            let (_, g) = load_game(&game, &defs)?;
            let run = TraceFile::load(&trace)?.run();
            writeln!(out, "{}", eval_line(&g, &run))?;
            Ok(0)
        }
        Command::Nodes {
            trace,
            by,
            component,
        } => {
            let mut run = TraceFile::load(&trace)?.run();
            if let Some(c) = component {
                run = component_run(&run, c as usize);
            }
            let tree = actual_nodes(&run, by.into());
            writeln!(out, "actual: {}", join_nodes(tree.iter()))?;
            writeln!(out, "outer: {}", join_nodes(&outer_nodes(&tree)))?;
            Ok(0)
        }
        Command::Delays {
            trace,
            player,
            check,
            enumerate,
        } => {
            let gamma = TraceFile::load(&trace)?.run();
            let p: Player = player.into();
            if let Some(other) = check {
                let delta = TraceFile::load(&other)?.run();
                let yes = is_delay(&delta, &gamma, p);
                let verb = if yes { "is" } else { "is not" };
                writeln!(out, "{delta} {verb} a {}-delay of {gamma}", p.code())?;
                return Ok(if yes { 0 } else { EXIT_FAILURE });
            }
            debug_assert!(enumerate);
            let delays = enumerate_delays(&gamma, p)?;
            for d in &delays {
                writeln!(out, "{d}")?;
            }
            writeln!(out, "{} {}-delays", delays.len(), p.code())?;
            Ok(0)
        }
        Command::Static {
            game,
            defs,
            max_run,
            max_addr,
        } => {
            let (_, g) = load_game(&game, &defs)?;
            let bounds = EnumBounds::new(max_addr, max_run);
            let verdict = is_static(&*g, &bounds)?;
            writeln!(
                out,
                "{}: static = {} ({} runs checked, runs ≤ {max_run}, addresses ≤ {max_addr})",
                g.name(),
                verdict.is_static,
                verdict.runs_checked
            )?;
            if let Some(w) = &verdict.counterexample {
                writeln!(
                    out,
                    "counterexample: {} is {}-won, its {}-delay {} is not",
                    w.original,
                    w.player.code(),
                    w.player.code(),
                    w.delayed
                )?;
            }
            let lemma = check_illegality_lemma(&*g, &bounds)?;
            writeln!(
                out,
                "illegality lemma: {} violations in {} pairs",
                lemma.violations.len(),
                lemma.pairs_checked
            )?;
            if let Some(w) = lemma.violations.first() {
                writeln!(
                    out,
                    "violation: {} is {}-illegal, {} is not",
                    w.delayed,
                    w.player.code(),
                    w.original
                )?;
            }
            Ok(if verdict.is_static && lemma.holds() {
                0
            } else {
                EXIT_FAILURE
            })
        }
        Command::Simulate {
            direction,
            defs,
            atom,
            adversary,
            budget,
            seed,
            max_steps,
            max_addr,
            max_run,
            out: out_path,
        } => simulate(
            SimulateArgs {
                direction: direction.into(),
                defs,
                atom,
                adversary,
                budget,
                seed,
                max_steps,
                bounds: EnumBounds::new(max_addr, max_run),
                out_path,
            },
            out,
        ),
        Command::Play { game, defs } => {
            let (e, g) = load_game(&game, &defs)?;
            play(&e, g, input, out)
        }
    }
}

/// `legal; winner: T`, or where the run first goes wrong.
pub fn eval_line(game: &GameRef, run: &Run) -> String {
    let status = match offender(&**game, run) {
        None => "legal".to_owned(),
        Some(o) => format!(
            "illegal: move {} ({}) by {}",
            o.index + 1,
            run[o.index],
            o.culprit.code()
        ),
    };
    format!("{status}; winner: {}", outcome(&**game, run).code())
}

struct SimulateArgs {
    direction: Direction,
    defs: PathBuf,
    atom: String,
    adversary: AdversaryArg,
    budget: usize,
    seed: u64,
    max_steps: usize,
    bounds: EnumBounds,
    out_path: Option<PathBuf>,
}

fn base_game(defs: &BTreeMap<String, FiniteGame>, atom: &str) -> Result<GameRef, CliError> {
    Ok(GameExpr::atom(atom).elaborate(defs)?)
}

fn load_script(path: &Path) -> Result<Vec<Move>, CliError> {
    let text = std::fs::read_to_string(path)?;
    if let Ok(moves) = serde_json::from_str::<Vec<String>>(&text) {
        return Ok(moves.into_iter().map(Move::new).collect());
    }
    let trace = TraceFile::from_text(&text, &path.display().to_string())?;
    Ok(trace
        .run()
        .iter()
        .filter(|lm| lm.label == Player::Bot)
        .map(|lm| lm.mv.clone())
        .collect())
}

fn write_failures(out: &mut dyn Write, failures: &[Failure]) -> std::io::Result<()> {
    for f in failures.iter().take(5) {
        write!(out, "FAIL {}: {}", f.property, f.detail)?;
        match &f.trace {
            Some(t) => writeln!(out, " in {}", t.run)?,
            None => writeln!(out)?,
        }
    }
    if failures.len() > 5 {
        writeln!(out, "... and {} more", failures.len() - 5)?;
    }
    Ok(())
}

fn save_trace(path: &Path, trace: &Trace, header: TraceHeader) -> Result<(), CliError> {
    std::fs::write(path, TraceFile::from_trace(trace, header).to_text())?;
    Ok(())
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let defs = load_game_file(&args.defs)?;
    let base = base_game(&defs, &args.atom)?;
    let d = args.direction;
    let compound = d.compound(base.clone());
    let header = |seed: Option<u64>| TraceHeader {
        game: Some(compound.name()),
        seed,
        bounds: Some(args.bounds.into()),
        ..TraceHeader::default()
    };
    if args.adversary == AdversaryArg::Exhaustive {
        let report =
            verify_theorem_6_1_with(&base, d, args.bounds, args.budget, args.max_steps, &|g| {
                d.machine(g)
            })?;
        writeln!(
            out,
            "{d} {}: {} adversaries (budget {}), {} failures",
            report.subject,
            report.exercised,
            args.budget,
            report.failures.len()
        )?;
        write_failures(out, &report.failures)?;
        if let (Some(path), Some(t)) = (
            &args.out_path,
            report.failures.iter().find_map(|f| f.trace.as_ref()),
        ) {
            save_trace(path, t, header(None))?;
        }
        return Ok(if report.passed() { 0 } else { EXIT_FAILURE });
    }

    // A single play still requires a static base.
    let verdict = is_static(&*base, &args.bounds)?;
    if let Some(w) = verdict.counterexample {
        return Err(CliError::Precondition(format!(
            "{} is not static: {} is {}-won, its delay {} is not",
            base.name(),
            w.original,
            w.player.code(),
            w.delayed
        )));
    }
    let mut machine = d.machine(compound.clone());
    let (mut env, seed): (Box<dyn Strategy>, Option<u64>) = match &args.adversary {
        AdversaryArg::Random => (
            Box::new(RandomAdversary::new(
                compound.clone(),
                args.seed,
                args.bounds,
                args.budget,
            )),
            Some(args.seed),
        ),
        AdversaryArg::Script(path) => (Box::new(ScriptedAdversary::new(load_script(path)?)), None),
        AdversaryArg::Exhaustive => unreachable!("handled above"),
    };
    let trace = run_interaction(machine.as_mut(), env.as_mut(), &compound, args.max_steps)?;
    let failures: Vec<Failure> = check_trace(d, &compound, &trace)
        .into_iter()
        .map(|(property, detail)| Failure {
            property,
            detail,
            trace: None,
        })
        .collect();
    writeln!(out, "{d} {}", compound.name())?;
    writeln!(out, "run: {}", trace.run)?;
    writeln!(out, "{}", eval_line(&compound, &trace.run))?;
    writeln!(out, "{} failures", failures.len())?;
    write_failures(out, &failures)?;
    if let Some(path) = &args.out_path {
        save_trace(path, &trace, header(seed))?;
    }
    Ok(if failures.is_empty() { 0 } else { EXIT_FAILURE })
}

/// The direction whose compound `e` is, if any.
pub fn compound_direction(e: &GameExpr) -> Option<Direction> {
    let GameExpr::Or(left, right) = e else {
        return None;
    };
    let (lk, lbody) = left.recurrence()?;
    let (rk, rbody) = right.recurrence()?;
    let GameExpr::Not(base) = lbody else {
        return None;
    };
    if **base != *rbody {
        return None;
    }
    match (lk, rk) {
        (RecurrenceKind::TIGHT_COREC, RecurrenceKind::LOOSE_REC) => Some(Direction::TightToLoose),
        (RecurrenceKind::LOOSE_COREC, RecurrenceKind::TIGHT_REC) => Some(Direction::LooseToTight),
        _ => None,
    }
}

/// The recurrences visible at the top of `e`, with the component number
/// (0 for the whole game) and the run restricted to them.
fn recurrence_views(e: &GameExpr, run: &Run) -> Vec<(usize, RecurrenceKind, Run)> {
    if let Some((kind, _)) = e.recurrence() {
        return vec![(0, kind, run.clone())];
    }
    let GameExpr::Or(a, b) = e else {
        return Vec::new();
    };
    [(1, a), (2, b)]
        .into_iter()
        .filter_map(|(i, side)| {
            side.recurrence()
                .map(|(kind, _)| (i, kind, component_run(run, i)))
        })
        .collect()
}

fn describe(e: &GameExpr, game: &GameRef, run: &Run, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "position: {run}")?;
    writeln!(out, "{}", eval_line(game, run))?;
    for (i, kind, part) in recurrence_views(e, run) {
        let by = kind.structural();
        let tree = actual_nodes(&part, by);
        let ray = last_switch_ray(&part, by);
        let label = if i == 0 {
            kind.op_name().to_owned()
        } else {
            format!("component {i} ({})", kind.op_name())
        };
        writeln!(
            out,
            "{label}: actual {} outer {}; last switch ray {ray}; projection {}",
            join_nodes(tree.iter()),
            join_nodes(&outer_nodes(&tree)),
            project(&part, &ray)
        )?;
    }
    Ok(())
}

const PLAY_HELP: &str =
    "type a move (JSON-quote it to include spaces or an empty move), #pass, or #quit";

/// The interactive mode. The human plays ⊥; the machine answers when the
/// game is one of the two compounds.
pub fn play(
    e: &GameExpr,
    game: GameRef,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let direction = compound_direction(e);
    let mut machine: Option<Box<dyn Strategy>> = direction.map(|d| d.machine(game.clone()));
    writeln!(out, "game: {}", game.name())?;
    match direction {
        Some(d) => writeln!(out, "you are B; the machine plays T ({d})")?,
        None => writeln!(out, "you are B; T makes no moves in this game")?,
    }
    writeln!(out, "{PLAY_HELP}")?;
    let mut run = Run::new();
    let mut line = String::new();
    loop {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            break;
        }
        let text = line.trim_end_matches(['\n', '\r']);
        let incoming = match text.trim() {
            "#quit" => break,
            "#help" => {
                writeln!(out, "{PLAY_HELP}")?;
                continue;
            }
            "#pass" => None,
            t if t.starts_with('"') => match serde_json::from_str::<String>(t) {
                Ok(mv) => Some(LabMove::bot(mv)),
                Err(err) => {
                    writeln!(out, "bad quoted move: {err}")?;
                    continue;
                }
            },
            _ => Some(LabMove::bot(text)),
        };
        if let Some(lm) = &incoming {
            run.push(lm.clone());
        }
        let answer = match machine.as_mut() {
            Some(m) => m.react(&run, incoming.as_ref()).moves,
            None => Vec::new(),
        };
        if incoming.is_none() && answer.is_empty() {
            writeln!(out, "both players passed")?;
            break;
        }
        if answer.is_empty() {
            writeln!(out, "machine: (no move)")?;
        } else {
            let shown: Vec<String> = answer.iter().map(|m| m.to_string()).collect();
            writeln!(out, "machine: {}", shown.join(", "))?;
        }
        for mv in answer {
            run.push(LabMove::top(mv));
        }
        describe(e, &game, &run, out)?;
    }
    writeln!(out, "final: {run}")?;
    writeln!(out, "{}", eval_line(&game, &run))?;
    Ok(0)
}
