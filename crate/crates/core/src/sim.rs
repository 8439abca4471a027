//! Playing a machine strategy against an adversary, and the batch checks
//! built on top of that.

use std::fmt;

use rayon::prelude::*;

use crate::delay::{
    bounded_universe, check_illegality_lemma_over, is_static, is_static_over, MAX_DELAY_RUN,
    UNIVERSE_LIMIT,
};
use crate::error::SimError;
use crate::games::{
    component_run, disjoin, negate, offender, outcome, EnumBounds, GameRef, Offence,
};
use crate::recurrence::{
    actual_nodes, last_switch_ray, make_recurrence, outer_nodes, switch_count, RecurrenceKind,
};
use crate::run::{project, LabMove, Player, Run};
use crate::strategy::{exhaustive_adversaries, Case, FMap, Routine1, Routine2, Strategy};

/// One machine reaction to one adversary move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Index in the run of the adversary move being answered.
    pub trigger: usize,
    /// Run length once the machine's batch is recorded.
    pub end: usize,
    pub case: Option<Case>,
    pub fmap: Option<FMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub game_name: String,
    pub run: Run,
    pub steps: Vec<Step>,
    pub outcome: Player,
    pub offender: Option<Offence>,
    /// The step limit cut the play short.
    pub truncated: bool,
}

/// Plays `env` (moving first in every round) against `machine` until both
/// pass in a row or `max_steps` labmoves have been recorded.
pub fn run_interaction(
    machine: &mut dyn Strategy,
    env: &mut dyn Strategy,
    game: &GameRef,
    max_steps: usize,
) -> Result<Trace, SimError> {
    if max_steps == 0 {
        return Err(SimError::ZeroSteps);
    }
    let mut run = Run::new();
    let mut steps = Vec::new();
    let mut truncated = false;
    'play: loop {
        let env_moves = env.react(&run, None).moves;
        if env_moves.is_empty() {
            let answer = machine.react(&run, None);
            if answer.moves.is_empty() {
                break;
            }
            for mv in answer.moves {
                if run.len() >= max_steps {
                    truncated = true;
                    break 'play;
                }
                run.push(LabMove::new(machine.player(), mv));
            }
            continue;
        }
        for mv in env_moves {
            if run.len() >= max_steps {
                truncated = true;
                break 'play;
            }
            let incoming = LabMove::new(env.player(), mv);
            run.push(incoming.clone());
            let answer = machine.react(&run, Some(&incoming));
            let trigger = run.len() - 1;
            for mv in answer.moves {
                if run.len() >= max_steps {
                    truncated = true;
                    break;
                }
                run.push(LabMove::new(machine.player(), mv));
            }
            steps.push(Step {
                trigger,
                end: run.len(),
                case: answer.case,
                fmap: answer.fmap,
            });
            if truncated {
                break 'play;
            }
        }
    }
    Ok(Trace {
        game_name: game.name(),
        outcome: outcome(&**game, &run),
        offender: offender(&**game, &run),
        run,
        steps,
        truncated,
    })
}

/// Which half of the tight/loose equivalence is being played.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `cbr_t(not(A)) ∨ tbr_l(A)`, played by the first routine.
    TightToLoose,
    /// `cbr_l(not(A)) ∨ tbr_t(A)`, played by the second routine.
    LooseToTight,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::TightToLoose, Direction::LooseToTight];

    pub fn compound(self, base: GameRef) -> GameRef {
        let (left, right) = match self {
            Direction::TightToLoose => (RecurrenceKind::TIGHT_COREC, RecurrenceKind::LOOSE_REC),
            Direction::LooseToTight => (RecurrenceKind::LOOSE_COREC, RecurrenceKind::TIGHT_REC),
        };
        disjoin(
            make_recurrence(negate(base.clone()), left),
            make_recurrence(base, right),
        )
    }

    /// The routine for this direction, playing `compound`.
    pub fn machine(self, compound: GameRef) -> Box<dyn Strategy> {
        match self {
            Direction::TightToLoose => Box::new(Routine1::new(compound)),
            Direction::LooseToTight => Box::new(Routine2::new(compound)),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::TightToLoose => "tight-to-loose",
            Direction::LooseToTight => "loose-to-tight",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    TopWins,
    MachineNeverOffends,
    ProjectionIdentity,
    SwitchCount,
    PrefixFree,
    FMapDomain,
    Terminates,
    Static(RecurrenceKind),
    IllegalityLemma(RecurrenceKind),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::TopWins => f.write_str("machine wins"),
            Property::MachineNeverOffends => f.write_str("machine never offends"),
            Property::ProjectionIdentity => f.write_str("projection identity"),
            Property::SwitchCount => f.write_str("switch counts agree"),
            Property::PrefixFree => f.write_str("f images prefix-free"),
            Property::FMapDomain => f.write_str("f domain is the outer nodes"),
            Property::Terminates => f.write_str("play ends within the step limit"),
            Property::Static(kind) => write!(f, "{} static", kind.op_name()),
            Property::IllegalityLemma(kind) => write!(f, "{} illegality lemma", kind.op_name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub property: Property,
    pub detail: String,
    pub trace: Option<Trace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub bounds: EnumBounds,
    /// Adversaries played, or runs examined for the static checks.
    pub exercised: usize,
    /// Set when the base game failed the precondition; nothing else ran.
    pub precondition: Option<String>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.precondition.is_none() && self.failures.is_empty()
    }
}

/// Property violations of one finished play of `direction`'s compound.
pub fn check_trace(
    direction: Direction,
    compound: &GameRef,
    trace: &Trace,
) -> Vec<(Property, String)> {
    let mut out = Vec::new();
    if trace.truncated {
        out.push((
            Property::Terminates,
            format!("{} labmoves", trace.run.len()),
        ));
        return out;
    }
    if trace.outcome != Player::Top {
        out.push((Property::TopWins, format!("outcome {}", trace.outcome)));
    }
    if let Some(o) = trace.offender.filter(|o| o.culprit == Player::Top) {
        out.push((
            Property::MachineNeverOffends,
            format!("illegal move at {}", o.index),
        ));
    }
    if direction == Direction::LooseToTight {
        for step in &trace.steps {
            let Some(f) = &step.fmap else { continue };
            let position = trace.run.prefix(step.end);
            if !compound.is_legal(&position) {
                break;
            }
            let outer = outer_nodes(&actual_nodes(&component_run(&position, 2), Player::Bot));
            if f.domain() != outer {
                out.push((
                    Property::FMapDomain,
                    format!("after move {}: f = {f:?}, outer = {outer:?}", step.trigger),
                ));
            }
            if let Some((a, b)) = f.prefix_violation() {
                out.push((
                    Property::PrefixFree,
                    format!("after move {}: f({a}) ⪯ f({b}) in {f:?}", step.trigger),
                ));
            }
        }
    }
    if trace.offender.is_none() {
        let sigma = component_run(&trace.run, 1);
        let pi = component_run(&trace.run, 2);
        let pi_ray = last_switch_ray(&pi, Player::Bot);
        let sigma_ray = match direction {
            Direction::TightToLoose => pi_ray.clone(),
            Direction::LooseToTight => last_switch_ray(&sigma, Player::Top),
        };
        let left = project(&sigma, &sigma_ray);
        let right = project(&pi, &pi_ray).flipped();
        if left != right {
            out.push((
                Property::ProjectionIdentity,
                format!("along {sigma_ray}: {left} vs ¬ along {pi_ray}: {right}"),
            ));
        }
        if direction == Direction::LooseToTight
            && switch_count(&sigma, Player::Top) != switch_count(&pi, Player::Bot)
        {
            out.push((
                Property::SwitchCount,
                format!(
                    "{} vs {}",
                    switch_count(&sigma, Player::Top),
                    switch_count(&pi, Player::Bot)
                ),
            ));
        }
    }
    out
}

/// Step limit used by the batch drivers; the routines answer each
/// adversary move with a bounded batch, so plays end long before this.
pub const DEFAULT_MAX_STEPS: usize = 1024;

fn static_precondition(base: &GameRef, bounds: &EnumBounds) -> Result<Option<String>, SimError> {
    let probe = EnumBounds::new(
        bounds.max_address_len,
        bounds.max_run_len.min(MAX_DELAY_RUN),
    );
    let verdict = is_static(&**base, &probe)?;
    Ok(verdict.counterexample.map(|w| {
        format!(
            "{} is {}-won but its {}-delay {} is not",
            w.original, w.player, w.player, w.delayed
        )
    }))
}

/// Plays the routine for `direction` over `base` against every adversary
/// with at most `budget` moves drawn from the legal moves within `bounds`,
/// and checks each play.
pub fn verify_theorem_6_1(
    base: &GameRef,
    direction: Direction,
    bounds: EnumBounds,
    budget: usize,
) -> Result<VerificationReport, SimError> {
    verify_theorem_6_1_with(base, direction, bounds, budget, DEFAULT_MAX_STEPS, &|g| {
        direction.machine(g)
    })
}

/// [`verify_theorem_6_1`] with a chosen step limit and machine.
pub fn verify_theorem_6_1_with(
    base: &GameRef,
    direction: Direction,
    bounds: EnumBounds,
    budget: usize,
    max_steps: usize,
    machine: &(dyn Fn(GameRef) -> Box<dyn Strategy> + Sync),
) -> Result<VerificationReport, SimError> {
    if max_steps == 0 {
        return Err(SimError::ZeroSteps);
    }
    if let Some(detail) = static_precondition(base, &bounds)? {
        return Err(SimError::NotStatic {
            name: base.name(),
            detail,
        });
    }
    let compound = direction.compound(base.clone());
    let factory = || machine(compound.clone());
    let adversaries: Vec<_> =
        exhaustive_adversaries(compound.clone(), bounds, budget, &factory).collect();
    let failures: Vec<Vec<Failure>> = adversaries
        .into_par_iter()
        .map(|mut adv| {
            let trace = run_interaction(factory().as_mut(), &mut adv, &compound, max_steps)?;
            Ok(check_trace(direction, &compound, &trace)
                .into_iter()
                .map(|(property, detail)| Failure {
                    property,
                    detail,
                    trace: Some(trace.clone()),
                })
                .collect())
        })
        .collect::<Result<_, SimError>>()?;
    Ok(VerificationReport {
        subject: compound.name(),
        bounds,
        exercised: failures.len(),
        precondition: None,
        failures: failures.into_iter().flatten().collect(),
    })
}

/// Bounded static and illegality-lemma checks on all four recurrences of
/// `base`. A base that is not static itself is reported as a precondition
/// failure and nothing else is checked.
pub fn verify_static_theorems(
    base: &GameRef,
    bounds: EnumBounds,
) -> Result<VerificationReport, SimError> {
    let mut report = VerificationReport {
        subject: base.name(),
        bounds,
        exercised: 0,
        precondition: static_precondition(base, &bounds)?,
        failures: Vec::new(),
    };
    if report.precondition.is_some() {
        return Ok(report);
    }
    for kind in RecurrenceKind::ALL {
        let game = make_recurrence(base.clone(), kind);
        let universe = bounded_universe(&*game, &bounds, UNIVERSE_LIMIT)?;
        report.exercised += universe.len();
        let verdict = is_static_over(&universe);
        if let Some(w) = verdict.counterexample {
            report.failures.push(Failure {
                property: Property::Static(kind),
                detail: format!(
                    "{} is {}-won, its {}-delay {} is not",
                    w.original, w.player, w.player, w.delayed
                ),
                trace: None,
            });
        }
        let lemma = check_illegality_lemma_over(&universe);
        if let Some(w) = lemma.violations.first() {
            report.failures.push(Failure {
                property: Property::IllegalityLemma(kind),
                detail: format!(
                    "{} is {}-illegal, {} is not ({} violations)",
                    w.delayed,
                    w.player,
                    w.original,
                    lemma.violations.len()
                ),
                trace: None,
            });
        }
    }
    Ok(report)
}
