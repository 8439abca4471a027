//! The delay relation and bounded checks of the static property.
//!
//! `Δ` is a `℘`-delay of `Γ` when both runs have the same `℘`-labeled and
//! the same `¬℘`-labeled subsequences, and every `℘` move of `Δ` is preceded
//! by at least as many `¬℘` moves as in `Γ`. A game is static when every
//! `℘`-won run stays `℘`-won under `℘`-delays.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::DelayError;
use crate::games::{EnumBounds, Game};
use crate::run::{label_subsequence, LabMove, Player, Run};

/// Longest run whose delays may be enumerated.
pub const MAX_DELAY_RUN: usize = 8;

/// Default cap on the number of runs in a bounded universe.
pub const UNIVERSE_LIMIT: usize = 50_000_000;

/// For each `p`-labeled move, how many `¬p` moves precede it.
fn adversary_counts(run: &Run, p: Player) -> Vec<usize> {
    let mut seen = 0;
    let mut out = Vec::new();
    for lm in run.iter() {
        if lm.label == p {
            out.push(seen);
        } else {
            seen += 1;
        }
    }
    out
}

/// Whether `delta` is a `p`-delay of `gamma`.
pub fn is_delay(delta: &Run, gamma: &Run, p: Player) -> bool {
    if label_subsequence(delta, p) != label_subsequence(gamma, p)
        || label_subsequence(delta, p.neg()) != label_subsequence(gamma, p.neg())
    {
        return false;
    }
    adversary_counts(delta, p)
        .iter()
        .zip(adversary_counts(gamma, p))
        .all(|(d, g)| *d >= g)
}

/// A checked pair: `delayed` is a `player`-delay of `original`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayWitness {
    pub original: Run,
    pub delayed: Run,
    pub player: Player,
}

impl DelayWitness {
    pub fn new(original: Run, delayed: Run, player: Player) -> Option<Self> {
        is_delay(&delayed, &original, player).then_some(DelayWitness {
            original,
            delayed,
            player,
        })
    }
}

/// Calls `emit` with every interleaving of `own` (the `p` moves) and
/// `other` (the `¬p` moves) in which `own[j]` is placed after `placed`
/// moves of `other` only if `allow(j, placed)`, and another `other` move is
/// placed before `own[j]` only if `!must(j, placed)`.
fn interleave<T: Clone>(
    own: &[T],
    other: &[T],
    allow: &dyn Fn(usize, usize) -> bool,
    must: &dyn Fn(usize, usize) -> bool,
    emit: &mut dyn FnMut(&[T]),
) {
    struct Ctx<'a, T> {
        own: &'a [T],
        other: &'a [T],
        allow: &'a dyn Fn(usize, usize) -> bool,
        must: &'a dyn Fn(usize, usize) -> bool,
    }
    fn go<T: Clone>(
        ctx: &Ctx<'_, T>,
        i: usize,
        j: usize,
        acc: &mut Vec<T>,
        emit: &mut dyn FnMut(&[T]),
    ) {
        if i == ctx.own.len() && j == ctx.other.len() {
            emit(acc);
            return;
        }
        if i < ctx.own.len() && (ctx.allow)(i, j) {
            acc.push(ctx.own[i].clone());
            go(ctx, i + 1, j, acc, emit);
            acc.pop();
        }
        if j < ctx.other.len() && (i == ctx.own.len() || !(ctx.must)(i, j)) {
            acc.push(ctx.other[j].clone());
            go(ctx, i, j + 1, acc, emit);
            acc.pop();
        }
    }
    let ctx = Ctx {
        own,
        other,
        allow,
        must,
    };
    go(
        &ctx,
        0,
        0,
        &mut Vec::with_capacity(own.len() + other.len()),
        emit,
    );
}

/// Which direction of the delay relation to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    /// Runs that are `p`-delays of the given run.
    Delays,
    /// Runs of which the given run is a `p`-delay.
    Undelays,
}

/// Splits by label and enumerates in the requested direction.
fn for_each_related<T: Clone>(
    items: &[T],
    label: impl Fn(&T) -> Player,
    p: Player,
    direction: Direction,
    emit: &mut dyn FnMut(&[T]),
) {
    let mut own = Vec::new();
    let mut other = Vec::new();
    let mut counts = Vec::new();
    for item in items {
        if label(item) == p {
            counts.push(other.len());
            own.push(item.clone());
        } else {
            other.push(item.clone());
        }
    }
    match direction {
        Direction::Delays => interleave(
            &own,
            &other,
            &|j, placed| placed >= counts[j],
            &|_, _| false,
            emit,
        ),
        Direction::Undelays => interleave(
            &own,
            &other,
            &|j, placed| placed <= counts[j],
            &|j, placed| placed >= counts[j],
            emit,
        ),
    }
}

fn guard(run: &Run) -> Result<(), DelayError> {
    if run.len() > MAX_DELAY_RUN {
        Err(DelayError::RunTooLong {
            len: run.len(),
            limit: MAX_DELAY_RUN,
        })
    } else {
        Ok(())
    }
}

fn related(run: &Run, p: Player, direction: Direction) -> Result<Vec<Run>, DelayError> {
    guard(run)?;
    let mut out = Vec::new();
    for_each_related(run, |lm| lm.label, p, direction, &mut |moves| {
        out.push(Run::from(moves.to_vec()))
    });
    Ok(out)
}

/// All `p`-delays of `gamma`, `gamma` itself included.
pub fn enumerate_delays(gamma: &Run, p: Player) -> Result<Vec<Run>, DelayError> {
    related(gamma, p, Direction::Delays)
}

/// All runs of which `delta` is a `p`-delay, `delta` itself included.
pub fn enumerate_undelays(delta: &Run, p: Player) -> Result<Vec<Run>, DelayError> {
    related(delta, p, Direction::Undelays)
}

/// A run of at most [`MAX_DELAY_RUN`] interned labmoves packed into 16-bit
/// lanes, lowest lane first. Lane values are `id + 1`, so unused lanes are 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Packed(u128);

impl Packed {
    const EMPTY: Packed = Packed(0);

    fn len(self) -> usize {
        (128 - self.0.leading_zeros() as usize).div_ceil(16)
    }

    fn push(self, id: u16) -> Packed {
        Packed(self.0 | (u128::from(id) + 1) << (16 * self.len()))
    }

    fn prefix(self, len: usize) -> Packed {
        if len >= 8 {
            self
        } else {
            Packed(self.0 & ((1u128 << (16 * len)) - 1))
        }
    }

    fn ids(self) -> impl Iterator<Item = u16> {
        (0..self.len()).map(move |i| ((self.0 >> (16 * i)) & 0xffff) as u16 - 1)
    }

    fn from_ids(ids: &[u16]) -> Packed {
        ids.iter().fold(Packed::EMPTY, |acc, &id| acc.push(id))
    }
}

/// The runs a static check ranges over.
///
/// `legal` holds every legal run of length at most `max_run_len` reachable
/// through `legal_moves`, with its winner. The frontier holds every legal
/// run shorter than `max_run_len` extended by one labmove that is not a
/// legal continuation, drawn from the labmoves seen in legal runs plus a
/// malformed probe for each player.
///
/// A continuation counts as legal exactly when `legal_moves` produced it,
/// so the game's move enumeration must be complete within the bounds.
/// Legality of arbitrary reorderings is then answered by table lookup: a
/// run of the right length is legal iff it is in the table, and its first
/// illegal move sits right after its longest tabulated prefix.
#[derive(Clone, Debug, Default)]
pub struct RunUniverse {
    alphabet: Vec<LabMove>,
    legal: Vec<Packed>,
    winners: HashMap<Packed, Player>,
    frontier: Vec<Packed>,
}

impl RunUniverse {
    pub fn legal_count(&self) -> usize {
        self.legal.len()
    }

    pub fn frontier_count(&self) -> usize {
        self.frontier.len()
    }

    pub fn len(&self) -> usize {
        self.legal.len() + self.frontier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn materialize(&self, packed: Packed) -> Run {
        packed
            .ids()
            .map(|id| self.alphabet[id as usize].clone())
            .collect()
    }

    pub fn legal_runs(&self) -> impl Iterator<Item = Run> + '_ {
        self.legal.iter().map(|&p| self.materialize(p))
    }

    pub fn frontier_runs(&self) -> impl Iterator<Item = Run> + '_ {
        self.frontier.iter().map(|&p| self.materialize(p))
    }

    fn label(&self, id: u16) -> Player {
        self.alphabet[id as usize].label
    }

    /// First illegal index and its author, by table lookup.
    fn offence(&self, run: Packed) -> Option<(usize, Player)> {
        if self.winners.contains_key(&run) {
            return None;
        }
        let ids: Vec<u16> = run.ids().collect();
        let k = (0..ids.len())
            .find(|&k| !self.winners.contains_key(&run.prefix(k + 1)))
            .unwrap_or(ids.len() - 1);
        Some((k, self.label(ids[k])))
    }

    fn won_by(&self, run: Packed, p: Player) -> bool {
        match self.winners.get(&run) {
            Some(w) => *w == p,
            None => self.offence(run).is_some_and(|(_, culprit)| culprit != p),
        }
    }

    fn related(&self, run: Packed, p: Player, direction: Direction, emit: &mut dyn FnMut(Packed)) {
        let ids: Vec<u16> = run.ids().collect();
        for_each_related(&ids, |&id| self.label(id), p, direction, &mut |moves| {
            emit(Packed::from_ids(moves))
        });
    }

    fn single_label(&self, run: Packed) -> bool {
        let mut labels = run.ids().map(|id| self.label(id));
        match labels.next() {
            Some(first) => labels.all(|l| l == first),
            None => true,
        }
    }
}

/// A move string no address grammar or suite game accepts.
pub const PROBE_MOVE: &str = "?";

pub fn bounded_universe(
    game: &dyn Game,
    bounds: &EnumBounds,
    limit: usize,
) -> Result<RunUniverse, DelayError> {
    if bounds.max_run_len > MAX_DELAY_RUN {
        return Err(DelayError::RunTooLong {
            len: bounds.max_run_len,
            limit: MAX_DELAY_RUN,
        });
    }
    let mut universe = RunUniverse::default();
    let mut index: HashMap<LabMove, u16> = HashMap::new();
    let mut intern = |lm: LabMove, alphabet: &mut Vec<LabMove>| -> u16 {
        *index.entry(lm).or_insert_with_key(|lm| {
            alphabet.push(lm.clone());
            (alphabet.len() - 1) as u16
        })
    };

    universe.legal.push(Packed::EMPTY);
    universe
        .winners
        .insert(Packed::EMPTY, game.winner(&Run::new()));
    let mut layer: Vec<(Run, Packed)> = vec![(Run::new(), Packed::EMPTY)];
    for depth in 0..bounds.max_run_len {
        let children: Vec<Vec<(Run, Player)>> = layer
            .par_iter()
            .map(|(pos, _)| {
                let mut out = Vec::new();
                for p in Player::BOTH {
                    for m in game.legal_moves(pos, p, bounds) {
                        let child = pos.with(LabMove::new(p, m));
                        let winner = game.winner(&child);
                        out.push((child, winner));
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for ((_, parent), kids) in layer.iter().zip(children) {
            for (child, winner) in kids {
                let id = intern(child[child.len() - 1].clone(), &mut universe.alphabet);
                if universe.alphabet.len() >= u16::MAX as usize {
                    return Err(DelayError::UniverseTooLarge { limit });
                }
                let packed = parent.push(id);
                universe.legal.push(packed);
                universe.winners.insert(packed, winner);
                if depth + 1 < bounds.max_run_len {
                    next.push((child, packed));
                }
            }
        }
        if universe.legal.len() > limit {
            return Err(DelayError::UniverseTooLarge { limit });
        }
        layer = next;
    }

    for p in Player::BOTH {
        intern(LabMove::new(p, PROBE_MOVE), &mut universe.alphabet);
    }
    let ids = 0..universe.alphabet.len() as u16;
    for &run in &universe.legal {
        if run.len() >= bounds.max_run_len {
            continue;
        }
        for id in ids.clone() {
            let ext = run.push(id);
            if !universe.winners.contains_key(&ext) {
                universe.frontier.push(ext);
            }
        }
        if universe.legal.len() + universe.frontier.len() > limit {
            return Err(DelayError::UniverseTooLarge { limit });
        }
    }
    Ok(universe)
}

/// Outcome of a bounded static check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticVerdict {
    pub is_static: bool,
    /// First violation in enumeration order: `delayed` is a `player`-delay of
    /// `original`, `original` is won by `player` and `delayed` is not.
    pub counterexample: Option<DelayWitness>,
    pub runs_checked: usize,
}

fn first_static_violation(universe: &RunUniverse, gamma: Packed) -> Option<(Packed, Player)> {
    if universe.single_label(gamma) {
        return None;
    }
    for p in Player::BOTH {
        if !universe.won_by(gamma, p) {
            continue;
        }
        let mut found = None;
        universe.related(gamma, p, Direction::Delays, &mut |delta| {
            if found.is_none() && delta != gamma && !universe.won_by(delta, p) {
                found = Some(delta);
            }
        });
        if let Some(delta) = found {
            return Some((delta, p));
        }
    }
    None
}

/// Checks the static property over every run of `universe`.
pub fn is_static_over(universe: &RunUniverse) -> StaticVerdict {
    let runs: Vec<Packed> = universe
        .legal
        .iter()
        .chain(&universe.frontier)
        .copied()
        .collect();
    let found = runs.par_iter().find_map_first(|&gamma| {
        first_static_violation(universe, gamma).map(|(d, p)| (gamma, d, p))
    });
    let counterexample = found.map(|(gamma, delta, player)| DelayWitness {
        original: universe.materialize(gamma),
        delayed: universe.materialize(delta),
        player,
    });
    StaticVerdict {
        is_static: counterexample.is_none(),
        counterexample,
        runs_checked: runs.len(),
    }
}

/// Bounded static check: every `p`-won run of the bounded universe stays
/// `p`-won under all of its `p`-delays, for both players.
pub fn is_static(game: &dyn Game, bounds: &EnumBounds) -> Result<StaticVerdict, DelayError> {
    let universe = bounded_universe(game, bounds, UNIVERSE_LIMIT)?;
    Ok(is_static_over(&universe))
}

/// Result of scanning for violations of the illegality lemma: a `℘`-illegal
/// `Δ` that is a `℘`-delay of some `Γ` which is not `℘`-illegal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub pairs_checked: usize,
    pub violations: Vec<DelayWitness>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lemma_violations(universe: &RunUniverse, delta: Packed) -> (usize, Vec<(Packed, Player)>) {
    let Some((_, p)) = universe.offence(delta) else {
        return (0, Vec::new());
    };
    if universe.single_label(delta) {
        return (1, Vec::new());
    }
    let mut pairs = 0;
    let mut bad = Vec::new();
    universe.related(delta, p, Direction::Undelays, &mut |gamma| {
        pairs += 1;
        if universe.offence(gamma).map(|(_, c)| c) != Some(p) {
            bad.push((gamma, p));
        }
    });
    (pairs, bad)
}

/// Lemma scan over the frontier of `universe` (its only illegal runs).
pub fn check_illegality_lemma_over(universe: &RunUniverse) -> LemmaReport {
    let results: Vec<_> = universe
        .frontier
        .par_iter()
        .map(|&delta| (delta, lemma_violations(universe, delta)))
        .collect();
    let mut report = LemmaReport::default();
    for (delta, (pairs, bad)) in results {
        report.pairs_checked += pairs;
        report
            .violations
            .extend(bad.into_iter().map(|(gamma, player)| DelayWitness {
                original: universe.materialize(gamma),
                delayed: universe.materialize(delta),
                player,
            }));
    }
    report
}

/// For every `℘`-illegal `Δ` in the bounded universe and every `Γ` with `Δ`
/// a `℘`-delay of `Γ`, checks that `Γ` is `℘`-illegal too.
pub fn check_illegality_lemma(
    game: &dyn Game,
    bounds: &EnumBounds,
) -> Result<LemmaReport, DelayError> {
    let universe = bounded_universe(game, bounds, UNIVERSE_LIMIT)?;
    Ok(check_illegality_lemma_over(&universe))
}
