//! Reactive strategies: the two translation routines and the adversaries
//! they are tested against.
//!
//! A strategy sees the whole position after each adversary move and answers
//! with a finite batch of moves. Passing is an empty batch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bitstring;
use crate::games::{component_of, component_run, EnumBounds, GameRef};
use crate::recurrence::{actual_nodes, NodeTree};
use crate::run::{LabMove, Move, MoveShape, Player, Run};
use crate::sim::run_interaction;

/// Which prescription of a routine produced a reaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    One,
    Two,
    Three,
    Four,
    /// The incoming move was illegal or matched no case.
    Idle,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::One => f.write_str("case 1"),
            Case::Two => f.write_str("case 2"),
            Case::Three => f.write_str("case 3"),
            Case::Four => f.write_str("case 4"),
            Case::Idle => f.write_str("idle"),
        }
    }
}

/// What a strategy plays in response to one event.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reaction {
    pub moves: Vec<Move>,
    pub case: Option<Case>,
    /// The routine's mapping after reacting, when it keeps one.
    pub fmap: Option<FMap>,
}

impl Reaction {
    pub fn pass() -> Self {
        Reaction::default()
    }

    fn of(case: Case, moves: Vec<Move>) -> Self {
        Reaction {
            moves,
            case: Some(case),
            fmap: None,
        }
    }
}

pub trait Strategy: Send {
    /// The label attached to this strategy's moves.
    fn player(&self) -> Player;

    /// Reacts to the position so far. `incoming` is the adversary's latest
    /// move, already the last element of `position`; `None` means the
    /// adversary passed or this is the opening.
    fn react(&mut self, position: &Run, incoming: Option<&LabMove>) -> Reaction;
}

/// The mapping from outer nodes of the tight component to bitstrings that
/// the second routine maintains.
#[derive(Clone, PartialEq, Eq)]
pub struct FMap(BTreeMap<Bitstring, Bitstring>);

impl Default for FMap {
    fn default() -> Self {
        let mut map = BTreeMap::new();
        map.insert(Bitstring::empty(), Bitstring::empty());
        FMap(map)
    }
}

impl fmt::Debug for FMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl FMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Bitstring, Bitstring)>) -> Self {
        FMap(pairs.into_iter().collect())
    }

    pub fn get(&self, v: &Bitstring) -> Option<&Bitstring> {
        self.0.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bitstring, &Bitstring)> {
        self.0.iter()
    }

    pub fn domain(&self) -> BTreeSet<Bitstring> {
        self.0.keys().cloned().collect()
    }

    /// Replaces `w` by its two children, mapped to `f(w)0` and `f(w)1`.
    fn split(&mut self, w: &Bitstring) {
        if let Some(v) = self.0.remove(w) {
            self.0.insert(w.child(0), v.child(0));
            self.0.insert(w.child(1), v.child(1));
        }
    }

    /// A pair of distinct nodes whose images are prefix-related, if any.
    pub fn prefix_violation(&self) -> Option<(Bitstring, Bitstring)> {
        self.0.iter().find_map(|(a, fa)| {
            self.0
                .iter()
                .find(|(b, fb)| a != *b && fa.is_prefix_of(fb))
                .map(|(b, _)| (a.clone(), b.clone()))
        })
    }
}

/// Replications that make `w` an actual node of the tight position `run`,
/// where `structural` is the player allowed to replicate.
pub fn grow_to_actual(run: &Run, w: &Bitstring, structural: Player) -> Vec<Move> {
    let mut tree = actual_nodes(run, structural);
    let mut out = Vec::new();
    while !tree.contains(w) {
        let at = tree.longest_actual_prefix(w);
        out.push(Move::new(format!("{}:", at.as_str())));
        tree.replicate(&at);
    }
    out
}

fn addressed(prefix: &str, addr: &Bitstring, payload: &str) -> Move {
    Move::new(format!("{prefix}{}.{payload}", addr.as_str()))
}

/// The strategy for `cbr_t(not(A)) ∨ tbr_l(A)`: mirror the loose component
/// into the tight one, growing the tree there as needed.
pub struct Routine1 {
    game: GameRef,
}

impl Routine1 {
    /// `game` is the compound, used only to ignore illegal adversary moves.
    pub fn new(game: GameRef) -> Self {
        Routine1 { game }
    }
}

impl Strategy for Routine1 {
    fn player(&self) -> Player {
        Player::Top
    }

    fn react(&mut self, position: &Run, incoming: Option<&LabMove>) -> Reaction {
        let Some(incoming) = incoming else {
            return Reaction::pass();
        };
        if !self.game.is_legal(position) {
            return Reaction::of(Case::Idle, Vec::new());
        }
        let Some((component, inner)) = component_of(&incoming.mv) else {
            return Reaction::of(Case::Idle, Vec::new());
        };
        match (component, MoveShape::of(inner)) {
            (1, MoveShape::NonReplicative(..)) => {
                Reaction::of(Case::One, vec![Move::new(format!("2.{inner}"))])
            }
            (2, MoveShape::Switch(w)) => {
                let w = Bitstring::from_valid(w);
                let mut moves = grow_to_actual(&component_run(position, 1), &w, Player::Top);
                moves.push(Move::new(w.as_str()));
                Reaction::of(Case::Two, moves.iter().map(|m| m.prefixed("1.")).collect())
            }
            (2, MoveShape::NonReplicative(w, alpha)) => {
                let w = Bitstring::from_valid(w);
                let mut moves = grow_to_actual(&component_run(position, 1), &w, Player::Top);
                moves.push(addressed("", &w, alpha));
                Reaction::of(
                    Case::Three,
                    moves.iter().map(|m| m.prefixed("1.")).collect(),
                )
            }
            _ => Reaction::of(Case::Idle, Vec::new()),
        }
    }
}

/// The strategy for `cbr_l(not(A)) ∨ tbr_t(A)`, steering the loose
/// component's rays through the mapping `f`.
pub struct Routine2 {
    game: GameRef,
    f: FMap,
    split_on_replication: bool,
}

impl Routine2 {
    /// `game` is the compound, used only to ignore illegal adversary moves.
    pub fn new(game: GameRef) -> Self {
        Routine2 {
            game,
            f: FMap::default(),
            split_on_replication: true,
        }
    }

    /// A broken variant that never updates `f` on replication, for checking
    /// that the verification harness notices.
    #[doc(hidden)]
    pub fn without_case1_update(game: GameRef) -> Self {
        Routine2 {
            split_on_replication: false,
            ..Routine2::new(game)
        }
    }

    pub fn fmap(&self) -> &FMap {
        &self.f
    }

    fn tight_tree(position: &Run) -> NodeTree {
        actual_nodes(&component_run(position, 2), Player::Bot)
    }

    fn step(&mut self, position: &Run, incoming: &LabMove) -> (Case, Vec<Move>) {
        if !self.game.is_legal(position) {
            return (Case::Idle, Vec::new());
        }
        let Some((component, inner)) = component_of(&incoming.mv) else {
            return (Case::Idle, Vec::new());
        };
        match (component, MoveShape::of(inner)) {
            (2, MoveShape::Replicative(w)) => {
                if self.split_on_replication {
                    self.f.split(&Bitstring::from_valid(w));
                }
                (Case::One, Vec::new())
            }
            (2, MoveShape::Switch(w)) => {
                let tree = Routine2::tight_tree(position);
                let moves = tree
                    .zero_leaf(&Bitstring::from_valid(w))
                    .and_then(|leaf| self.f.get(&leaf))
                    .map(|v| Move::new(format!("1.{}", v.as_str())))
                    .into_iter()
                    .collect();
                (Case::Two, moves)
            }
            (2, MoveShape::NonReplicative(w, alpha)) => {
                let w = Bitstring::from_valid(w);
                let moves = Routine2::tight_tree(position)
                    .outer()
                    .iter()
                    .filter(|u| w.is_prefix_of(u))
                    .filter_map(|u| self.f.get(u))
                    .map(|v| addressed("1.", v, alpha))
                    .collect();
                (Case::Three, moves)
            }
            (1, MoveShape::NonReplicative(w, alpha)) => {
                let w = Bitstring::from_valid(w);
                let owner = self
                    .f
                    .iter()
                    .find(|(_, v)| v.is_proper_prefix_of(&w))
                    .map(|(x, v)| (x.clone(), v.clone()));
                if let Some((x, v)) = owner {
                    let u = w.strip_prefix(&v).unwrap_or_default();
                    self.f.0.insert(x.clone(), v.with_zeros(u.len()));
                    let moves = if u.contains_one() {
                        Vec::new()
                    } else {
                        vec![addressed("2.", &x, alpha)]
                    };
                    return (Case::Four, moves);
                }
                let moves = Routine2::tight_tree(position)
                    .outer()
                    .iter()
                    .filter(|u| self.f.get(u).is_some_and(|v| w.is_prefix_of(v)))
                    .map(|u| addressed("2.", u, alpha))
                    .collect();
                (Case::Four, moves)
            }
            _ => (Case::Idle, Vec::new()),
        }
    }
}

impl Strategy for Routine2 {
    fn player(&self) -> Player {
        Player::Top
    }

    fn react(&mut self, position: &Run, incoming: Option<&LabMove>) -> Reaction {
        let Some(incoming) = incoming else {
            return Reaction::pass();
        };
        let (case, moves) = self.step(position, incoming);
        Reaction {
            moves,
            case: Some(case),
            fmap: Some(self.f.clone()),
        }
    }
}

/// Plays a fixed list of moves, one per turn, then passes forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptedAdversary {
    script: Vec<Move>,
    next: usize,
    player: Player,
}

impl ScriptedAdversary {
    pub fn new(script: Vec<Move>) -> Self {
        ScriptedAdversary {
            script,
            next: 0,
            player: Player::Bot,
        }
    }

    pub fn script(&self) -> &[Move] {
        &self.script
    }
}

impl Strategy for ScriptedAdversary {
    fn player(&self) -> Player {
        self.player
    }

    fn react(&mut self, _position: &Run, _incoming: Option<&LabMove>) -> Reaction {
        match self.script.get(self.next) {
            Some(mv) => {
                self.next += 1;
                Reaction {
                    moves: vec![mv.clone()],
                    ..Reaction::default()
                }
            }
            None => Reaction::pass(),
        }
    }
}

pub type MachineFactory<'a> = dyn Fn() -> Box<dyn Strategy> + Sync + 'a;

/// Longest play the adversary enumeration will simulate.
pub const ENUMERATION_MAX_STEPS: usize = 1024;

/// Every adversary that makes at most `budget` moves, each one of the
/// `legal_moves` of `game` at the position where it is played, against the
/// deterministic machine built by `machine`.
///
/// Since a pass ends the play (the machine only ever answers moves), a
/// behavior is a sequence of legal moves, and the adversaries come out in
/// depth-first order: the empty script first, then each first move followed
/// by its continuations.
pub fn exhaustive_adversaries<'a>(
    game: GameRef,
    bounds: EnumBounds,
    budget: usize,
    machine: &'a MachineFactory<'a>,
) -> impl Iterator<Item = ScriptedAdversary> + 'a {
    let mut stack: Vec<Vec<Move>> = vec![Vec::new()];
    std::iter::from_fn(move || {
        let script = stack.pop()?;
        if script.len() < budget {
            let trace = run_interaction(
                machine().as_mut(),
                &mut ScriptedAdversary::new(script.clone()),
                &game,
                ENUMERATION_MAX_STEPS,
            )
            .expect("step limit is positive");
            let options = game.legal_moves(&trace.run, Player::Bot, &bounds);
            for mv in options.into_iter().rev() {
                let mut longer = script.clone();
                longer.push(mv);
                stack.push(longer);
            }
        }
        Some(ScriptedAdversary::new(script))
    })
}

/// Chance that a random adversary passes when it could move.
pub const RANDOM_PASS_PROBABILITY: f64 = 0.15;

/// Plays uniformly chosen legal moves of `game` within `bounds`, passing
/// now and then, until its budget of moves is spent.
pub struct RandomAdversary {
    game: GameRef,
    bounds: EnumBounds,
    budget: usize,
    rng: ChaCha8Rng,
}

impl RandomAdversary {
    pub fn new(game: GameRef, seed: u64, bounds: EnumBounds, budget: usize) -> Self {
        RandomAdversary {
            game,
            bounds,
            budget,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomAdversary {
    fn player(&self) -> Player {
        Player::Bot
    }

    fn react(&mut self, position: &Run, _incoming: Option<&LabMove>) -> Reaction {
        if self.budget == 0 || self.rng.gen_bool(RANDOM_PASS_PROBABILITY) {
            return Reaction::pass();
        }
        let options = self.game.legal_moves(position, Player::Bot, &self.bounds);
        if options.is_empty() {
            return Reaction::pass();
        }
        self.budget -= 1;
        let pick = self.rng.gen_range(0..options.len());
        Reaction {
            moves: vec![options[pick].clone()],
            ..Reaction::default()
        }
    }
}
