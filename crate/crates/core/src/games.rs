//! Constant games: legality, winners and bounded move enumeration.
//!
//! A [`Game`] is queried on whole runs. Legality is prefix-closed, so the
//! primitive query is the length of the longest legal prefix; everything
//! else (legality, the offender, who wins an arbitrary run) follows from it.

use std::fmt;
use std::sync::Arc;

use crate::error::GameError;
use crate::run::{LabMove, Move, Player, Run};

/// Enumeration limits for move generators and run scanners.
///
/// Legality checking itself is never bounded; only enumeration is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnumBounds {
    pub max_address_len: usize,
    pub max_run_len: usize,
}

impl EnumBounds {
    pub fn new(max_address_len: usize, max_run_len: usize) -> Self {
        EnumBounds {
            max_address_len,
            max_run_len,
        }
    }
}

pub trait Game: Send + Sync {
    fn name(&self) -> String;

    /// Length of the longest legal prefix of `run`.
    fn legal_prefix_len(&self, run: &Run) -> usize;

    /// Winner of a legal run. Unspecified on illegal runs; use [`won_by`].
    fn winner(&self, run: &Run) -> Player;

    /// Moves `m` such that `⟨position, p m⟩` is legal, within `bounds`.
    /// `position` must be legal; the result is unspecified otherwise. It is
    /// duplicate-free and in a deterministic order.
    fn legal_moves(&self, position: &Run, p: Player, bounds: &EnumBounds) -> Vec<Move>;

    fn is_legal(&self, run: &Run) -> bool {
        self.legal_prefix_len(run) == run.len()
    }
}

pub type GameRef = Arc<dyn Game>;

impl fmt::Debug for dyn Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Game({})", self.name())
    }
}

/// The first illegal labmove of a run and its author.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Offence {
    pub index: usize,
    pub culprit: Player,
}

/// The first labmove whose addition to a legal prefix is illegal, if any.
pub fn offender(game: &dyn Game, run: &Run) -> Option<Offence> {
    let k = game.legal_prefix_len(run);
    run.get(k).map(|lm| Offence {
        index: k,
        culprit: lm.label,
    })
}

/// Whether `p` wins `run`, legal or not: a `¬p`-illegal run is won by `p`,
/// a `p`-illegal run is lost by `p`.
pub fn won_by(game: &dyn Game, run: &Run, p: Player) -> bool {
    match offender(game, run) {
        Some(o) => o.culprit != p,
        None => game.winner(run) == p,
    }
}

/// The player who wins `run` under the offender convention.
pub fn outcome(game: &dyn Game, run: &Run) -> Player {
    match offender(game, run) {
        Some(o) => o.culprit.neg(),
        None => game.winner(run),
    }
}

/// A finite game tree in nested form, as written in definition files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTree {
    pub winner: Player,
    pub moves: Vec<(LabMove, GameTree)>,
}

impl GameTree {
    pub fn leaf(winner: Player) -> Self {
        GameTree {
            winner,
            moves: Vec::new(),
        }
    }

    pub fn node(winner: Player, moves: Vec<(LabMove, GameTree)>) -> Self {
        GameTree { winner, moves }
    }
}

#[derive(Clone, Debug)]
struct Node {
    winner: Player,
    edges: Vec<(LabMove, usize)>,
}

/// An explicit finite game. Every node carries a winner, so a run that
/// stops early is won by the label of the node it reaches.
#[derive(Clone, Debug)]
pub struct FiniteGame {
    name: String,
    nodes: Vec<Node>,
}

impl FiniteGame {
    pub fn new(name: impl Into<String>, tree: &GameTree) -> Result<Self, GameError> {
        let mut nodes = Vec::new();
        flatten(tree, &mut nodes)?;
        Ok(FiniteGame {
            name: name.into(),
            nodes,
        })
    }

    pub fn leaf(name: impl Into<String>, winner: Player) -> Self {
        FiniteGame::new(name, &GameTree::leaf(winner)).expect("a leaf is well formed")
    }

    /// The nested form of this game.
    pub fn tree(&self) -> GameTree {
        self.subtree(0)
    }

    fn subtree(&self, idx: usize) -> GameTree {
        let node = &self.nodes[idx];
        GameTree {
            winner: node.winner,
            moves: node
                .edges
                .iter()
                .map(|(lm, child)| (lm.clone(), self.subtree(*child)))
                .collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Node reached by the longest legal prefix, and that prefix's length.
    fn walk(&self, run: &Run) -> (usize, usize) {
        let mut at = 0;
        for (i, lm) in run.iter().enumerate() {
            match self.nodes[at].edges.iter().find(|(e, _)| e == lm) {
                Some((_, child)) => at = *child,
                None => return (at, i),
            }
        }
        (at, run.len())
    }
}

fn flatten(tree: &GameTree, nodes: &mut Vec<Node>) -> Result<usize, GameError> {
    let idx = nodes.len();
    nodes.push(Node {
        winner: tree.winner,
        edges: Vec::new(),
    });
    let mut edges: Vec<(LabMove, usize)> = Vec::with_capacity(tree.moves.len());
    for (lm, child) in &tree.moves {
        if lm.mv.as_str().contains('\n') {
            return Err(GameError::NewlineInMove(lm.mv.as_str().to_owned()));
        }
        if edges.iter().any(|(e, _)| e == lm) {
            return Err(GameError::DuplicateEdge {
                node: idx,
                label: lm.label.code().to_owned(),
                mv: lm.mv.as_str().to_owned(),
            });
        }
        let child_idx = flatten(child, nodes)?;
        edges.push((lm.clone(), child_idx));
    }
    nodes[idx].edges = edges;
    Ok(idx)
}

impl Game for FiniteGame {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn legal_prefix_len(&self, run: &Run) -> usize {
        self.walk(run).1
    }

    fn winner(&self, run: &Run) -> Player {
        self.nodes[self.walk(run).0].winner
    }

    fn legal_moves(&self, position: &Run, p: Player, _bounds: &EnumBounds) -> Vec<Move> {
        let (at, len) = self.walk(position);
        if len < position.len() {
            return Vec::new();
        }
        self.nodes[at]
            .edges
            .iter()
            .filter(|(lm, _)| lm.label == p)
            .map(|(lm, _)| lm.mv.clone())
            .collect()
    }
}

pub fn finite_game_interface(game: FiniteGame) -> GameRef {
    Arc::new(game)
}

/// `¬A`: the same game with the players' roles interchanged.
pub struct Negation {
    inner: GameRef,
}

pub fn negate(game: GameRef) -> GameRef {
    Arc::new(Negation { inner: game })
}

impl Game for Negation {
    fn name(&self) -> String {
        format!("not({})", self.inner.name())
    }

    fn legal_prefix_len(&self, run: &Run) -> usize {
        self.inner.legal_prefix_len(&run.flipped())
    }

    fn winner(&self, run: &Run) -> Player {
        self.inner.winner(&run.flipped()).neg()
    }

    fn legal_moves(&self, position: &Run, p: Player, bounds: &EnumBounds) -> Vec<Move> {
        self.inner.legal_moves(&position.flipped(), p.neg(), bounds)
    }
}

/// `A ∨ B`: moves are `1.α` (played in `A`) or `2.α` (played in `B`), and
/// `⊤` wins iff it wins at least one component.
pub struct Disjunction {
    left: GameRef,
    right: GameRef,
}

pub fn disjoin(left: GameRef, right: GameRef) -> GameRef {
    Arc::new(Disjunction { left, right })
}

/// Which component a disjunction move addresses, and the move within it.
pub fn component_of(mv: &Move) -> Option<(usize, &str)> {
    let s = mv.as_str();
    if let Some(rest) = s.strip_prefix("1.") {
        Some((1, rest))
    } else if let Some(rest) = s.strip_prefix("2.") {
        Some((2, rest))
    } else {
        None
    }
}

/// `run^{i.}`: the moves prefixed `i.`, with the prefix removed.
pub fn component_run(run: &Run, component: usize) -> Run {
    run.iter()
        .filter_map(|lm| match component_of(&lm.mv) {
            Some((c, rest)) if c == component => Some(LabMove::new(lm.label, rest)),
            _ => None,
        })
        .collect()
}

impl Disjunction {
    pub fn left(&self) -> &GameRef {
        &self.left
    }

    pub fn right(&self) -> &GameRef {
        &self.right
    }
}

impl Game for Disjunction {
    fn name(&self) -> String {
        format!("or({}, {})", self.left.name(), self.right.name())
    }

    fn legal_prefix_len(&self, run: &Run) -> usize {
        let mut parts = [Run::new(), Run::new()];
        let mut origin: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut limit = run.len();
        for (i, lm) in run.iter().enumerate() {
            match component_of(&lm.mv) {
                Some((c, rest)) => {
                    parts[c - 1].push(LabMove::new(lm.label, rest));
                    origin[c - 1].push(i);
                }
                None => {
                    limit = i;
                    break;
                }
            }
        }
        for (game, (part, idx)) in [&self.left, &self.right]
            .into_iter()
            .zip(parts.iter().zip(origin.iter()))
        {
            let k = game.legal_prefix_len(part);
            if k < part.len() {
                limit = limit.min(idx[k]);
            }
        }
        limit
    }

    fn winner(&self, run: &Run) -> Player {
        let left = self.left.winner(&component_run(run, 1));
        let right = self.right.winner(&component_run(run, 2));
        if left == Player::Top || right == Player::Top {
            Player::Top
        } else {
            Player::Bot
        }
    }

    fn legal_moves(&self, position: &Run, p: Player, bounds: &EnumBounds) -> Vec<Move> {
        let mut out: Vec<Move> = self
            .left
            .legal_moves(&component_run(position, 1), p, bounds)
            .into_iter()
            .map(|m| m.prefixed("1."))
            .collect();
        out.extend(
            self.right
                .legal_moves(&component_run(position, 2), p, bounds)
                .into_iter()
                .map(|m| m.prefixed("2.")),
        );
        out
    }
}
