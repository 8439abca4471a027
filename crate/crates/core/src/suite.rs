//! Small base games used by the verification suites.
//!
//! All have depth at most 2 and at most 2 moves per node. Every game except
//! [`first_mover`] is static, which the test suite confirms by brute force.

use std::sync::Arc;

use crate::games::{FiniteGame, GameRef, GameTree};
use crate::run::{LabMove, Player};

use Player::{Bot as B, Top as T};

fn build(name: &str, tree: GameTree) -> FiniteGame {
    FiniteGame::new(name, &tree).expect("suite games are well formed")
}

pub fn leaf(name: &str, winner: Player) -> FiniteGame {
    FiniteGame::leaf(name, winner)
}

/// `⊥` picks `a` (then `⊥` wins) or `b` (then `⊤` wins); no move: `⊤`.
pub fn choice() -> FiniteGame {
    build(
        "choice",
        GameTree::node(
            T,
            vec![
                (LabMove::bot("a"), GameTree::leaf(B)),
                (LabMove::bot("b"), GameTree::leaf(T)),
            ],
        ),
    )
}

/// `⊥` may play `a`, after which `⊤` must answer `c` to win.
pub fn reply() -> FiniteGame {
    build(
        "reply",
        GameTree::node(
            T,
            vec![(
                LabMove::bot("a"),
                GameTree::node(B, vec![(LabMove::top("c"), GameTree::leaf(T))]),
            )],
        ),
    )
}

/// `⊤` wins iff it has played `c`; `⊥` may play `a` at any time, in either
/// order relative to `c`.
pub fn commute() -> FiniteGame {
    build(
        "commute",
        GameTree::node(
            B,
            vec![
                (
                    LabMove::top("c"),
                    GameTree::node(T, vec![(LabMove::bot("a"), GameTree::leaf(T))]),
                ),
                (
                    LabMove::bot("a"),
                    GameTree::node(B, vec![(LabMove::top("c"), GameTree::leaf(T))]),
                ),
            ],
        ),
    )
}

/// Whoever moves first wins. Not static.
pub fn first_mover() -> FiniteGame {
    build(
        "first_mover",
        GameTree::node(
            B,
            vec![
                (
                    LabMove::top("a"),
                    GameTree::node(T, vec![(LabMove::bot("b"), GameTree::leaf(T))]),
                ),
                (
                    LabMove::bot("b"),
                    GameTree::node(B, vec![(LabMove::top("a"), GameTree::leaf(B))]),
                ),
            ],
        ),
    )
}

/// The static base games of the verification suite.
pub fn static_suite() -> Vec<FiniteGame> {
    vec![choice(), reply(), commute()]
}

pub fn as_ref(game: FiniteGame) -> GameRef {
    Arc::new(game)
}
