//! Constant games of computability logic with tight and loose
//! toggling-branching recurrence.
//!
//! The crate is layered bottom-up:
//!
//! - [`bits`] and [`run`]: bitstrings, rays, labeled runs and projection.
//! - [`games`]: the [`Game`](games::Game) interface, explicit finite games,
//!   negation and parallel disjunction.
//! - [`recurrence`]: the four recurrence operators as game constructors.
//! - [`delay`]: the delay relation and bounded static-game checking.
//! - [`strategy`]: reactive strategies, including the two translation
//!   routines between tight and loose recurrence.
//! - [`sim`]: the interaction harness and batch verification drivers.

pub mod bits;
pub mod delay;
pub mod error;
pub mod games;
pub mod recurrence;
pub mod run;
pub mod sim;
pub mod strategy;
pub mod suite;

pub use bits::{Bitstring, Ray};
pub use games::{EnumBounds, FiniteGame, Game, GameRef, GameTree};
pub use recurrence::{make_recurrence, Polarity, RecurrenceKind, Version};
pub use run::{LabMove, Move, MoveShape, Player, Run};
