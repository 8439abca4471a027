//! Front end for the `col` executable: the game expression language, the
//! definition and trace file formats, and the subcommands.

pub mod commands;
pub mod error;
pub mod expr;
pub mod files;

pub use commands::{run, Cli};
pub use expr::{parse_game_expr, GameExpr};
pub use files::{load_game_file, TraceFile};
