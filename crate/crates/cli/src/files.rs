//! Game definition files and trace files, both JSON.
//!
//! Labels are written `"T"` and `"B"`. Moves are always JSON strings, so
//! the empty move is simply `""`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use col_core::games::Offence;
use col_core::sim::Trace;
use col_core::{EnumBounds, FiniteGame, GameTree, LabMove, Player, Run};

use crate::error::FileError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    T,
    B,
}

impl From<Player> for Label {
    fn from(p: Player) -> Self {
        match p {
            Player::Top => Label::T,
            Player::Bot => Label::B,
        }
    }
}

impl From<Label> for Player {
    fn from(l: Label) -> Self {
        match l {
            Label::T => Player::Top,
            Label::B => Player::Bot,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub winner: Label,
    #[serde(default)]
    pub moves: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub label: Label,
    #[serde(rename = "move")]
    pub mv: String,
    pub child: NodeRecord,
}

impl From<&NodeRecord> for GameTree {
    fn from(n: &NodeRecord) -> Self {
        GameTree::node(
            n.winner.into(),
            n.moves
                .iter()
                .map(|e| {
                    (
                        LabMove::new(e.label.into(), e.mv.as_str()),
                        (&e.child).into(),
                    )
                })
                .collect(),
        )
    }
}

impl From<&GameTree> for NodeRecord {
    fn from(t: &GameTree) -> Self {
        NodeRecord {
            winner: t.winner.into(),
            moves: t
                .moves
                .iter()
                .map(|(lm, child)| EdgeRecord {
                    label: lm.label.into(),
                    mv: lm.mv.as_str().to_owned(),
                    child: child.into(),
                })
                .collect(),
        }
    }
}

/// A definitions file: game name to game tree.
pub type GameFile = BTreeMap<String, NodeRecord>;

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_game_file(text: &str, path: &str) -> Result<BTreeMap<String, FiniteGame>, FileError> {
    let file: GameFile = serde_json::from_str(text).map_err(|source| FileError::Json {
        path: path.to_owned(),
        source,
    })?;
    file.iter()
        .map(|(name, node)| {
            FiniteGame::new(name.clone(), &node.into())
                .map(|g| (name.clone(), g))
                .map_err(|source| FileError::BadGame {
                    path: path.to_owned(),
                    name: name.clone(),
                    source,
                })
        })
        .collect()
}

pub fn load_game_file(path: &Path) -> Result<BTreeMap<String, FiniteGame>, FileError> {
    parse_game_file(&read(path)?, &path.display().to_string())
}

pub fn game_file_text<'a>(games: impl IntoIterator<Item = &'a FiniteGame>) -> String {
    use col_core::Game;
    let file: GameFile = games
        .into_iter()
        .map(|g| (g.name(), (&g.tree()).into()))
        .collect();
    let mut text = serde_json::to_string_pretty(&file).expect("game files always serialize");
    text.push('\n');
    text
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRecord {
    pub max_address_len: usize,
    pub max_run_len: usize,
}

impl From<EnumBounds> for BoundsRecord {
    fn from(b: EnumBounds) -> Self {
        BoundsRecord {
            max_address_len: b.max_address_len,
            max_run_len: b.max_run_len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceHeader {
    pub game: Option<String>,
    pub seed: Option<u64>,
    pub bounds: Option<BoundsRecord>,
    pub version: String,
}

impl Default for TraceHeader {
    fn default() -> Self {
        TraceHeader {
            game: None,
            seed: None,
            bounds: None,
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffenderRecord {
    pub index: usize,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub header: TraceHeader,
    pub moves: Vec<(Label, String)>,
    pub outcome: Option<Label>,
    pub offender: Option<OffenderRecord>,
}

impl TraceFile {
    /// A trace of `run` with no game information.
    pub fn bare(run: &Run) -> Self {
        TraceFile {
            header: TraceHeader::default(),
            moves: run
                .iter()
                .map(|lm| (lm.label.into(), lm.mv.as_str().to_owned()))
                .collect(),
            outcome: None,
            offender: None,
        }
    }

    pub fn from_trace(trace: &Trace, header: TraceHeader) -> Self {
        TraceFile {
            header,
            outcome: Some(trace.outcome.into()),
            offender: trace.offender.map(|o: Offence| OffenderRecord {
                index: o.index,
                label: o.culprit.into(),
            }),
            ..TraceFile::bare(&trace.run)
        }
    }

    pub fn run(&self) -> Run {
        self.moves
            .iter()
            .map(|(l, m)| LabMove::new((*l).into(), m.as_str()))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("traces always serialize");
        text.push('\n');
        text
    }

    pub fn from_text(text: &str, path: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|source| FileError::Json {
            path: path.to_owned(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        TraceFile::from_text(&read(path)?, &path.display().to_string())
    }
}
