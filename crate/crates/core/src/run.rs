//! Players, moves, runs and projection along a ray.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::bits::{Bitstring, Ray};

/// One of the two players: the machine `⊤` or the environment `⊥`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Player {
    Top,
    Bot,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Top, Player::Bot];

    /// The adversary of `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Player {
        match self {
            Player::Top => Player::Bot,
            Player::Bot => Player::Top,
        }
    }

    /// `"T"` or `"B"`, the file encoding.
    pub fn code(self) -> &'static str {
        match self {
            Player::Top => "T",
            Player::Bot => "B",
        }
    }

    pub fn from_code(code: &str) -> Option<Player> {
        match code {
            "T" => Some(Player::Top),
            "B" => Some(Player::Bot),
            _ => None,
        }
    }
}

pub fn neg_player(p: Player) -> Player {
    p.neg()
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Top => "⊤",
            Player::Bot => "⊥",
        })
    }
}

/// A move: any string without newlines, possibly empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Move(String);

impl Move {
    pub fn new(text: impl Into<String>) -> Self {
        Move(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Classifies the move by the address micro-grammar.
    pub fn shape(&self) -> MoveShape<'_> {
        MoveShape::of(&self.0)
    }

    /// `prefix` followed by this move.
    pub fn prefixed(&self, prefix: &str) -> Move {
        Move(format!("{prefix}{}", self.0))
    }
}

impl From<&str> for Move {
    fn from(s: &str) -> Self {
        Move(s.to_owned())
    }
}

impl From<String> for Move {
    fn from(s: String) -> Self {
        Move(s)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("\"\"")
        } else {
            f.write_str(&self.0)
        }
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The three address-bearing move shapes.
///
/// The address is the maximal leading run of `0`/`1` characters. A move
/// that is exactly an address is a switch, an address followed by a single
/// final `:` is a replication, and an address followed by `.` carries the
/// rest of the string as an opaque payload.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveShape<'a> {
    Switch(&'a str),
    Replicative(&'a str),
    NonReplicative(&'a str, &'a str),
    Malformed,
}

impl<'a> MoveShape<'a> {
    pub fn of(text: &'a str) -> MoveShape<'a> {
        let split = text
            .bytes()
            .position(|b| b != b'0' && b != b'1')
            .unwrap_or(text.len());
        let (addr, rest) = text.split_at(split);
        if rest.is_empty() {
            MoveShape::Switch(addr)
        } else if rest == ":" {
            MoveShape::Replicative(addr)
        } else if let Some(payload) = rest.strip_prefix('.') {
            MoveShape::NonReplicative(addr, payload)
        } else {
            MoveShape::Malformed
        }
    }

    /// The address, for well-formed shapes.
    pub fn address(&self) -> Option<Bitstring> {
        match *self {
            MoveShape::Switch(a) | MoveShape::Replicative(a) | MoveShape::NonReplicative(a, _) => {
                Some(Bitstring::from_valid(a))
            }
            MoveShape::Malformed => None,
        }
    }

    fn address_len(&self) -> usize {
        match *self {
            MoveShape::Switch(a) | MoveShape::Replicative(a) | MoveShape::NonReplicative(a, _) => {
                a.len()
            }
            MoveShape::Malformed => 0,
        }
    }
}

/// A move together with its author.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabMove {
    pub label: Player,
    pub mv: Move,
}

impl LabMove {
    pub fn new(label: Player, mv: impl Into<Move>) -> Self {
        LabMove {
            label,
            mv: mv.into(),
        }
    }

    pub fn top(mv: impl Into<Move>) -> Self {
        LabMove::new(Player::Top, mv)
    }

    pub fn bot(mv: impl Into<Move>) -> Self {
        LabMove::new(Player::Bot, mv)
    }

    pub fn flipped(&self) -> Self {
        LabMove {
            label: self.label.neg(),
            mv: self.mv.clone(),
        }
    }
}

impl fmt::Display for LabMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.mv)
    }
}

impl fmt::Debug for LabMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.label, self.mv)
    }
}

/// A finite run: an ordered sequence of labeled moves.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Run(Vec<LabMove>);

impl Run {
    pub fn new() -> Self {
        Run(Vec::new())
    }

    pub fn push(&mut self, lm: LabMove) {
        self.0.push(lm);
    }

    /// A copy of `self` extended by one labmove.
    pub fn with(&self, lm: LabMove) -> Run {
        let mut moves = Vec::with_capacity(self.0.len() + 1);
        moves.extend_from_slice(&self.0);
        moves.push(lm);
        Run(moves)
    }

    pub fn prefix(&self, len: usize) -> Run {
        Run(self.0[..len].to_vec())
    }

    pub fn concat(&self, other: &Run) -> Run {
        self.0.iter().chain(other.0.iter()).cloned().collect()
    }

    /// Every label interchanged (the run as seen in the negated game).
    pub fn flipped(&self) -> Run {
        self.0.iter().map(LabMove::flipped).collect()
    }

    pub fn into_vec(self) -> Vec<LabMove> {
        self.0
    }
}

impl Deref for Run {
    type Target = [LabMove];

    fn deref(&self) -> &[LabMove] {
        &self.0
    }
}

impl From<Vec<LabMove>> for Run {
    fn from(moves: Vec<LabMove>) -> Self {
        Run(moves)
    }
}

impl FromIterator<LabMove> for Run {
    fn from_iter<I: IntoIterator<Item = LabMove>>(iter: I) -> Self {
        Run(iter.into_iter().collect())
    }
}

impl IntoIterator for Run {
    type Item = LabMove;
    type IntoIter = std::vec::IntoIter<LabMove>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Run {
    type Item = &'a LabMove;
    type IntoIter = std::slice::Iter<'a, LabMove>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, lm) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lm}")?;
        }
        f.write_str("⟩")
    }
}

impl fmt::Debug for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// `run^⪯ray`: keeps the moves `u.α` whose address `u` is an initial
/// segment of `ray`, rewritten to `α`. Labels and order are preserved.
pub fn project(run: &Run, ray: &Ray) -> Run {
    run.iter()
        .filter_map(|lm| match lm.mv.shape() {
            MoveShape::NonReplicative(addr, payload) if ray.covers(addr) => {
                Some(LabMove::new(lm.label, payload))
            }
            _ => None,
        })
        .collect()
}

/// The subsequence of moves authored by `p`.
pub fn label_subsequence(run: &Run, p: Player) -> Run {
    run.iter().filter(|lm| lm.label == p).cloned().collect()
}

/// Longest address carried by any well-formed move of the run.
pub fn max_address_length(run: &Run) -> usize {
    run.iter()
        .map(|lm| lm.mv.shape().address_len())
        .max()
        .unwrap_or(0)
}

/// Representatives `below·z`, `|z| = max_address_length(run) + 1`, one for
/// every way an infinite extension of `below` can select addresses of `run`.
pub fn ray_classes(run: &Run, below: &Bitstring) -> BTreeSet<Ray> {
    ray_classes_with_len(max_address_length(run), below)
}

pub(crate) fn ray_classes_with_len(max_addr: usize, below: &Bitstring) -> BTreeSet<Ray> {
    Bitstring::all_of_len(max_addr + 1)
        .map(|z| Ray::new(below.concat(&z)))
        .collect()
}

impl Ray {
    pub(crate) fn covers(&self, addr: &str) -> bool {
        addr.bytes()
            .enumerate()
            .all(|(i, b)| b - b'0' == self.bit(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn run(moves: &[(Player, &str)]) -> Run {
        moves.iter().map(|&(p, m)| LabMove::new(p, m)).collect()
    }

    use Player::{Bot as B, Top as T};

    fn ray(s: &str) -> Ray {
        Ray::new(Bitstring::new(s).unwrap())
    }

    fn worked_example() -> Run {
        run(&[
            (B, "0.β1"),
            (T, "111.β2"),
            (T, "01.β2"),
            (T, "011.β3"),
            (B, "010.β4"),
        ])
    }

    #[test]
    fn negation_is_an_involution() {
        assert_eq!(neg_player(T), B);
        assert_eq!(neg_player(B), T);
        assert_eq!(neg_player(neg_player(T)), T);
    }

    #[test]
    fn worked_projection() {
        let got = project(&worked_example(), &ray("0100"));
        assert_eq!(got, run(&[(B, "β1"), (T, "β2"), (B, "β4")]));
        assert_eq!(got.to_string(), "⟨⊥β1, ⊤β2, ⊥β4⟩");
    }

    #[test]
    fn projection_of_empty_run() {
        assert_eq!(project(&Run::new(), &ray("1")), Run::new());
    }

    #[test]
    fn switch_moves_are_not_projected() {
        assert_eq!(project(&run(&[(B, "01")]), &ray("01")), Run::new());
    }

    #[test]
    fn shapes() {
        assert_eq!(MoveShape::of(""), MoveShape::Switch(""));
        assert_eq!(MoveShape::of("0110"), MoveShape::Switch("0110"));
        assert_eq!(MoveShape::of(":"), MoveShape::Replicative(""));
        assert_eq!(MoveShape::of("01:"), MoveShape::Replicative("01"));
        assert_eq!(
            MoveShape::of("01.a.1"),
            MoveShape::NonReplicative("01", "a.1")
        );
        assert_eq!(MoveShape::of(".α"), MoveShape::NonReplicative("", "α"));
        assert_eq!(MoveShape::of("0."), MoveShape::NonReplicative("0", ""));
        assert_eq!(MoveShape::of("01::"), MoveShape::Malformed);
        assert_eq!(MoveShape::of("x"), MoveShape::Malformed);
        assert_eq!(MoveShape::of("0x.a"), MoveShape::Malformed);
    }

    #[test]
    fn subsequences() {
        let r = run(&[(T, "a"), (B, "b"), (T, "c")]);
        assert_eq!(label_subsequence(&r, T), run(&[(T, "a"), (T, "c")]));
        assert_eq!(label_subsequence(&Run::new(), B), Run::new());
        assert_eq!(
            label_subsequence(&run(&[(B, "x"), (B, "y")]), T),
            Run::new()
        );
    }

    #[test]
    fn address_lengths() {
        assert_eq!(max_address_length(&run(&[(B, "0.β"), (T, "111.β")])), 3);
        assert_eq!(max_address_length(&Run::new()), 0);
        assert_eq!(max_address_length(&run(&[(T, ".α")])), 0);
        assert_eq!(max_address_length(&run(&[(B, "0110"), (B, "01:")])), 4);
        assert_eq!(max_address_length(&run(&[(B, "0110x")])), 0);
    }

    #[test]
    fn ray_class_examples() {
        let eps = Bitstring::empty();
        let got: Vec<_> = ray_classes(&Run::new(), &eps).into_iter().collect();
        assert_eq!(got, vec![ray("0"), ray("1")]);
        let got = ray_classes(&run(&[(T, "0.α")]), &eps);
        let want: BTreeSet<_> = ["00", "01", "10", "11"].into_iter().map(ray).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn ray_classes_match_brute_force_on_worked_example() {
        let r = worked_example();
        let via_classes: BTreeSet<Run> = ray_classes(&r, &Bitstring::empty())
            .iter()
            .map(|v| project(&r, v))
            .collect();
        let brute: BTreeSet<Run> = Bitstring::all_up_to(8)
            .map(|s| project(&r, &Ray::new(s)))
            .collect();
        assert_eq!(via_classes, brute);
    }
}
