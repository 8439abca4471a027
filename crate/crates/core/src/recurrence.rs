//! Toggling-branching recurrence and corecurrence, tight and loose.
//!
//! In the tight version the structural player grows a binary tree of
//! actual nodes with replicative moves `w:` and may only address existing
//! nodes. In the loose version any finite bitstring is an address and there
//! are no replications. In both, a payload `w.α` must be legal in the base
//! game along every infinite bitstring through `w`, and the winner is read
//! off the projection along the last switch padded with zeros.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Bound;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{Bitstring, Ray};
use crate::games::{EnumBounds, Game, GameRef};
use crate::run::{
    max_address_length, project, ray_classes_with_len, LabMove, Move, MoveShape, Player, Run,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Version {
    Tight,
    Loose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// `⫰`: the environment switches and replicates.
    Recurrence,
    /// `⫰-co`: the machine switches and replicates.
    Corecurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecurrenceKind {
    pub version: Version,
    pub polarity: Polarity,
}

impl RecurrenceKind {
    pub const TIGHT_REC: RecurrenceKind = RecurrenceKind::new(Version::Tight, Polarity::Recurrence);
    pub const TIGHT_COREC: RecurrenceKind =
        RecurrenceKind::new(Version::Tight, Polarity::Corecurrence);
    pub const LOOSE_REC: RecurrenceKind = RecurrenceKind::new(Version::Loose, Polarity::Recurrence);
    pub const LOOSE_COREC: RecurrenceKind =
        RecurrenceKind::new(Version::Loose, Polarity::Corecurrence);

    pub const ALL: [RecurrenceKind; 4] = [
        RecurrenceKind::TIGHT_REC,
        RecurrenceKind::TIGHT_COREC,
        RecurrenceKind::LOOSE_REC,
        RecurrenceKind::LOOSE_COREC,
    ];

    pub const fn new(version: Version, polarity: Polarity) -> Self {
        RecurrenceKind { version, polarity }
    }

    /// The player allowed to switch (and, in the tight version, replicate).
    pub fn structural(&self) -> Player {
        match self.polarity {
            Polarity::Recurrence => Player::Bot,
            Polarity::Corecurrence => Player::Top,
        }
    }

    /// Operator name as used in game expressions.
    pub fn op_name(&self) -> &'static str {
        match (self.polarity, self.version) {
            (Polarity::Recurrence, Version::Tight) => "tbr_t",
            (Polarity::Recurrence, Version::Loose) => "tbr_l",
            (Polarity::Corecurrence, Version::Tight) => "cbr_t",
            (Polarity::Corecurrence, Version::Loose) => "cbr_l",
        }
    }
}

impl fmt::Display for RecurrenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.op_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("run is illegal at move {index}")]
pub struct IllegalRunError {
    pub index: usize,
}

/// The actual nodes of a tight position.
///
/// Built from replicative moves, so on legal positions it is a prefix-closed
/// binary tree in which every node has zero or two children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeTree {
    nodes: BTreeSet<Bitstring>,
}

impl Default for NodeTree {
    fn default() -> Self {
        NodeTree::root()
    }
}

impl NodeTree {
    /// The tree of the empty position: just `ε`.
    pub fn root() -> Self {
        let mut nodes = BTreeSet::new();
        nodes.insert(Bitstring::empty());
        NodeTree { nodes }
    }

    pub fn contains(&self, v: &Bitstring) -> bool {
        self.nodes.contains(v)
    }

    pub(crate) fn contains_str(&self, v: &str) -> bool {
        self.nodes.contains(&Bitstring::from_valid(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bitstring> {
        self.nodes.iter()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Adds both children of `w`.
    pub fn replicate(&mut self, w: &Bitstring) {
        self.nodes.insert(w.child(0));
        self.nodes.insert(w.child(1));
    }

    /// Whether `v` is actual and not a proper prefix of another actual node.
    ///
    /// Extensions of `v` sort immediately after `v`, so only the successor
    /// needs inspecting.
    pub fn is_outer(&self, v: &Bitstring) -> bool {
        self.nodes.contains(v)
            && self
                .nodes
                .range((Bound::Excluded(v), Bound::Unbounded))
                .next()
                .is_none_or(|next| !v.is_prefix_of(next))
    }

    /// Outer nodes in lexicographic order.
    pub fn outer(&self) -> Vec<Bitstring> {
        let mut out = Vec::new();
        let mut iter = self.nodes.iter().peekable();
        while let Some(v) = iter.next() {
            if iter.peek().is_none_or(|next| !v.is_prefix_of(next)) {
                out.push(v.clone());
            }
        }
        out
    }

    /// The longest prefix of `w` that is an actual node.
    pub fn longest_actual_prefix(&self, w: &Bitstring) -> Bitstring {
        (0..=w.len())
            .rev()
            .map(|k| Bitstring::from_valid(&w.as_str()[..k]))
            .find(|p| self.nodes.contains(p))
            .unwrap_or_default()
    }

    /// The outer node of the form `w0…0`, following 0-children from `w`.
    pub fn zero_leaf(&self, w: &Bitstring) -> Option<Bitstring> {
        if !self.contains(w) {
            return None;
        }
        let mut at = w.clone();
        loop {
            let next = at.child(0);
            if self.contains(&next) {
                at = next;
            } else {
                return Some(at);
            }
        }
    }
}

/// `ε` together with `u0`, `u1` for every replication `u:` by `structural`.
pub fn actual_nodes(position: &Run, structural: Player) -> NodeTree {
    let mut tree = NodeTree::root();
    for lm in position.iter().filter(|lm| lm.label == structural) {
        if let MoveShape::Replicative(addr) = lm.mv.shape() {
            tree.replicate(&Bitstring::from_valid(addr));
        }
    }
    tree
}

pub fn outer_nodes(tree: &NodeTree) -> BTreeSet<Bitstring> {
    tree.outer().into_iter().collect()
}

/// Whether `⟨position, label payload@addr⟩` projects to a legal run of the
/// base along every ray through `addr`. `max_addr` must already account for
/// the new move.
fn payload_legal(
    base: &dyn Game,
    position: &Run,
    label: Player,
    addr: &str,
    payload: &str,
    max_addr: usize,
) -> bool {
    let below = Bitstring::from_valid(addr);
    let mut seen = HashSet::new();
    for ray in ray_classes_with_len(max_addr, &below) {
        let mut projected = project(position, &ray);
        projected.push(LabMove::new(label, payload));
        if seen.insert(projected.clone()) && !base.is_legal(&projected) {
            return false;
        }
    }
    true
}

fn tight_legal_with(
    base: &dyn Game,
    position: &Run,
    tree: &NodeTree,
    max_addr: usize,
    lm: &LabMove,
    structural: Player,
) -> bool {
    match lm.mv.shape() {
        MoveShape::Switch(w) => lm.label == structural && tree.contains_str(w),
        MoveShape::Replicative(w) => {
            lm.label == structural && tree.is_outer(&Bitstring::from_valid(w))
        }
        MoveShape::NonReplicative(w, alpha) => {
            tree.contains_str(w)
                && payload_legal(base, position, lm.label, w, alpha, max_addr.max(w.len()))
        }
        MoveShape::Malformed => false,
    }
}

fn loose_legal_with(
    base: &dyn Game,
    position: &Run,
    max_addr: usize,
    lm: &LabMove,
    structural: Player,
) -> bool {
    match lm.mv.shape() {
        MoveShape::Switch(_) => lm.label == structural,
        MoveShape::NonReplicative(w, alpha) => {
            payload_legal(base, position, lm.label, w, alpha, max_addr.max(w.len()))
        }
        MoveShape::Replicative(_) | MoveShape::Malformed => false,
    }
}

/// Whether `lm` legally extends the legal tight position `position`.
pub fn tight_extension_legal(
    base: &dyn Game,
    position: &Run,
    lm: &LabMove,
    polarity: Polarity,
) -> bool {
    let structural = RecurrenceKind::new(Version::Tight, polarity).structural();
    let tree = actual_nodes(position, structural);
    tight_legal_with(
        base,
        position,
        &tree,
        max_address_length(position),
        lm,
        structural,
    )
}

/// Whether `lm` legally extends the legal loose position `position`.
pub fn loose_extension_legal(
    base: &dyn Game,
    position: &Run,
    lm: &LabMove,
    polarity: Polarity,
) -> bool {
    let structural = RecurrenceKind::new(Version::Loose, polarity).structural();
    loose_legal_with(base, position, max_address_length(position), lm, structural)
}

/// Loose legality of a whole run straight from the definition: every move
/// is a structural switch or a payload move, and every projection along a
/// ray class representative is legal in the base.
pub fn loose_legal_by_definition(base: &dyn Game, run: &Run, polarity: Polarity) -> bool {
    let structural = RecurrenceKind::new(Version::Loose, polarity).structural();
    let shapes_ok = run.iter().all(|lm| match lm.mv.shape() {
        MoveShape::Switch(_) => lm.label == structural,
        MoveShape::NonReplicative(..) => true,
        _ => false,
    });
    shapes_ok
        && crate::run::ray_classes(run, &Bitstring::empty())
            .iter()
            .all(|r| base.is_legal(&project(run, r)))
}

/// The ray selected by the last switch of `structural`, or `0^∞`.
pub fn last_switch_ray(run: &Run, structural: Player) -> Ray {
    run.iter()
        .rev()
        .filter(|lm| lm.label == structural)
        .find_map(|lm| match lm.mv.shape() {
            MoveShape::Switch(w) => Some(Ray::new(Bitstring::from_valid(w))),
            _ => None,
        })
        .unwrap_or_default()
}

/// Number of switch moves by `structural`.
pub fn switch_count(run: &Run, structural: Player) -> usize {
    run.iter()
        .filter(|lm| lm.label == structural && matches!(lm.mv.shape(), MoveShape::Switch(_)))
        .count()
}

/// A toggling-branching (co)recurrence over a base game.
pub struct Recurrence {
    base: GameRef,
    kind: RecurrenceKind,
}

pub fn make_recurrence(base: GameRef, kind: RecurrenceKind) -> GameRef {
    Arc::new(Recurrence { base, kind })
}

/// Winner of a legal run of the recurrence over `base`.
///
/// Finite runs have finitely many switches, so the winner is always the
/// base winner of the projection along the last switch ray.
pub fn recurrence_winner(
    base: &GameRef,
    kind: RecurrenceKind,
    legal_run: &Run,
) -> Result<Player, IllegalRunError> {
    let game = Recurrence {
        base: base.clone(),
        kind,
    };
    let k = game.legal_prefix_len(legal_run);
    if k < legal_run.len() {
        return Err(IllegalRunError { index: k });
    }
    Ok(game.winner(legal_run))
}

impl Recurrence {
    pub fn new(base: GameRef, kind: RecurrenceKind) -> Self {
        Recurrence { base, kind }
    }

    pub fn kind(&self) -> RecurrenceKind {
        self.kind
    }

    pub fn base(&self) -> &GameRef {
        &self.base
    }

    fn extension_legal(
        &self,
        position: &Run,
        tree: &NodeTree,
        max_addr: usize,
        lm: &LabMove,
    ) -> bool {
        let structural = self.kind.structural();
        match self.kind.version {
            Version::Tight => {
                tight_legal_with(&*self.base, position, tree, max_addr, lm, structural)
            }
            Version::Loose => loose_legal_with(&*self.base, position, max_addr, lm, structural),
        }
    }

    fn addresses(&self, tree: &NodeTree, bounds: &EnumBounds) -> Vec<Bitstring> {
        match self.kind.version {
            Version::Tight => {
                let mut nodes: Vec<Bitstring> = tree
                    .iter()
                    .filter(|w| w.len() <= bounds.max_address_len)
                    .cloned()
                    .collect();
                nodes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                nodes
            }
            Version::Loose => Bitstring::all_up_to(bounds.max_address_len).collect(),
        }
    }
}

impl Game for Recurrence {
    fn name(&self) -> String {
        format!("{}({})", self.kind.op_name(), self.base.name())
    }

    fn legal_prefix_len(&self, run: &Run) -> usize {
        let structural = self.kind.structural();
        let mut tree = NodeTree::root();
        let mut max_addr = 0;
        let mut position = Run::new();
        for (i, lm) in run.iter().enumerate() {
            if !self.extension_legal(&position, &tree, max_addr, lm) {
                return i;
            }
            let shape = lm.mv.shape();
            if let (MoveShape::Replicative(w), true) = (shape, lm.label == structural) {
                tree.replicate(&Bitstring::from_valid(w));
            }
            if let Some(addr) = shape.address() {
                max_addr = max_addr.max(addr.len());
            }
            position.push(lm.clone());
        }
        run.len()
    }

    fn winner(&self, run: &Run) -> Player {
        let t = last_switch_ray(run, self.kind.structural());
        self.base.winner(&project(run, &t))
    }

    fn legal_moves(&self, position: &Run, p: Player, bounds: &EnumBounds) -> Vec<Move> {
        let structural = self.kind.structural();
        let tree = match self.kind.version {
            Version::Tight => actual_nodes(position, structural),
            Version::Loose => NodeTree::root(),
        };
        let max_addr = max_address_length(position);
        let addresses = self.addresses(&tree, bounds);
        let mut out = Vec::new();
        if p == structural {
            out.extend(addresses.iter().map(|w| Move::new(w.as_str())));
            if self.kind.version == Version::Tight {
                out.extend(
                    tree.outer()
                        .into_iter()
                        .filter(|w| w.len() < bounds.max_address_len)
                        .map(|w| Move::new(format!("{}:", w.as_str()))),
                );
            }
        }
        // Projections depend only on the first `max_addr` bits of a ray, so
        // stems one bit longer than any address in play give every class.
        let fine = max_addr.max(bounds.max_address_len) + 1;
        let mut distinct: Vec<Run> = Vec::new();
        let stems: Vec<(Bitstring, usize)> = Bitstring::all_of_len(fine)
            .map(|stem| {
                let proj = project(position, &Ray::new(stem.clone()));
                let idx = distinct.iter().position(|d| *d == proj).unwrap_or_else(|| {
                    distinct.push(proj);
                    distinct.len() - 1
                });
                (stem, idx)
            })
            .collect();
        let mut verdicts: HashMap<(usize, Move), bool> = HashMap::new();
        for w in &addresses {
            let along = project(position, &Ray::new(w.clone()));
            let classes: BTreeSet<usize> = stems
                .iter()
                .filter(|(stem, _)| w.is_prefix_of(stem))
                .map(|&(_, idx)| idx)
                .collect();
            for alpha in self.base.legal_moves(&along, p, bounds) {
                let ok = classes.iter().all(|&idx| {
                    *verdicts.entry((idx, alpha.clone())).or_insert_with(|| {
                        self.base
                            .is_legal(&distinct[idx].with(LabMove::new(p, alpha.clone())))
                    })
                });
                if ok {
                    out.push(Move::new(format!("{}.{}", w.as_str(), alpha.as_str())));
                }
            }
        }
        let mut seen = HashSet::new();
        out.retain(|m| seen.insert(m.clone()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{negate, FiniteGame, GameTree};
    use Player::{Bot as B, Top as T};

    fn run(moves: &[(Player, &str)]) -> Run {
        moves.iter().map(|&(p, m)| LabMove::new(p, m)).collect()
    }

    fn bits(s: &str) -> Bitstring {
        Bitstring::new(s).unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Bitstring> {
        items.iter().map(|s| bits(s)).collect()
    }

    fn brute_outer(tree: &NodeTree) -> BTreeSet<Bitstring> {
        tree.iter()
            .filter(|v| !tree.iter().any(|o| v.is_proper_prefix_of(o)))
            .cloned()
            .collect()
    }

    fn leaf(w: Player) -> GameRef {
        Arc::new(FiniteGame::leaf("L", w))
    }

    /// ⊤ may play `a` once; nothing else.
    fn one_top_move() -> GameRef {
        let tree = GameTree::node(B, vec![(LabMove::top("a"), GameTree::leaf(T))]);
        Arc::new(FiniteGame::new("A", &tree).unwrap())
    }

    #[test]
    fn actual_and_outer_nodes() {
        assert_eq!(
            actual_nodes(&Run::new(), B)
                .iter()
                .cloned()
                .collect::<BTreeSet<_>>(),
            set(&[""])
        );
        let t = actual_nodes(&run(&[(B, ":")]), B);
        assert_eq!(
            t.iter().cloned().collect::<BTreeSet<_>>(),
            set(&["", "0", "1"])
        );
        let t = actual_nodes(&run(&[(B, ":"), (B, "0:")]), B);
        assert_eq!(
            t.iter().cloned().collect::<BTreeSet<_>>(),
            set(&["", "0", "1", "00", "01"])
        );
        assert_eq!(outer_nodes(&t), set(&["1", "00", "01"]));
        assert_eq!(outer_nodes(&t), brute_outer(&t));
        // replications by the other player do not count
        assert_eq!(actual_nodes(&run(&[(T, ":")]), B).len(), 1);
    }

    #[test]
    fn outer_examples() {
        assert_eq!(outer_nodes(&NodeTree::root()), set(&[""]));
        let mut t = NodeTree::root();
        t.replicate(&bits(""));
        assert_eq!(outer_nodes(&t), set(&["0", "1"]));
    }

    #[test]
    fn tight_switch_rules() {
        let base = leaf(T);
        assert!(tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::bot(""),
            Polarity::Recurrence
        ));
        assert!(!tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top(""),
            Polarity::Recurrence
        ));
        assert!(!tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::bot("0"),
            Polarity::Recurrence
        ));
        assert!(tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top(""),
            Polarity::Corecurrence
        ));
    }

    #[test]
    fn tight_replication_rules() {
        let base = leaf(T);
        let pos = run(&[(B, ":")]);
        let rec = Polarity::Recurrence;
        assert!(!tight_extension_legal(
            &*base,
            &pos,
            &LabMove::bot(":"),
            rec
        ));
        assert!(tight_extension_legal(
            &*base,
            &pos,
            &LabMove::bot("0:"),
            rec
        ));
        assert!(tight_extension_legal(
            &*base,
            &pos,
            &LabMove::bot("1:"),
            rec
        ));
        assert!(!tight_extension_legal(
            &*base,
            &pos,
            &LabMove::bot("00:"),
            rec
        ));
        assert!(!tight_extension_legal(
            &*base,
            &pos,
            &LabMove::top("0:"),
            rec
        ));
        // cross-check with recomputed outer sets
        let outer = outer_nodes(&actual_nodes(&pos, B));
        for w in Bitstring::all_up_to(3) {
            let mv = format!("{}:", w.as_str());
            assert_eq!(
                tight_extension_legal(&*base, &pos, &LabMove::bot(mv.as_str()), rec),
                outer.contains(&w),
                "{mv}"
            );
        }
    }

    #[test]
    fn tight_payload_requires_actual_address() {
        let base = one_top_move();
        let rec = Polarity::Recurrence;
        assert!(tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top(".a"),
            rec
        ));
        assert!(!tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top("0.a"),
            rec
        ));
        assert!(!tight_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::bot(".a"),
            rec
        ));
        let pos = run(&[(B, ":"), (T, "0.a")]);
        assert!(tight_extension_legal(
            &*base,
            &pos,
            &LabMove::top("1.a"),
            rec
        ));
        assert!(!tight_extension_legal(
            &*base,
            &pos,
            &LabMove::top(".a"),
            rec
        ));
    }

    #[test]
    fn loose_rules() {
        let base = one_top_move();
        let rec = Polarity::Recurrence;
        assert!(loose_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::bot("1101"),
            rec
        ));
        assert!(!loose_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top("1101"),
            rec
        ));
        assert!(!loose_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::bot(":"),
            rec
        ));
        assert!(loose_extension_legal(
            &*base,
            &Run::new(),
            &LabMove::top("01.a"),
            rec
        ));
        let pos = run(&[(T, "01.a")]);
        assert!(!loose_extension_legal(
            &*base,
            &pos,
            &LabMove::top("01.a"),
            rec
        ));
        assert!(!loose_extension_legal(
            &*base,
            &pos,
            &LabMove::top(".a"),
            rec
        ));
        assert!(loose_extension_legal(
            &*base,
            &pos,
            &LabMove::top("1.a"),
            rec
        ));
        assert!(loose_extension_legal(
            &*base,
            &pos,
            &LabMove::top("00.a"),
            rec
        ));
    }

    #[test]
    fn loose_double_move_oracle() {
        // direct projection legality along every stem of length 3
        let base = one_top_move();
        let twice = run(&[(T, "01.a"), (T, "01.a")]);
        let direct =
            Bitstring::all_of_len(3).all(|s| base.is_legal(&project(&twice, &Ray::new(s))));
        assert!(!direct);
        let g = make_recurrence(base, RecurrenceKind::LOOSE_REC);
        assert_eq!(g.legal_prefix_len(&twice), 1);
    }

    #[test]
    fn winners() {
        assert_eq!(
            recurrence_winner(&leaf(T), RecurrenceKind::TIGHT_REC, &Run::new()),
            Ok(T)
        );
        assert_eq!(
            recurrence_winner(&leaf(B), RecurrenceKind::TIGHT_COREC, &Run::new()),
            Ok(B)
        );
        assert_eq!(
            recurrence_winner(&leaf(B), RecurrenceKind::TIGHT_REC, &run(&[(T, "")])),
            Err(IllegalRunError { index: 0 })
        );
    }

    #[test]
    fn last_switch_decides() {
        // base: ⊤ may play a (⊤ wins); the ray that carries the payload wins for ⊤
        let base = one_top_move();
        let g = make_recurrence(base, RecurrenceKind::TIGHT_REC);
        let r = run(&[(B, ":"), (T, "1.a"), (B, "1"), (B, "0")]);
        assert!(g.is_legal(&r));
        assert_eq!(g.winner(&r), B);
        let r = run(&[(B, ":"), (T, "1.a"), (B, "0"), (B, "1")]);
        assert_eq!(g.winner(&r), T);
    }

    #[test]
    fn enumeration_examples() {
        let base = one_top_move();
        let b1 = EnumBounds::new(1, 4);
        let tight = make_recurrence(base.clone(), RecurrenceKind::TIGHT_REC);
        let mv = tight.legal_moves(&Run::new(), B, &b1);
        assert_eq!(mv, vec![Move::from(""), Move::from(":")]);
        let mv = tight.legal_moves(&Run::new(), T, &b1);
        assert_eq!(mv, vec![Move::from(".a")]);
        let loose = make_recurrence(base, RecurrenceKind::LOOSE_REC);
        let mv = loose.legal_moves(&Run::new(), T, &b1);
        assert_eq!(
            mv,
            vec![Move::from(".a"), Move::from("0.a"), Move::from("1.a")]
        );
    }

    #[test]
    fn corecurrence_is_dual() {
        let base = one_top_move();
        for version in [Version::Tight, Version::Loose] {
            let co = make_recurrence(
                base.clone(),
                RecurrenceKind::new(version, Polarity::Corecurrence),
            );
            let dual = negate(make_recurrence(
                negate(base.clone()),
                RecurrenceKind::new(version, Polarity::Recurrence),
            ));
            for r in [
                Run::new(),
                run(&[(T, ":"), (B, "0.a")]),
                run(&[(T, ":"), (T, "1.a")]),
                run(&[(T, "1"), (T, ".a")]),
            ] {
                assert_eq!(co.legal_prefix_len(&r), dual.legal_prefix_len(&r), "{r}");
                if co.is_legal(&r) {
                    assert_eq!(co.winner(&r), dual.winner(&r), "{r}");
                }
            }
        }
    }

    #[test]
    fn zero_leaf_and_longest_prefix() {
        let t = actual_nodes(&run(&[(B, ":"), (B, "0:"), (B, "00:")]), B);
        assert_eq!(t.zero_leaf(&bits("")), Some(bits("000")));
        assert_eq!(t.zero_leaf(&bits("01")), Some(bits("01")));
        assert_eq!(t.zero_leaf(&bits("11")), None);
        assert_eq!(t.longest_actual_prefix(&bits("0111")), bits("01"));
        assert_eq!(t.longest_actual_prefix(&bits("")), bits(""));
    }
}
