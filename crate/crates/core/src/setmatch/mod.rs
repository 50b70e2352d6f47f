//! Matching sets `(N, G, C)`: markers, groups and coverings.
//!
//! A covering pairs a Black opening on marker `x` with White's answer `y`.
//! Groups that `y` does not block are left to the remainder, which is either
//! a plain set of marker pairs or another matching set.
//! Coverings that are images of listed ones under a declared marker
//! permutation may be omitted; the verifier regenerates them before
//! demanding that every marker has a covering.
//!
//! Everything here is generic over the node type so the same code checks
//! abstract configurations (lettered markers) and concrete board cells.

mod strategy;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Cell, CellState, Color, Position};

pub use strategy::{
    execute_on, execute_strategy, exhaustive_adversary, AdversaryReport, GameTrace, GroupOutcome,
    Responder, StrategyBoard, StrategyError,
};

/// Anything that can serve as a marker node.
pub trait Node: Copy + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short human name of a group made of these nodes.
    fn group_name(nodes: &[Self]) -> String;
}

impl Node for Cell {
    fn group_name(nodes: &[Self]) -> String {
        match (nodes.first(), nodes.last()) {
            (Some(a), Some(b)) => format!("{a}-{b}"),
            _ => String::from("{}"),
        }
    }
}

/// An abstract marker, printed as a lowercase letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label(pub u8);

impl Label {
    pub fn from_char(c: char) -> Option<Label> {
        c.is_ascii_lowercase().then(|| Label(c as u8 - b'a'))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 26 {
            write!(f, "{}", (b'a' + self.0) as char)
        } else {
            write!(f, "n{}", self.0)
        }
    }
}

impl Node for Label {
    fn group_name(nodes: &[Self]) -> String {
        nodes.iter().map(|l| l.to_string()).collect()
    }
}

/// Read access to cell states, oriented so that Black is the attacker.
pub trait Arena<C> {
    fn state(&self, cell: C) -> CellState;
}

impl Arena<Cell> for Position {
    fn state(&self, cell: Cell) -> CellState {
        if self.spec().contains(cell) {
            self.get(cell)
        } else {
            // off-board cells can never be used
            CellState::White
        }
    }
}

/// Arena in which every node is empty, used for abstract configurations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Blank;

impl<C> Arena<C> for Blank {
    fn state(&self, _cell: C) -> CellState {
        CellState::Empty
    }
}

/// A position seen from `attacker`'s side: the attacker's stones read as
/// Black and the defender's as White.
pub struct Oriented<'a> {
    pub position: &'a Position,
    pub attacker: Color,
}

impl Arena<Cell> for Oriented<'_> {
    fn state(&self, cell: Cell) -> CellState {
        let s = self.position.state(cell);
        match (self.attacker, s) {
            (Color::Black, s) => s,
            (Color::White, CellState::Black) => CellState::White,
            (Color::White, CellState::White) => CellState::Black,
            (Color::White, CellState::Empty) => CellState::Empty,
        }
    }
}

/// An arena with a few extra stones placed on top of another.
pub struct Overlay<'a, C> {
    base: &'a dyn Arena<C>,
    black: Vec<C>,
    white: Vec<C>,
}

impl<'a, C: PartialEq> Overlay<'a, C> {
    pub fn new(base: &'a dyn Arena<C>, black: Vec<C>, white: Vec<C>) -> Self {
        Overlay { base, black, white }
    }
}

impl<C: Copy + PartialEq> Arena<C> for Overlay<'_, C> {
    fn state(&self, cell: C) -> CellState {
        if self.black.contains(&cell) {
            CellState::Black
        } else if self.white.contains(&cell) {
            CellState::White
        } else {
            self.base.state(cell)
        }
    }
}

/// A marker permutation; nodes not listed are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(
    serialize = "C: Serialize + Ord",
    deserialize = "C: Deserialize<'de> + Ord"
))]
pub struct Permutation<C>(pub BTreeMap<C, C>);

impl<C: Node> Permutation<C> {
    pub fn apply(&self, c: C) -> C {
        self.0.get(&c).copied().unwrap_or(c)
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<C>]) -> Self {
        let mut map = BTreeMap::new();
        for cycle in cycles {
            for (i, &c) in cycle.iter().enumerate() {
                map.insert(c, cycle[(i + 1) % cycle.len()]);
            }
        }
        map.retain(|k, v| k != v);
        Permutation(map)
    }

    pub fn map_nodes<D: Node>(&self, f: &impl Fn(C) -> D) -> Permutation<D> {
        Permutation(self.0.iter().map(|(&k, &v)| (f(k), f(v))).collect())
    }

    fn is_bijection_on(&self, domain: &BTreeSet<C>) -> bool {
        let keys: BTreeSet<C> = self.0.keys().copied().collect();
        let values: BTreeSet<C> = self.0.values().copied().collect();
        keys.is_subset(domain) && keys == values
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[serde(bound(
    serialize = "C: Serialize + Ord",
    deserialize = "C: Deserialize<'de> + Ord"
))]
pub enum Remainder<C> {
    /// Plain marker pairs, answered partner-for-partner.
    Pairs(Vec<(C, C)>),
    /// A full matching set for the remaining groups.
    MatchingSet(Box<MatchingSet<C>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "C: Serialize + Ord",
    deserialize = "C: Deserialize<'de> + Ord"
))]
pub struct Covering<C> {
    pub black: C,
    pub white: C,
    pub remainder: Remainder<C>,
}

impl<C: Node> Covering<C> {
    pub fn map_nodes<D: Node>(&self, f: &impl Fn(C) -> D) -> Covering<D> {
        Covering {
            black: f(self.black),
            white: f(self.white),
            remainder: match &self.remainder {
                Remainder::Pairs(pairs) => {
                    Remainder::Pairs(pairs.iter().map(|&(a, b)| (f(a), f(b))).collect())
                }
                Remainder::MatchingSet(m) => Remainder::MatchingSet(Box::new(m.map_nodes(f))),
            },
        }
    }

    fn permuted(&self, p: &Permutation<C>) -> Covering<C> {
        self.map_nodes(&|c| p.apply(c))
    }

    pub fn label(&self) -> String {
        format!("{}\u{2192}{}", self.black, self.white)
    }
}

impl<C: Node> fmt::Display for Covering<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.label())?;
        match &self.remainder {
            Remainder::Pairs(pairs) => {
                let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, "{}", parts.join(","))?;
            }
            Remainder::MatchingSet(m) => write!(f, "{m}")?,
        }
        write!(f, "}}")
    }
}

/// The triple `(N, G, C)` plus the symmetry used to abbreviate `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "C: Serialize + Ord",
    deserialize = "C: Deserialize<'de> + Ord"
))]
pub struct MatchingSet<C> {
    pub markers: BTreeSet<C>,
    pub groups: Vec<Vec<C>>,
    pub coverings: Vec<Covering<C>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetry: Vec<Permutation<C>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetMatchError {
    #[error("coverage ratio of a matching set without groups")]
    NoGroups,
}

impl<C: Node> MatchingSet<C> {
    pub fn new(
        markers: impl IntoIterator<Item = C>,
        groups: Vec<Vec<C>>,
        coverings: Vec<Covering<C>>,
        symmetry: Vec<Permutation<C>>,
    ) -> Self {
        MatchingSet {
            markers: markers.into_iter().collect(),
            groups,
            coverings,
            symmetry,
        }
    }

    /// A classical pairing written as a matching set: every marker of a pair
    /// is answered by its partner.
    pub fn from_pairs(pairs: &[(C, C)], groups: Vec<Vec<C>>) -> Self {
        let mut coverings = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let rest: Vec<(C, C)> = pairs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &p)| p)
                .collect();
            for (x, y) in [(a, b), (b, a)] {
                coverings.push(Covering {
                    black: x,
                    white: y,
                    remainder: Remainder::Pairs(rest.clone()),
                });
            }
        }
        MatchingSet::new(
            pairs.iter().flat_map(|&(a, b)| [a, b]),
            groups,
            coverings,
            Vec::new(),
        )
    }

    pub fn num_markers(&self) -> usize {
        self.markers.len()
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    /// Markers saved compared with a classical pairing: `2|G| - |N|`.
    pub fn reduction(&self) -> isize {
        2 * self.groups.len() as isize - self.markers.len() as isize
    }

    /// `|N| / |G|` as an exact fraction.
    pub fn coverage_ratio(&self) -> Result<Ratio<usize>, SetMatchError> {
        if self.groups.is_empty() {
            return Err(SetMatchError::NoGroups);
        }
        Ok(Ratio::new(self.markers.len(), self.groups.len()))
    }

    pub fn map_nodes<D: Node>(&self, f: &impl Fn(C) -> D) -> MatchingSet<D> {
        MatchingSet::new(
            self.markers.iter().map(|&c| f(c)),
            self.groups
                .iter()
                .map(|g| g.iter().map(|&c| f(c)).collect())
                .collect(),
            self.coverings.iter().map(|c| c.map_nodes(f)).collect(),
            self.symmetry.iter().map(|p| p.map_nodes(f)).collect(),
        )
    }

    /// Every node that matters to this set: markers and all group cells.
    pub fn universe(&self) -> BTreeSet<C> {
        self.markers
            .iter()
            .copied()
            .chain(self.groups.iter().flatten().copied())
            .collect()
    }

    /// Listed coverings followed by all images under the symmetry, keeping
    /// the first covering found for each opening move.
    pub fn expanded_coverings(&self) -> Vec<Covering<C>> {
        let mut seen: BTreeSet<C> = BTreeSet::new();
        let mut out: Vec<Covering<C>> = Vec::new();
        let mut queue: VecDeque<Covering<C>> = VecDeque::new();
        for c in &self.coverings {
            if seen.insert(c.black) {
                out.push(c.clone());
                queue.push_back(c.clone());
            }
        }
        while let Some(c) = queue.pop_front() {
            for p in &self.symmetry {
                let image = c.permuted(p);
                if seen.insert(image.black) {
                    out.push(image.clone());
                    queue.push_back(image);
                }
            }
        }
        out
    }
}

impl<C: Node> fmt::Display for MatchingSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let markers: Vec<String> = self.markers.iter().map(|m| m.to_string()).collect();
        let groups: Vec<String> = self.groups.iter().map(|g| C::group_name(g)).collect();
        let coverings: Vec<String> = self.coverings.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "({{{}}}, {{{}}}, {{{}}})",
            markers.join(","),
            groups.join(","),
            coverings.join(", ")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    Invalid,
}

/// Why a check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    MarkerNotEmpty { marker: String },
    GroupBlocked { group: String },
    GroupOverlap { group: String, other: String },
    DuplicateGroup { group: String },
    GroupWithoutMarker { group: String },
    BadSymmetry { index: usize },
    CoveringOutsideMarkers { node: String },
    ResponseIsMove,
    DuplicateCovering { first_move: String },
    MissingCovering { first_move: String },
    PairOutsideMarkers { node: String },
    PairUsesOpening { node: String },
    PairReuse { node: String },
    GroupUncovered { group: String, covering: String },
    NestedMarkerOutside { node: String },
    NestedGroupMissing { group: String },
    /// Free-form reasons raised by certificate-level checks.
    Other { message: String },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::MarkerNotEmpty { marker } => write!(f, "marker {marker} is not empty"),
            Reason::GroupBlocked { group } => write!(f, "group {group} contains a White stone"),
            Reason::GroupOverlap { group, other } => {
                write!(f, "groups {group} and {other} overlap")
            }
            Reason::DuplicateGroup { group } => write!(f, "group {group} listed twice"),
            Reason::GroupWithoutMarker { group } => write!(f, "group {group} has no marker"),
            Reason::BadSymmetry { index } => {
                write!(f, "symmetry #{index} is not a permutation of the markers")
            }
            Reason::CoveringOutsideMarkers { node } => {
                write!(f, "covering uses {node}, which is not a marker")
            }
            Reason::ResponseIsMove => write!(f, "response equals the opening move"),
            Reason::DuplicateCovering { first_move } => {
                write!(f, "two coverings for first move {first_move}")
            }
            Reason::MissingCovering { first_move } => {
                write!(f, "no covering for first move {first_move}")
            }
            Reason::PairOutsideMarkers { node } => write!(f, "pair uses non-marker {node}"),
            Reason::PairUsesOpening { node } => {
                write!(f, "pair reuses {node} from the opening exchange")
            }
            Reason::PairReuse { node } => write!(f, "marker {node} used in two pairs"),
            Reason::GroupUncovered { group, covering } => {
                write!(f, "group {group} uncovered after {covering}")
            }
            Reason::NestedMarkerOutside { node } => {
                write!(f, "nested marker {node} is not available")
            }
            Reason::NestedGroupMissing { group } => {
                write!(f, "nested matching set does not cover group {group}")
            }
            Reason::Other { message } => f.write_str(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub location: String,
    pub reason: Reason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.reason)
    }
}

/// Outcome of a verification; valid exactly when there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProofResult {
    pub violations: Vec<Violation>,
}

impl ProofResult {
    pub fn verdict(&self) -> Verdict {
        if self.violations.is_empty() {
            Verdict::Valid
        } else {
            Verdict::Invalid
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, location: impl Into<String>, reason: Reason) {
        self.violations.push(Violation {
            location: location.into(),
            reason,
        });
    }

    pub fn extend(&mut self, other: ProofResult) {
        self.violations.extend(other.violations);
    }

    /// True if some violation message contains `needle`.
    pub fn mentions(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.to_string().contains(needle))
    }
}

impl fmt::Display for ProofResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "Valid");
        }
        writeln!(f, "Invalid")?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Regenerate omitted coverings from the declared symmetry.
    pub expand_symmetry: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            expand_symmetry: true,
        }
    }
}

/// Verifies a concrete matching set against a position with Black to move.
pub fn verify_matching_set(pos: &Position, set: &MatchingSet<Cell>) -> ProofResult {
    verify_on(pos, set, VerifyOptions::default())
}

/// Verifies an abstract matching set in which every marker is empty.
pub fn verify_abstract<C: Node>(set: &MatchingSet<C>) -> ProofResult {
    verify_on(&Blank, set, VerifyOptions::default())
}

pub fn verify_on<C: Node>(
    arena: &dyn Arena<C>,
    set: &MatchingSet<C>,
    options: VerifyOptions,
) -> ProofResult {
    let mut result = ProofResult::default();
    verify_into(arena, set, options, "", &mut result);
    result
}

fn verify_into<C: Node>(
    arena: &dyn Arena<C>,
    set: &MatchingSet<C>,
    options: VerifyOptions,
    prefix: &str,
    out: &mut ProofResult,
) {
    let at = |what: String| format!("{prefix}{what}");

    for &m in &set.markers {
        if arena.state(m) != CellState::Empty {
            out.push(at(format!("marker {m}")), Reason::MarkerNotEmpty { marker: m.to_string() });
        }
    }

    let names: Vec<String> = set.groups.iter().map(|g| C::group_name(g)).collect();
    let cell_sets: Vec<BTreeSet<C>> = set.groups.iter().map(|g| g.iter().copied().collect()).collect();
    for (i, g) in set.groups.iter().enumerate() {
        let loc = at(format!("group {}", names[i]));
        if g.iter().any(|&c| arena.state(c) == CellState::White) {
            out.push(loc.clone(), Reason::GroupBlocked { group: names[i].clone() });
        }
        if !g.iter().any(|c| set.markers.contains(c)) {
            out.push(loc.clone(), Reason::GroupWithoutMarker { group: names[i].clone() });
        }
        for j in i + 1..set.groups.len() {
            let shared = cell_sets[i].intersection(&cell_sets[j]).count();
            if cell_sets[i] == cell_sets[j] {
                out.push(loc.clone(), Reason::DuplicateGroup { group: names[i].clone() });
            } else if shared >= 2 {
                out.push(
                    loc.clone(),
                    Reason::GroupOverlap {
                        group: names[i].clone(),
                        other: names[j].clone(),
                    },
                );
            }
        }
    }

    let mut symmetry_ok = true;
    for (i, p) in set.symmetry.iter().enumerate() {
        if !p.is_bijection_on(&set.markers) {
            symmetry_ok = false;
            out.push(at(format!("symmetry #{i}")), Reason::BadSymmetry { index: i });
        }
    }

    let mut listed = BTreeSet::new();
    for c in &set.coverings {
        if !listed.insert(c.black) {
            out.push(
                at(format!("covering {}", c.label())),
                Reason::DuplicateCovering { first_move: c.black.to_string() },
            );
        }
    }

    let coverings = if options.expand_symmetry && symmetry_ok {
        set.expanded_coverings()
    } else {
        set.coverings.clone()
    };

    let opened: BTreeSet<C> = coverings.iter().map(|c| c.black).collect();
    for &m in &set.markers {
        if !opened.contains(&m) {
            out.push(at(format!("marker {m}")), Reason::MissingCovering { first_move: m.to_string() });
        }
    }

    let mut checked = BTreeSet::new();
    for cov in &coverings {
        if !checked.insert(cov.black) {
            continue;
        }
        verify_covering(arena, set, &names, cov, options, prefix, out);
    }
}

fn verify_covering<C: Node>(
    arena: &dyn Arena<C>,
    set: &MatchingSet<C>,
    names: &[String],
    cov: &Covering<C>,
    options: VerifyOptions,
    prefix: &str,
    out: &mut ProofResult,
) {
    let loc = format!("{prefix}covering {}", cov.label());
    for node in [cov.black, cov.white] {
        if !set.markers.contains(&node) {
            out.push(loc.clone(), Reason::CoveringOutsideMarkers { node: node.to_string() });
        }
    }
    if cov.black == cov.white {
        out.push(loc.clone(), Reason::ResponseIsMove);
        return;
    }
    let remaining: Vec<usize> = (0..set.groups.len())
        .filter(|&i| !set.groups[i].contains(&cov.white))
        .collect();
    match &cov.remainder {
        Remainder::Pairs(pairs) => {
            let mut used = BTreeSet::new();
            for &(a, b) in pairs {
                for node in [a, b] {
                    if node == cov.black || node == cov.white {
                        out.push(loc.clone(), Reason::PairUsesOpening { node: node.to_string() });
                    } else if !set.markers.contains(&node) {
                        out.push(loc.clone(), Reason::PairOutsideMarkers { node: node.to_string() });
                    }
                    if !used.insert(node) {
                        out.push(loc.clone(), Reason::PairReuse { node: node.to_string() });
                    }
                }
            }
            for &i in &remaining {
                let g = &set.groups[i];
                let covered = pairs
                    .iter()
                    .any(|&(a, b)| a != b && g.contains(&a) && g.contains(&b));
                if !covered {
                    out.push(
                        loc.clone(),
                        Reason::GroupUncovered {
                            group: names[i].clone(),
                            covering: cov.label(),
                        },
                    );
                }
            }
        }
        Remainder::MatchingSet(nested) => {
            for &node in &nested.markers {
                if node == cov.black || node == cov.white || !set.markers.contains(&node) {
                    out.push(loc.clone(), Reason::NestedMarkerOutside { node: node.to_string() });
                }
            }
            let nested_groups: BTreeSet<BTreeSet<C>> = nested
                .groups
                .iter()
                .map(|g| g.iter().copied().collect())
                .collect();
            for &i in &remaining {
                let g: BTreeSet<C> = set.groups[i].iter().copied().collect();
                if !nested_groups.contains(&g) {
                    out.push(
                        loc.clone(),
                        Reason::NestedGroupMissing { group: names[i].clone() },
                    );
                }
            }
            let after = Overlay::new(arena, vec![cov.black], vec![cov.white]);
            verify_into(&after, nested, options, &format!("{loc} / "), out);
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad matching-set notation: {0}")]
pub struct NotationError(String);

fn labels(token: &str) -> Result<Vec<Label>, NotationError> {
    token
        .chars()
        .map(|c| Label::from_char(c).ok_or_else(|| NotationError(format!("bad label {c:?}"))))
        .collect()
}

impl MatchingSet<Label> {
    /// Builds an abstract set from compact notation, for example
    /// groups `"ab adc bec"`, coverings `"a>b cd; c>a be; d>a bc"` and
    /// symmetry `"(ab)(de)"`. Generators are separated by `;`. Every
    /// label appearing in a group is a marker.
    pub fn from_notation(
        groups: &str,
        coverings: &str,
        symmetry: &str,
    ) -> Result<Self, NotationError> {
        let groups: Vec<Vec<Label>> = groups
            .split_whitespace()
            .map(labels)
            .collect::<Result<_, _>>()?;
        let mut covs = Vec::new();
        for part in coverings.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut tokens = part.split_whitespace();
            let head = tokens.next().unwrap_or_default();
            let (x, y) = head
                .split_once('>')
                .ok_or_else(|| NotationError(format!("covering head {head:?}")))?;
            let (x, y) = (labels(x)?, labels(y)?);
            if x.len() != 1 || y.len() != 1 {
                return Err(NotationError(format!("covering head {head:?}")));
            }
            let pairs = tokens
                .map(|t| match labels(t)?.as_slice() {
                    [a, b] => Ok((*a, *b)),
                    _ => Err(NotationError(format!("pair {t:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            covs.push(Covering {
                black: x[0],
                white: y[0],
                remainder: Remainder::Pairs(pairs),
            });
        }
        let mut perms = Vec::new();
        for generator in symmetry.split(';').map(str::trim).filter(|g| !g.is_empty()) {
            let cycles = generator
                .split(['(', ')'])
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(labels)
                .collect::<Result<Vec<_>, _>>()?;
            perms.push(Permutation::from_cycles(&cycles));
        }
        let markers: BTreeSet<Label> = groups.iter().flatten().copied().collect();
        Ok(MatchingSet::new(markers, groups, covs, perms))
    }
}

#[cfg(test)]
mod tests;
