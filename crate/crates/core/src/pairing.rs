//! Hales-Jewett pairings: two private empty markers per group, with the
//! defender answering a marker by its partner.
//!
//! Finding a pairing is a degree-constrained bipartite matching (every group
//! demands two cells, every empty cell supplies one). It is solved exactly
//! with augmenting paths; among all pairings the lexicographically smallest
//! one (groups in canonical order, pairs as `(low, high)`) is returned.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Cell, CellState, Color, Group, Position};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("group {0} already contains a defender stone")]
    DeadGroup(Group),
}

/// Marker pairs assigned to groups. Pairs are stored as `(low, high)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pairing {
    assignments: BTreeMap<Group, (Cell, Cell)>,
}

impl Pairing {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, group: Group, a: Cell, b: Cell) {
        self.assignments.insert(group, (a.min(b), a.max(b)));
    }

    pub fn get(&self, group: &Group) -> Option<(Cell, Cell)> {
        self.assignments.get(group).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Group, (Cell, Cell))> {
        self.assignments.iter().map(|(g, &p)| (g, p))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn groups(&self) -> impl Iterator<Item = &Group> {
        self.assignments.keys()
    }

    pub fn marker_cells(&self) -> Vec<Cell> {
        self.assignments.values().flat_map(|&(a, b)| [a, b]).collect()
    }

    pub fn pairs(&self) -> Vec<(Cell, Cell)> {
        self.assignments.values().copied().collect()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, (a, b)) in self.iter() {
            writeln!(f, "{g} : [{a}, {b}]")?;
        }
        Ok(())
    }
}

/// One serialized pairing entry: the full group and its two markers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingEntry {
    pub group: Vec<Cell>,
    pub pair: [Cell; 2],
}

impl Serialize for Pairing {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<PairingEntry> = self
            .iter()
            .map(|(g, (a, b))| PairingEntry {
                group: g.cells().to_vec(),
                pair: [a, b],
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pairing {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<PairingEntry>::deserialize(deserializer)?;
        let mut pairing = Pairing::new();
        for e in entries {
            let group = Group::from_cells(e.group)
                .ok_or_else(|| serde::de::Error::custom("pairing group is not a line"))?;
            if pairing.assignments.contains_key(&group) {
                return Err(serde::de::Error::custom(format!("group {group} paired twice")));
            }
            // keep degenerate pairs as written so the verifier can report them
            pairing.assignments.insert(group, (e.pair[0].min(e.pair[1]), e.pair[0].max(e.pair[1])));
        }
        Ok(pairing)
    }
}

/// Finds a pairing for `groups` using empty cells of `pos`, or `None` when no
/// pairing exists.
pub fn find_hj_pairing(pos: &Position, groups: &[Group]) -> Result<Option<Pairing>, PairingError> {
    find_pairing(pos, groups, Color::Black, &BTreeSet::new())
}

/// Pairing for `attacker`'s groups that avoids the `reserved` cells.
pub fn find_pairing(
    pos: &Position,
    groups: &[Group],
    attacker: Color,
    reserved: &BTreeSet<Cell>,
) -> Result<Option<Pairing>, PairingError> {
    let blocker = CellState::from(attacker.opponent());
    let mut groups: Vec<&Group> = groups.iter().collect();
    groups.sort();
    groups.dedup();
    for g in &groups {
        if g.cells().iter().any(|&c| pos.get(c) == blocker) {
            return Err(PairingError::DeadGroup((*g).clone()));
        }
    }
    let candidates: Vec<Vec<Cell>> = groups
        .iter()
        .map(|g| {
            g.cells()
                .iter()
                .copied()
                .filter(|&c| pos.get(c).is_empty() && !reserved.contains(&c))
                .collect()
        })
        .collect();
    Ok(pair_candidates(&candidates).map(|pairs| {
        let mut pairing = Pairing::new();
        for (g, (a, b)) in groups.into_iter().zip(pairs) {
            pairing.insert(g.clone(), a, b);
        }
        pairing
    }))
}

/// Chooses two distinct cells per entry of `candidates`, no cell used twice.
///
/// Returns the lexicographically smallest solution, one `(low, high)` pair
/// per entry, or `None` if none exists.
pub fn pair_candidates<C: Ord + Copy>(candidates: &[Vec<C>]) -> Option<Vec<(C, C)>> {
    let mut universe: Vec<C> = candidates.iter().flatten().copied().collect();
    universe.sort();
    universe.dedup();
    let lists: Vec<Vec<usize>> = candidates
        .iter()
        .map(|cands| {
            let mut idx: Vec<usize> = cands
                .iter()
                .map(|c| universe.binary_search(c).unwrap())
                .collect();
            idx.sort();
            idx.dedup();
            idx
        })
        .collect();
    let mut matcher = SlotMatcher::new(&lists, universe.len());
    if !matcher.feasible() {
        return None;
    }
    let mut result = Vec::with_capacity(lists.len());
    for (i, cands) in lists.iter().enumerate() {
        let mut chosen = None;
        'low: for (pos, &lo) in cands.iter().enumerate() {
            if matcher.taken[lo] {
                continue;
            }
            matcher.fix(2 * i, lo);
            if !matcher.feasible() {
                matcher.unfix(2 * i, lo);
                continue;
            }
            for &hi in &cands[pos + 1..] {
                if matcher.taken[hi] {
                    continue;
                }
                matcher.fix(2 * i + 1, hi);
                if matcher.feasible() {
                    chosen = Some((lo, hi));
                    break 'low;
                }
                matcher.unfix(2 * i + 1, hi);
            }
            matcher.unfix(2 * i, lo);
        }
        // feasibility was established before, so some choice must survive
        let (lo, hi) = chosen.expect("feasible pairing lost during tie-breaking");
        result.push((universe[lo], universe[hi]));
    }
    Some(result)
}

/// Bipartite matching between group slots (two per group) and cells, with
/// some slots pinned to fixed cells.
struct SlotMatcher<'a> {
    lists: &'a [Vec<usize>],
    pinned: Vec<Option<usize>>,
    taken: Vec<bool>,
    num_cells: usize,
}

impl<'a> SlotMatcher<'a> {
    fn new(lists: &'a [Vec<usize>], num_cells: usize) -> Self {
        SlotMatcher {
            lists,
            pinned: vec![None; 2 * lists.len()],
            taken: vec![false; num_cells],
            num_cells,
        }
    }

    fn fix(&mut self, slot: usize, cell: usize) {
        self.pinned[slot] = Some(cell);
        self.taken[cell] = true;
    }

    fn unfix(&mut self, slot: usize, cell: usize) {
        self.pinned[slot] = None;
        self.taken[cell] = false;
    }

    /// True if every unpinned slot can get a distinct free cell.
    fn feasible(&self) -> bool {
        let mut owner: Vec<Option<usize>> = vec![None; self.num_cells];
        for slot in 0..self.pinned.len() {
            if self.pinned[slot].is_some() {
                continue;
            }
            let mut visited = vec![false; self.num_cells];
            if !self.augment(slot, &mut owner, &mut visited) {
                return false;
            }
        }
        true
    }

    fn augment(&self, slot: usize, owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
        for &cell in &self.lists[slot / 2] {
            if self.taken[cell] || visited[cell] {
                continue;
            }
            visited[cell] = true;
            let free = match owner[cell] {
                None => true,
                Some(other) => self.augment(other, owner, visited),
            };
            if free {
                owner[cell] = Some(slot);
                return true;
            }
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PairingViolation {
    MarkerNotEmpty { group: Group, cell: Cell },
    MarkerOutsideGroup { group: Group, cell: Cell },
    DegeneratePair { group: Group },
    MarkerReuse { cell: Cell },
    UncoveredGroup { group: Group },
}

impl fmt::Display for PairingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingViolation::MarkerNotEmpty { group, cell } => {
                write!(f, "marker not empty: {cell} in pair of {group}")
            }
            PairingViolation::MarkerOutsideGroup { group, cell } => {
                write!(f, "marker outside group: {cell} is not in {group}")
            }
            PairingViolation::DegeneratePair { group } => {
                write!(f, "pair of {group} uses the same cell twice")
            }
            PairingViolation::MarkerReuse { cell } => write!(f, "marker reuse: {cell}"),
            PairingViolation::UncoveredGroup { group } => write!(f, "uncovered group {group}"),
        }
    }
}

/// Checks a pairing against a position. An empty result means valid.
pub fn verify_pairing(pos: &Position, pairing: &Pairing) -> Vec<PairingViolation> {
    let groups: Vec<Group> = pairing.groups().cloned().collect();
    verify_pairing_covers(pos, pairing, &groups)
}

/// Like [`verify_pairing`], additionally requiring every group of
/// `required` to carry a pair.
pub fn verify_pairing_covers(
    pos: &Position,
    pairing: &Pairing,
    required: &[Group],
) -> Vec<PairingViolation> {
    let mut violations = Vec::new();
    let mut used = BTreeSet::new();
    let mut reused = BTreeSet::new();
    for (group, (a, b)) in pairing.iter() {
        if a == b {
            violations.push(PairingViolation::DegeneratePair {
                group: group.clone(),
            });
        }
        for cell in if a == b { vec![a] } else { vec![a, b] } {
            if !pos.spec().contains(cell) || !pos.get(cell).is_empty() {
                violations.push(PairingViolation::MarkerNotEmpty {
                    group: group.clone(),
                    cell,
                });
            }
            if !group.contains(cell) {
                violations.push(PairingViolation::MarkerOutsideGroup {
                    group: group.clone(),
                    cell,
                });
            }
            if !used.insert(cell) && reused.insert(cell) {
                violations.push(PairingViolation::MarkerReuse { cell });
            }
        }
    }
    for g in required {
        if pairing.get(g).is_none() {
            violations.push(PairingViolation::UncoveredGroup { group: g.clone() });
        }
    }
    violations
}

/// Defender's reply under a pairing: the partner of a played marker if it is
/// still free.
pub fn partner_reply<C: Copy + Eq>(
    pairs: &[(C, C)],
    attacker_move: C,
    is_free: impl Fn(C) -> bool,
) -> Option<C> {
    pairs.iter().find_map(|&(a, b)| {
        let partner = if a == attacker_move {
            b
        } else if b == attacker_move {
            a
        } else {
            return None;
        };
        is_free(partner).then_some(partner)
    })
}
