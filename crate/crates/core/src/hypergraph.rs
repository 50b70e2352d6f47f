//! Incidence structure between groups: intersections, overlaps and the
//! corner/edge classification of cells.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::board::{Cell, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("groups {0} and {1} overlap")]
    Overlap(Group, Group),
    #[error("group {0} appears twice")]
    Duplicate(Group),
}

pub fn intersection(g1: &Group, g2: &Group) -> BTreeSet<Cell> {
    g1.cells().iter().copied().filter(|&c| g2.contains(c)).collect()
}

/// Two groups overlap when they share more than one cell.
pub fn is_overlapping(g1: &Group, g2: &Group) -> bool {
    g1.cells().iter().filter(|&&c| g2.contains(c)).nth(1).is_some()
}

/// A set of distinct groups on one board.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupSet {
    groups: Vec<Group>,
}

impl GroupSet {
    pub fn new(groups: Vec<Group>) -> Result<Self, HypergraphError> {
        let mut seen = BTreeSet::new();
        for g in &groups {
            if !seen.insert(g) {
                return Err(HypergraphError::Duplicate(g.clone()));
            }
        }
        Ok(GroupSet { groups })
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn universe(&self) -> BTreeSet<Cell> {
        self.groups.iter().flat_map(|g| g.cells().iter().copied()).collect()
    }

    /// Number of groups of the set containing each cell of the universe.
    pub fn membership(&self) -> BTreeMap<Cell, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.groups {
            for &c in g.cells() {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn first_overlap(&self) -> Option<(&Group, &Group)> {
        self.groups.iter().enumerate().find_map(|(i, a)| {
            self.groups[i + 1..]
                .iter()
                .find(|b| is_overlapping(a, b))
                .map(|b| (a, b))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// In two or more groups of the set.
    Corner,
    /// In exactly one group.
    Edge,
}

pub type NodeClass = BTreeMap<Cell, NodeKind>;

pub fn classify_nodes(set: &GroupSet) -> Result<NodeClass, HypergraphError> {
    if let Some((a, b)) = set.first_overlap() {
        return Err(HypergraphError::Overlap(a.clone(), b.clone()));
    }
    Ok(set
        .membership()
        .into_iter()
        .map(|(c, n)| (c, if n >= 2 { NodeKind::Corner } else { NodeKind::Edge }))
        .collect())
}
