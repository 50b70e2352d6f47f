//! Whole-position proofs: independent configurations plus a pairing for
//! every live group they leave uncovered.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::catalog::{ConfigTemplate, TemplateName};
use super::detect::{detect_for, Embedding};
use crate::board::{parse_position, Cell, Color, Group, Position};
use crate::pairing::{find_pairing, verify_pairing, Pairing};
use crate::par::Exec;
use crate::setmatch::{verify_matching_set, MatchingSet, Node, ProofResult, Reason};

#[derive(Debug, Clone)]
pub struct ProveOptions {
    pub templates: Vec<TemplateName>,
    /// Maximum number of selection nodes explored before giving up.
    pub node_budget: usize,
    pub exec: Exec,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            templates: TemplateName::NAMED.to_vec(),
            node_budget: 20_000,
            exec: Exec::Parallel,
        }
    }
}

/// A cover of all of `attacker`'s live groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub embeddings: Vec<Embedding>,
    pub residual: Pairing,
}

/// Searches for independent embeddings plus a residual pairing that
/// together cover every group `attacker` could still complete. Sound but
/// incomplete: `None` proves nothing.
pub fn find_cover(pos: &Position, attacker: Color, options: &ProveOptions) -> Option<Cover> {
    let live = pos.live_groups(attacker);
    if let Some(cover) = pairing_only(pos, attacker, &live) {
        return Some(cover);
    }
    let embeddings = detect_for(pos, attacker, &options.templates, options.exec);
    mixed_cover(pos, attacker, &live, embeddings, options)
}

fn pairing_only(pos: &Position, attacker: Color, live: &[Group]) -> Option<Cover> {
    match find_pairing(pos, live, attacker, &BTreeSet::new()) {
        Ok(Some(pairing)) => Some(Cover {
            embeddings: Vec::new(),
            residual: pairing,
        }),
        _ => None,
    }
}

/// Embeddings ordered by descending reduction, then template order, with a
/// residual pairing tried at every node.
fn mixed_cover(
    pos: &Position,
    attacker: Color,
    live: &[Group],
    mut embeddings: Vec<Embedding>,
    options: &ProveOptions,
) -> Option<Cover> {
    if embeddings.is_empty() {
        return None;
    }
    let rank: BTreeMap<TemplateName, usize> = options
        .templates
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();
    embeddings.sort_by(|a, b| {
        b.reduction()
            .cmp(&a.reduction())
            .then_with(|| rank[&a.template].cmp(&rank[&b.template]))
    });
    let mut budget = options.node_budget;
    Selector::new(pos, attacker, live, &embeddings, &mut budget, true).run()
}

/// True when `attacker` provably cannot complete any group from `pos`,
/// whoever is to move.
pub fn no_win_proof(pos: &Position, attacker: Color, options: &ProveOptions) -> bool {
    find_cover(pos, attacker, options).is_some()
}

/// Marker cells and live-group indices of each embedding, as bit sets.
struct Masks {
    markers: Vec<FixedBitSet>,
    groups: Vec<FixedBitSet>,
    /// For each live group, the embeddings containing it, in order.
    covering: Vec<Vec<usize>>,
}

impl Masks {
    fn new(pos: &Position, live: &[Group], embeddings: &[Embedding]) -> Masks {
        let spec = pos.spec();
        let index: HashMap<&Group, usize> = live.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut markers = Vec::with_capacity(embeddings.len());
        let mut groups = Vec::with_capacity(embeddings.len());
        let mut covering = vec![Vec::new(); live.len()];
        for (i, e) in embeddings.iter().enumerate() {
            let mut m = FixedBitSet::with_capacity(spec.num_cells());
            m.extend(e.binding.values().map(|&c| spec.index(c)));
            let mut g = FixedBitSet::with_capacity(live.len());
            g.extend(e.groups.iter().map(|grp| index[grp]));
            for j in g.ones() {
                covering[j].push(i);
            }
            markers.push(m);
            groups.push(g);
        }
        Masks {
            markers,
            groups,
            covering,
        }
    }
}

/// Depth-first choice of pairwise independent embeddings. Each visited
/// node costs one unit of `budget`.
struct Selector<'a> {
    pos: &'a Position,
    attacker: Color,
    live: &'a [Group],
    embeddings: &'a [Embedding],
    masks: Masks,
    budget: &'a mut usize,
    /// Whether uncovered groups may be handed to a pairing.
    residual: bool,
    chosen: Vec<usize>,
    used_markers: FixedBitSet,
    used_groups: FixedBitSet,
}

impl<'a> Selector<'a> {
    fn new(
        pos: &'a Position,
        attacker: Color,
        live: &'a [Group],
        embeddings: &'a [Embedding],
        budget: &'a mut usize,
        residual: bool,
    ) -> Self {
        Selector {
            pos,
            attacker,
            live,
            embeddings,
            masks: Masks::new(pos, live, embeddings),
            budget,
            residual,
            chosen: Vec::new(),
            used_markers: FixedBitSet::with_capacity(pos.spec().num_cells()),
            used_groups: FixedBitSet::with_capacity(live.len()),
        }
    }

    fn run(mut self) -> Option<Cover> {
        let residual = self.select(0)?;
        Some(Cover {
            embeddings: self.chosen.iter().map(|&i| self.embeddings[i].clone()).collect(),
            residual,
        })
    }

    fn select(&mut self, start: usize) -> Option<Pairing> {
        if *self.budget == 0 {
            return None;
        }
        *self.budget -= 1;
        if !self.chosen.is_empty() {
            if self.used_groups.count_ones(..) == self.live.len() {
                return Some(Pairing::new());
            }
            if self.residual {
                let rest: Vec<Group> = self
                    .live
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !self.used_groups.contains(*i))
                    .map(|(_, g)| g.clone())
                    .collect();
                let spec = self.pos.spec();
                let reserved: BTreeSet<Cell> =
                    self.used_markers.ones().map(|i| spec.cell_at(i)).collect();
                if let Ok(Some(p)) = find_pairing(self.pos, &rest, self.attacker, &reserved) {
                    return Some(p);
                }
            }
        }
        if !self.residual {
            return self.select_exact();
        }
        for i in start..self.embeddings.len() {
            if !self.masks.markers[i].is_disjoint(&self.used_markers)
                || !self.masks.groups[i].is_disjoint(&self.used_groups)
            {
                continue;
            }
            self.chosen.push(i);
            self.used_markers.union_with(&self.masks.markers[i]);
            self.used_groups.union_with(&self.masks.groups[i]);
            if let Some(p) = self.select(i + 1) {
                return Some(p);
            }
            self.chosen.pop();
            self.used_markers.difference_with(&self.masks.markers[i]);
            self.used_groups.difference_with(&self.masks.groups[i]);
            if *self.budget == 0 {
                return None;
            }
        }
        None
    }

    /// Without a residual pairing every live group needs an embedding, so
    /// it is enough to branch on the first uncovered one.
    fn select_exact(&mut self) -> Option<Pairing> {
        let first = (0..self.live.len()).find(|&g| !self.used_groups.contains(g))?;
        for k in 0..self.masks.covering[first].len() {
            let i = self.masks.covering[first][k];
            if !self.masks.markers[i].is_disjoint(&self.used_markers)
                || !self.masks.groups[i].is_disjoint(&self.used_groups)
            {
                continue;
            }
            self.chosen.push(i);
            self.used_markers.union_with(&self.masks.markers[i]);
            self.used_groups.union_with(&self.masks.groups[i]);
            if let Some(p) = self.select(0) {
                return Some(p);
            }
            self.chosen.pop();
            self.used_markers.difference_with(&self.masks.markers[i]);
            self.used_groups.difference_with(&self.masks.groups[i]);
            if *self.budget == 0 {
                return None;
            }
        }
        None
    }
}

/// A proof that Black, to move, cannot win.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawCertificate {
    pub position: Position,
    pub matching_sets: Vec<CertifiedSet>,
    pub residual_pairing: Pairing,
}

/// One matching set of a certificate, optionally tagged with the
/// configuration it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template_name: Option<TemplateName>,
    #[serde(flatten)]
    pub set: MatchingSet<Cell>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    board: String,
    matching_sets: Vec<CertifiedSet>,
    residual_pairing: Pairing,
}

#[derive(Debug, thiserror::Error)]
pub enum CertificateError {
    #[error("certificate is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate board: {0}")]
    Board(#[from] crate::board::BoardError),
}

impl DrawCertificate {
    pub fn from_cover(pos: &Position, cover: Cover) -> DrawCertificate {
        let matching_sets = cover
            .embeddings
            .iter()
            .map(|e| CertifiedSet {
                template_name: Some(e.template),
                set: e.matching_set(&ConfigTemplate::get(e.template)),
            })
            .collect();
        DrawCertificate {
            position: pos.clone(),
            matching_sets,
            residual_pairing: cover.residual,
        }
    }

    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            board: self.position.render(),
            matching_sets: self.matching_sets.clone(),
            residual_pairing: self.residual_pairing.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("certificate serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<DrawCertificate, CertificateError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        Ok(DrawCertificate {
            position: parse_position(&file.board)?,
            matching_sets: file.matching_sets,
            residual_pairing: file.residual_pairing,
        })
    }

    pub fn template_names(&self) -> Vec<Option<TemplateName>> {
        self.matching_sets.iter().map(|s| s.template_name).collect()
    }

    pub fn num_markers(&self) -> usize {
        self.matching_sets.iter().map(|s| s.set.num_markers()).sum::<usize>()
            + 2 * self.residual_pairing.len()
    }

    pub fn num_groups(&self) -> usize {
        self.matching_sets.iter().map(|s| s.set.num_groups()).sum::<usize>()
            + self.residual_pairing.len()
    }
}

impl fmt::Display for DrawCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Finds a certificate with the catalog's configurations.
pub fn prove_draw(pos: &Position) -> Option<DrawCertificate> {
    prove_draw_with(pos, &ProveOptions::default())
}

/// Like [`find_cover`], but first looks for a certificate built from a
/// single configuration without any residual pairing. Configurations are
/// tried by descending reduction, ties going to the one with fewer
/// placements on this board.
pub fn prove_draw_with(pos: &Position, options: &ProveOptions) -> Option<DrawCertificate> {
    if pos.to_move() != Color::Black {
        return None;
    }
    let live = pos.live_black_groups();
    if let Some(cover) = pairing_only(pos, Color::Black, &live) {
        return Some(DrawCertificate::from_cover(pos, cover));
    }
    let embeddings = detect_for(pos, Color::Black, &options.templates, options.exec);
    let mut by_template: BTreeMap<TemplateName, Vec<Embedding>> = BTreeMap::new();
    for e in &embeddings {
        by_template.entry(e.template).or_default().push(e.clone());
    }
    let mut order: Vec<(TemplateName, Vec<Embedding>)> = by_template.into_iter().collect();
    order.sort_by_key(|(t, es)| {
        let reduction = ConfigTemplate::get(*t).metadata().reduction;
        let rank = options.templates.iter().position(|x| x == t);
        (std::cmp::Reverse(reduction), es.len(), rank)
    });
    let mut budget = options.node_budget;
    for (_, es) in &order {
        let found = Selector::new(pos, Color::Black, &live, es, &mut budget, false).run();
        if let Some(cover) = found {
            return Some(DrawCertificate::from_cover(pos, cover));
        }
    }
    mixed_cover(pos, Color::Black, &live, embeddings, options)
        .map(|c| DrawCertificate::from_cover(pos, c))
}

/// Re-checks a certificate from scratch.
pub fn check_certificate(cert: &DrawCertificate) -> ProofResult {
    let pos = &cert.position;
    let mut result = ProofResult::default();
    let other = |message: String| Reason::Other { message };
    if pos.to_move() != Color::Black {
        result.push("board", other("certificates assume Black to move".into()));
    }

    let mut marker_owner: BTreeMap<Cell, usize> = BTreeMap::new();
    let mut group_owner: BTreeMap<Vec<Cell>, String> = BTreeMap::new();
    for (i, cs) in cert.matching_sets.iter().enumerate() {
        let name = match cs.template_name {
            Some(t) => format!("matching set {i} ({t})"),
            None => format!("matching set {i}"),
        };
        for v in verify_matching_set(pos, &cs.set).violations {
            result.push(format!("{name}: {}", v.location), v.reason);
        }
        for &m in &cs.set.markers {
            if let Some(&j) = marker_owner.get(&m) {
                result.push(
                    name.clone(),
                    other(format!("independence violated: marker {m} also in matching set {j}")),
                );
            } else {
                marker_owner.insert(m, i);
            }
        }
        for g in &cs.set.groups {
            let mut key = g.clone();
            key.sort();
            if Group::from_cells(key.clone()).is_none_or(|grp| grp.len() != pos.spec().line_length()) {
                result.push(name.clone(), other(format!("{} is not a line of the board", <Cell as Node>::group_name(g))));
            }
            if let Some(prev) = group_owner.get(&key) {
                result.push(
                    name.clone(),
                    other(format!("independence violated: group {} also in {prev}", <Cell as Node>::group_name(g))),
                );
            } else {
                group_owner.insert(key, name.clone());
            }
        }
    }

    for v in verify_pairing(pos, &cert.residual_pairing) {
        result.push("residual pairing", other(v.to_string()));
    }
    for (g, (a, b)) in cert.residual_pairing.iter() {
        for c in [a, b] {
            if let Some(&j) = marker_owner.get(&c) {
                result.push(
                    "residual pairing",
                    other(format!("independence violated: pair cell {c} is a marker of matching set {j}")),
                );
            }
        }
        let key = g.cells().to_vec();
        if let Some(prev) = group_owner.get(&key) {
            result.push(
                "residual pairing",
                other(format!("independence violated: group {g} also in {prev}")),
            );
        } else {
            group_owner.insert(key, "residual pairing".into());
        }
    }

    for g in pos.live_black_groups() {
        if !group_owner.contains_key(g.cells()) {
            result.push("coverage", other(format!("live group {g} is not covered")));
        }
    }
    result
}
