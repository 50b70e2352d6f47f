//! Finding configurations on a board.
//!
//! Abstract groups are assigned to distinct live groups one at a time. When
//! two abstract groups share a label, their concrete groups must meet in
//! exactly one empty cell, which becomes that label's cell. Labels that
//! belong to a single group are placed afterwards on the remaining empty
//! cells of their group. Concrete groups may contain more bound cells than
//! their abstract counterpart; this only helps the defender.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::catalog::{ConfigTemplate, TemplateName};
use crate::board::{Cell, CellState, Color, Group, Position};
use crate::par::{self, Exec};
use crate::setmatch::{Label, MatchingSet};

/// One placement of a configuration on a board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub template: TemplateName,
    pub binding: BTreeMap<Label, Cell>,
    /// Concrete group for each abstract group, in template order.
    pub groups: Vec<Group>,
}

impl Embedding {
    pub fn markers(&self) -> BTreeSet<Cell> {
        self.binding.values().copied().collect()
    }

    pub fn reduction(&self) -> isize {
        2 * self.groups.len() as isize - self.binding.len() as isize
    }

    /// The template's matching set with labels replaced by their cells and
    /// each abstract group by its full concrete group.
    pub fn matching_set(&self, template: &ConfigTemplate) -> MatchingSet<Cell> {
        let mut set = template.set.map_nodes(&|l: Label| self.binding[&l]);
        set.groups = self.groups.iter().map(|g| g.cells().to_vec()).collect();
        set
    }

    fn key(&self) -> (Vec<Cell>, Vec<&Group>) {
        (self.binding.values().copied().collect(), self.groups.iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Meet {
    Disjoint,
    One(Cell),
    Overlap,
}

fn meet(a: &Group, b: &Group) -> Meet {
    let mut shared = a.cells().iter().filter(|&&c| b.contains(c));
    match (shared.next(), shared.next()) {
        (None, _) => Meet::Disjoint,
        (Some(&c), None) => Meet::One(c),
        _ => Meet::Overlap,
    }
}

/// Template data prepared for the search.
struct Plan {
    template: ConfigTemplate,
    /// Abstract groups in search order (each connected to an earlier one
    /// where possible).
    order: Vec<usize>,
    /// For each abstract group, the labels it shares with other groups,
    /// as `(other group, label)`.
    shared: Vec<Vec<(usize, Label)>>,
    /// Labels belonging to exactly one group, per group.
    edges: Vec<Vec<Label>>,
    /// Automorphisms as (label map, group index map), identity excluded.
    automorphisms: Vec<(BTreeMap<Label, Label>, Vec<usize>)>,
}

impl Plan {
    fn new(template: ConfigTemplate) -> Plan {
        let groups = template.groups();
        let g = groups.len();
        let mut shared = vec![Vec::new(); g];
        for i in 0..g {
            for j in 0..g {
                if i != j {
                    for &l in &groups[i] {
                        if groups[j].contains(&l) {
                            shared[i].push((j, l));
                        }
                    }
                }
            }
        }
        let mut order = Vec::with_capacity(g);
        let mut placed = vec![false; g];
        while order.len() < g {
            let start = (0..g).find(|&i| !placed[i]).unwrap_or(0);
            placed[start] = true;
            order.push(start);
            let mut head = order.len() - 1;
            while head < order.len() {
                let cur = order[head];
                head += 1;
                for &(j, _) in &shared[cur] {
                    if !placed[j] {
                        placed[j] = true;
                        order.push(j);
                    }
                }
            }
        }
        let edges = groups
            .iter()
            .map(|grp| {
                grp.iter()
                    .copied()
                    .filter(|l| groups.iter().filter(|h| h.contains(l)).count() == 1)
                    .collect()
            })
            .collect();
        let automorphisms = automorphisms(&template);
        Plan {
            template,
            order,
            shared,
            edges,
            automorphisms,
        }
    }
}

/// Plans are built once per template and shared.
fn plan(name: TemplateName) -> Arc<Plan> {
    static PLANS: OnceLock<Mutex<HashMap<TemplateName, Arc<Plan>>>> = OnceLock::new();
    let cache = PLANS.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("plan cache").get(&name) {
        return Arc::clone(p);
    }
    let p = Arc::new(Plan::new(ConfigTemplate::get(name)));
    cache
        .lock()
        .expect("plan cache")
        .entry(name)
        .or_insert(p)
        .clone()
}

/// Closure of the template's symmetry generators, restricted to
/// permutations that map the group set onto itself.
fn automorphisms(template: &ConfigTemplate) -> Vec<(BTreeMap<Label, Label>, Vec<usize>)> {
    let labels: Vec<Label> = template.labels().iter().copied().collect();
    let as_map = |f: &dyn Fn(Label) -> Label| -> BTreeMap<Label, Label> {
        labels.iter().map(|&l| (l, f(l))).collect()
    };
    let identity = as_map(&|l| l);
    let gens: Vec<BTreeMap<Label, Label>> = template
        .set
        .symmetry
        .iter()
        .map(|p| as_map(&|l| p.apply(l)))
        .collect();
    let mut seen: BTreeSet<Vec<Label>> = BTreeSet::new();
    seen.insert(identity.values().copied().collect());
    let mut all = vec![identity];
    let mut i = 0;
    while i < all.len() {
        for g in &gens {
            let composed: BTreeMap<Label, Label> =
                all[i].iter().map(|(&l, &m)| (l, g[&m])).collect();
            if seen.insert(composed.values().copied().collect()) {
                all.push(composed);
            }
        }
        i += 1;
    }
    let group_sets: Vec<BTreeSet<Label>> = template
        .groups()
        .iter()
        .map(|g| g.iter().copied().collect())
        .collect();
    all.into_iter()
        .skip(1)
        .filter_map(|sigma| {
            let index: Option<Vec<usize>> = group_sets
                .iter()
                .map(|g| {
                    let image: BTreeSet<Label> = g.iter().map(|l| sigma[l]).collect();
                    group_sets.iter().position(|h| *h == image)
                })
                .collect();
            index.map(|idx| (sigma, idx))
        })
        .collect()
}

struct Search<'a> {
    plan: &'a Plan,
    live: &'a [Group],
    meets: &'a [Vec<Meet>],
    empty: &'a dyn Fn(Cell) -> bool,
}

#[derive(Clone)]
struct State {
    chosen: Vec<Option<usize>>,
    binding: BTreeMap<Label, Cell>,
    used_cells: BTreeSet<Cell>,
}

impl Search<'_> {
    fn run_from(&self, first: usize, out: &mut Vec<Embedding>) {
        let g = self.plan.template.groups().len();
        let mut state = State {
            chosen: vec![None; g],
            binding: BTreeMap::new(),
            used_cells: BTreeSet::new(),
        };
        if self.try_assign(0, first, &mut state).is_some() {
            self.assign(1, &mut state, out);
        }
    }

    /// Assigns live group `li` to the abstract group at `step`; returns the
    /// labels newly bound so they can be undone.
    fn try_assign(&self, step: usize, li: usize, state: &mut State) -> Option<Vec<Label>> {
        let gi = self.plan.order[step];
        if state.chosen.contains(&Some(li)) {
            return None;
        }
        for lj in state.chosen.iter().flatten() {
            if self.meets[li][*lj] == Meet::Overlap {
                return None;
            }
        }
        let mut bound = Vec::new();
        for &(gj, label) in &self.plan.shared[gi] {
            let Some(lj) = state.chosen[gj] else { continue };
            let ok = match self.meets[li][lj] {
                Meet::One(cell) if (self.empty)(cell) => match state.binding.get(&label) {
                    Some(&c) => c == cell,
                    None if state.used_cells.contains(&cell) => false,
                    None => {
                        state.binding.insert(label, cell);
                        state.used_cells.insert(cell);
                        bound.push(label);
                        true
                    }
                },
                _ => false,
            };
            if !ok {
                undo(state, &bound);
                return None;
            }
        }
        state.chosen[gi] = Some(li);
        Some(bound)
    }

    fn assign(&self, step: usize, state: &mut State, out: &mut Vec<Embedding>) {
        if step == self.plan.order.len() {
            self.place_edges(0, state, out);
            return;
        }
        let gi = self.plan.order[step];
        for li in 0..self.live.len() {
            if let Some(bound) = self.try_assign(step, li, state) {
                self.assign(step + 1, state, out);
                state.chosen[gi] = None;
                undo(state, &bound);
            }
        }
    }

    fn place_edges(&self, gi: usize, state: &mut State, out: &mut Vec<Embedding>) {
        if gi == self.plan.edges.len() {
            self.emit(state, out);
            return;
        }
        let group = &self.live[state.chosen[gi].expect("all groups assigned")];
        let labels = &self.plan.edges[gi];
        self.place_labels(gi, group, labels, state, out);
    }

    fn place_labels(
        &self,
        gi: usize,
        group: &Group,
        labels: &[Label],
        state: &mut State,
        out: &mut Vec<Embedding>,
    ) {
        let Some((&label, rest)) = labels.split_first() else {
            self.place_edges(gi + 1, state, out);
            return;
        };
        for &cell in group.cells() {
            if !(self.empty)(cell) || state.used_cells.contains(&cell) {
                continue;
            }
            state.binding.insert(label, cell);
            state.used_cells.insert(cell);
            self.place_labels(gi, group, rest, state, out);
            undo(state, &[label]);
        }
    }

    fn emit(&self, state: &State, out: &mut Vec<Embedding>) {
        let e = Embedding {
            template: self.plan.template.name,
            binding: state.binding.clone(),
            groups: state
                .chosen
                .iter()
                .map(|c| self.live[c.expect("assigned")].clone())
                .collect(),
        };
        let key = e.key();
        let canonical = self.plan.automorphisms.iter().all(|(sigma, gmap)| {
            let cells: Vec<Cell> = e.binding.keys().map(|l| e.binding[&sigma[l]]).collect();
            let groups: Vec<&Group> = gmap.iter().map(|&j| &e.groups[j]).collect();
            key <= (cells, groups)
        });
        if canonical {
            out.push(e);
        }
    }
}

fn undo(state: &mut State, labels: &[Label]) {
    for l in labels {
        if let Some(c) = state.binding.remove(l) {
            state.used_cells.remove(&c);
        }
    }
}

/// All embeddings of `templates` for `attacker`, one per symmetry orbit.
/// Markers must be empty and groups free of the defender's stones.
pub fn detect_for(
    pos: &Position,
    attacker: Color,
    templates: &[TemplateName],
    exec: Exec,
) -> Vec<Embedding> {
    let live = pos.live_groups(attacker);
    let meets: Vec<Vec<Meet>> = live
        .iter()
        .map(|a| live.iter().map(|b| meet(a, b)).collect())
        .collect();
    let empty = |c: Cell| pos.get(c) == CellState::Empty;
    let plans: Vec<Arc<Plan>> = templates.iter().map(|&t| plan(t)).collect();
    let mut jobs = Vec::new();
    for (pi, plan) in plans.iter().enumerate() {
        if plan.template.groups().len() <= live.len() {
            jobs.extend((0..live.len()).map(|li| (pi, li)));
        }
    }
    par::map(exec, &jobs, |&(pi, first)| {
        let search = Search {
            plan: &plans[pi],
            live: &live,
            meets: &meets,
            empty: &empty,
        };
        let mut out = Vec::new();
        search.run_from(first, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Embeddings for Black, the side to move in the positions we prove.
pub fn detect(pos: &Position, templates: &[TemplateName]) -> Vec<Embedding> {
    detect_for(pos, Color::Black, templates, Exec::Parallel)
}
