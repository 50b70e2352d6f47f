//! Playing out a matching set as White's strategy.
//!
//! The responder answers a marker opening with its covering, then follows
//! the remainder (partner replies, or the nested set's own coverings). Any
//! other Black move gets a default reply: the lowest empty cell that is not
//! an active marker, or failing that a marker whose partner is still free,
//! or failing that any empty cell.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::{Arena, Covering, MatchingSet, Node, Remainder};
use crate::board::{Cell, CellState, Position};
use crate::pairing::partner_reply;
use crate::par::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("black move {0} is not an empty cell of the arena")]
    IllegalMove(String),
}

/// The cells a strategy game is played on, with their states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyBoard<C> {
    cells: BTreeMap<C, CellState>,
}

impl<C: Node> StrategyBoard<C> {
    pub fn new(arena: &dyn Arena<C>, cells: impl IntoIterator<Item = C>) -> Self {
        StrategyBoard {
            cells: cells.into_iter().map(|c| (c, arena.state(c))).collect(),
        }
    }

    pub fn state(&self, cell: C) -> Option<CellState> {
        self.cells.get(&cell).copied()
    }

    pub fn is_empty_cell(&self, cell: C) -> bool {
        self.state(cell) == Some(CellState::Empty)
    }

    pub fn empty_cells(&self) -> impl Iterator<Item = C> + '_ {
        self.cells
            .iter()
            .filter(|(_, s)| s.is_empty())
            .map(|(&c, _)| c)
    }

    fn set(&mut self, cell: C, state: CellState) {
        self.cells.insert(cell, state);
    }

    fn completes(&self, group: &[C]) -> bool {
        group.iter().all(|&c| self.state(c) == Some(CellState::Black))
    }
}

#[derive(Debug, Clone)]
enum Stage<C> {
    Opening {
        markers: Arc<BTreeSet<C>>,
        coverings: Arc<BTreeMap<C, Covering<C>>>,
    },
    Pairs(Arc<Vec<(C, C)>>),
}

impl<C: Node> Stage<C> {
    fn opening(set: &MatchingSet<C>) -> Self {
        let coverings = set
            .expanded_coverings()
            .into_iter()
            .map(|c| (c.black, c))
            .collect();
        Stage::Opening {
            markers: Arc::new(set.markers.clone()),
            coverings: Arc::new(coverings),
        }
    }

    fn is_active_marker(&self, cell: C) -> bool {
        match self {
            Stage::Opening { markers, .. } => markers.contains(&cell),
            Stage::Pairs(pairs) => pairs.iter().any(|&(a, b)| a == cell || b == cell),
        }
    }
}

/// White's side of the game driven by a matching set.
#[derive(Debug, Clone)]
pub struct Responder<C> {
    stage: Stage<C>,
}

impl<C: Node> Responder<C> {
    pub fn new(set: &MatchingSet<C>) -> Self {
        Responder {
            stage: Stage::opening(set),
        }
    }

    /// White's reply to `black_move`, which has already been placed on
    /// `board`. `None` only when the board is full.
    pub fn respond(&mut self, board: &StrategyBoard<C>, black_move: C) -> Option<C> {
        let planned = match &self.stage {
            Stage::Opening { coverings, .. } => match coverings.get(&black_move) {
                Some(cov) => {
                    let white = cov.white;
                    self.stage = match &cov.remainder {
                        Remainder::Pairs(pairs) => Stage::Pairs(Arc::new(pairs.clone())),
                        Remainder::MatchingSet(nested) => Stage::opening(nested),
                    };
                    Some(white)
                }
                None => None,
            },
            Stage::Pairs(pairs) => {
                partner_reply(pairs, black_move, |c| board.is_empty_cell(c))
            }
        };
        match planned {
            Some(cell) if board.is_empty_cell(cell) => Some(cell),
            _ => self.default_move(board),
        }
    }

    fn default_move(&self, board: &StrategyBoard<C>) -> Option<C> {
        if let Some(c) = board.empty_cells().find(|&c| !self.stage.is_active_marker(c)) {
            return Some(c);
        }
        let forced = match &self.stage {
            Stage::Opening { .. } => None,
            Stage::Pairs(pairs) => board.empty_cells().find(|&c| {
                pairs.iter().any(|&(a, b)| {
                    (a == c && board.is_empty_cell(b)) || (b == c && board.is_empty_cell(a))
                })
            }),
        };
        forced.or_else(|| board.empty_cells().next())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOutcome {
    CompletedByBlack,
    BlockedByWhite,
    Open,
}

/// One played-out game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace<C> {
    /// Black's moves, each with White's reply.
    pub moves: Vec<(C, Option<C>)>,
    pub outcomes: Vec<(Vec<C>, GroupOutcome)>,
}

impl<C: Node> GameTrace<C> {
    pub fn black_won(&self) -> bool {
        self.outcomes
            .iter()
            .any(|(_, o)| *o == GroupOutcome::CompletedByBlack)
    }
}

/// Plays `set` as White against `policy` on the set's universe of cells in
/// `pos`. The game ends when Black completes a group of the set, the
/// universe fills up, or the policy returns `None`.
pub fn execute_strategy(
    pos: &Position,
    set: &MatchingSet<Cell>,
    policy: impl FnMut(&StrategyBoard<Cell>) -> Option<Cell>,
) -> Result<GameTrace<Cell>, StrategyError> {
    execute_on(StrategyBoard::new(pos, set.universe()), set, policy)
}

pub fn execute_on<C: Node>(
    mut board: StrategyBoard<C>,
    set: &MatchingSet<C>,
    mut policy: impl FnMut(&StrategyBoard<C>) -> Option<C>,
) -> Result<GameTrace<C>, StrategyError> {
    let mut responder = Responder::new(set);
    let mut moves = Vec::new();
    while board.empty_cells().next().is_some() {
        let Some(b) = policy(&board) else { break };
        if !board.is_empty_cell(b) {
            return Err(StrategyError::IllegalMove(b.to_string()));
        }
        board.set(b, CellState::Black);
        if set.groups.iter().any(|g| board.completes(g)) {
            moves.push((b, None));
            break;
        }
        let w = responder.respond(&board, b);
        if let Some(w) = w {
            board.set(w, CellState::White);
        }
        moves.push((b, w));
    }
    let outcomes = set
        .groups
        .iter()
        .map(|g| {
            let outcome = if board.completes(g) {
                GroupOutcome::CompletedByBlack
            } else if g.iter().any(|&c| board.state(c) == Some(CellState::White)) {
                GroupOutcome::BlockedByWhite
            } else {
                GroupOutcome::Open
            };
            (g.clone(), outcome)
        })
        .collect();
    Ok(GameTrace { moves, outcomes })
}

/// Result of trying every Black move sequence against the strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryReport<C> {
    /// Number of complete games explored.
    pub games: u64,
    pub black_wins: u64,
    /// Move sequence (alternating Black, White) of the first Black win found.
    pub counterexample: Option<Vec<C>>,
}

impl<C> AdversaryReport<C> {
    pub fn is_sound(&self) -> bool {
        self.black_wins == 0
    }
}

/// Exhaustive search over Black's moves within `board`, with White playing
/// `set`. Top-level branches are explored according to `exec`.
pub fn exhaustive_adversary<C: Node>(
    board: &StrategyBoard<C>,
    set: &MatchingSet<C>,
    exec: Exec,
) -> AdversaryReport<C> {
    let first: Vec<C> = board.empty_cells().collect();
    let responder = Responder::new(set);
    if first.is_empty() {
        return AdversaryReport {
            games: 1,
            black_wins: 0,
            counterexample: None,
        };
    }
    let branches = par::map(exec, &first, |&b| {
        let mut report = AdversaryReport {
            games: 0,
            black_wins: 0,
            counterexample: None,
        };
        let mut path = Vec::new();
        play_black(board.clone(), responder.clone(), set, b, &mut path, &mut report);
        report
    });
    let mut total = AdversaryReport {
        games: 0,
        black_wins: 0,
        counterexample: None,
    };
    for r in branches {
        total.games += r.games;
        total.black_wins += r.black_wins;
        if total.counterexample.is_none() {
            total.counterexample = r.counterexample;
        }
    }
    total
}

fn play_black<C: Node>(
    mut board: StrategyBoard<C>,
    mut responder: Responder<C>,
    set: &MatchingSet<C>,
    b: C,
    path: &mut Vec<C>,
    report: &mut AdversaryReport<C>,
) {
    let depth = path.len();
    board.set(b, CellState::Black);
    path.push(b);
    if set.groups.iter().any(|g| board.completes(g)) {
        report.games += 1;
        report.black_wins += 1;
        if report.counterexample.is_none() {
            report.counterexample = Some(path.clone());
        }
        path.truncate(depth);
        return;
    }
    if let Some(w) = responder.respond(&board, b) {
        board.set(w, CellState::White);
        path.push(w);
    }
    let next: Vec<C> = board.empty_cells().collect();
    if next.is_empty() {
        report.games += 1;
    }
    for nb in next {
        play_black(board.clone(), responder.clone(), set, nb, path, report);
    }
    path.truncate(depth);
}
