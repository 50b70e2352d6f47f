//! Exhaustive game solver: fail-soft alpha-beta over bitboards with a
//! transposition table, optionally cutting the search with draw proofs.
//!
//! Every call of the search function counts as one examined node, the root
//! included. A move that completes a line is scored at its parent without
//! visiting the child.

mod report;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardSpec, CellState, Color, Position};
use crate::configs::{find_cover, ProveOptions};
use crate::pairing::find_pairing;
use crate::par::Exec;

pub use report::{verify_draw_claims, Claim, ClaimRow, ClaimsError, ClaimsReport};

/// Game value with perfect play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    BlackWin,
    Draw,
    WhiteWin,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::BlackWin => "BlackWin",
            Verdict::Draw => "Draw",
            Verdict::WhiteWin => "WhiteWin",
        })
    }
}

/// Which draw proofs may cut the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pruning {
    None,
    HjPairing,
    SetMatching,
}

impl std::fmt::Display for Pruning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pruning::None => "none",
            Pruning::HjPairing => "hj",
            Pruning::SetMatching => "setmatch",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneEvents {
    /// Nodes where a pairing showed a side cannot win.
    pub hj: u64,
    /// Nodes where configurations were needed for that proof.
    pub setmatch: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_examined: u64,
    pub table_hits: u64,
    pub prune_events: PruneEvents,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{empty} empty cells exceed the search limit of {limit}")]
    TooManyEmpty { empty: usize, limit: usize },
    #[error("boards with more than 128 cells are not supported")]
    BoardTooLarge,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub pruning: Pruning,
    /// Refuse positions with more empty cells than this.
    pub max_empty: usize,
    pub use_table: bool,
    /// Configuration search settings used with `Pruning::SetMatching`.
    pub prove: ProveOptions,
}

impl SolveOptions {
    pub fn new(pruning: Pruning) -> Self {
        SolveOptions {
            pruning,
            max_empty: 26,
            use_table: true,
            prove: ProveOptions {
                exec: Exec::Sequential,
                node_budget: 2_000,
                ..ProveOptions::default()
            },
        }
    }
}

pub fn solve(pos: &Position, pruning: Pruning) -> Result<(Verdict, SearchStats), SolveError> {
    solve_with(pos, &SolveOptions::new(pruning))
}

pub fn solve_with(
    pos: &Position,
    options: &SolveOptions,
) -> Result<(Verdict, SearchStats), SolveError> {
    let spec = pos.spec();
    if spec.num_cells() > 128 {
        return Err(SolveError::BoardTooLarge);
    }
    let empty = pos.empty_cells().count();
    if empty > options.max_empty {
        return Err(SolveError::TooManyEmpty {
            empty,
            limit: options.max_empty,
        });
    }
    let mut search = Search::new(pos, options);
    let verdict = match (search.has_line(Color::Black), search.has_line(Color::White)) {
        (true, _) => {
            search.stats.nodes_examined = 1;
            Verdict::BlackWin
        }
        (_, true) => {
            search.stats.nodes_examined = 1;
            Verdict::WhiteWin
        }
        _ => {
            let v = search.negamax(-2, 2);
            let black_view = if pos.to_move() == Color::Black { v } else { -v };
            match black_view {
                1 => Verdict::BlackWin,
                0 => Verdict::Draw,
                _ => Verdict::WhiteWin,
            }
        }
    };
    Ok((verdict, search.stats))
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    black: u128,
    white: u128,
    lo: i8,
    hi: i8,
}

struct Search<'a> {
    spec: BoardSpec,
    options: &'a SolveOptions,
    black: u128,
    white: u128,
    to_move: Color,
    hash: u64,
    keys: Vec<[u64; 2]>,
    side_key: u64,
    /// For each cell, the masks of the lines through it.
    lines_through: Vec<Vec<u128>>,
    lines: Vec<u128>,
    order: Vec<usize>,
    table: HashMap<u64, Entry>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(pos: &Position, options: &'a SolveOptions) -> Self {
        let spec = pos.spec();
        let cells = spec.num_cells();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x006d_6e6b_6472_6177);
        let keys: Vec<[u64; 2]> = (0..cells).map(|_| [rng.random(), rng.random()]).collect();
        let side_key = rng.random();
        let lines: Vec<u128> = spec
            .groups()
            .iter()
            .map(|g| g.cells().iter().fold(0u128, |m, &c| m | 1 << spec.index(c)))
            .collect();
        let lines_through = (0..cells)
            .map(|i| lines.iter().copied().filter(|l| l >> i & 1 == 1).collect())
            .collect();
        let (m, n) = (spec.columns() as i64, spec.rows() as i64);
        let mut order: Vec<usize> = (0..cells).collect();
        order.sort_by_key(|&i| {
            let (col, row) = ((i as i64) % m, (i as i64) / m);
            let (dx, dy) = (2 * col - (m - 1), 2 * row - (n - 1));
            (dx * dx + dy * dy, i)
        });
        let mut s = Search {
            spec,
            options,
            black: 0,
            white: 0,
            to_move: pos.to_move(),
            hash: 0,
            keys,
            side_key,
            lines_through,
            lines,
            order,
            table: HashMap::new(),
            stats: SearchStats::default(),
        };
        for (i, st) in pos.states().iter().enumerate() {
            match st {
                CellState::Black => s.place(i, Color::Black),
                CellState::White => s.place(i, Color::White),
                CellState::Empty => {}
            }
        }
        if s.to_move == Color::White {
            s.hash ^= s.side_key;
        }
        s
    }

    fn place(&mut self, i: usize, color: Color) {
        match color {
            Color::Black => self.black ^= 1 << i,
            Color::White => self.white ^= 1 << i,
        }
        self.hash ^= self.keys[i][color as usize];
    }

    fn stones(&self, color: Color) -> u128 {
        match color {
            Color::Black => self.black,
            Color::White => self.white,
        }
    }

    fn has_line(&self, color: Color) -> bool {
        let s = self.stones(color);
        self.lines.iter().any(|&l| l & !s == 0)
    }

    fn completes(&self, i: usize, color: Color) -> bool {
        let s = self.stones(color) | 1 << i;
        self.lines_through[i].iter().any(|&l| l & !s == 0)
    }

    fn position(&self) -> Position {
        let states = (0..self.spec.num_cells())
            .map(|i| {
                if self.black >> i & 1 == 1 {
                    CellState::Black
                } else if self.white >> i & 1 == 1 {
                    CellState::White
                } else {
                    CellState::Empty
                }
            })
            .collect();
        Position::from_cells(self.spec, states, self.to_move).expect("search keeps positions legal")
    }

    /// Can `attacker` be shown unable to complete a line from here?
    fn cannot_win(&mut self, pos: &Position, attacker: Color) -> bool {
        // Any cover needs two empty cells in every live group.
        let blockers = self.stones(attacker.opponent());
        let empty = !(self.black | self.white);
        if self
            .lines
            .iter()
            .any(|&l| l & blockers == 0 && (l & empty).count_ones() < 2)
        {
            return false;
        }
        match self.options.pruning {
            Pruning::None => false,
            Pruning::HjPairing => {
                let live = pos.live_groups(attacker);
                let found = matches!(
                    find_pairing(pos, &live, attacker, &Default::default()),
                    Ok(Some(_))
                );
                if found {
                    self.stats.prune_events.hj += 1;
                }
                found
            }
            Pruning::SetMatching => match find_cover(pos, attacker, &self.options.prove) {
                Some(cover) => {
                    if cover.embeddings.is_empty() {
                        self.stats.prune_events.hj += 1;
                    } else {
                        self.stats.prune_events.setmatch += 1;
                    }
                    true
                }
                None => false,
            },
        }
    }

    /// Value for the side to move: 1 win, 0 draw, -1 loss.
    fn negamax(&mut self, mut alpha: i8, mut beta: i8) -> i8 {
        self.stats.nodes_examined += 1;
        let occupied = self.black | self.white;
        let full = self.spec.num_cells();
        if occupied.count_ones() as usize == full {
            return 0;
        }
        let key = self.hash;
        let (mut lo, mut hi) = (-1i8, 1i8);
        if self.options.use_table {
            if let Some(e) = self.table.get(&key) {
                if e.black == self.black && e.white == self.white {
                    self.stats.table_hits += 1;
                    lo = e.lo;
                    hi = e.hi;
                    if lo == hi || lo >= beta || hi <= alpha {
                        return if hi <= alpha { hi } else { lo };
                    }
                }
            }
        }
        if self.options.pruning != Pruning::None && self.to_move == Color::Black && (lo < 0 || hi > 0) {
            let pos = self.position();
            if hi > 0 && self.cannot_win(&pos, Color::Black) {
                hi = 0;
            }
            if lo < 0 && self.cannot_win(&pos, Color::White) {
                lo = 0;
            }
            if lo == hi || lo >= beta || hi <= alpha {
                let v = if hi <= alpha { hi } else { lo };
                self.store(key, lo, hi);
                return v;
            }
        }
        let alpha0 = alpha.max(lo);
        alpha = alpha0;
        beta = beta.min(hi);
        let mover = self.to_move;
        let mut best = -2i8;
        for idx in 0..self.order.len() {
            let i = self.order[idx];
            if occupied >> i & 1 == 1 {
                continue;
            }
            let v = if self.completes(i, mover) {
                1
            } else {
                self.place(i, mover);
                self.hash ^= self.side_key;
                self.to_move = mover.opponent();
                let v = -self.negamax(-beta, -alpha);
                self.to_move = mover;
                self.hash ^= self.side_key;
                self.place(i, mover);
                v
            };
            if v > best {
                best = v;
            }
            if best > alpha {
                alpha = best;
            }
            if alpha >= beta || best >= hi {
                break;
            }
        }
        let best = best.clamp(lo, hi);
        let (new_lo, new_hi) = if best <= alpha0 {
            (lo, best)
        } else if best >= beta {
            (best, hi)
        } else {
            (best, best)
        };
        self.store(key, new_lo, new_hi);
        best
    }

    fn store(&mut self, key: u64, lo: i8, hi: i8) {
        if self.options.use_table {
            self.table.insert(
                key,
                Entry {
                    black: self.black,
                    white: self.white,
                    lo,
                    hi,
                },
            );
        }
    }
}
