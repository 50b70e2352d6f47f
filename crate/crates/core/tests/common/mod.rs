//! Helpers shared by the integration tests: random positions and small
//! brute-force oracles written without the library's search code.

#![allow(dead_code)]

use std::collections::HashMap;

use mnk_draw::solver::Verdict;
use mnk_draw::{BoardSpec, Cell, CellState, Color, Group, Position};
use rand::Rng;

/// A position reached by `moves` random legal moves in which nobody has a
/// line yet, or `None` if the random game ended early.
pub fn random_game(rng: &mut impl Rng, spec: BoardSpec, moves: usize) -> Option<Position> {
    let mut pos = Position::empty(spec);
    for _ in 0..moves {
        let empty: Vec<Cell> = pos.empty_cells().collect();
        if empty.is_empty() {
            return None;
        }
        pos = pos.apply_move(empty[rng.random_range(0..empty.len())]).ok()?;
        if pos.has_line(Color::Black) || pos.has_line(Color::White) {
            return None;
        }
    }
    Some(pos)
}

/// Keeps drawing until a random game of the requested length survives.
pub fn random_position(rng: &mut impl Rng, spec: BoardSpec, moves: usize) -> Position {
    loop {
        if let Some(p) = random_game(rng, spec, moves) {
            return p;
        }
    }
}

/// Memoized minimax on raw cell vectors, independent of the solver.
pub struct Minimax {
    spec: BoardSpec,
    lines: Vec<Vec<usize>>,
    memo: HashMap<(Vec<u8>, bool), i8>,
}

impl Minimax {
    pub fn new(spec: BoardSpec) -> Self {
        let lines = spec
            .groups()
            .iter()
            .map(|g| g.cells().iter().map(|&c| spec.index(c)).collect())
            .collect();
        Minimax {
            spec,
            lines,
            memo: HashMap::new(),
        }
    }

    pub fn verdict(&mut self, pos: &Position) -> Verdict {
        let cells: Vec<u8> = pos
            .states()
            .iter()
            .map(|s| match s {
                CellState::Empty => 0,
                CellState::Black => 1,
                CellState::White => 2,
            })
            .collect();
        match self.value(cells, pos.to_move() == Color::Black) {
            1 => Verdict::BlackWin,
            0 => Verdict::Draw,
            _ => Verdict::WhiteWin,
        }
    }

    fn owns_line(&self, cells: &[u8], who: u8) -> bool {
        self.lines.iter().any(|l| l.iter().all(|&i| cells[i] == who))
    }

    /// Value from Black's side.
    fn value(&mut self, cells: Vec<u8>, black_to_move: bool) -> i8 {
        if self.owns_line(&cells, 1) {
            return 1;
        }
        if self.owns_line(&cells, 2) {
            return -1;
        }
        if let Some(&v) = self.memo.get(&(cells.clone(), black_to_move)) {
            return v;
        }
        let mut best: Option<i8> = None;
        for i in 0..self.spec.num_cells() {
            if cells[i] != 0 {
                continue;
            }
            let mut next = cells.clone();
            next[i] = if black_to_move { 1 } else { 2 };
            let v = self.value(next, !black_to_move);
            best = Some(match best {
                None => v,
                Some(b) if black_to_move => b.max(v),
                Some(b) => b.min(v),
            });
        }
        let v = best.unwrap_or(0);
        self.memo.insert((cells, black_to_move), v);
        v
    }
}

/// Exhaustive search for two distinct empty cells per group, no cell
/// shared between groups.
pub fn brute_force_pairing_exists(pos: &Position, groups: &[Group]) -> bool {
    fn go(lists: &[Vec<Cell>], used: &mut Vec<Cell>) -> bool {
        let Some((first, rest)) = lists.split_first() else {
            return true;
        };
        for (i, &a) in first.iter().enumerate() {
            for &b in &first[i + 1..] {
                if used.contains(&a) || used.contains(&b) {
                    continue;
                }
                used.push(a);
                used.push(b);
                let ok = go(rest, used);
                used.truncate(used.len() - 2);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let lists: Vec<Vec<Cell>> = groups
        .iter()
        .map(|g| g.cells().iter().copied().filter(|&c| pos.get(c).is_empty()).collect())
        .collect();
    go(&lists, &mut Vec::new())
}

/// Maker-breaker on bit masks: can the player to move claim a whole edge?
pub fn maker_wins(edges: &[u64], free: u64) -> bool {
    fn go(edges: &[u64], maker: u64, breaker: u64, free: u64, memo: &mut HashMap<(u64, u64), bool>) -> bool {
        if let Some(&v) = memo.get(&(maker, breaker)) {
            return v;
        }
        let live: Vec<u64> = edges.iter().copied().filter(|&e| e & breaker == 0).collect();
        let open = free & !maker & !breaker;
        let mut win = false;
        let mut bits = open;
        while bits != 0 && !win {
            let m = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let mk = maker | m;
            if live.iter().any(|&e| e & !mk == 0) {
                win = true;
                break;
            }
            let mut replies = open & !m;
            if replies == 0 {
                continue;
            }
            let mut every_reply_loses = true;
            while replies != 0 {
                let r = replies & replies.wrapping_neg();
                replies &= replies - 1;
                if !go(&live, mk, breaker | r, free, memo) {
                    every_reply_loses = false;
                    break;
                }
            }
            win = every_reply_loses;
        }
        memo.insert((maker, breaker), win);
        win
    }
    go(edges, 0, 0, free, &mut HashMap::new())
}
