//! Board geometry, positions and winning lines.
//!
//! Columns are lettered `a, b, c, …` from left to right and rows are
//! numbered `1..=n` from the bottom up, so `a1` is the lower-left corner.
//! Internally both coordinates are 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported number of columns (one letter per column).
pub const MAX_COLUMNS: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("invalid board {m}x{n} with k={k}")]
    InvalidSpec { m: usize, n: usize, k: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("illegal stone counts: {black} black and {white} white with {to_move} to move")]
    Legality {
        black: usize,
        white: usize,
        to_move: Color,
    },
    #[error("cell {0} is already occupied")]
    Occupied(Cell),
    #[error("cell {0} is outside the board")]
    OutOfBounds(Cell),
    #[error("malformed cell name {0:?}")]
    BadCellName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Black => f.write_str("Black"),
            Color::White => f.write_str("White"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CellState {
    #[default]
    Empty,
    Black,
    White,
}

impl CellState {
    pub fn is_empty(self) -> bool {
        self == CellState::Empty
    }

    fn symbol(self) -> char {
        match self {
            CellState::Empty => '.',
            CellState::Black => 'X',
            CellState::White => 'O',
        }
    }
}

impl From<Color> for CellState {
    fn from(color: Color) -> Self {
        match color {
            Color::Black => CellState::Black,
            Color::White => CellState::White,
        }
    }
}

/// Dimensions of an mnk-game: `m` columns, `n` rows, lines of length `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoardSpec {
    m: usize,
    n: usize,
    k: usize,
}

impl BoardSpec {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self, BoardError> {
        if m == 0 || n == 0 || k < 2 || m > MAX_COLUMNS || n > u16::MAX as usize {
            return Err(BoardError::InvalidSpec { m, n, k });
        }
        Ok(BoardSpec { m, n, k })
    }

    pub fn columns(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn line_length(&self) -> usize {
        self.k
    }

    pub fn num_cells(&self) -> usize {
        self.m * self.n
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (cell.col as usize) < self.m && (cell.row as usize) < self.n
    }

    /// Row-major index of an in-bounds cell.
    pub fn index(&self, cell: Cell) -> usize {
        cell.row as usize * self.m + cell.col as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index % self.m, index / self.m)
    }

    /// All cells in canonical (row-major) order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.num_cells()).map(|i| self.cell_at(i))
    }

    /// Number of groups predicted by the closed-form window count.
    pub fn group_count(&self) -> usize {
        let (m, n, k) = (self.m, self.n, self.k);
        let horizontal = (m + 1).saturating_sub(k) * n;
        let vertical = m * (n + 1).saturating_sub(k);
        let diagonal = (m + 1).saturating_sub(k) * (n + 1).saturating_sub(k);
        horizontal + vertical + 2 * diagonal
    }

    /// Every winning line of the board, each exactly once, sorted by cells.
    pub fn groups(&self) -> Vec<Group> {
        enumerate_groups(*self)
    }
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} k={}", self.m, self.n, self.k)
    }
}

/// A board square. Ordering is row-major: lower rows first, then columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    row: u16,
    col: u16,
}

impl Cell {
    pub fn new(col: usize, row: usize) -> Self {
        Cell {
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    fn offset(self, dcol: isize, drow: isize, steps: usize) -> Option<Cell> {
        let col = self.col as isize + dcol * steps as isize;
        let row = self.row as isize + drow * steps as isize;
        (col >= 0 && row >= 0).then(|| Cell::new(col as usize, row as usize))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = (b'a' + self.col as u8) as char;
        write!(f, "{}{}", letter, self.row + 1)
    }
}

impl FromStr for Cell {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoardError::BadCellName(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        if !letter.is_ascii_lowercase() {
            return Err(bad());
        }
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        if rank == 0 || rank > u16::MAX as usize {
            return Err(bad());
        }
        Ok(Cell::new((letter as u8 - b'a') as usize, rank - 1))
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A possible winning line: `k` consecutive collinear cells.
///
/// Cells are stored in ascending cell order, which for every line direction
/// is the order of walking from its lowest endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    cells: Vec<Cell>,
}

impl Group {
    /// Builds a group from collinear consecutive cells given in any order.
    pub fn from_cells(mut cells: Vec<Cell>) -> Option<Group> {
        cells.sort();
        cells.dedup();
        if cells.len() < 2 {
            return None;
        }
        let dcol = cells[1].col() as isize - cells[0].col() as isize;
        let drow = cells[1].row() as isize - cells[0].row() as isize;
        let unit = matches!((dcol, drow), (1, 0) | (0, 1) | (1, 1) | (-1, 1));
        let consecutive = cells
            .iter()
            .enumerate()
            .all(|(i, &c)| cells[0].offset(dcol, drow, i) == Some(c));
        (unit && consecutive).then_some(Group { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn first(&self) -> Cell {
        self.cells[0]
    }

    pub fn last(&self) -> Cell {
        self.cells[self.cells.len() - 1]
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first(), self.last())
    }
}

const DIRECTIONS: [(isize, isize); 4] = [(1, 0), (0, 1), (1, 1), (-1, 1)];

pub fn enumerate_groups(spec: BoardSpec) -> Vec<Group> {
    let mut groups = Vec::with_capacity(spec.group_count());
    for start in spec.cells() {
        for &(dcol, drow) in &DIRECTIONS {
            let cells: Option<Vec<Cell>> = (0..spec.k)
                .map(|i| start.offset(dcol, drow, i).filter(|&c| spec.contains(c)))
                .collect();
            if let Some(mut cells) = cells {
                cells.sort();
                groups.push(Group { cells });
            }
        }
    }
    groups.sort();
    groups
}

/// A board state with side to move.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    spec: BoardSpec,
    cells: Vec<CellState>,
    to_move: Color,
}

impl Position {
    pub fn empty(spec: BoardSpec) -> Self {
        Position {
            spec,
            cells: vec![CellState::Empty; spec.num_cells()],
            to_move: Color::Black,
        }
    }

    /// Builds a position from row-major cell states, checking stone counts.
    pub fn from_cells(
        spec: BoardSpec,
        cells: Vec<CellState>,
        to_move: Color,
    ) -> Result<Self, BoardError> {
        assert_eq!(cells.len(), spec.num_cells(), "cell vector does not fit board");
        let pos = Position {
            spec,
            cells,
            to_move,
        };
        let (black, white) = (pos.count(Color::Black), pos.count(Color::White));
        let legal = match to_move {
            Color::Black => black == white,
            Color::White => black == white + 1,
        };
        if !legal {
            return Err(BoardError::Legality {
                black,
                white,
                to_move,
            });
        }
        Ok(pos)
    }

    pub fn spec(&self) -> BoardSpec {
        self.spec
    }

    pub fn to_move(&self) -> Color {
        self.to_move
    }

    pub fn get(&self, cell: Cell) -> CellState {
        self.cells[self.spec.index(cell)]
    }

    pub fn states(&self) -> &[CellState] {
        &self.cells
    }

    pub fn count(&self, color: Color) -> usize {
        let target = CellState::from(color);
        self.cells.iter().filter(|&&s| s == target).count()
    }

    pub fn empty_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.spec.cells().filter(|&c| self.get(c).is_empty())
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|s| !s.is_empty())
    }

    pub fn apply_move(&self, cell: Cell) -> Result<Position, BoardError> {
        if !self.spec.contains(cell) {
            return Err(BoardError::OutOfBounds(cell));
        }
        let idx = self.spec.index(cell);
        if !self.cells[idx].is_empty() {
            return Err(BoardError::Occupied(cell));
        }
        let mut next = self.clone();
        next.cells[idx] = self.to_move.into();
        next.to_move = self.to_move.opponent();
        Ok(next)
    }

    /// Groups that contain no stone of `attacker`'s opponent.
    pub fn live_groups(&self, attacker: Color) -> Vec<Group> {
        let blocker = CellState::from(attacker.opponent());
        self.spec
            .groups()
            .into_iter()
            .filter(|g| g.cells().iter().all(|&c| self.get(c) != blocker))
            .collect()
    }

    pub fn live_black_groups(&self) -> Vec<Group> {
        self.live_groups(Color::Black)
    }

    /// True if `color` owns every cell of some group.
    pub fn has_line(&self, color: Color) -> bool {
        let target = CellState::from(color);
        self.spec
            .groups()
            .iter()
            .any(|g| g.cells().iter().all(|&c| self.get(c) == target))
    }

    /// Text in the board file format (top row first, trailing newline).
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} {} {}",
            self.spec.m,
            self.spec.n,
            self.spec.k,
            self.to_move.letter()
        )?;
        for row in (0..self.spec.n).rev() {
            let line: String = (0..self.spec.m)
                .map(|col| self.get(Cell::new(col, row)).symbol())
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

pub fn parse_position(text: &str) -> Result<Position, BoardError> {
    let syntax = |line: usize, message: &str| BoardError::Syntax {
        line,
        message: message.to_string(),
    };
    let mut lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    let header = lines.first().ok_or_else(|| syntax(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(syntax(1, "header must be `m n k side`"));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| syntax(1, "board dimensions must be integers"))
    };
    let spec = BoardSpec::new(num(fields[0])?, num(fields[1])?, num(fields[2])?)?;
    let to_move = match fields[3] {
        "B" => Color::Black,
        "W" => Color::White,
        _ => return Err(syntax(1, "side to move must be B or W")),
    };
    let rows = &lines[1..];
    if rows.len() != spec.n {
        return Err(syntax(
            lines.len() + 1,
            &format!("expected {} rows, found {}", spec.n, rows.len()),
        ));
    }
    let mut cells = vec![CellState::Empty; spec.num_cells()];
    for (i, row_text) in rows.iter().enumerate() {
        let line = i + 2;
        let row = spec.n - 1 - i;
        let symbols: Vec<char> = row_text.chars().collect();
        if symbols.len() != spec.m {
            return Err(syntax(
                line,
                &format!("expected {} cells, found {}", spec.m, symbols.len()),
            ));
        }
        for (col, ch) in symbols.into_iter().enumerate() {
            cells[row * spec.m + col] = match ch {
                '.' => CellState::Empty,
                'X' => CellState::Black,
                'O' => CellState::White,
                other => return Err(syntax(line, &format!("unexpected character {other:?}"))),
            };
        }
    }
    Position::from_cells(spec, cells, to_move)
}

impl FromStr for Position {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_position(s)
    }
}
