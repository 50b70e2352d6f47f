//! ASCII drawings of boards and certificates.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::board::{Cell, CellState, Position};
use crate::configs::DrawCertificate;

/// Letters for markers in the order they are first listed: a..z, then A..Z,
/// then `*`.
fn letter(i: usize) -> char {
    match i {
        0..26 => (b'a' + i as u8) as char,
        26..52 => (b'A' + (i - 26) as u8) as char,
        _ => '*',
    }
}

fn stone(state: CellState) -> char {
    match state {
        CellState::Black => 'X',
        CellState::White => 'O',
        CellState::Empty => '.',
    }
}

/// Marker letters for a certificate: matching sets first, then the
/// residual pairs.
pub fn marker_letters(cert: &DrawCertificate) -> BTreeMap<Cell, char> {
    let mut letters = BTreeMap::new();
    let cells = cert
        .matching_sets
        .iter()
        .flat_map(|s| s.set.markers.iter().copied())
        .chain(cert.residual_pairing.pairs().into_iter().flat_map(|(a, b)| [a, b]));
    for c in cells {
        let next = letter(letters.len());
        letters.entry(c).or_insert(next);
    }
    letters
}

/// Board with column letters and row numbers; `marks` replace empty cells.
pub fn board(pos: &Position, marks: &BTreeMap<Cell, char>) -> String {
    let spec = pos.spec();
    let mut out = String::new();
    let width = spec.rows().to_string().len();
    for row in (0..spec.rows()).rev() {
        write!(out, "{:>width$} ", row + 1).unwrap();
        let line: Vec<String> = (0..spec.columns())
            .map(|col| {
                let c = Cell::new(col, row);
                match pos.get(c) {
                    CellState::Empty => marks.get(&c).copied().unwrap_or('.').to_string(),
                    s => stone(s).to_string(),
                }
            })
            .collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    let cols: Vec<String> = (0..spec.columns())
        .map(|c| ((b'a' + c as u8) as char).to_string())
        .collect();
    writeln!(out, "{:>width$} {}", "", cols.join(" ")).unwrap();
    out
}

/// Groups drawn as dashed chains on a doubled grid: `-`, `|`, `/` and `\`
/// join consecutive cells, crossing diagonals show as `x`.
pub fn dashed_groups(pos: &Position, groups: &[Vec<Cell>], marks: &BTreeMap<Cell, char>) -> String {
    let spec = pos.spec();
    let (w, h) = (2 * spec.columns() - 1, 2 * spec.rows() - 1);
    let mut canvas = vec![vec![' '; w]; h];
    let at = |c: Cell| (2 * (spec.rows() - 1 - c.row()), 2 * c.col());
    for row in 0..spec.rows() {
        for col in 0..spec.columns() {
            let c = Cell::new(col, row);
            let (y, x) = at(c);
            canvas[y][x] = match pos.get(c) {
                CellState::Empty => marks.get(&c).copied().unwrap_or('.'),
                s => stone(s),
            };
        }
    }
    for g in groups {
        for pair in g.windows(2) {
            let ((y0, x0), (y1, x1)) = (at(pair[0]), at(pair[1]));
            let (y, x) = ((y0 + y1) / 2, (x0 + x1) / 2);
            let glyph = if y0 == y1 {
                '-'
            } else if x0 == x1 {
                '|'
            } else if (y1 < y0) == (x1 > x0) {
                '/'
            } else {
                '\\'
            };
            let cur = canvas[y][x];
            canvas[y][x] = if cur == ' ' || cur == glyph { glyph } else { 'x' };
        }
    }
    let mut out = String::new();
    for line in canvas {
        let s: String = line.into_iter().collect();
        writeln!(out, "{}", s.trim_end()).unwrap();
    }
    out
}

fn group_word(pos: &Position, group: &[Cell], marks: &BTreeMap<Cell, char>) -> String {
    group
        .iter()
        .map(|&c| match pos.get(c) {
            CellState::Empty => marks.get(&c).copied().unwrap_or('.'),
            s => stone(s),
        })
        .collect()
}

/// Human rendering of a certificate: the board with lettered markers, then
/// each matching set's groups spelled in those letters, then the pairs.
pub fn certificate(cert: &DrawCertificate) -> String {
    let pos = &cert.position;
    let marks = marker_letters(cert);
    let mut out = board(pos, &marks);
    for (i, cs) in cert.matching_sets.iter().enumerate() {
        let name = cs
            .template_name
            .map(|t| t.to_string())
            .unwrap_or_else(|| format!("set {}", i + 1));
        let words: Vec<String> = cs
            .set
            .groups
            .iter()
            .map(|g| group_word(pos, g, &marks))
            .collect();
        writeln!(out, "{name}: {}", words.join(" ")).unwrap();
    }
    if !cert.residual_pairing.is_empty() {
        let pairs: Vec<String> = cert
            .residual_pairing
            .pairs()
            .iter()
            .map(|(a, b)| format!("{}{}", marks[a], marks[b]))
            .collect();
        writeln!(out, "pairs: {}", pairs.join(" ")).unwrap();
    }
    out
}

/// The certificate's groups, one dashed drawing per matching set and one
/// for the residual pairing.
pub fn certificate_groups(cert: &DrawCertificate) -> String {
    let pos = &cert.position;
    let marks = marker_letters(cert);
    let mut out = String::new();
    for (i, cs) in cert.matching_sets.iter().enumerate() {
        let name = cs
            .template_name
            .map(|t| t.to_string())
            .unwrap_or_else(|| format!("set {}", i + 1));
        writeln!(out, "{name}:").unwrap();
        out.push_str(&dashed_groups(pos, &cs.set.groups, &marks));
    }
    if !cert.residual_pairing.is_empty() {
        writeln!(out, "pairs:").unwrap();
        let groups: Vec<Vec<Cell>> = cert
            .residual_pairing
            .groups()
            .map(|g| g.cells().to_vec())
            .collect();
        out.push_str(&dashed_groups(pos, &groups, &marks));
    }
    out
}
