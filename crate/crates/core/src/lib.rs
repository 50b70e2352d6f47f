//! Draw proofs for mnk-games ("k-in-a-row").
//!
//! The crate proves that the first player cannot win a position by
//! covering every still-winnable line, either with classical marker pairs
//! or with matching sets that need fewer than two markers per line, and
//! cross-checks those proofs with an exhaustive game solver.

pub mod board;
pub mod cli;
pub mod configs;
pub mod fixtures;
pub mod hypergraph;
pub mod pairing;
pub mod par;
pub mod setmatch;
pub mod solver;

pub use board::{parse_position, BoardError, BoardSpec, Cell, CellState, Color, Group, Position};
