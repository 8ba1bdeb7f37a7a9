//! Alternating sign matrices, bumpless pipe dreams, pipe dreams and
//! totally symmetric self-complementary plane partitions (as boolean
//! triangles), with the maps and posets connecting them.
//!
//! Grids are 1-indexed `(row, column)` with row 1 at the top.

pub mod asm;
pub mod bijections;
pub mod bpd;
pub mod cli;
pub mod pd;
pub mod perm;
pub mod poset;
pub mod tsscpp;
pub mod weight;

/// A grid cell `(row, column)`, both 1-indexed.
pub type Cell = (usize, usize);
