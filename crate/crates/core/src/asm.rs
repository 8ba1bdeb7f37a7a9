//! Alternating sign matrices: validation, enumeration, the NW-zero
//! statistics, and the correspondence with bumpless pipe dreams.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bpd::{Bpd, Tile};
use crate::perm::Permutation;
use crate::weight::Monomial;
use crate::Cell;

/// Largest size accepted by [`enumerate_asm`].
pub const MAX_ENUMERATION_SIZE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsmError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("entry {value} at ({row},{col}) is not in {{-1,0,1}}")]
    BadEntry { row: usize, col: usize, value: i64 },
    #[error("row {row} does not have alternating signs with sum 1")]
    Row { row: usize },
    #[error("column {col} does not have alternating signs with sum 1")]
    Column { col: usize },
    #[error("size {0} out of range 1..={max}", max = MAX_ENUMERATION_SIZE)]
    SizeOutOfRange(usize),
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

/// Checks that partial sums along a line stay in `{0,1}` and end at 1, which
/// is the same as alternating signs starting and ending with `+1`.
fn alternates(line: impl Iterator<Item = i8>) -> bool {
    let mut sum = 0i32;
    for v in line {
        sum += v as i32;
        if !(0..=1).contains(&sum) {
            return false;
        }
    }
    sum == 1
}

impl Asm {
    /// Validates a square integer matrix.
    pub fn validate(rows: &[Vec<i64>]) -> Result<Asm, AsmError> {
        let n = rows.len();
        if n == 0 {
            return Err(AsmError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AsmError::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(AsmError::BadEntry {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                    });
                }
                entries.push(v as i8);
            }
        }
        let a = Asm { n, entries };
        for i in 1..=n {
            if !alternates((1..=n).map(|j| a.entry(i, j))) {
                return Err(AsmError::Row { row: i });
            }
        }
        for j in 1..=n {
            if !alternates((1..=n).map(|i| a.entry(i, j))) {
                return Err(AsmError::Column { col: j });
            }
        }
        Ok(a)
    }

    pub fn permutation_matrix(pi: &Permutation) -> Asm {
        let n = pi.len();
        let mut entries = vec![0; n * n];
        for i in 1..=n {
            entries[(i - 1) * n + pi.at(i) - 1] = 1;
        }
        Asm { n, entries }
    }

    pub fn identity(n: usize) -> Asm {
        Asm::permutation_matrix(&Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }

    /// `Σ_{j' <= j} A_{i j'}`.
    pub fn row_partial_sum(&self, i: usize, j: usize) -> i32 {
        (1..=j).map(|c| self.entry(i, c) as i32).sum()
    }

    /// `Σ_{i' <= i} A_{i' j}`.
    pub fn column_partial_sum(&self, i: usize, j: usize) -> i32 {
        (1..=i).map(|r| self.entry(r, j) as i32).sum()
    }

    /// Zero entries whose row and column partial sums through them vanish;
    /// these are the zeros lying north and west of `+1` entries.
    pub fn nw_zeros(&self) -> BTreeSet<Cell> {
        let n = self.n;
        let mut out = BTreeSet::new();
        let mut col_sums = vec![0i32; n + 1];
        for i in 1..=n {
            let mut row_sum = 0i32;
            for j in 1..=n {
                let v = self.entry(i, j) as i32;
                row_sum += v;
                col_sums[j] += v;
                if v == 0 && row_sum == 0 && col_sums[j] == 0 {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// The positive inversion number `ν(A) = |nw(A)|`.
    pub fn positive_inversions(&self) -> usize {
        self.nw_zeros().len()
    }

    /// `Π_{(i,j) ∈ nw(A)} x_i`.
    pub fn weight(&self) -> Monomial {
        Monomial::from_rows(self.nw_zeros().into_iter().map(|(i, _)| i))
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in self.entries.chunks(self.n) {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the whitespace-separated text form.
    pub fn from_text(text: &str) -> Result<Asm, AsmError> {
        let rows: Result<Vec<Vec<i64>>, _> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(str::parse).collect())
            .collect();
        let rows = rows.map_err(|e: std::num::ParseIntError| AsmError::Parse(e.to_string()))?;
        Asm::validate(&rows)
    }

    pub fn to_json(&self) -> AsmJson {
        AsmJson {
            n: self.n,
            rows: self.rows(),
        }
    }

    pub fn from_json(json: &AsmJson) -> Result<Asm, AsmError> {
        let a = Asm::validate(&json.rows)?;
        if a.n != json.n {
            return Err(AsmError::Parse(format!(
                "declared n = {} but matrix has size {}",
                json.n, a.n
            )));
        }
        Ok(a)
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `{"n": int, "rows": [[int, ...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsmJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

/// Replaces `+1` by an SE elbow and `-1` by an NW elbow; a zero cell carries
/// a horizontal strand iff its partial row sum is 1 and a vertical strand iff
/// its partial column sum is 1.
pub fn asm_to_bpd(a: &Asm) -> Bpd {
    let n = a.n;
    let mut tiles = Vec::with_capacity(n * n);
    let mut col_sums = vec![0i32; n + 1];
    for i in 1..=n {
        let mut row_sum = 0i32;
        for j in 1..=n {
            let v = a.entry(i, j);
            row_sum += v as i32;
            col_sums[j] += v as i32;
            let tile = match v {
                1 => Tile::SeElbow,
                -1 => Tile::NwElbow,
                _ => match (row_sum == 1, col_sums[j] == 1) {
                    (true, true) => Tile::Cross,
                    (true, false) => Tile::Horizontal,
                    (false, true) => Tile::Vertical,
                    (false, false) => Tile::Blank,
                },
            };
            tiles.push(tile);
        }
    }
    Bpd::new(n, tiles).expect("every ASM fills to a valid bumpless pipe dream")
}

/// `+1` at SE elbows, `-1` at NW elbows, 0 elsewhere.
pub fn bpd_to_asm(d: &Bpd) -> Asm {
    let n = d.n();
    let entries = d
        .tiles()
        .iter()
        .map(|t| match t {
            Tile::SeElbow => 1,
            Tile::NwElbow => -1,
            _ => 0,
        })
        .collect();
    Asm { n, entries }
}

/// Valid rows leaving a given column-sum state, as `(next state, row)` pairs
/// sorted lexicographically by row.
fn transitions(n: usize) -> Vec<Vec<(u32, Vec<i8>)>> {
    let full = 1u32 << n;
    let mut table = vec![Vec::new(); full as usize];
    for state in 0..full {
        let k = state.count_ones();
        if k as usize >= n {
            continue;
        }
        let mut rows = Vec::new();
        for next in 0..full {
            if next.count_ones() != k + 1 {
                continue;
            }
            let row: Vec<i8> = (0..n)
                .map(|j| ((next >> j) & 1) as i8 - ((state >> j) & 1) as i8)
                .collect();
            if alternates(row.iter().copied()) {
                rows.push((next, row));
            }
        }
        rows.sort_by(|a, b| a.1.cmp(&b.1));
        table[state as usize] = rows;
    }
    table
}

/// Streams every `n × n` ASM once, in lexicographic row-major order.
///
/// The search runs row by row over the 0/1 vector of partial column sums;
/// after `i` rows that vector has exactly `i` ones.
pub fn enumerate_asm(n: usize) -> Result<AsmIter, AsmError> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(AsmError::SizeOutOfRange(n));
    }
    Ok(AsmIter {
        n,
        table: transitions(n),
        stack: vec![(0, 0)],
        rows: Vec::new(),
    })
}

/// Number of `n × n` ASMs, by the same transfer system without materializing
/// matrices.
pub fn count_asm(n: usize) -> Result<u64, AsmError> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(AsmError::SizeOutOfRange(n));
    }
    let table = transitions(n);
    let mut counts = vec![0u64; 1 << n];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; 1 << n];
        for (state, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (to, _) in &table[state] {
                next[*to as usize] += c;
            }
        }
        counts = next;
    }
    Ok(counts[(1 << n) - 1])
}

pub struct AsmIter {
    n: usize,
    table: Vec<Vec<(u32, Vec<i8>)>>,
    /// `(state, index of the next transition to try)` per depth.
    stack: Vec<(u32, usize)>,
    rows: Vec<usize>,
}

impl Iterator for AsmIter {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            if depth == self.n {
                let entries = self
                    .rows
                    .iter()
                    .zip(&self.stack)
                    .flat_map(|(&k, &(state, _))| self.table[state as usize][k].1.iter().copied())
                    .collect();
                self.stack.pop();
                self.rows.pop();
                return Some(Asm { n: self.n, entries });
            }
            let (state, idx) = self.stack[depth];
            let options = &self.table[state as usize];
            if idx >= options.len() {
                self.stack.pop();
                self.rows.pop();
                continue;
            }
            self.stack[depth].1 += 1;
            self.rows.push(idx);
            self.stack.push((options[idx].0, 0));
        }
    }
}
