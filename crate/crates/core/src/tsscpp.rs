//! TSSCPP boolean triangles: validation, enumeration, weights and the map to
//! pipe dreams.

use std::fmt;

use thiserror::Error;

use crate::pd::{PdError, PipeDream};
use crate::perm::Permutation;
use crate::weight::Monomial;

pub const MAX_ENUMERATION_SIZE: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TsscppError {
    #[error("order must be at least 1")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Shape { row: usize, expected: usize, got: usize },
    #[error("entry {0} is not 0 or 1")]
    BadEntry(i64),
    #[error("the ({i},{j})-inequality is not satisfied")]
    Inequality { i: usize, j: usize },
    #[error("order {n} out of range (max {max})")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Pd(#[from] PdError),
}

/// Entries `b[i][j]` for `1 <= i <= n-1` and `n-i <= j <= n-1`, row `i`
/// holding `i` entries. Stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BooleanTriangle {
    n: usize,
    entries: Vec<u8>,
}

fn row_start(i: usize) -> usize {
    (i - 1) * i / 2
}

impl BooleanTriangle {
    /// Validates shape, entries and every `(i,j)`-inequality.
    pub fn new(n: usize, rows: &[Vec<i64>]) -> Result<Self, TsscppError> {
        let t = BooleanTriangle::unchecked(n, rows)?;
        match t.first_violation() {
            Some((i, j)) => Err(TsscppError::Inequality { i, j }),
            None => Ok(t),
        }
    }

    fn unchecked(n: usize, rows: &[Vec<i64>]) -> Result<Self, TsscppError> {
        if n == 0 {
            return Err(TsscppError::Empty);
        }
        if rows.len() != n - 1 {
            return Err(TsscppError::Shape {
                row: rows.len().min(n - 1) + 1,
                expected: n - 1,
                got: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * (n - 1) / 2);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(TsscppError::Shape {
                    row: i + 1,
                    expected: i + 1,
                    got: row.len(),
                });
            }
            for &x in row {
                if x != 0 && x != 1 {
                    return Err(TsscppError::BadEntry(x));
                }
                entries.push(x as u8);
            }
        }
        Ok(BooleanTriangle { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        BooleanTriangle {
            n,
            entries: vec![0; n * (n - 1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `b[i][j]`, with `n-i <= j <= n-1`.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        assert!(j + i >= self.n && j < self.n, "b[{i}][{j}] is outside the triangle");
        self.entries[row_start(i) + j + i - self.n]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[row_start(i)..row_start(i) + i]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (1..self.n).map(|i| self.row(i).iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn num_ones(&self) -> usize {
        self.entries.iter().filter(|&&x| x == 1).count()
    }

    /// First `(i, j)` with `j < i` (ordered by `i`, then `j`) such that
    /// `1 + Σ_{k=j+1..i} b[k][n-j-1] >= Σ_{k=j..i} b[k][n-j]` fails.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let n = self.n;
        for i in 2..n {
            for j in 1..i {
                let lhs: u32 = 1 + (j + 1..=i).map(|k| self.entry(k, n - j - 1) as u32).sum::<u32>();
                let rhs: u32 = (j..=i).map(|k| self.entry(k, n - j) as u32).sum();
                if lhs < rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `Π x_{n-i}` over entries `b[i][j] = 1`.
    pub fn weight(&self) -> Monomial {
        let mut rows = Vec::new();
        for i in 1..self.n {
            for &x in self.row(i) {
                if x == 1 {
                    rows.push(self.n - i);
                }
            }
        }
        Monomial::from_rows(rows)
    }

    pub fn has_weakly_decreasing_rows(&self) -> bool {
        (1..self.n).all(|i| self.row(i).windows(2).all(|w| w[0] >= w[1]))
    }

    /// Row `i` of the pipe dream is row `n-i` of the triangle, so that
    /// `y[i][j] = b[n-i][i+j-1]`; ones become crosses.
    pub fn to_pd(&self) -> PipeDream {
        let n = self.n;
        let mut crosses = Vec::new();
        for i in 1..n {
            for (k, &x) in self.row(n - i).iter().enumerate() {
                if x == 1 {
                    crosses.push((i, k + 1));
                }
            }
        }
        PipeDream::from_crosses(n, crosses).expect("triangle fits the staircase")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 1..self.n {
            s.extend(self.row(i).iter().map(|&x| if x == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    /// Parses `n-1` lines of 0/1 characters; line `i` has `i` characters.
    pub fn from_text(text: &str) -> Result<Self, TsscppError> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let row = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(TsscppError::Parse(format!("unexpected character {other:?}"))),
                })
                .collect::<Result<Vec<i64>, _>>()?;
            rows.push(row);
        }
        BooleanTriangle::new(rows.len() + 1, &rows)
    }
}

impl fmt::Display for BooleanTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn triangle_to_pd(t: &BooleanTriangle) -> PipeDream {
    t.to_pd()
}

/// Inverse of [`triangle_to_pd`]; fails when the pipe dream is not
/// pseudo-Yamanouchi.
pub fn pd_to_triangle(d: &PipeDream) -> Result<BooleanTriangle, TsscppError> {
    let n = d.n();
    if n == 0 {
        return Err(TsscppError::Empty);
    }
    let rows: Vec<Vec<i64>> = (1..n)
        .map(|i| (1..=i).map(|k| d.is_cross(n - i, k) as i64).collect())
        .collect();
    BooleanTriangle::new(n, &rows)
}

/// All boolean triangles of order `n` in lexicographic row-major order.
pub fn enumerate_triangles(n: usize) -> Result<TriangleIter, TsscppError> {
    if n == 0 {
        return Err(TsscppError::Empty);
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(TsscppError::SizeOutOfRange {
            n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    Ok(TriangleIter {
        n,
        rows: Vec::with_capacity(n),
        cursor: vec![0; n + 1],
        s: vec![0; n + 1],
        t: vec![0; n + 1],
        done: false,
    })
}

/// Depth-first search over rows. `s[j]` and `t[j]` are the two sides of the
/// `(i, j)`-inequality (without the `1 +`) for the rows placed so far.
pub struct TriangleIter {
    n: usize,
    rows: Vec<u32>,
    cursor: Vec<u32>,
    s: Vec<i32>,
    t: Vec<i32>,
    done: bool,
}

impl TriangleIter {
    // entry k of row i (0-based from the left) is bit i-1-k of its value
    fn bit(i: usize, v: u32, k: usize) -> i32 {
        (v >> (i - 1 - k) & 1) as i32
    }

    fn apply(&mut self, i: usize, v: u32, sign: i32) {
        for j in 1..=i {
            self.t[j] += sign * Self::bit(i, v, i - j);
            if j < i {
                self.s[j] += sign * Self::bit(i, v, i - j - 1);
            }
        }
    }

    fn push(&mut self, i: usize, v: u32) -> bool {
        self.apply(i, v, 1);
        if (1..i).all(|j| 1 + self.s[j] >= self.t[j]) {
            self.rows.push(v);
            self.cursor[i + 1] = 0;
            true
        } else {
            self.apply(i, v, -1);
            false
        }
    }

    fn pop(&mut self) {
        let i = self.rows.len();
        let v = self.rows.pop().expect("nonempty");
        self.apply(i, v, -1);
    }

    fn current(&self) -> BooleanTriangle {
        let mut entries = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for (idx, &v) in self.rows.iter().enumerate() {
            let i = idx + 1;
            for k in 0..i {
                entries.push(Self::bit(i, v, k) as u8);
            }
        }
        BooleanTriangle { n: self.n, entries }
    }
}

impl Iterator for TriangleIter {
    type Item = BooleanTriangle;

    fn next(&mut self) -> Option<BooleanTriangle> {
        loop {
            if self.done {
                return None;
            }
            let i = self.rows.len() + 1;
            if i == self.n {
                let t = self.current();
                if self.rows.is_empty() {
                    self.done = true;
                } else {
                    self.pop();
                }
                return Some(t);
            }
            let mut placed = false;
            while self.cursor[i] < 1 << i {
                let v = self.cursor[i];
                self.cursor[i] += 1;
                if self.push(i, v) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                if self.rows.is_empty() {
                    self.done = true;
                } else {
                    self.pop();
                }
            }
        }
    }
}

/// Triangles whose pipe dream is reduced with permutation `pi`.
pub fn tsscpp_red(pi: &Permutation) -> Result<impl Iterator<Item = BooleanTriangle>, TsscppError> {
    let len = pi.inversions();
    let pi = pi.clone();
    Ok(enumerate_triangles(pi.len())?
        .filter(move |t| t.num_ones() == len && t.to_pd().reduced_permutation().as_ref() == Some(&pi)))
}
