//! Pipe dreams on the staircase `i + j <= n`, bounded compatible sequences,
//! the pseudo-Yamanouchi condition and simple slides.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;
use crate::poset::{closure, Poset};
use crate::weight::Monomial;
use crate::Cell;

/// Largest size representable by the bitset.
pub const MAX_PD_SIZE: usize = 16;
/// Largest size accepted by exhaustive enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("size {n} out of range (max {max})")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("cell ({0},{1}) is not in the staircase")]
    NotInStaircase(usize, usize),
    #[error("cell ({0},{1}) used twice")]
    Duplicate(usize, usize),
    #[error("invalid compatible sequence: {0}")]
    InvalidSequence(String),
    #[error("pipe dream is not reduced: pipes {0} and {1} cross twice")]
    NotReduced(usize, usize),
    #[error("{0} contains the pattern 1432")]
    Contains1432(Permutation),
    #[error("maximal pipe dream of {0} is not top-justified")]
    NotTopJustified(Permutation),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A pipe dream of size `n`: a set of cross tiles on cells `(i, j)` with
/// `i + j <= n`; every other cell is an elbow. Bit `k` of `bits` is the `k`-th
/// staircase cell in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PipeDream {
    n: usize,
    bits: u128,
}

fn row_offset(n: usize, i: usize) -> usize {
    // cells in rows 1..i, row k holding n - k cells
    (i - 1) * n - (i - 1) * i / 2
}

fn staircase_cells(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Result of following every pipe of a pipe dream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdRouting {
    /// Label leaving the west border at each row; index `r-1` is row `r`.
    pub west_labels: Vec<usize>,
    /// For each cross, the pair of pipes meeting there (smaller label first).
    pub crossings: BTreeMap<Cell, (usize, usize)>,
}

impl PipeDream {
    pub fn empty(n: usize) -> Result<PipeDream, PdError> {
        if n > MAX_PD_SIZE {
            return Err(PdError::SizeOutOfRange { n, max: MAX_PD_SIZE });
        }
        Ok(PipeDream { n, bits: 0 })
    }

    pub fn from_crosses<I: IntoIterator<Item = Cell>>(n: usize, crosses: I) -> Result<PipeDream, PdError> {
        let mut d = PipeDream::empty(n)?;
        for (i, j) in crosses {
            let k = d.index(i, j).ok_or(PdError::NotInStaircase(i, j))?;
            if d.bits >> k & 1 == 1 {
                return Err(PdError::Duplicate(i, j));
            }
            d.bits |= 1 << k;
        }
        Ok(d)
    }

    /// The pipe dream whose `k`-th staircase cell is a cross iff bit `k` is set.
    pub fn from_bits(n: usize, bits: u128) -> Result<PipeDream, PdError> {
        PipeDream::empty(n)?;
        let cells = staircase_cells(n);
        if cells < 128 && bits >> cells != 0 {
            return Err(PdError::Parse(format!("bit pattern exceeds {cells} cells")));
        }
        Ok(PipeDream { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        (i >= 1 && j >= 1 && i + j <= self.n).then(|| row_offset(self.n, i) + j - 1)
    }

    /// Cross tile at `(i, j)`; cells off the staircase are elbows.
    pub fn is_cross(&self, i: usize, j: usize) -> bool {
        self.index(i, j).is_some_and(|k| self.bits >> k & 1 == 1)
    }

    pub fn num_crosses(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Crosses in row-major order.
    pub fn crosses(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.num_crosses());
        for i in 1..self.n {
            for j in 1..=self.n - i {
                if self.is_cross(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn row_cross_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for (i, _) in self.crosses() {
            counts[i - 1] += 1;
        }
        counts
    }

    /// `Π x_i` over crosses `(i, j)`.
    pub fn cross_weight(&self) -> Monomial {
        Monomial::from_rows(self.crosses().into_iter().map(|(i, _)| i))
    }

    /// Pipes enter the north border at their column label and leave through
    /// the west border. Elbows join north to west and east to south.
    pub fn trace(&self) -> PdRouting {
        let n = self.n;
        let mut west_labels = vec![0; n];
        let mut first_visit = vec![0usize; 128];
        let mut crossings = BTreeMap::new();
        for label in 1..=n {
            let (mut r, mut c) = (1, label);
            let mut from_north = true;
            loop {
                let cross = self.is_cross(r, c);
                if cross {
                    let k = self.index(r, c).unwrap();
                    if first_visit[k] == 0 {
                        first_visit[k] = label;
                    } else {
                        crossings.insert((r, c), (first_visit[k], label));
                    }
                }
                // moving south after this cell iff (cross and from north) or
                // (elbow and from east)
                if cross == from_north {
                    r += 1;
                    from_north = true;
                } else {
                    if c == 1 {
                        west_labels[r - 1] = label;
                        break;
                    }
                    c -= 1;
                    from_north = false;
                }
            }
        }
        PdRouting {
            west_labels,
            crossings,
        }
    }

    fn double_crossing(routing: &PdRouting) -> Option<(usize, usize)> {
        let mut seen = std::collections::BTreeSet::new();
        routing.crossings.values().find(|p| !seen.insert(**p)).copied()
    }

    pub fn is_reduced(&self) -> bool {
        PipeDream::double_crossing(&self.trace()).is_none()
    }

    /// Labels read down the west border. Defined for reduced pipe dreams only.
    pub fn permutation(&self) -> Result<Permutation, PdError> {
        let routing = self.trace();
        if let Some((a, b)) = PipeDream::double_crossing(&routing) {
            return Err(PdError::NotReduced(a, b));
        }
        Ok(Permutation::new(routing.west_labels).expect("west labels form a permutation"))
    }

    pub fn reduced_permutation(&self) -> Option<Permutation> {
        self.permutation().ok()
    }

    /// Reads crosses bottom to top, each row left to right; `(r, c)` gives
    /// the letter `r + c - 1` with row `r`.
    pub fn to_sequence(&self) -> BoundedCompatibleSequence {
        let mut a = Vec::new();
        let mut r = Vec::new();
        for i in (1..self.n).rev() {
            for j in 1..=self.n - i {
                if self.is_cross(i, j) {
                    a.push(i + j - 1);
                    r.push(i);
                }
            }
        }
        BoundedCompatibleSequence { a, r }
    }

    pub fn from_sequence(s: &BoundedCompatibleSequence, n: usize) -> Result<PipeDream, PdError> {
        s.validate(n)?;
        PipeDream::from_crosses(n, s.a.iter().zip(&s.r).map(|(&a, &r)| (r, a + 1 - r)))
    }

    pub fn is_pseudo_yamanouchi(&self) -> bool {
        self.to_sequence().is_pseudo_yamanouchi()
    }

    /// Moves of one cross from `(r, c)` to `(r-1, c+1)` when the other three
    /// cells of that 2×2 square are elbows.
    pub fn simple_slides(&self) -> Vec<PipeDream> {
        let mut out = Vec::new();
        for (r, c) in self.crosses() {
            if r >= 2 && !self.is_cross(r - 1, c) && !self.is_cross(r - 1, c + 1) && !self.is_cross(r, c + 1) {
                out.push(self.moved((r, c), (r - 1, c + 1)));
            }
        }
        out.sort();
        out
    }

    /// Reverses [`simple_slides`](Self::simple_slides).
    pub fn inverse_simple_slides(&self) -> Vec<PipeDream> {
        let mut out = Vec::new();
        for (r, c) in self.crosses() {
            if c >= 2 && !self.is_cross(r, c - 1) && !self.is_cross(r + 1, c - 1) && !self.is_cross(r + 1, c) {
                out.push(self.moved((r, c), (r + 1, c - 1)));
            }
        }
        out.sort();
        out
    }

    fn moved(&self, from: Cell, to: Cell) -> PipeDream {
        let a = self.index(from.0, from.1).unwrap();
        let b = self.index(to.0, to.1).unwrap();
        PipeDream {
            n: self.n,
            bits: (self.bits & !(1 << a)) | 1 << b,
        }
    }

    /// True when every column's crosses fill its top rows.
    pub fn is_top_justified(&self) -> bool {
        (1..self.n).all(|c| {
            let mut gap = false;
            for r in 1..=self.n - c {
                if self.is_cross(r, c) {
                    if gap {
                        return false;
                    }
                } else {
                    gap = true;
                }
            }
            true
        })
    }

    /// Row `i` is `n - i + 1` characters over `+` (cross) and `.` (elbow).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n + 1 - i {
                s.push(if self.is_cross(i, j) { '+' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<PipeDream, PdError> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        let mut crosses = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            let i = i + 1;
            if line.chars().count() != n + 1 - i {
                return Err(PdError::Parse(format!(
                    "row {i} has {} cells, expected {}",
                    line.chars().count(),
                    n + 1 - i
                )));
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '+' => crosses.push((i, j + 1)),
                    '.' => {}
                    other => return Err(PdError::Parse(format!("unknown tile {other:?}"))),
                }
            }
        }
        PipeDream::from_crosses(n, crosses)
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A pair of words `(a, r)` encoding cross positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundedCompatibleSequence {
    pub a: Vec<usize>,
    pub r: Vec<usize>,
}

impl BoundedCompatibleSequence {
    /// Checks the compatibility conditions and the bound `a_i <= n - 1`.
    pub fn validate(&self, n: usize) -> Result<(), PdError> {
        let bad = |m: String| Err(PdError::InvalidSequence(m));
        if self.a.len() != self.r.len() {
            return bad(format!("word lengths {} and {} differ", self.a.len(), self.r.len()));
        }
        for k in 0..self.a.len() {
            let (a, r) = (self.a[k], self.r[k]);
            if r == 0 || a == 0 {
                return bad(format!("letter {} is not positive", k + 1));
            }
            if a < r {
                return bad(format!("a_{0} < r_{0}", k + 1));
            }
            if a >= n {
                return bad(format!("a_{} = {a} exceeds {}", k + 1, n.saturating_sub(1)));
            }
            if k + 1 < self.a.len() {
                if r < self.r[k + 1] {
                    return bad(format!("r increases at position {}", k + 1));
                }
                if a >= self.a[k + 1] && r == self.r[k + 1] {
                    return bad(format!("r_{0} = r_{1} although a_{0} >= a_{1}", k + 1, k + 2));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `1 + cnt(k, j) >= cnt(k, j+1)` for every prefix length `k` and every
    /// `j >= 1`, where `cnt(k, j)` counts `j` among `a_1 .. a_k`.
    pub fn is_pseudo_yamanouchi(&self) -> bool {
        let top = self.a.iter().copied().max().unwrap_or(0);
        let mut cnt = vec![0usize; top + 1];
        for &x in &self.a {
            cnt[x] += 1;
            // only the inequality with cnt(k, x) on the right can break
            if x >= 2 && 1 + cnt[x - 1] < cnt[x] {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PdError> {
        serde_json::from_str(s).map_err(|e| PdError::Parse(e.to_string()))
    }
}

/// Crosses of row `i` are the first `code(i)` cells.
pub fn bottom_pd(pi: &Permutation) -> PipeDream {
    let code = pi.lehmer_code();
    let cells = code
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| (1..=c).map(move |j| (i + 1, j)));
    PipeDream::from_crosses(pi.len(), cells).expect("Lehmer code fits the staircase")
}

/// The unique maximal element of the slide poset of a 1432-avoiding
/// permutation.
pub fn top_pd(pi: &Permutation) -> Result<PipeDream, PdError> {
    if !pi.avoids_1432() {
        return Err(PdError::Contains1432(pi.clone()));
    }
    let p = slide_poset(pi);
    let max = p.maximal_elements();
    assert_eq!(max.len(), 1, "slide poset of a 1432-avoiding permutation has one maximum");
    let top = *p.element(max[0]);
    if !top.is_top_justified() {
        return Err(PdError::NotTopJustified(pi.clone()));
    }
    Ok(top)
}

/// Closure of the bottom pipe dream under simple slides, labeled by weight.
pub fn slide_poset(pi: &Permutation) -> Poset<PipeDream> {
    closure(bottom_pd(pi), |d| d.simple_slides())
        .expect("slides strictly decrease the row sum of crosses")
        .with_labels(|d| d.cross_weight().to_string())
}

fn check_enumeration_size(n: usize) -> Result<(), PdError> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(PdError::SizeOutOfRange {
            n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    Ok(())
}

/// All `2^(n(n-1)/2)` pipe dreams of size `n`, by increasing bitset.
pub fn enumerate_pd(n: usize) -> Result<impl Iterator<Item = PipeDream>, PdError> {
    check_enumeration_size(n)?;
    let count = 1u128 << staircase_cells(n);
    Ok((0..count).map(move |bits| PipeDream { n, bits }))
}

/// Reduced pipe dreams with permutation `pi`, by increasing bitset.
pub fn enumerate_pd_red(pi: &Permutation) -> Result<impl Iterator<Item = PipeDream>, PdError> {
    let len = pi.inversions() as u32;
    let pi = pi.clone();
    Ok(enumerate_pd(pi.len())?
        .filter(move |d| d.bits.count_ones() == len && d.reduced_permutation().as_ref() == Some(&pi)))
}
