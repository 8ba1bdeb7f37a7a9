//! Permutations in one-line notation, pattern containment, Lehmer codes,
//! Rothe diagrams and the block decomposition of (1432, 2143)-avoiding
//! permutations.
//!
//! All grid coordinates are 1-indexed `(row, column)` pairs, row 1 at the
//! top and column 1 at the left.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bpd::{rothe_bpd, Tile};
use crate::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {word:?}")]
    NotAPermutation { n: usize, word: Vec<usize> },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
    #[error("invalid Lehmer code {0:?}")]
    BadCode(Vec<usize>),
    #[error("{pi} contains the pattern {pattern}")]
    ContainsPattern {
        pi: Permutation,
        pattern: Permutation,
    },
    #[error("block decomposition of {pi} failed: {reason}")]
    BlockDecomposition { pi: Permutation, reason: String },
}

/// A permutation of `{1, ..., n}` stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation { n, word });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The permutation `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `π(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Positions `i` (1-indexed) with `π(i) > π(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    pub fn is_inverse_grassmannian(&self) -> bool {
        self.inverse().is_grassmannian()
    }

    pub fn inversions(&self) -> usize {
        self.lehmer_code().iter().sum()
    }

    /// `code[i] = #{ j > i : π(j) < π(i) }`.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let w = &self.word;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .collect()
    }

    pub fn from_lehmer_code(code: &[usize]) -> Result<Self, PermError> {
        let n = code.len();
        let mut remaining: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for &c in code {
            if c >= remaining.len() {
                return Err(PermError::BadCode(code.to_vec()));
            }
            word.push(remaining.remove(c));
        }
        Ok(Permutation { word })
    }

    /// Embeds the permutation into `S_m` by fixing `n+1..=m`.
    pub fn extended(&self, m: usize) -> Permutation {
        let mut word = self.word.clone();
        word.extend(self.len() + 1..=m.max(self.len()));
        Permutation { word }
    }

    /// Whether some subsequence of the word is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        if pattern.is_empty() {
            return true;
        }
        let mut chosen = Vec::with_capacity(pattern.len());
        self.extend_match(pattern, 0, &mut chosen)
    }

    fn extend_match(&self, pattern: &Permutation, start: usize, chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == pattern.len() {
            return true;
        }
        // leave room for the remaining pattern letters
        let last = self.len() - (pattern.len() - k);
        for pos in start..=last {
            let v = self.word[pos];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(t, &p)| (self.word[p] < v) == (pattern.word[t] < pattern.word[k]));
            if consistent {
                chosen.push(pos);
                if self.extend_match(pattern, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains_pattern(pattern)
    }

    pub fn avoids_1432(&self) -> bool {
        self.avoids(&pattern_1432())
    }

    pub fn avoids_2143(&self) -> bool {
        self.avoids(&pattern_2143())
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n).collect()),
        }
    }
}

pub fn pattern_1432() -> Permutation {
    Permutation {
        word: vec![1, 4, 3, 2],
    }
}

pub fn pattern_2143() -> Permutation {
    Permutation {
        word: vec![2, 1, 4, 3],
    }
}

/// Lexicographic iterator over `S_n`.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // standard next-permutation step
        if let Some(i) = (0..succ.len().saturating_sub(1))
            .rev()
            .find(|&i| succ[i] < succ[i + 1])
        {
            let j = (i + 1..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[i])
                .unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { word: current })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let word: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let word = word.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::new(word)
    }
}

/// The diagram `D(π) = {(i,j) : π(i) > j and π⁻¹(j) > i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotheDiagram {
    pub n: usize,
    pub blanks: BTreeSet<Cell>,
}

pub fn rothe_diagram(pi: &Permutation) -> RotheDiagram {
    let n = pi.len();
    let inv = pi.inverse();
    let mut blanks = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            if pi.at(i) > j && inv.at(j) > i {
                blanks.insert((i, j));
            }
        }
    }
    RotheDiagram { n, blanks }
}

impl RotheDiagram {
    pub fn contains(&self, cell: Cell) -> bool {
        self.blanks.contains(&cell)
    }

    /// 4-connected blank regions, ordered by their NW-most cell.
    pub fn regions(&self) -> Vec<BTreeSet<Cell>> {
        connected_regions(&self.blanks)
    }

    /// SE-most corners of the blank regions.
    pub fn essential_boxes(&self) -> BTreeSet<Cell> {
        self.blanks
            .iter()
            .copied()
            .filter(|&(i, j)| !self.contains((i + 1, j)) && !self.contains((i, j + 1)))
            .collect()
    }

    /// The region containing `(1,1)`, empty if `(1,1)` is not blank.
    pub fn dominant_region(&self) -> BTreeSet<Cell> {
        self.regions()
            .into_iter()
            .find(|r| r.contains(&(1, 1)))
            .unwrap_or_default()
    }
}

pub fn essential_boxes(pi: &Permutation) -> BTreeSet<Cell> {
    rothe_diagram(pi).essential_boxes()
}

pub fn dominant_region(pi: &Permutation) -> BTreeSet<Cell> {
    rothe_diagram(pi).dominant_region()
}

pub(crate) fn connected_regions(cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if seen.contains(&start) {
            continue;
        }
        let mut region = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some((i, j)) = queue.pop_front() {
            region.insert((i, j));
            let nbrs = [
                (i.wrapping_sub(1), j),
                (i + 1, j),
                (i, j.wrapping_sub(1)),
                (i, j + 1),
            ];
            for c in nbrs {
                if cells.contains(&c) && seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        out.push(region);
    }
    out
}

/// Row lengths of a region, keyed by row.
fn row_spans(region: &BTreeSet<Cell>) -> BTreeMap<usize, (usize, usize)> {
    let mut spans: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &(i, j) in region {
        let e = spans.entry(i).or_insert((j, j));
        e.0 = e.0.min(j);
        e.1 = e.1.max(j);
    }
    spans
}

/// Whether the region is a Young diagram (English notation) anchored at its
/// NW-most cell.
pub fn is_partition_shaped(region: &BTreeSet<Cell>) -> bool {
    if region.is_empty() {
        return true;
    }
    let top = region.iter().map(|c| c.0).min().unwrap();
    let left = region.iter().map(|c| c.1).min().unwrap();
    let spans = row_spans(region);
    let mut prev_len = usize::MAX;
    for (k, (&row, &(lo, hi))) in spans.iter().enumerate() {
        let len = hi - lo + 1;
        let full = (lo..=hi).all(|j| region.contains(&(row, j)));
        if row != top + k || lo != left || !full || len > prev_len {
            return false;
        }
        prev_len = len;
    }
    true
}

pub fn is_rectangle(region: &BTreeSet<Cell>) -> bool {
    let Some(b) = bounding_box(region) else {
        return true;
    };
    b.height * b.width == region.len()
}

/// An axis-aligned rectangle of grid cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub top: usize,
    pub left: usize,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn bottom(&self) -> usize {
        self.top + self.height - 1
    }

    pub fn right(&self) -> usize {
        self.left + self.width - 1
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        i >= self.top && i <= self.bottom() && j >= self.left && j <= self.right()
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.top <= other.bottom()
            && other.top <= self.bottom()
            && self.left <= other.right()
            && other.left <= self.right()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.top..=self.bottom())
            .flat_map(move |i| (self.left..=self.right()).map(move |j| (i, j)))
    }

    /// Converts an absolute cell to 1-indexed coordinates inside the rectangle.
    pub fn relative(&self, (i, j): Cell) -> Cell {
        (i - self.top + 1, j - self.left + 1)
    }
}

pub(crate) fn bounding_box(region: &BTreeSet<Cell>) -> Option<Rect> {
    let top = region.iter().map(|c| c.0).min()?;
    let bottom = region.iter().map(|c| c.0).max()?;
    let left = region.iter().map(|c| c.1).min()?;
    let right = region.iter().map(|c| c.1).max()?;
    Some(Rect {
        top,
        left,
        height: bottom - top + 1,
        width: right - left + 1,
    })
}

/// One Grassmannian or inverse-Grassmannian block of a block decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub perm: Permutation,
    pub rect: Rect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Row lengths of the dominant region.
    pub dominant: Vec<usize>,
    pub grassmannian_blocks: Vec<Block>,
    pub inverse_grassmannian_blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> impl Iterator<Item = &Block> {
        self.grassmannian_blocks
            .iter()
            .chain(self.inverse_grassmannian_blocks.iter())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum GroupKind {
    Row,
    Column,
}

/// Splits the Rothe BPD of a (1432, 2143)-avoiding permutation into its
/// dominant partition and rectangles holding Grassmannian (essential boxes in
/// one row) and inverse-Grassmannian (essential boxes in one column) blocks.
///
/// A group consisting of a single essential box is treated as an
/// inverse-Grassmannian block.
pub fn block_decomposition(pi: &Permutation) -> Result<BlockDecomposition, PermError> {
    for pattern in [pattern_2143(), pattern_1432()] {
        if pi.contains_pattern(&pattern) {
            return Err(PermError::ContainsPattern {
                pi: pi.clone(),
                pattern,
            });
        }
    }
    let fail = |reason: String| PermError::BlockDecomposition {
        pi: pi.clone(),
        reason,
    };
    let n = pi.len();
    let diagram = rothe_diagram(pi);
    let dominant_cells = diagram.dominant_region();
    let dominant: Vec<usize> = {
        let spans = row_spans(&dominant_cells);
        spans.values().map(|&(lo, hi)| hi - lo + 1).collect()
    };
    // λ_r, zero past the last row
    let lambda = |r: usize| dominant.get(r.wrapping_sub(1)).copied().unwrap_or(0);
    // λ'_c
    let lambda_t = |c: usize| dominant.iter().filter(|&&len| len >= c).count();

    let regions: Vec<BTreeSet<Cell>> = diagram
        .regions()
        .into_iter()
        .filter(|r| !r.contains(&(1, 1)))
        .collect();
    let region_of_box: BTreeMap<Cell, Rect> = regions
        .iter()
        .map(|r| {
            let b = bounding_box(r).expect("regions are nonempty");
            ((b.bottom(), b.right()), b)
        })
        .collect();
    let boxes: Vec<Cell> = diagram
        .essential_boxes()
        .into_iter()
        .filter(|c| !dominant_cells.contains(c))
        .collect();
    for b in &boxes {
        if !region_of_box.contains_key(b) {
            return Err(fail(format!(
                "blank region ending at {b:?} is not a rectangle"
            )));
        }
    }

    // group essential boxes that share a row or a column
    let mut parent: Vec<usize> = (0..boxes.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in 0..boxes.len() {
        for b in a + 1..boxes.len() {
            if boxes[a].0 == boxes[b].0 || boxes[a].1 == boxes[b].1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for k in 0..boxes.len() {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(boxes[k]);
    }

    let build = |kind: GroupKind, group: &[Cell]| -> Result<Block, String> {
        let rect = match kind {
            GroupKind::Row => {
                let r = group[0].0;
                let c = lambda(r) + 1;
                let r_top = lambda_t(c) + 1;
                if r_top > r {
                    return Err(format!("row block at row {r} has no height"));
                }
                let h = r - r_top + 1;
                let l: usize = group.iter().map(|b| region_of_box[b].width).sum();
                Rect {
                    top: r_top,
                    left: c,
                    height: h,
                    width: h + l,
                }
            }
            GroupKind::Column => {
                let c = group[0].1;
                let r_top = lambda_t(c) + 1;
                let c_left = lambda(r_top) + 1;
                if c_left > c {
                    return Err(format!("column block at column {c} has no width"));
                }
                let w = c - c_left + 1;
                let l: usize = group.iter().map(|b| region_of_box[b].height).sum();
                Rect {
                    top: r_top,
                    left: c_left,
                    height: w + l,
                    width: w,
                }
            }
        };
        if rect.bottom() > n || rect.right() > n {
            return Err(format!("block {rect:?} leaves the grid"));
        }
        let inside: BTreeSet<Cell> = diagram
            .blanks
            .iter()
            .filter(|&&c| rect.contains(c))
            .map(|&c| rect.relative(c))
            .collect();
        // blanks pin down the block: its code (or its inverse's) counts them
        let m = rect.height.max(rect.width);
        let sigma = match kind {
            GroupKind::Row => {
                let mut code = vec![0; m];
                for &(i, _) in &inside {
                    code[i - 1] += 1;
                }
                Permutation::from_lehmer_code(&code).map_err(|e| e.to_string())?
            }
            GroupKind::Column => {
                let mut code = vec![0; m];
                for &(_, j) in &inside {
                    code[j - 1] += 1;
                }
                Permutation::from_lehmer_code(&code)
                    .map_err(|e| e.to_string())?
                    .inverse()
            }
        };
        let fits = match kind {
            GroupKind::Row => sigma.is_grassmannian(),
            GroupKind::Column => sigma.is_inverse_grassmannian(),
        };
        if !fits || rothe_diagram(&sigma).blanks != inside {
            return Err(format!(
                "blanks of {rect:?} are not the Rothe diagram of a block"
            ));
        }
        Ok(Block { perm: sigma, rect })
    };
    let mut candidates: Vec<Vec<(GroupKind, Block)>> = Vec::with_capacity(groups.len());
    for group in groups.values() {
        let same_row = group.iter().all(|c| c.0 == group[0].0);
        let same_col = group.iter().all(|c| c.1 == group[0].1);
        // a lone box may head either kind of block
        let kinds: &[GroupKind] = match (same_row, same_col) {
            (true, true) => &[GroupKind::Column, GroupKind::Row],
            (false, true) => &[GroupKind::Column],
            (true, false) => &[GroupKind::Row],
            (false, false) => {
                return Err(fail(format!(
                    "essential boxes {group:?} share neither a row nor a column"
                )))
            }
        };
        let mut first_err = None;
        let mut options = Vec::new();
        for &kind in kinds {
            match build(kind, group) {
                Ok(block) if dominant_cells.iter().any(|&c| block.rect.contains(c)) => {
                    first_err
                        .get_or_insert(format!("block {:?} meets the dominant region", block.rect));
                }
                Ok(block) => options.push((kind, block)),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        if options.is_empty() {
            return Err(fail(first_err.expect("at least one kind was tried")));
        }
        candidates.push(options);
    }

    // pick one option per group so that no two rectangles overlap
    fn choose(candidates: &[Vec<(GroupKind, Block)>], picked: &mut Vec<usize>) -> bool {
        let k = picked.len();
        if k == candidates.len() {
            return true;
        }
        for (o, (_, block)) in candidates[k].iter().enumerate() {
            let clear = picked
                .iter()
                .enumerate()
                .all(|(g, &p)| !candidates[g][p].1.rect.intersects(&block.rect));
            if clear {
                picked.push(o);
                if choose(candidates, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::with_capacity(candidates.len());
    if !choose(&candidates, &mut picked) {
        let rects: Vec<Rect> = candidates.iter().map(|c| c[0].1.rect).collect();
        return Err(fail(format!(
            "no choice of blocks among {rects:?} avoids overlaps"
        )));
    }
    let mut grass = Vec::new();
    let mut inv_grass = Vec::new();
    for (options, &p) in candidates.into_iter().zip(&picked) {
        match options
            .into_iter()
            .nth(p)
            .expect("picked index is in range")
        {
            (GroupKind::Row, block) => grass.push(block),
            (GroupKind::Column, block) => inv_grass.push(block),
        }
    }
    let all_rects: Vec<Rect> = grass.iter().chain(&inv_grass).map(|b| b.rect).collect();
    for &cell in &diagram.blanks {
        if !dominant_cells.contains(&cell) && !all_rects.iter().any(|r| r.contains(cell)) {
            return Err(fail(format!("blank {cell:?} lies outside every block")));
        }
    }
    // fixed pipes outside the blocks carry no elbows other than the Rothe ones
    debug_assert!(rothe_bpd(pi)
        .cells()
        .filter(|&(c, _)| !all_rects.iter().any(|r| r.contains(c)))
        .all(|(_, t)| t != Tile::NwElbow));

    Ok(BlockDecomposition {
        dominant,
        grassmannian_blocks: grass,
        inverse_grassmannian_blocks: inv_grass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cells(v: &[(usize, usize)]) -> BTreeSet<Cell> {
        v.iter().copied().collect()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("14253").word(), &[1, 4, 2, 5, 3]);
        let big = p("1,2,3,4,5,6,7,8,10,9");
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,10,9");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("1x3".parse::<Permutation>().is_err());
    }

    #[test]
    fn pattern_examples() {
        assert!(p("14253").avoids(&p("1432")));
        assert!(p("14253").avoids(&p("2143")));
        assert!(p("135264").avoids(&p("1432")));
        assert!(p("1432").contains_pattern(&p("1432")));
        assert!(p("21543").contains_pattern(&p("2143")));
        for n in 1..=6 {
            let id = Permutation::identity(n);
            assert!(id.avoids(&p("21")));
            assert!(id.avoids(&p("1432")));
        }
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(p("1432").lehmer_code(), vec![0, 2, 1, 0]);
        assert_eq!(Permutation::identity(5).lehmer_code(), vec![0; 5]);
        assert_eq!(Permutation::longest(5).lehmer_code(), vec![4, 3, 2, 1, 0]);
        for pi in Permutation::all(5) {
            assert_eq!(
                Permutation::from_lehmer_code(&pi.lehmer_code()).unwrap(),
                pi
            );
        }
        assert!(Permutation::from_lehmer_code(&[3, 0]).is_err());
    }

    #[test]
    fn grassmannian_examples() {
        assert!(p("14253").is_inverse_grassmannian());
        assert!(p("146235").is_grassmannian());
        assert!(p("142563").is_inverse_grassmannian());
        assert!(!p("142563").is_grassmannian());
        assert!(Permutation::identity(4).is_grassmannian());
    }

    #[test]
    fn rothe_examples() {
        assert!(rothe_diagram(&Permutation::identity(4)).blanks.is_empty());
        assert_eq!(rothe_diagram(&p("21")).blanks, cells(&[(1, 1)]));
        assert_eq!(
            rothe_diagram(&p("1432")).blanks,
            cells(&[(2, 2), (2, 3), (3, 2)])
        );
    }

    #[test]
    fn essential_and_dominant_examples() {
        let id = Permutation::identity(4);
        assert!(essential_boxes(&id).is_empty());
        assert!(dominant_region(&id).is_empty());
        assert_eq!(essential_boxes(&p("1432")), cells(&[(3, 2), (2, 3)]));
        assert!(dominant_region(&p("1432")).is_empty());
        // D(321) = {(1,1),(1,2),(2,1)}; its SE corners are (1,2) and (2,1)
        assert_eq!(
            rothe_diagram(&p("321")).blanks,
            cells(&[(1, 1), (1, 2), (2, 1)])
        );
        assert_eq!(essential_boxes(&p("321")), cells(&[(1, 2), (2, 1)]));
        assert_eq!(dominant_region(&p("321")), cells(&[(1, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn shapes() {
        assert!(is_partition_shaped(&cells(&[(1, 1), (1, 2), (2, 1)])));
        assert!(!is_partition_shaped(&cells(&[(1, 1), (2, 1), (2, 2)])));
        assert!(is_rectangle(&cells(&[(2, 2), (2, 3)])));
        assert!(!is_rectangle(&cells(&[(1, 1), (1, 2), (2, 1)])));
    }

    #[test]
    fn block_decomposition_trivial_cases() {
        let d = block_decomposition(&Permutation::identity(5)).unwrap();
        assert!(d.dominant.is_empty());
        assert_eq!(d.blocks().count(), 0);
        // 4321 and 3412 are dominant: the diagram is one partition at (1,1)
        let d = block_decomposition(&p("4321")).unwrap();
        assert_eq!(d.dominant, vec![3, 2, 1]);
        assert_eq!(d.blocks().count(), 0);
        let d = block_decomposition(&p("3412")).unwrap();
        assert_eq!(d.dominant, vec![2, 2]);
        assert_eq!(d.blocks().count(), 0);
    }

    #[test]
    fn block_decomposition_single_inverse_grassmannian() {
        let d = block_decomposition(&p("14253")).unwrap();
        assert!(d.dominant.is_empty());
        assert!(d.grassmannian_blocks.is_empty());
        assert_eq!(d.inverse_grassmannian_blocks.len(), 1);
        assert_eq!(d.inverse_grassmannian_blocks[0].perm, p("14253"));
    }

    #[test]
    fn block_decomposition_rejects_patterns() {
        assert!(matches!(
            block_decomposition(&p("1432")),
            Err(PermError::ContainsPattern { .. })
        ));
        assert!(matches!(
            block_decomposition(&p("2143")),
            Err(PermError::ContainsPattern { .. })
        ));
    }

    #[test]
    fn block_decomposition_two_block_example() {
        // dominant (6,6,6,5,4) with a Grassmannian block 146235 to the east and
        // an inverse-Grassmannian block 142563 to the south; the ambient
        // permutation is assembled from the Lehmer code of the combined diagram
        let pi = Permutation::from_lehmer_code(&[6, 8, 9, 5, 4, 0, 2, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!(pi, p("7,10,12,6,5,1,4,2,8,9,3,11"));
        let d = block_decomposition(&pi).unwrap();
        assert_eq!(d.dominant, vec![6, 6, 6, 5, 4]);
        assert_eq!(d.grassmannian_blocks.len(), 1);
        assert_eq!(d.grassmannian_blocks[0].perm, p("146235"));
        assert_eq!(
            d.grassmannian_blocks[0].rect,
            Rect {
                top: 1,
                left: 7,
                height: 3,
                width: 6
            }
        );
        assert_eq!(d.inverse_grassmannian_blocks.len(), 1);
        assert_eq!(d.inverse_grassmannian_blocks[0].perm, p("142563"));
        assert_eq!(
            d.inverse_grassmannian_blocks[0].rect,
            Rect {
                top: 6,
                left: 1,
                height: 6,
                width: 3
            }
        );
    }

    #[test]
    fn block_decomposition_lone_boxes() {
        // 1243 is both Grassmannian and inverse-Grassmannian
        let d = block_decomposition(&p("23514")).unwrap();
        let perms: Vec<&Permutation> = d.blocks().map(|b| &b.perm).collect();
        assert_eq!(perms, vec![&p("1243")]);

        // column 4 carries a pipe straight through the block
        let d = block_decomposition(&p("42513")).unwrap();
        assert_eq!(d.inverse_grassmannian_blocks.len(), 1);
        assert_eq!(d.inverse_grassmannian_blocks[0].perm, p("132"));

        // a column block at (2,6) would overlap the row block below it
        let d = block_decomposition(&p("5713624")).unwrap();
        let perms: Vec<String> = d
            .grassmannian_blocks
            .iter()
            .map(|b| b.perm.to_string())
            .collect();
        assert_eq!(perms.len(), 2);
        assert!(d.inverse_grassmannian_blocks.is_empty());
        assert!(!d.grassmannian_blocks[0].rect.intersects(&d.grassmannian_blocks[1].rect));
    }
}
