//! Bumpless pipe dreams: the six-tile grid, pipe tracing, reducedness, Rothe
//! BPDs and simple droops.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::asm::{asm_to_bpd, Asm};
use crate::perm::Permutation;
use crate::poset::{closure, Poset};
use crate::weight::Monomial;
use crate::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BpdError {
    #[error("expected {expected} tiles for size {n}, got {got}")]
    Shape { n: usize, expected: usize, got: usize },
    #[error("unknown tile character {0:?}")]
    BadChar(char),
    #[error("pipe mismatch at ({0},{1}): {2}")]
    Mismatch(usize, usize, &'static str),
    #[error("bumpless pipe dream is not reduced: pipes {0} and {1} cross twice")]
    NotReduced(usize, usize),
}

/// The six tiles. Pipes enter a tile from the south or west and leave to the
/// north or east.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tile {
    Blank,
    Horizontal,
    Vertical,
    Cross,
    /// Joins the south edge to the east edge (an ASM `+1`).
    SeElbow,
    /// Joins the west edge to the north edge (an ASM `-1`).
    NwElbow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Edges {
    north: bool,
    south: bool,
    east: bool,
    west: bool,
}

impl Tile {
    pub const ALL: [Tile; 6] = [
        Tile::Blank,
        Tile::Horizontal,
        Tile::Vertical,
        Tile::Cross,
        Tile::SeElbow,
        Tile::NwElbow,
    ];

    fn edges(self) -> Edges {
        let (north, south, east, west) = match self {
            Tile::Blank => (false, false, false, false),
            Tile::Horizontal => (false, false, true, true),
            Tile::Vertical => (true, true, false, false),
            Tile::Cross => (true, true, true, true),
            Tile::SeElbow => (false, true, true, false),
            Tile::NwElbow => (true, false, false, true),
        };
        Edges {
            north,
            south,
            east,
            west,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Horizontal => '-',
            Tile::Vertical => '|',
            Tile::Cross => '+',
            Tile::SeElbow => 'r',
            Tile::NwElbow => 'j',
        }
    }

    pub fn from_char(c: char) -> Result<Tile, BpdError> {
        Ok(match c {
            '.' => Tile::Blank,
            '-' => Tile::Horizontal,
            '|' => Tile::Vertical,
            '+' => Tile::Cross,
            'r' => Tile::SeElbow,
            'j' => Tile::NwElbow,
            other => return Err(BpdError::BadChar(other)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bpd {
    n: usize,
    tiles: Vec<Tile>,
}

/// Result of following every pipe through a BPD. Pipes are labeled
/// `1..=n` by the column where they enter along the south border.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpdRouting {
    /// Cells visited by each pipe, south to north-east; index `k-1` is pipe `k`.
    pub paths: Vec<Vec<Cell>>,
    /// For each cross tile, the two pipes meeting there (smaller label first).
    pub crossings: BTreeMap<Cell, (usize, usize)>,
    /// Row at which each pipe leaves the east border; index `k-1` is pipe `k`.
    pub exit_rows: Vec<usize>,
}

impl Bpd {
    /// Builds a BPD after checking that neighbouring tiles agree on every
    /// shared edge and that pipes occupy exactly the south and east borders.
    pub fn new(n: usize, tiles: Vec<Tile>) -> Result<Bpd, BpdError> {
        if tiles.len() != n * n {
            return Err(BpdError::Shape {
                n,
                expected: n * n,
                got: tiles.len(),
            });
        }
        let d = Bpd { n, tiles };
        d.check_edges()?;
        Ok(d)
    }

    fn check_edges(&self) -> Result<(), BpdError> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let e = self.tile(i, j).edges();
                if i == 1 && e.north {
                    return Err(BpdError::Mismatch(i, j, "pipe touches the north border"));
                }
                if j == 1 && e.west {
                    return Err(BpdError::Mismatch(i, j, "pipe touches the west border"));
                }
                if i == n && !e.south {
                    return Err(BpdError::Mismatch(i, j, "no pipe enters from the south border"));
                }
                if j == n && !e.east {
                    return Err(BpdError::Mismatch(i, j, "no pipe leaves through the east border"));
                }
                if j < n && e.east != self.tile(i, j + 1).edges().west {
                    return Err(BpdError::Mismatch(i, j, "east edge disagrees with neighbour"));
                }
                if i < n && e.south != self.tile(i + 1, j).edges().north {
                    return Err(BpdError::Mismatch(i, j, "south edge disagrees with neighbour"));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, i: usize, j: usize) -> Tile {
        self.tiles[(i - 1) * self.n + (j - 1)]
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, Tile)> + '_ {
        self.tiles
            .iter()
            .enumerate()
            .map(move |(k, &t)| ((k / self.n + 1, k % self.n + 1), t))
    }

    pub fn blank_cells(&self) -> BTreeSet<Cell> {
        self.cells()
            .filter(|&(_, t)| t == Tile::Blank)
            .map(|(c, _)| c)
            .collect()
    }

    /// Number of blank tiles in each row, rows `1..=n`.
    pub fn row_blank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for ((i, _), t) in self.cells() {
            if t == Tile::Blank {
                counts[i - 1] += 1;
            }
        }
        counts
    }

    /// `Π x_i` over blank tiles `(i, j)`.
    pub fn blank_weight(&self) -> Monomial {
        Monomial::from_rows(self.blank_cells().into_iter().map(|(i, _)| i))
    }

    pub fn trace_pipes(&self) -> BpdRouting {
        let n = self.n;
        // label on the north edge of each cell, filled bottom-up
        let mut north: Vec<Option<usize>> = vec![None; n * n];
        let mut paths: Vec<Vec<Cell>> = vec![Vec::new(); n];
        let mut crossings = BTreeMap::new();
        let mut exit_rows = vec![0; n];
        for i in (1..=n).rev() {
            let mut from_west: Option<usize> = None;
            for j in 1..=n {
                let from_south = if i == n {
                    Some(j)
                } else {
                    north[i * n + (j - 1)]
                };
                let (up, right) = match self.tile(i, j) {
                    Tile::Blank => (None, None),
                    Tile::Horizontal => (None, from_west),
                    Tile::Vertical => (from_south, None),
                    Tile::Cross => {
                        let (a, b) = (from_south.unwrap(), from_west.unwrap());
                        crossings.insert((i, j), (a.min(b), a.max(b)));
                        (from_south, from_west)
                    }
                    Tile::SeElbow => (None, from_south),
                    Tile::NwElbow => (from_west, None),
                };
                for p in [from_south, from_west].into_iter().flatten() {
                    paths[p - 1].push((i, j));
                }
                north[(i - 1) * n + (j - 1)] = up;
                from_west = right;
            }
            if let Some(p) = from_west {
                exit_rows[p - 1] = i;
            }
        }
        BpdRouting {
            paths,
            crossings,
            exit_rows,
        }
    }

    /// First pipe pair (if any) meeting at two or more cross tiles.
    fn double_crossing(&self) -> Option<(usize, usize)> {
        let mut seen = BTreeSet::new();
        self.trace_pipes()
            .crossings
            .into_values()
            .find(|pair| !seen.insert(*pair))
    }

    pub fn is_reduced(&self) -> bool {
        self.double_crossing().is_none()
    }

    /// Reads pipe labels down the east border. Only defined for reduced BPDs.
    pub fn permutation(&self) -> Result<Permutation, BpdError> {
        let routing = self.trace_pipes();
        let mut seen = BTreeSet::new();
        if let Some(&(a, b)) = routing.crossings.values().find(|p| !seen.insert(**p)) {
            return Err(BpdError::NotReduced(a, b));
        }
        Ok(permutation_from_exits(&routing.exit_rows))
    }

    /// The permutation if the BPD is reduced, `None` otherwise.
    pub fn reduced_permutation(&self) -> Option<Permutation> {
        self.permutation().ok()
    }

    /// Every BPD reachable by one simple droop.
    ///
    /// A droop needs an SE elbow at `(i,j)` and a blank at `(i+1,j+1)`. The
    /// elbow's pipe enters the 2×2 square through `(i+1,j)` (a vertical tile or
    /// an NW elbow) and leaves through `(i,j+1)` (a horizontal tile or an NW
    /// elbow); afterwards it runs through `(i+1,j+1)` and `(i,j)` is blank.
    pub fn simple_droops(&self) -> Vec<Bpd> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..n {
            for j in 1..n {
                if self.tile(i, j) != Tile::SeElbow || self.tile(i + 1, j + 1) != Tile::Blank {
                    continue;
                }
                let top_right = match self.tile(i, j + 1) {
                    Tile::Horizontal => Tile::SeElbow,
                    Tile::NwElbow => Tile::Vertical,
                    _ => continue,
                };
                let bottom_left = match self.tile(i + 1, j) {
                    Tile::Vertical => Tile::SeElbow,
                    Tile::NwElbow => Tile::Horizontal,
                    _ => continue,
                };
                let mut tiles = self.tiles.clone();
                tiles[(i - 1) * n + (j - 1)] = Tile::Blank;
                tiles[(i - 1) * n + j] = top_right;
                tiles[i * n + (j - 1)] = bottom_left;
                tiles[i * n + j] = Tile::NwElbow;
                out.push(Bpd::new(n, tiles).expect("a simple droop yields a valid tiling"));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for row in self.tiles.chunks(self.n) {
            s.extend(row.iter().map(|t| t.to_char()));
            s.push('\n');
        }
        s
    }

    /// Parses `n` lines of `n` tile characters.
    pub fn from_text(text: &str) -> Result<Bpd, BpdError> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        let mut tiles = Vec::with_capacity(n * n);
        for line in &lines {
            for c in line.chars() {
                tiles.push(Tile::from_char(c)?);
            }
        }
        Bpd::new(n, tiles)
    }

    pub fn to_asm(&self) -> Asm {
        crate::asm::bpd_to_asm(self)
    }
}

impl fmt::Display for Bpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn permutation_from_exits(exit_rows: &[usize]) -> Permutation {
    let mut word = vec![0; exit_rows.len()];
    for (k, &row) in exit_rows.iter().enumerate() {
        word[row - 1] = k + 1;
    }
    Permutation::new(word).expect("exit rows form a permutation")
}

/// The BPD of the permutation matrix of `pi`; its blanks form `D(π)`.
pub fn rothe_bpd(pi: &Permutation) -> Bpd {
    asm_to_bpd(&Asm::permutation_matrix(pi))
}

/// Closure of the Rothe BPD under simple droops. Each element is labeled with
/// its blank weight.
pub fn droop_poset(pi: &Permutation) -> Poset<Bpd> {
    closure(rothe_bpd(pi), |d| d.simple_droops())
        .expect("droops strictly lower the row sum of blank tiles")
        .with_labels(|d| d.blank_weight().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::rothe_diagram;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip_and_errors() {
        let d = rothe_bpd(&p("1432"));
        assert_eq!(Bpd::from_text(&d.to_text()).unwrap(), d);
        assert!(matches!(Bpd::from_text("x\n"), Err(BpdError::BadChar('x'))));
        // a lone horizontal tile has no pipe entering from the south
        assert!(matches!(Bpd::from_text("-\n"), Err(BpdError::Mismatch(1, 1, _))));
        assert!(matches!(
            Bpd::from_text("r-\n||\n"),
            Err(BpdError::Mismatch(..))
        ));
    }

    #[test]
    fn identity_routing() {
        let d = rothe_bpd(&Permutation::identity(4));
        let r = d.trace_pipes();
        assert_eq!(r.exit_rows, vec![1, 2, 3, 4]);
        assert!(r.crossings.is_empty());
        assert!(d.is_reduced());
        assert_eq!(d.permutation().unwrap(), Permutation::identity(4));
        assert!(d.blank_weight().is_one());
        assert!(d.simple_droops().is_empty());
    }

    #[test]
    fn transposition_routing() {
        let d = rothe_bpd(&p("21"));
        let r = d.trace_pipes();
        assert_eq!(r.crossings.values().copied().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(r.exit_rows, vec![2, 1]);
        assert_eq!(d.permutation().unwrap(), p("21"));
        assert!(d.simple_droops().is_empty());
    }

    #[test]
    fn sample_1432_routing() {
        let d = Bpd::from_text(".r--\nrj.r\n|.r+\n|r++\n").unwrap();
        let r = d.trace_pipes();
        assert_eq!(
            r.crossings.values().copied().collect::<Vec<_>>(),
            vec![(3, 4), (2, 3), (2, 4)]
        );
        assert_eq!(d.permutation().unwrap(), p("1432"));
        assert_eq!(d.blank_weight(), Monomial::from_rows([1, 2, 3]));
        assert_eq!(r.paths[0], vec![(4, 1), (3, 1), (2, 1), (2, 2), (1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn rothe_blanks_match_diagram() {
        for n in 1..=5 {
            for pi in Permutation::all(n) {
                let d = rothe_bpd(&pi);
                assert_eq!(d.permutation().unwrap(), pi);
                assert_eq!(d.blank_cells(), rothe_diagram(&pi).blanks);
                assert!(d.tiles().iter().all(|&t| t != Tile::NwElbow));
                let rows = rothe_diagram(&pi).blanks.into_iter().map(|(i, _)| i);
                assert_eq!(d.blank_weight(), Monomial::from_rows(rows));
            }
        }
    }

    #[test]
    fn droop_example_132() {
        let d = rothe_bpd(&p("132"));
        let droops = d.simple_droops();
        assert_eq!(droops.len(), 1);
        assert_eq!(droops[0].to_text(), ".r-\nrjr\n|r+\n");
        assert_eq!(droops[0].permutation().unwrap(), p("132"));
    }

    #[test]
    fn droop_moves_one_blank_up() {
        for pi in Permutation::all(5) {
            for d in droop_poset(&pi).elements() {
                let before = d.row_blank_counts();
                for e in d.simple_droops() {
                    let after = e.row_blank_counts();
                    let diff: Vec<i64> = after
                        .iter()
                        .zip(&before)
                        .map(|(&a, &b)| a as i64 - b as i64)
                        .collect();
                    let up = diff.iter().position(|&x| x == 1).unwrap();
                    assert_eq!(diff[up + 1], -1);
                    assert_eq!(diff.iter().filter(|&&x| x != 0).count(), 2);
                }
            }
        }
    }

    #[test]
    fn droop_poset_small() {
        assert_eq!(droop_poset(&Permutation::identity(4)).len(), 1);
        let p1432 = droop_poset(&p("1432"));
        assert_eq!(p1432.len(), 5);
        assert_eq!(p1432.minimal_elements(), vec![p1432.index_of(&rothe_bpd(&p("1432"))).unwrap()]);
    }
}
