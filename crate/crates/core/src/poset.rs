//! Finite posets generated by move systems, stored as Hasse diagrams.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Largest poset accepted by [`is_isomorphic`].
pub const MAX_ISOMORPHISM_SIZE: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("move system contains a cycle through {0} elements")]
    Cycle(usize),
    #[error("poset has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("relation index {0} out of range")]
    BadIndex(usize),
}

/// A finite poset on sorted, distinct keys. `covers` holds index pairs
/// `(lower, upper)` of the Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset<K> {
    elements: Vec<K>,
    covers: Vec<(usize, usize)>,
    labels: Vec<String>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl<K: Ord + Clone> Poset<K> {
    /// Builds the poset generated by `relations` (pairs `x < y`, possibly
    /// redundant). Keys are sorted and deduplicated first.
    pub fn from_relations(elements: Vec<K>, relations: &[(K, K)]) -> Result<Self, PosetError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let mut edges = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let i = elements.binary_search(a).map_err(PosetError::BadIndex)?;
            let j = elements.binary_search(b).map_err(PosetError::BadIndex)?;
            edges.push((i, j));
        }
        Poset::from_sorted_edges(elements, edges)
    }

    fn from_sorted_edges(elements: Vec<K>, mut edges: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let n = elements.len();
        edges.sort_unstable();
        edges.dedup();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(PosetError::BadIndex(a.max(b)));
            }
            if a == b {
                return Err(PosetError::Cycle(1));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() < n {
            return Err(PosetError::Cycle(n - order.len()));
        }

        // strict upper sets as bitsets, filled in reverse topological order
        let words = n.div_ceil(64);
        let mut above = vec![vec![0u64; words]; n];
        let mut covers = Vec::new();
        for &x in order.iter().rev() {
            let mut reach = vec![0u64; words];
            for &y in &succ[x] {
                for (r, a) in reach.iter_mut().zip(&above[y]) {
                    *r |= a;
                }
            }
            for &y in &succ[x] {
                if reach[y / 64] >> (y % 64) & 1 == 0 {
                    covers.push((x, y));
                }
            }
            for &y in &succ[x] {
                reach[y / 64] |= 1 << (y % 64);
            }
            above[x] = reach;
        }
        covers.sort_unstable();
        Ok(Poset::with_covers(elements, covers))
    }

    fn with_covers(elements: Vec<K>, covers: Vec<(usize, usize)>) -> Self {
        let n = elements.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }
        for v in down.iter_mut() {
            v.sort_unstable();
        }
        Poset {
            elements,
            covers,
            labels: vec![String::new(); n],
            up,
            down,
        }
    }

    pub fn with_labels<F: Fn(&K) -> String>(mut self, f: F) -> Self {
        self.labels = self.elements.iter().map(f).collect();
        self
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.elements.binary_search(k).ok()
    }

    pub fn contains(&self, k: &K) -> bool {
        self.index_of(k).is_some()
    }

    /// Same poset with every relation reversed.
    pub fn dual(&self) -> Poset<K> {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        let mut p = Poset::with_covers(self.elements.clone(), covers);
        p.labels = self.labels.clone();
        p
    }

    /// Index-keyed copy; keeps labels and covers.
    pub fn shape(&self) -> Poset<usize> {
        let mut p = Poset::with_covers((0..self.len()).collect(), self.covers.clone());
        p.labels = self.labels.clone();
        p
    }
}

impl<K> Poset<K> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &K {
        &self.elements[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// `i <= j` in the poset.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            if x == j {
                return true;
            }
            for &y in &self.up[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Graphviz rendering with one node per element and one edge per cover.
    pub fn to_dot<F: Fn(&K) -> String>(&self, text: F) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, k) in self.elements.iter().enumerate() {
            let mut body = text(k);
            if !self.labels[i].is_empty() {
                if !body.is_empty() && !body.ends_with('\n') {
                    body.push('\n');
                }
                body.push_str(&self.labels[i]);
            }
            let escaped = body
                .replace('\\', "\\\\")
                .replace('"', "\\\"")
                .trim_end_matches('\n')
                .replace('\n', "\\l")
                + "\\l";
            let _ = writeln!(s, "  n{i} [label=\"{escaped}\"];");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure of `seed` under `successors`, each successor lying
/// strictly above its source.
pub fn closure<K, F>(seed: K, successors: F) -> Result<Poset<K>, PosetError>
where
    K: Ord + Clone,
    F: Fn(&K) -> Vec<K>,
{
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    let mut found = vec![seed.clone()];
    let mut edges = Vec::new();
    ids.insert(seed, 0);
    let mut head = 0;
    while head < found.len() {
        let x = found[head].clone();
        for y in successors(&x) {
            let next = found.len();
            let j = *ids.entry(y.clone()).or_insert(next);
            if j == next {
                found.push(y);
            }
            edges.push((head, j));
        }
        head += 1;
    }
    // renumber into sorted key order
    let rank: Vec<usize> = {
        let mut r = vec![0; found.len()];
        for (pos, &id) in ids.values().enumerate() {
            r[id] = pos;
        }
        r
    };
    let edges = edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    Poset::from_sorted_edges(ids.into_keys().collect(), edges)
}

/// Cartesian product; covers change one coordinate by a cover. Labels are
/// joined with `" | "`.
pub fn product<A: Ord + Clone, B: Ord + Clone>(p: &Poset<A>, q: &Poset<B>) -> Poset<(A, B)> {
    let m = q.len();
    let mut elements = Vec::with_capacity(p.len() * m);
    let mut labels = Vec::with_capacity(p.len() * m);
    for (i, a) in p.elements.iter().enumerate() {
        for (j, b) in q.elements.iter().enumerate() {
            elements.push((a.clone(), b.clone()));
            labels.push(join_labels(&[p.label(i), q.label(j)]));
        }
    }
    let mut covers = Vec::new();
    for i in 0..p.len() {
        for j in 0..m {
            for &i2 in &p.up[i] {
                covers.push((i * m + j, i2 * m + j));
            }
            for &j2 in &q.up[j] {
                covers.push((i * m + j, i * m + j2));
            }
        }
    }
    covers.sort_unstable();
    let mut r = Poset::with_covers(elements, covers);
    r.labels = labels;
    r
}

/// Product of several index-keyed posets; elements are index tuples in
/// lexicographic order. The empty product is the one-element poset.
pub fn product_all(factors: &[Poset<usize>]) -> Poset<Vec<usize>> {
    let mut acc: Poset<Vec<usize>> = Poset::with_covers(vec![Vec::new()], Vec::new());
    for f in factors {
        let p = product(&acc, f);
        let elements = p
            .elements
            .iter()
            .map(|(v, k)| {
                let mut v = v.clone();
                v.push(*k);
                v
            })
            .collect();
        let labels = p.labels.clone();
        acc = Poset::with_covers(elements, p.covers);
        acc.labels = labels;
    }
    acc
}

fn join_labels(parts: &[&str]) -> String {
    parts
        .iter()
        .filter(|s| !s.is_empty())
        .copied()
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Searches for a cover-preserving bijection `p -> q` (also preserving labels
/// when `respect_labels`). Returns `map` with `map[i]` the image of element `i`.
pub fn is_isomorphic<A, B>(
    p: &Poset<A>,
    q: &Poset<B>,
    respect_labels: bool,
) -> Result<Option<Vec<usize>>, PosetError> {
    for size in [p.len(), q.len()] {
        if size > MAX_ISOMORPHISM_SIZE {
            return Err(PosetError::TooLarge {
                size,
                limit: MAX_ISOMORPHISM_SIZE,
            });
        }
    }
    if p.len() != q.len() || p.covers.len() != q.covers.len() {
        return Ok(None);
    }
    let n = p.len();
    let (cp, cq) = refine_colours(p, q, respect_labels);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return Ok(None);
    }

    // visit p in BFS order from its smallest colour class so each new element
    // tends to have an already-mapped neighbour
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (class_size(&cp, cp[i]), cp[i], i));
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in p.up[x].iter().chain(&p.down[x]) {
                if !placed[y] {
                    placed[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, &c) in cq.iter().enumerate() {
        by_colour.entry(c).or_default().push(j);
    }
    let mut map = vec![usize::MAX; n];
    let mut inverse = vec![usize::MAX; n];
    let search = Search {
        p,
        q,
        cp: &cp,
        by_colour: &by_colour,
        order: &order,
    };
    if search.extend(0, &mut map, &mut inverse) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn class_size(colours: &[usize], c: usize) -> usize {
    colours.iter().filter(|&&x| x == c).count()
}

struct Search<'a, A, B> {
    p: &'a Poset<A>,
    q: &'a Poset<B>,
    cp: &'a [usize],
    by_colour: &'a BTreeMap<usize, Vec<usize>>,
    order: &'a [usize],
}

impl<A, B> Search<'_, A, B> {
    fn extend(&self, depth: usize, map: &mut [usize], inverse: &mut [usize]) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        for &y in &self.by_colour[&self.cp[x]] {
            if inverse[y] != usize::MAX || !self.consistent(x, y, map, inverse) {
                continue;
            }
            map[x] = y;
            inverse[y] = x;
            if self.extend(depth + 1, map, inverse) {
                return true;
            }
            map[x] = usize::MAX;
            inverse[y] = usize::MAX;
        }
        false
    }

    fn consistent(&self, x: usize, y: usize, map: &[usize], inverse: &[usize]) -> bool {
        let side = |px: &[usize], qy: &[usize]| {
            let mut mapped = 0;
            for &u in px {
                if map[u] != usize::MAX {
                    if !qy.contains(&map[u]) {
                        return false;
                    }
                    mapped += 1;
                }
            }
            qy.iter().filter(|&&v| inverse[v] != usize::MAX).count() == mapped
        };
        side(&self.p.up[x], &self.q.up[y]) && side(&self.p.down[x], &self.q.down[y])
    }
}

/// Colour refinement on the disjoint union of `p` and `q`, so colour ids
/// are comparable across the two.
fn refine_colours<A, B>(p: &Poset<A>, q: &Poset<B>, respect_labels: bool) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let up = |i: usize| if i < n { &p.up[i] } else { &q.up[i - n] };
    let down = |i: usize| if i < n { &p.down[i] } else { &q.down[i - n] };
    let offset = |i: usize| if i < n { 0 } else { n };
    let total = 2 * n;

    let mut ids: BTreeMap<(String, usize, usize), usize> = BTreeMap::new();
    let mut colour: Vec<usize> = (0..total)
        .map(|i| {
            let label = if !respect_labels {
                String::new()
            } else if i < n {
                p.labels[i].clone()
            } else {
                q.labels[i - n].clone()
            };
            let key = (label, up(i).len(), down(i).len());
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect();
    let mut classes = ids.len();
    loop {
        let mut ids: BTreeMap<(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..total)
            .map(|i| {
                let o = offset(i);
                let mut u: Vec<usize> = up(i).iter().map(|&j| colour[j + o]).collect();
                let mut d: Vec<usize> = down(i).iter().map(|&j| colour[j + o]).collect();
                u.sort_unstable();
                d.sort_unstable();
                let k = ids.len();
                *ids.entry((colour[i], u, d)).or_insert(k)
            })
            .collect();
        colour = next;
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let q_colours = colour.split_off(n);
    (colour, q_colours)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> Poset<usize> {
        let rel: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_relations((0..k).collect(), &rel).unwrap()
    }

    #[test]
    fn closure_singleton() {
        let p = closure(5u32, |_| Vec::new()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.covers().is_empty());
    }

    #[test]
    fn closure_reduces_transitive_edges() {
        // x -> x+1 and x -> x+2 on 0..=4
        let p = closure(0u32, |&x| (1..=2).map(|d| x + d).filter(|&y| y <= 4).collect()).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.covers(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn closure_detects_cycle() {
        let r = closure(0u32, |&x| vec![(x + 1) % 3]);
        assert_eq!(r, Err(PosetError::Cycle(3)));
    }

    #[test]
    fn dual_and_product() {
        let c = chain(3);
        let d = c.dual();
        assert_eq!(d.covers(), &[(1, 0), (2, 1)]);
        assert_eq!(d.dual(), c);
        let g = product(&chain(2), &chain(2));
        assert_eq!(g.len(), 4);
        assert_eq!(g.covers().len(), 4);
        assert_eq!(product_all(&[]).len(), 1);
        let three = product_all(&[chain(2), chain(3), chain(2)]);
        assert_eq!(three.len(), 12);
        assert_eq!(three.elements()[0], vec![0, 0, 0]);
    }

    #[test]
    fn isomorphism_basics() {
        let c = chain(4);
        assert_eq!(is_isomorphic(&c, &c, true).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(is_isomorphic(&c, &c.dual(), false).unwrap(), Some(vec![3, 2, 1, 0]));
        let v = Poset::from_relations(vec![0, 1, 2], &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(is_isomorphic(&v, &v.dual(), false).unwrap(), None);
        let a = chain(2).with_labels(|k| k.to_string());
        let b = chain(2).with_labels(|k| (1 - k).to_string());
        assert_eq!(is_isomorphic(&a, &b, true).unwrap(), None);
        assert!(is_isomorphic(&a, &b, false).unwrap().is_some());
    }

    #[test]
    fn dot_export() {
        let dot = chain(2).with_labels(|k| format!("w{k}")).to_dot(|k| k.to_string());
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("label=\"0\\lw0\\l\""));
    }
}
