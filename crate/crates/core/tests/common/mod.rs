//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use asm_tsscpp::perm::Permutation;
use asm_tsscpp::poset::Poset;
use asm_tsscpp::weight::{Monomial, WeightPolynomial};
use itertools::Itertools;
use rand::Rng;

/// Pattern containment by trying every subsequence.
pub fn brute_contains(pi: &Permutation, pattern: &Permutation) -> bool {
    let w = pi.word();
    let p = pattern.word();
    (0..w.len()).combinations(p.len()).any(|idx| {
        idx.iter().tuple_combinations().zip(p.iter().tuple_combinations()).all(
            |((&a, &b), (&pa, &pb))| (w[a] < w[b]) == (pa < pb),
        )
    })
}

/// `{(i, j) : pi(i) > j and pi^{-1}(j) > i}`.
pub fn rothe_by_definition(pi: &Permutation) -> BTreeSet<(usize, usize)> {
    let n = pi.len();
    let inv = pi.inverse();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            if pi.at(i) > j && inv.at(j) > i {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Number of ASMs (and of TSSCPP) of order `n`: `Π_{k<n} (3k+1)! / (n+k)!`.
pub fn andrews(n: usize) -> u64 {
    // evaluate as a ratio of exact products in u128
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 0..n as u128 {
        num *= (1..=3 * k + 1).product::<u128>();
        den *= (1..=n as u128 + k).product::<u128>();
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1);
    num as u64
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Poly = BTreeMap<Vec<u32>, i64>;

fn divided_difference(f: &Poly, i: usize) -> Poly {
    let mut out: Poly = BTreeMap::new();
    for (e, &c) in f {
        let (a, b) = (e[i - 1], e[i]);
        let (sign, lo, hi) = match a.cmp(&b) {
            std::cmp::Ordering::Equal => continue,
            std::cmp::Ordering::Greater => (1, b, a),
            std::cmp::Ordering::Less => (-1, a, b),
        };
        for k in 0..hi - lo {
            let mut g = e.clone();
            if sign == 1 {
                g[i - 1] = hi - 1 - k;
                g[i] = lo + k;
            } else {
                g[i - 1] = lo + k;
                g[i] = hi - 1 - k;
            }
            *out.entry(g).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Schubert polynomial by divided differences from `x1^{n-1} x2^{n-2} ...`.
pub fn schubert_by_divided_differences(pi: &Permutation) -> WeightPolynomial {
    fn go(w: Vec<usize>, memo: &mut HashMap<Vec<usize>, Poly>) -> Poly {
        if let Some(p) = memo.get(&w) {
            return p.clone();
        }
        let n = w.len();
        let result = match (1..n).find(|&i| w[i - 1] < w[i]) {
            None => {
                let e: Vec<u32> = (0..n).map(|k| (n - 1 - k) as u32).collect();
                BTreeMap::from([(e, 1)])
            }
            Some(i) => {
                let mut up = w.clone();
                up.swap(i - 1, i);
                divided_difference(&go(up, memo), i)
            }
        };
        memo.insert(w, result.clone());
        result
    }
    let poly = go(pi.word().to_vec(), &mut HashMap::new());
    let mut out = WeightPolynomial::zero();
    for (e, c) in poly {
        assert!(c > 0, "Schubert coefficients are positive");
        out.add_term(Monomial::from_exponents(e), c as u64);
    }
    out
}

/// Permutation of a pipe dream as the product of `s_{i+j-1}` over crosses
/// read right to left along rows, top to bottom. `None` when the word is not
/// reduced.
pub fn pd_permutation_by_word(n: usize, crosses: &[(usize, usize)]) -> Option<Permutation> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j) in crosses {
        rows.entry(i).or_default().push(j);
    }
    let mut word: Vec<usize> = (1..=n).collect();
    let mut length = 0;
    for (i, mut cols) in rows {
        cols.sort_unstable_by(|a, b| b.cmp(a));
        for j in cols {
            let k = i + j - 1;
            // right multiplication by s_k swaps positions k and k+1
            if word[k - 1] > word[k] {
                return None;
            }
            word.swap(k - 1, k);
            length += 1;
        }
    }
    let pi = Permutation::new(word).unwrap();
    assert_eq!(pi.inversions(), length);
    Some(pi)
}

/// Searches all bijections; labels are compared when `respect_labels`.
pub fn brute_is_isomorphic<A, B>(p: &Poset<A>, q: &Poset<B>, respect_labels: bool) -> bool {
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return false;
    }
    let qc: BTreeSet<(usize, usize)> = q.covers().iter().copied().collect();
    (0..q.len()).permutations(p.len()).any(|m| {
        (!respect_labels || (0..p.len()).all(|i| p.label(i) == q.label(m[i])))
            && p.covers().iter().all(|&(a, b)| qc.contains(&(m[a], m[b])))
    })
}

/// Checks that `map` is a cover- (and optionally label-) preserving bijection.
pub fn is_isomorphism<A, B>(p: &Poset<A>, q: &Poset<B>, map: &[usize], respect_labels: bool) -> bool {
    let image: BTreeSet<usize> = map.iter().copied().collect();
    let qc: BTreeSet<(usize, usize)> = q.covers().iter().copied().collect();
    map.len() == p.len()
        && image.len() == q.len()
        && p.covers().len() == q.covers().len()
        && p.covers().iter().all(|&(a, b)| qc.contains(&(map[a], map[b])))
        && (!respect_labels || (0..p.len()).all(|i| p.label(i) == q.label(map[i])))
}

/// Random poset on `0..n` generated by edges `i -> j` (`i < j`) with
/// probability `density`, keys shuffled by `relabel`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64, relabel: &[usize]) -> Poset<usize> {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((relabel[i], relabel[j]));
            }
        }
    }
    Poset::from_relations((0..n).collect(), &rel).unwrap()
}

pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}
