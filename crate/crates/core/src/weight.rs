//! Row-indexed monomials `x_1^{e_1} x_2^{e_2} ...` and polynomials with
//! positive integer coefficients, used for every weight in the crate.

use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; index 0 holds the exponent of `x_1`. Trailing zeros are
/// never stored, so equal monomials compare equal. Ordered by degree, then
/// lexicographically with `x_1 > x_2 > ...`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial { exponents }
    }

    /// Product of `x_i` over the given (1-indexed) variable indices.
    pub fn from_rows<I: IntoIterator<Item = usize>>(rows: I) -> Self {
        let mut exponents = Vec::new();
        for i in rows {
            assert!(i >= 1, "variables are 1-indexed");
            if exponents.len() < i {
                exponents.resize(i, 0);
            }
            exponents[i - 1] += 1;
        }
        Monomial::from_exponents(exponents)
    }

    /// Exponent of `x_i`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Substitutes `x_k -> x_{m+1-k}` for `1 <= k <= m`.
    pub fn reversed_within(&self, m: usize) -> Monomial {
        assert!(self.exponents.len() <= m, "variable index exceeds {m}");
        let mut e = vec![0; m];
        for (k, &x) in self.exponents.iter().enumerate() {
            e[m - 1 - k] = x;
        }
        Monomial::from_exponents(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with positive integer coefficients; equivalently a multiset
/// of monomials. Printed largest term first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightPolynomial {
    terms: BTreeMap<Monomial, u64>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        WeightPolynomial::default()
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: u64) {
        if coefficient > 0 {
            *self.terms.entry(m).or_insert(0) += coefficient;
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of coefficients (the multiset's cardinality).
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient-wise `self <= other`.
    pub fn is_dominated_by(&self, other: &WeightPolynomial) -> bool {
        self.terms.iter().all(|(m, &c)| c <= other.coefficient(m))
    }
}

impl FromIterator<Monomial> for WeightPolynomial {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = WeightPolynomial::zero();
        for m in iter {
            p.add_term(m, 1);
        }
        p
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| match (c, m.is_one()) {
                (1, _) => m.to_string(),
                (_, true) => c.to_string(),
                _ => format!("{c}*{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
