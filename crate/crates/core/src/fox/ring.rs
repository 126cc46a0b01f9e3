use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::presentations::Word;

/// An element of the integral group ring of a free group: a finite integer
/// combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), 1)
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    /// `w - 1`
    pub fn minus_one(w: Word) -> Self {
        let mut e = Self::monomial(w, 1);
        e.add_term(Word::empty(), -1);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Formats with the given generator names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        RingDisplay { e: self, names }
    }
}

struct RingDisplay<'a> {
    e: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Word, i64)> = self.e.terms().collect();
        terms.sort_by(|a, b| a.0.shortlex_cmp(b.0));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            match (mag, w.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", w.display(self.names))?,
                _ => write!(f, "{mag}{}", w.display(self.names))?,
            }
        }
        Ok(())
    }
}

/// A matrix over the group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElement) {
        self.entries[i * self.cols + j] = e;
    }

    /// `diag(a, b)`: presents the direct sum of the two modules.
    pub fn block_diagonal(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }
}
