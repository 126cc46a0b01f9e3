use std::cmp::Ordering;
use std::fmt;

/// A generator or its inverse.
///
/// Letters are encoded as `2 * generator + inverse_bit`, so the natural order
/// is `a < A < b < B < ...`. The same encoding doubles as the column index of
/// a coset table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn positive(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn negative(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    /// Builds a letter from a generator index and an exponent sign (`+1` or `-1`).
    pub fn from_signed(generator: usize, sign: i8) -> Self {
        Letter::new(generator, sign < 0)
    }

    pub fn from_column(column: usize) -> Self {
        Letter(column as u32)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Column of this letter in a coset table.
    #[inline]
    pub fn column(self) -> usize {
        self.0 as usize
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds the free reduction of the given letter sequence.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Builds a word from `(generator, sign)` pairs.
    pub fn from_signed(pairs: &[(usize, i8)]) -> Self {
        Word::new(pairs.iter().map(|&(g, s)| Letter::from_signed(g, s)))
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::positive(index)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Signed generator indices, as `(index, ±1)`.
    pub fn signed(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.0.iter().map(|l| (l.generator(), l.sign()))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let n = exponent.unsigned_abs() as usize;
        Word::new(base.0.iter().copied().cycle().take(base.len() * n))
    }

    /// The commutator `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Strips matching first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Exponent sum of each generator, indexed by generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generator_count];
        for l in &self.0 {
            sums[l.generator()] += l.sign() as i64;
        }
        sums
    }

    /// Applies a letter substitution; letters mapped to `None` are deleted.
    pub fn map_letters(&self, mut f: impl FnMut(Letter) -> Option<Letter>) -> Word {
        Word::new(self.0.iter().filter_map(|&l| f(l)))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Shortlex comparison: by length, then letter by letter (`a < A < b < B`).
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter)
    }
}

/// Renders a word using generator names.
///
/// When every name is a single lowercase ASCII letter the compact form
/// (`abAB`) is used, which is what the word parser reads back. Otherwise
/// letters are joined with `*` and inverses carry `^-1`.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

pub(crate) fn names_are_letters(names: &[String]) -> bool {
    names
        .iter()
        .all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase())
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let fallback = |g: usize| format!("x{g}");
        if names_are_letters(self.names) {
            for l in self.word.letters() {
                let c = self.names[l.generator()].as_bytes()[0] as char;
                let c = if l.is_inverse() { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            }
        } else {
            for (i, l) in self.word.letters().iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                let name = self
                    .names
                    .get(l.generator())
                    .cloned()
                    .unwrap_or_else(|| fallback(l.generator()));
                if l.is_inverse() {
                    write!(f, "{name}^-1")?;
                } else {
                    f.write_str(&name)?;
                }
            }
        }
        Ok(())
    }
}
