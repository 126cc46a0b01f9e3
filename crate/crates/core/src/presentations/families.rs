use super::{default_names, Letter, Presentation, Word};
use crate::error::{check_prime, Error, Result};

/// The fixed enumeration of nontrivial elements of a free group used by
/// [`schlage_puchta_truncation`].
pub const WORD_ENUMERATION_ORDER: &str =
    "shortlex over nontrivial reduced words, letters ordered a < A < b < B < ...";

/// The free group on `d` generators.
pub fn free_group(d: usize) -> Presentation {
    Presentation::from_parts_unchecked(default_names(d), Vec::new())
}

fn prime_power(p: u64, k: u32) -> Result<i64> {
    p.checked_pow(k)
        .and_then(|v| i64::try_from(v).ok())
        .filter(|&v| v <= 1 << 24)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} is too large for a relator")))
}

/// Appends the relator `g^(p^k)`.
pub fn adjoin_power_relator(presentation: &Presentation, g: &Word, p: u64, k: u32) -> Result<Presentation> {
    check_prime(p)?;
    if g.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot adjoin a power of the empty word".into(),
        ));
    }
    let exponent = prime_power(p, k)?;
    presentation.with_relator(g.pow(exponent))
}

/// The fundamental group of the closed orientable surface of the given genus,
/// `⟨a₁,b₁,…,a_g,b_g | [a₁,b₁]⋯[a_g,b_g]⟩`.
pub fn surface_group(genus: usize) -> Result<Presentation> {
    if genus == 0 {
        return Err(Error::InvalidArgument("surface genus must be at least 1".into()));
    }
    let relator = (0..genus).fold(Word::empty(), |acc, i| {
        acc.mul(&Word::commutator(
            &Word::generator(2 * i),
            &Word::generator(2 * i + 1),
        ))
    });
    Presentation::with_generators(2 * genus, vec![relator])
}

/// Nontrivial reduced words of a free group in shortlex order
/// (see [`WORD_ENUMERATION_ORDER`]).
pub struct ReducedWords {
    rank: usize,
    level: Vec<Word>,
    pos: usize,
}

impl ReducedWords {
    pub fn new(rank: usize) -> Self {
        let level = (0..2 * rank)
            .map(|c| Word::new([Letter::from_column(c)]))
            .collect();
        ReducedWords { rank, level, pos: 0 }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.level.is_empty() {
            return None;
        }
        if self.pos == self.level.len() {
            let mut next = Vec::with_capacity(self.level.len() * (2 * self.rank - 1).max(1));
            for w in &self.level {
                let last = *w.letters().last().expect("nonempty");
                for c in 0..2 * self.rank {
                    let l = Letter::from_column(c);
                    if l != last.inverse() {
                        let mut letters = w.letters().to_vec();
                        letters.push(l);
                        next.push(Word::new(letters));
                    }
                }
            }
            self.level = next;
            self.pos = 0;
        }
        let w = self.level[self.pos].clone();
        self.pos += 1;
        Some(w)
    }
}

/// `F_d / ⟨⟨f₁^{p^{k₁}}, …, f_n^{p^{k_n}}⟩⟩` where `f_i` is the i-th word of
/// [`ReducedWords`].
pub fn schlage_puchta_truncation(d: usize, p: u64, exponents: &[u32]) -> Result<Presentation> {
    check_prime(p)?;
    if d < 2 {
        return Err(Error::InvalidArgument("rank must be at least 2".into()));
    }
    let relators = ReducedWords::new(d)
        .zip(exponents)
        .map(|(f, &k)| Ok(f.pow(prime_power(p, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Presentation::with_generators(d, relators)
}
