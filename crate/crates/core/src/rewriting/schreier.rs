use std::collections::VecDeque;

use crate::cosets::CosetTable;
use crate::presentations::{default_names, Letter, Presentation, Word};

const TRIVIAL: u32 = u32::MAX;

/// A breadth-first Schreier transversal of a coset table, with the numbering
/// of the non-trivial Schreier generators `s(c, g) = t_c · g · t_{c·g}⁻¹`.
///
/// Transversal words are not stored: each coset keeps the tree edge it was
/// discovered by, which is enough to rebuild its word.
#[derive(Clone, Debug)]
pub struct SchreierData {
    index: usize,
    gens: usize,
    // (parent coset, column) of the tree edge into each coset; unused for 0
    parent: Vec<(u32, u32)>,
    generator: Vec<u32>,
    generator_count: usize,
}

pub fn schreier_data(table: &CosetTable) -> SchreierData {
    let n = table.index();
    let cols = table.columns();
    let gens = cols / 2;
    let mut parent = vec![(u32::MAX, u32::MAX); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..cols {
            let d = table.image_col(c, x);
            if !seen[d] {
                seen[d] = true;
                parent[d] = (c as u32, x as u32);
                queue.push_back(d);
            }
        }
    }
    let mut generator = vec![TRIVIAL; n * gens];
    let mut count = 0u32;
    for c in 0..n {
        for g in 0..gens {
            let d = table.image_col(c, 2 * g);
            let tree = parent[d] == (c as u32, 2 * g as u32) || parent[c] == (d as u32, 2 * g as u32 + 1);
            if !tree {
                generator[c * gens + g] = count;
                count += 1;
            }
        }
    }
    SchreierData {
        index: n,
        gens,
        parent,
        generator,
        generator_count: count as usize,
    }
}

impl SchreierData {
    pub fn index(&self) -> usize {
        self.index
    }

    /// Number of non-trivial Schreier generators.
    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Index of `s(c, g)` among the non-trivial generators, or `None` when
    /// `t_c · g` freely equals `t_{c·g}`.
    pub fn generator(&self, coset: usize, g: usize) -> Option<usize> {
        let s = self.generator[coset * self.gens + g];
        (s != TRIVIAL).then_some(s as usize)
    }

    /// The transversal word `t_c`.
    pub fn transversal_word(&self, coset: usize) -> Word {
        let mut letters = Vec::new();
        let mut c = coset;
        while c != 0 {
            let (p, x) = self.parent[c];
            letters.push(Letter::from_column(x as usize));
            c = p as usize;
        }
        letters.reverse();
        Word::new(letters)
    }

    /// Rewrites `t_c · w · t_{c·w}⁻¹` as a product of Schreier generators,
    /// returned as signed generator indices, together with the end coset.
    pub fn rewrite_from(&self, table: &CosetTable, coset: usize, word: &Word) -> (Vec<(usize, i8)>, usize) {
        let mut out = Vec::new();
        let mut c = coset;
        for &l in word.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let d = table.image_col(c, l.column());
                if let Some(s) = self.generator(d, g) {
                    out.push((s, -1));
                }
                c = d;
            } else {
                if let Some(s) = self.generator(c, g) {
                    out.push((s, 1));
                }
                c = table.image_col(c, l.column());
            }
        }
        (out, c)
    }

    /// Exponent sums of the rewritten word, as sparse `(generator, sum)`
    /// pairs sorted by generator.
    pub fn rewrite_exponents(&self, table: &CosetTable, coset: usize, word: &Word) -> Vec<(usize, i64)> {
        let (letters, _) = self.rewrite_from(table, coset, word);
        let mut sums: Vec<(usize, i64)> = letters.iter().map(|&(s, e)| (s, e as i64)).collect();
        sums.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(sums.len());
        for (s, e) in sums {
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        out.retain(|e| e.1 != 0);
        out
    }

    /// Expresses a word of the subgroup in the Schreier generators, or
    /// `None` if the word does not lie in the subgroup.
    pub fn rewrite(&self, table: &CosetTable, word: &Word) -> Option<Word> {
        let (letters, end) = self.rewrite_from(table, 0, word);
        (end == 0).then(|| Word::from_signed(&letters))
    }
}

/// A presentation of the subgroup described by `table`, on the non-trivial
/// Schreier generators, with one rewritten relator `t_c r t_c⁻¹` per coset
/// `c` and ambient relator `r`.
pub fn subgroup_presentation(table: &CosetTable) -> Presentation {
    let sd = schreier_data(table);
    let mut relators = Vec::with_capacity(table.index() * table.presentation().relators().len());
    for c in 0..table.index() {
        for r in table.presentation().relators() {
            let (letters, end) = sd.rewrite_from(table, c, r);
            debug_assert_eq!(end, c);
            relators.push(Word::from_signed(&letters));
        }
    }
    Presentation::from_parts_unchecked(default_names(sd.generator_count()), relators)
}
