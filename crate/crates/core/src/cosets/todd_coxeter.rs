//! HLT coset enumeration with coincidence processing.

use std::sync::Arc;

use super::CosetTable;
use crate::error::{Error, Result};
use crate::presentations::{Presentation, Word};

const NONE: u32 = u32::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cols: usize, max_cosets: usize) -> Self {
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            max_cosets,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::exhausted("live cosets", self.max_cosets as u64));
        }
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `word` from `c`, defining cosets where needed so that it closes.
    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        // letters word[i..j] are still unread
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len());
        loop {
            while i < j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, word[j - 1] ^ 1) != NONE {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group given by
/// `presentation`.
///
/// Fails with [`Error::ResourceExhausted`] once more than `max_cosets` cosets
/// would be live at the same time; this is also how an infinite index shows
/// up. Cosets are numbered in order of definition.
pub fn todd_coxeter(presentation: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let cols = 2 * presentation.generator_count();
    if let Some(w) = subgroup.iter().find(|w| {
        w.max_generator()
            .is_some_and(|g| g >= presentation.generator_count())
    }) {
        return Err(Error::InvalidArgument(format!(
            "subgroup generator {:?} uses unknown generators",
            w
        )));
    }
    let mut e = Enumerator::new(cols, max_cosets.max(1));
    let relators: Vec<Vec<usize>> = presentation.relators().iter().map(columns).collect();
    for h in subgroup {
        e.scan_and_fill(0, &columns(h))?;
    }
    let mut c = 0u32;
    while (c as usize) < e.parent.len() {
        if e.is_live(c) {
            for r in &relators {
                e.scan_and_fill(c, r)?;
                if !e.is_live(c) {
                    break;
                }
            }
            if e.is_live(c) {
                for x in 0..cols {
                    if e.get(c, x) == NONE {
                        e.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }

    let total = e.parent.len();
    let mut new_id = vec![NONE; total];
    let mut next = 0u32;
    for c in 0..total as u32 {
        if e.is_live(c) {
            new_id[c as usize] = next;
            next += 1;
        }
    }
    let index = next as usize;
    let mut action = Vec::with_capacity(index * cols);
    for c in 0..total as u32 {
        if e.is_live(c) {
            for x in 0..cols {
                let d = e.get(c, x);
                let d = e.rep(d);
                action.push(new_id[d as usize]);
            }
        }
    }
    let table = CosetTable::from_raw(Arc::new(presentation.clone()), index, action, subgroup.to_vec());
    debug_assert!(table.verify().is_ok());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::free_group;

    #[test]
    fn alternating_group_of_order_12() {
        let p = Presentation::parse("gens: a b\nrel: a^2\nrel: b^3\nrel: (ab)^3\n").unwrap();
        let t = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(t.index(), 12);
        t.verify().unwrap();
    }

    #[test]
    fn cyclic_subgroup_of_z() {
        let p = free_group(1);
        let t = todd_coxeter(&p, &[p.word("a^3").unwrap()], 10).unwrap();
        assert_eq!(t.index(), 3);
    }

    #[test]
    fn whole_group() {
        let p = free_group(2);
        let t = todd_coxeter(&p, &[p.word("a").unwrap(), p.word("b").unwrap()], 10).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn infinite_index_is_resource_error() {
        let p = free_group(2);
        let r = todd_coxeter(&p, &[p.word("a").unwrap()], 50);
        assert!(matches!(r, Err(Error::ResourceExhausted { .. })));
    }

    #[test]
    fn larger_groups_with_coincidences() {
        // (2,3,5) triangle group: A5, order 60
        let p = Presentation::parse("gens: a b\nrel: a^2\nrel: b^3\nrel: (ab)^5\n").unwrap();
        assert_eq!(todd_coxeter(&p, &[], 100_000).unwrap().index(), 60);
        // quaternion group of order 8
        let q = Presentation::parse("gens: x y\nrel: x^4\nrel: yyXX\nrel: yxYx\n").unwrap();
        assert_eq!(todd_coxeter(&q, &[], 1000).unwrap().index(), 8);
        // index of <b> in S3 is 3
        let s3 = Presentation::parse("gens: a b\nrel: a^3\nrel: b^2\nrel: (ab)^2\n").unwrap();
        assert_eq!(
            todd_coxeter(&s3, &[s3.word("b").unwrap()], 100).unwrap().index(),
            3
        );
        // a presentation of the trivial group that needs coincidences
        let t = Presentation::parse("gens: a b\nrel: aBAbb\nrel: bABaa\n").unwrap();
        assert_eq!(todd_coxeter(&t, &[], 10_000).unwrap().index(), 1);
    }

    #[test]
    fn deterministic() {
        let p = Presentation::parse("gens: a b\nrel: a^2\nrel: b^3\nrel: (ab)^4\n").unwrap();
        let t1 = todd_coxeter(&p, &[], 10_000).unwrap();
        let t2 = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(t1.index(), 24);
        assert_eq!(t1, t2);
    }
}
