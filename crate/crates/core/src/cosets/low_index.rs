//! Low-index subgroup enumeration by canonical backtracking.
//!
//! Partial coset tables are grown in standard form: the first undefined entry
//! in row-major order is always filled next, either with an existing coset or
//! with the next new one. After each choice the relators are scanned to
//! deduce forced entries or detect a contradiction, and the table is rejected
//! if re-basing it at another coset would give a lexicographically smaller
//! standard table. Each conjugacy class of subgroups is thereby produced once,
//! by its minimal standard table.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::CosetTable;
use crate::error::{Error, Result};
use crate::presentations::Presentation;

const NONE: u32 = u32::MAX;

/// Which subgroups [`low_index_subgroups`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugates {
    /// One table per conjugacy class.
    Representatives,
    /// Every subgroup, conjugates expanded.
    All,
}

/// Search budget for [`low_index_subgroups`], in backtracking nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

struct Search {
    cols: usize,
    max_index: usize,
    // cyclic rotations of relators and their inverses, grouped by first column
    rotations: Vec<Vec<Vec<usize>>>,
    found: Vec<(usize, Vec<u32>)>,
    nodes: u64,
    budget: u64,
}

#[derive(Clone)]
struct Partial {
    n: usize,
    table: Vec<u32>,
}

impl Partial {
    #[inline]
    fn get(&self, cols: usize, c: usize, x: usize) -> u32 {
        self.table[c * cols + x]
    }
}

impl Search {
    /// Sets `c·x = d` and propagates deductions. Returns false on contradiction.
    fn assign(&self, t: &mut Partial, c: usize, x: usize, d: usize) -> bool {
        let cols = self.cols;
        let mut stack = vec![(c, x, d)];
        while let Some((c, x, d)) = stack.pop() {
            let cur = t.table[c * cols + x];
            if cur != NONE {
                if cur as usize != d {
                    return false;
                }
                continue;
            }
            let back = t.table[d * cols + (x ^ 1)];
            if back != NONE && back as usize != c {
                return false;
            }
            t.table[c * cols + x] = d as u32;
            t.table[d * cols + (x ^ 1)] = c as u32;
            for (start, col) in [(c, x), (d, x ^ 1)] {
                for w in &self.rotations[col] {
                    match scan(t, cols, start, w) {
                        Scan::Contradiction => return false,
                        Scan::Deduce(f, y, b) => stack.push((f, y, b)),
                        Scan::Open => {}
                    }
                }
            }
        }
        true
    }

    /// Whether the partial table may still be the minimal standard table of
    /// its conjugacy class.
    fn is_canonical(&self, t: &Partial) -> bool {
        let cols = self.cols;
        let n = t.n;
        let mut to_new = vec![NONE; n];
        let mut to_old = vec![0usize; n];
        'bases: for base in 1..n {
            to_new.iter_mut().for_each(|v| *v = NONE);
            to_new[base] = 0;
            to_old[0] = base;
            let mut next = 1usize;
            for row in 0..n {
                if row >= next {
                    // fewer cosets reachable so far; undecidable
                    continue 'bases;
                }
                let old = to_old[row];
                for x in 0..cols {
                    let e = t.get(cols, old, x);
                    let cur = t.get(cols, row, x);
                    if e == NONE || cur == NONE {
                        continue 'bases;
                    }
                    let mut mapped = to_new[e as usize];
                    if mapped == NONE {
                        mapped = next as u32;
                        to_new[e as usize] = mapped;
                        to_old[next] = e as usize;
                        next += 1;
                    }
                    if mapped < cur {
                        return false;
                    }
                    if mapped > cur {
                        continue 'bases;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, t: Partial) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::exhausted("low-index search nodes", self.budget));
        }
        let cols = self.cols;
        let hole = (0..t.n * cols).find(|&i| t.table[i] == NONE);
        let Some(hole) = hole else {
            self.found.push((t.n, t.table[..t.n * cols].to_vec()));
            return Ok(());
        };
        let (c, x) = (hole / cols, hole % cols);
        for d in 0..t.n {
            if t.get(cols, d, x ^ 1) != NONE {
                continue;
            }
            let mut next = t.clone();
            if self.assign(&mut next, c, x, d) && self.is_canonical(&next) {
                self.search(next)?;
            }
        }
        if t.n < self.max_index {
            let mut next = t.clone();
            next.n += 1;
            if self.assign(&mut next, c, x, t.n) && self.is_canonical(&next) {
                self.search(next)?;
            }
        }
        Ok(())
    }
}

enum Scan {
    Open,
    Contradiction,
    Deduce(usize, usize, usize),
}

fn scan(t: &Partial, cols: usize, c: usize, w: &[usize]) -> Scan {
    let (mut f, mut b) = (c, c);
    let (mut i, mut j) = (0usize, w.len());
    while i < j {
        let e = t.get(cols, f, w[i]);
        if e == NONE {
            break;
        }
        f = e as usize;
        i += 1;
    }
    if i == j {
        return if f == b { Scan::Open } else { Scan::Contradiction };
    }
    while j > i {
        let e = t.get(cols, b, w[j - 1] ^ 1);
        if e == NONE {
            break;
        }
        b = e as usize;
        j -= 1;
    }
    if j == i {
        if f == b {
            Scan::Open
        } else {
            Scan::Contradiction
        }
    } else if j == i + 1 {
        Scan::Deduce(f, w[i], b)
    } else {
        Scan::Open
    }
}

fn rotations(presentation: &Presentation) -> Vec<Vec<Vec<usize>>> {
    let cols = 2 * presentation.generator_count();
    let mut by_col: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); cols];
    for r in presentation.relators() {
        for w in [r.clone(), r.inverse()] {
            let letters: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
            for k in 0..letters.len() {
                let mut rot = letters[k..].to_vec();
                rot.extend_from_slice(&letters[..k]);
                by_col[rot[0]].insert(rot);
            }
        }
    }
    by_col.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Enumerates subgroups of index at most `max_index`.
///
/// The result is sorted by `(index, row-major table)` and is identical
/// across runs.
pub fn low_index_subgroups(
    presentation: &Presentation,
    max_index: usize,
    normal_only: bool,
    conjugates: Conjugates,
) -> Result<Vec<CosetTable>> {
    low_index_subgroups_with_budget(
        presentation,
        max_index,
        normal_only,
        conjugates,
        DEFAULT_NODE_BUDGET,
    )
}

pub fn low_index_subgroups_with_budget(
    presentation: &Presentation,
    max_index: usize,
    normal_only: bool,
    conjugates: Conjugates,
    budget: u64,
) -> Result<Vec<CosetTable>> {
    if max_index == 0 {
        return Err(Error::InvalidArgument("max_index must be at least 1".into()));
    }
    let cols = 2 * presentation.generator_count();
    let arc = Arc::new(presentation.clone());
    if cols == 0 {
        return Ok(vec![CosetTable::whole_group(arc)]);
    }
    let mut search = Search {
        cols,
        max_index,
        rotations: rotations(presentation),
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    let root = Partial {
        n: 1,
        table: vec![NONE; max_index * cols],
    };
    search.search(root)?;

    let mut reps: Vec<(usize, Vec<u32>)> = std::mem::take(&mut search.found);
    reps.sort();
    let mut out = Vec::new();
    for (n, table) in reps {
        let t = CosetTable::from_raw(arc.clone(), n, table, Vec::new());
        debug_assert!(t.verify().is_ok());
        if normal_only && !t.is_normal() {
            continue;
        }
        match conjugates {
            Conjugates::Representatives => out.push(t),
            Conjugates::All => {
                let mut class: BTreeSet<Vec<u32>> = BTreeSet::new();
                for c in 0..n {
                    class.insert(t.rebased(c).raw().to_vec());
                }
                let normal = class.len() == 1;
                out.extend(class.into_iter().map(|raw| {
                    CosetTable::from_raw(arc.clone(), n, raw, Vec::new()).with_known_normality(normal)
                }));
            }
        }
    }
    out.sort_by(|a, b| (a.index(), a.raw()).cmp(&(b.index(), b.raw())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::free_group;

    fn count(tables: &[CosetTable], index: usize) -> usize {
        tables.iter().filter(|t| t.index() == index).count()
    }

    #[test]
    fn free_group_rank_two() {
        let f2 = free_group(2);
        let all = low_index_subgroups(&f2, 3, false, Conjugates::All).unwrap();
        assert_eq!(count(&all, 1), 1);
        assert_eq!(count(&all, 2), 3);
        assert_eq!(count(&all, 3), 13);
        let reps = low_index_subgroups(&f2, 3, false, Conjugates::Representatives).unwrap();
        assert_eq!(count(&reps, 3), 7);
        let normal = low_index_subgroups(&f2, 3, true, Conjugates::All).unwrap();
        assert_eq!(count(&normal, 3), 4);
        assert_eq!(count(&normal, 2), 3);
    }

    #[test]
    fn integers_have_one_subgroup_per_index() {
        let z = free_group(1);
        let all = low_index_subgroups(&z, 5, false, Conjugates::All).unwrap();
        assert_eq!(all.iter().map(|t| t.index()).collect::<Vec<_>>(), [1, 2, 3, 4, 5]);
    }

    #[test]
    fn finite_group_subgroups() {
        // S3 has 1 + 3 + 1 + 1 subgroups of index 1, 2, 3, 6 up to ... count all
        let s3 = Presentation::parse("gens: a b\nrel: a^3\nrel: b^2\nrel: (ab)^2\n").unwrap();
        let all = low_index_subgroups(&s3, 6, false, Conjugates::All).unwrap();
        let idx: Vec<usize> = all.iter().map(|t| t.index()).collect();
        assert_eq!(idx, [1, 2, 3, 3, 3, 6]);
        for t in &all {
            t.verify().unwrap();
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f2 = free_group(2);
        let r = low_index_subgroups_with_budget(&f2, 6, false, Conjugates::All, 100);
        assert!(matches!(r, Err(Error::ResourceExhausted { .. })));
    }
}
