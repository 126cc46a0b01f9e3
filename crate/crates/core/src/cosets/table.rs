use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::presentations::{Letter, Presentation, Word};

/// A complete coset table: the right action of a presentation's generators on
/// the cosets of a finite-index subgroup.
///
/// Entries are stored row-major with one column per letter (`a, A, b, B, …`).
/// Coset 0 is the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    presentation: Arc<Presentation>,
    index: usize,
    action: Vec<u32>,
    subgroup_generators: Vec<Word>,
    normal: OnceLock<bool>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.action == other.action && self.presentation == other.presentation
    }
}

impl Eq for CosetTable {}

impl CosetTable {
    /// Builds a table from one image vector per generator, checking every
    /// table invariant.
    pub fn from_generator_images(presentation: Arc<Presentation>, images: &[Vec<usize>]) -> Result<Self> {
        let gens = presentation.generator_count();
        if images.len() != gens {
            return Err(Error::InvalidTable(format!(
                "expected {gens} generator columns, got {}",
                images.len()
            )));
        }
        let index = images.first().map_or(1, Vec::len);
        if index == 0 {
            return Err(Error::InvalidTable("a table needs at least one coset".into()));
        }
        let mut action = vec![u32::MAX; index * 2 * gens];
        for (g, img) in images.iter().enumerate() {
            if img.len() != index {
                return Err(Error::InvalidTable("ragged generator columns".into()));
            }
            for (c, &d) in img.iter().enumerate() {
                if d >= index {
                    return Err(Error::InvalidTable(format!("coset {d} out of range")));
                }
                action[c * 2 * gens + 2 * g] = d as u32;
                let inv = &mut action[d * 2 * gens + 2 * g + 1];
                if *inv != u32::MAX {
                    return Err(Error::InvalidTable(format!(
                        "generator {g} does not act as a permutation"
                    )));
                }
                *inv = c as u32;
            }
        }
        let table = CosetTable::from_raw(presentation, index, action, Vec::new());
        table.verify()?;
        Ok(table)
    }

    pub(crate) fn from_raw(
        presentation: Arc<Presentation>,
        index: usize,
        action: Vec<u32>,
        subgroup_generators: Vec<Word>,
    ) -> Self {
        CosetTable {
            presentation,
            index,
            action,
            subgroup_generators,
            normal: OnceLock::new(),
        }
    }

    pub(crate) fn with_known_normality(self, normal: bool) -> Self {
        let _ = self.normal.set(normal);
        self
    }

    /// The trivial table of index 1 (the whole group).
    pub fn whole_group(presentation: Arc<Presentation>) -> Self {
        let cols = 2 * presentation.generator_count();
        CosetTable::from_raw(presentation, 1, vec![0; cols], Vec::new()).with_known_normality(true)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn presentation_arc(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn columns(&self) -> usize {
        2 * self.presentation.generator_count()
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    #[inline]
    pub fn image(&self, coset: usize, letter: Letter) -> usize {
        self.action[coset * self.columns() + letter.column()] as usize
    }

    #[inline]
    pub(crate) fn image_col(&self, coset: usize, column: usize) -> usize {
        self.action[coset * self.columns() + column] as usize
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.action
    }

    /// Coset reached from `coset` by reading `word`.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Image of each coset under generator `g`.
    pub fn generator_images(&self, g: usize) -> Vec<usize> {
        (0..self.index)
            .map(|c| self.image(c, Letter::positive(g)))
            .collect()
    }

    /// Checks totality, consistency, relator closure, subgroup generator
    /// closure and transitivity.
    pub fn verify(&self) -> Result<()> {
        let cols = self.columns();
        if self.action.len() != self.index * cols {
            return Err(Error::InvalidTable("wrong table size".into()));
        }
        for c in 0..self.index {
            for x in 0..cols {
                let d = self.action[c * cols + x];
                if d as usize >= self.index {
                    return Err(Error::InvalidTable(format!("entry ({c},{x}) undefined")));
                }
                if self.action[d as usize * cols + (x ^ 1)] as usize != c {
                    return Err(Error::InvalidTable(format!(
                        "entry ({c},{x}) is not inverted by its inverse column"
                    )));
                }
            }
        }
        for r in self.presentation.relators() {
            for c in 0..self.index {
                if self.trace(c, r) != c {
                    return Err(Error::InvalidTable(format!(
                        "relator {} does not close at coset {c}",
                        self.presentation.display_word(r)
                    )));
                }
            }
        }
        for h in &self.subgroup_generators {
            if self.trace(0, h) != 0 {
                return Err(Error::InvalidTable(
                    "subgroup generator does not fix coset 0".into(),
                ));
            }
        }
        if self.bfs_order(0).len() != self.index {
            return Err(Error::InvalidTable("action is not transitive".into()));
        }
        Ok(())
    }

    /// Cosets in breadth-first order from `start`, scanning columns in order.
    pub(crate) fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.index];
        let mut order = Vec::with_capacity(self.index);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for x in 0..self.columns() {
                let d = self.image_col(c, x);
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        order
    }

    /// The standard form of the table of the stabilizer of `coset`: cosets
    /// renumbered in order of first appearance when the table is scanned
    /// row by row.
    pub fn rebased(&self, coset: usize) -> CosetTable {
        let order = self.bfs_order(coset);
        let mut new_id = vec![0u32; self.index];
        for (i, &c) in order.iter().enumerate() {
            new_id[c] = i as u32;
        }
        let cols = self.columns();
        let mut action = vec![0u32; self.action.len()];
        for (i, &c) in order.iter().enumerate() {
            for x in 0..cols {
                action[i * cols + x] = new_id[self.image_col(c, x)];
            }
        }
        let mut t = CosetTable::from_raw(self.presentation.clone(), self.index, action, Vec::new());
        if let Some(&n) = self.normal.get() {
            t = t.with_known_normality(n);
        }
        t
    }

    /// Standard form based at coset 0.
    pub fn standardized(&self) -> CosetTable {
        let mut t = self.rebased(0);
        t.subgroup_generators = self.subgroup_generators.clone();
        t
    }

    /// Whether the stabilizer of coset 0 is normal: every coset admits an
    /// automorphism of the action moving 0 to it.
    pub fn is_normal(&self) -> bool {
        *self
            .normal
            .get_or_init(|| (1..self.index).all(|c| self.action_automorphism(c).is_some()))
    }

    /// The permutation commuting with the action that sends coset 0 to
    /// `target`, if one exists.
    pub(crate) fn action_automorphism(&self, target: usize) -> Option<Vec<u32>> {
        let cols = self.columns();
        let mut map = vec![u32::MAX; self.index];
        let mut used = vec![false; self.index];
        map[0] = target as u32;
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let mc = map[c] as usize;
            for x in 0..cols {
                let d = self.image_col(c, x);
                let md = self.image_col(mc, x) as u32;
                if map[d] == u32::MAX {
                    if used[md as usize] {
                        return None;
                    }
                    map[d] = md;
                    used[md as usize] = true;
                    queue.push_back(d);
                } else if map[d] != md {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// The permutation representation on cosets.
    pub fn permutation_rep(&self) -> PermAction {
        PermAction {
            degree: self.index,
            images: (0..self.presentation.generator_count())
                .map(|g| self.generator_images(g))
                .collect(),
        }
    }

    /// `{"index": n, "action": {"a": [...], ...}}` with 0-based cosets.
    pub fn to_json(&self) -> Value {
        let mut action = Map::new();
        for (g, name) in self.presentation.generator_names().iter().enumerate() {
            action.insert(name.clone(), json!(self.generator_images(g)));
        }
        json!({ "index": self.index, "action": action })
    }

    /// Reads the JSON form back, validating against `presentation`.
    pub fn from_json(presentation: Arc<Presentation>, value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidTable(m.to_string());
        let index = value
            .get("index")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing index"))? as usize;
        let action = value
            .get("action")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing action"))?;
        let mut images = Vec::new();
        for name in presentation.generator_names() {
            let col = action
                .get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidTable(format!("missing column for `{name}`")))?;
            let col: Option<Vec<usize>> = col.iter().map(|v| v.as_u64().map(|x| x as usize)).collect();
            let col = col.ok_or_else(|| bad("non-integer coset"))?;
            if col.len() != index {
                return Err(bad("column length differs from index"));
            }
            images.push(col);
        }
        if presentation.generator_count() == 0 {
            if index != 1 {
                return Err(bad("the trivial free group has only index 1"));
            }
            return Ok(CosetTable::whole_group(presentation));
        }
        CosetTable::from_generator_images(presentation, &images)
    }
}

/// A permutation action of the generators, one image vector per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    pub degree: usize,
    pub images: Vec<Vec<usize>>,
}

impl PermAction {
    /// Evaluates a word as a permutation, acting on the right.
    pub fn evaluate(&self, word: &Word) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.degree).collect();
        for l in word.letters() {
            let img = &self.images[l.generator()];
            if l.is_inverse() {
                let mut inv = vec![0; self.degree];
                for (i, &j) in img.iter().enumerate() {
                    inv[j] = i;
                }
                perm = perm.iter().map(|&p| inv[p]).collect();
            } else {
                perm = perm.iter().map(|&p| img[p]).collect();
            }
        }
        perm
    }

    pub fn is_identity(perm: &[usize]) -> bool {
        perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}
