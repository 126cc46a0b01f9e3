//! Composition factors of small F_p-modules and the simple-module degree
//! bound for regular modules.
//!
//! Every simple `F_p[Q]`-module is a composition factor of the regular
//! module, so chopping `F_p[Q]` sees all of them.

mod chop;
mod poly;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_prime, Error, Result};
use crate::finite::FiniteGroup;
use crate::linalg::FpMatrix;
use chop::{find_submodule, Mat};

/// Largest group order accepted by [`regular_module`].
pub const REGULAR_MODULE_CAP: usize = 200;
/// Environment variable holding the seed for randomized element search.
pub const SEED_ENV: &str = "GRADLAB_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

/// `GRADLAB_SEED` if set and numeric, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A finite-dimensional module given by invertible matrices acting on row
/// vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub p: u64,
    pub dimension: usize,
    pub generator_actions: Vec<FpMatrix>,
}

impl ModuleRep {
    pub fn new(p: u64, dimension: usize, generator_actions: Vec<FpMatrix>) -> Result<Self> {
        check_prime(p)?;
        for (i, a) in generator_actions.iter().enumerate() {
            if a.p() != p || a.rows() != dimension || a.cols() != dimension {
                return Err(Error::InvalidArgument(format!(
                    "action {i} is not a {dimension}×{dimension} matrix over F_{p}"
                )));
            }
            if a.rank() != dimension {
                return Err(Error::InvalidArgument(format!("action {i} is singular")));
            }
        }
        Ok(ModuleRep {
            p,
            dimension,
            generator_actions,
        })
    }

    fn dense(&self) -> Vec<Mat> {
        self.generator_actions
            .iter()
            .map(|a| {
                (0..a.rows())
                    .map(|i| (0..a.cols()).map(|j| a.get(i, j)).collect())
                    .collect()
            })
            .collect()
    }
}

/// `F_p[Q]` with basis the elements of `Q`; generator `g` sends `e_h` to
/// `e_{hg}`.
pub fn regular_module(q: &FiniteGroup, p: u64) -> Result<ModuleRep> {
    check_prime(p)?;
    let n = q.order();
    if n > REGULAR_MODULE_CAP {
        return Err(Error::exhausted(
            "regular module dimension",
            REGULAR_MODULE_CAP as u64,
        ));
    }
    let mut gens: Vec<usize> = q.generators().to_vec();
    if gens.is_empty() {
        gens.push(q.identity());
    }
    let actions = gens
        .iter()
        .map(|&g| {
            let mut m = FpMatrix::zeros(p, n, n)?;
            for h in 0..n {
                m.set(h, q.mul(h, g), 1);
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleRep::new(p, n, actions)
}

/// Composition factor dimensions, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleDegreeReport {
    /// dimension ↦ number of composition factors of that dimension
    pub degrees: BTreeMap<usize, usize>,
    pub max_degree: usize,
}

impl SimpleDegreeReport {
    pub fn total_dimension(&self) -> usize {
        self.degrees.iter().map(|(d, m)| d * m).sum()
    }

    /// Dimensions listed with multiplicity, ascending.
    pub fn dimensions(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .flat_map(|(&d, &m)| std::iter::repeat_n(d, m))
            .collect()
    }
}

/// Splits `m` into composition factors. Randomized element search is driven
/// by ChaCha8 seeded with `seed`; by Jordan–Hölder the multiset returned does
/// not depend on it.
pub fn chop(m: &ModuleRep, seed: u64) -> SimpleDegreeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = BTreeMap::new();
    let mut stack: Vec<(usize, Vec<Mat>)> = vec![(m.dimension, m.dense())];
    while let Some((dim, gens)) = stack.pop() {
        if dim == 0 {
            continue;
        }
        match find_submodule(&gens, dim, m.p, &mut rng) {
            None => *degrees.entry(dim).or_insert(0) += 1,
            Some(sub) => {
                let k = sub.rank();
                let (s, q) = sub.split(&gens);
                stack.push((k, s));
                stack.push((dim - k, q));
            }
        }
    }
    let max_degree = degrees.keys().next_back().copied().unwrap_or(0);
    SimpleDegreeReport { degrees, max_degree }
}

/// The simple-module degree bound `max_degree ≤ √(e·|Q|)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma32Record {
    pub order: usize,
    pub p: u64,
    pub exponent: u64,
    pub max_degree: usize,
    /// `√(e·|Q|)`, for display only
    pub bound: f64,
    pub pass: bool,
}

/// Chops `F_p[Q]` and compares `max_degree²` with `e·|Q|` in integers.
pub fn lemma32_check(q: &FiniteGroup, p: u64, seed: u64) -> Result<Lemma32Record> {
    let report = chop(&regular_module(q, p)?, seed);
    let e = q.exponent();
    let order = q.order();
    let lhs = (report.max_degree as u128).pow(2);
    let rhs = e as u128 * order as u128;
    Ok(Lemma32Record {
        order,
        p,
        exponent: e,
        max_degree: report.max_degree,
        bound: (rhs as f64).sqrt(),
        pass: lhs <= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> FiniteGroup {
        FiniteGroup::builtin(name).unwrap()
    }

    #[test]
    fn regular_modules() {
        let m = regular_module(&group("cyclic:1"), 5).unwrap();
        assert_eq!(m.dimension, 1);
        assert_eq!(m.generator_actions.len(), 1);
        assert_eq!(m.generator_actions[0].get(0, 0), 1);
        let m = regular_module(&group("sym:3"), 2).unwrap();
        assert_eq!(m.dimension, 6);
        assert_eq!(m.generator_actions.len(), 2);
        assert!(matches!(
            regular_module(&group("sym:6"), 2),
            Err(Error::ResourceExhausted { .. })
        ));
    }

    #[test]
    fn small_chops() {
        let r = chop(&regular_module(&group("cyclic:3"), 2).unwrap(), 1);
        assert_eq!(r.dimensions(), vec![1, 2]);
        let r = chop(&regular_module(&group("sym:3"), 2).unwrap(), 1);
        assert_eq!(r.dimensions(), vec![1, 1, 2, 2]);
        let r = chop(&regular_module(&group("sym:3"), 3).unwrap(), 1);
        assert_eq!(r.max_degree, 1);
        assert_eq!(r.total_dimension(), 6);
        let r = chop(&regular_module(&group("cyclic:4"), 2).unwrap(), 1);
        assert_eq!(r.dimensions(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn lemma32_examples() {
        let r = lemma32_check(&group("sym:3"), 2, 0).unwrap();
        assert_eq!((r.max_degree, r.exponent, r.pass), (2, 6, true));
        let r = lemma32_check(&group("cyclic:1"), 7, 0).unwrap();
        assert_eq!((r.max_degree, r.pass), (1, true));
    }

    #[test]
    fn large_regular_module() {
        // 24-dimensional, beyond the exhaustive range
        let r = chop(&regular_module(&group("sym:4"), 3).unwrap(), 5);
        assert_eq!(r.total_dimension(), 24);
        assert_eq!(r.max_degree, 3);
    }
}
