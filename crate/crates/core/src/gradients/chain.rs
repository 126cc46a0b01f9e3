use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosets::CosetTable;
use crate::error::{check_prime, Result};
use crate::homology::{h1_of_subgroup, Coefficients};
use crate::presentations::Presentation;
use crate::rational::Rational;
use crate::rewriting::{derived_index, p_derived_step};

/// One level `Λ_i` of a p-derived chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLevel {
    pub index: usize,
    pub h1: usize,
    /// `h1 / index`
    #[serde(with = "crate::rational::string")]
    pub normalized: Rational,
    /// `(h1 − 1) / index`
    #[serde(with = "crate::rational::string")]
    pub corrected: Rational,
}

impl ChainLevel {
    pub fn new(index: usize, h1: usize) -> Self {
        ChainLevel {
            index,
            h1,
            normalized: Rational::new(h1 as i64, index as i64),
            corrected: Rational::new(h1 as i64 - 1, index as i64),
        }
    }
}

/// Why a chain ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStop {
    /// The requested depth was reached.
    Depth,
    /// The next index would exceed the cap.
    Truncated,
    /// `dim H₁(Λ; F_p) = 0`, so `Λ' = Λ` and the chain is constant.
    Stabilized,
}

/// The chain `G = Λ_0 > Λ_1 > …` with `Λ_{i+1} = [Λ_i, Λ_i]Λ_i^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub p: u64,
    pub depth: usize,
    pub cap: usize,
    pub levels: Vec<ChainLevel>,
    pub stop: ChainStop,
}

impl ChainReport {
    /// Whether `(h1 − 1)/index` never increases along the chain.
    pub fn corrected_non_increasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].corrected <= w[0].corrected)
    }

    /// Whether indices strictly increase by powers of `p`.
    pub fn indices_are_p_power_steps(&self) -> bool {
        self.levels.windows(2).all(|w| {
            let (a, b) = (w[0].index, w[1].index);
            if b <= a || b % a != 0 {
                return false;
            }
            let mut r = b / a;
            while r % self.p as usize == 0 {
                r /= self.p as usize;
            }
            r == 1
        })
    }

    pub fn deepest(&self) -> &ChainLevel {
        self.levels.last().expect("a chain has at least one level")
    }
}

/// A chain report together with the coset table of every level it covers.
#[derive(Clone, Debug)]
pub struct Chain {
    pub report: ChainReport,
    /// Tables of the levels `first_table_level..`.
    pub tables: Vec<CosetTable>,
    pub first_table_level: usize,
}

impl Chain {
    /// The table of level `i`, if it is held.
    pub fn table(&self, level: usize) -> Option<&CosetTable> {
        level
            .checked_sub(self.first_table_level)
            .and_then(|k| self.tables.get(k))
    }
}

/// Levels `0..=depth` of the p-derived chain of the group presented by `p`.
/// The chain stops early, with a marker, once the next index would exceed
/// `cap`.
pub fn p_derived_chain(p: &Presentation, prime: u64, depth: usize, cap: usize) -> Result<ChainReport> {
    Ok(build_chain(p, prime, depth, cap)?.report)
}

pub fn build_chain(p: &Presentation, prime: u64, depth: usize, cap: usize) -> Result<Chain> {
    let whole = CosetTable::whole_group(Arc::new(p.clone()));
    extend_chain(Vec::new(), whole, prime, depth, cap)
}

/// Continues a chain whose first `prior.len()` levels are already known and
/// whose next level has table `last`.
pub fn extend_chain(
    prior: Vec<ChainLevel>,
    last: CosetTable,
    prime: u64,
    depth: usize,
    cap: usize,
) -> Result<Chain> {
    check_prime(prime)?;
    let first_table_level = prior.len();
    let mut levels = prior;
    let mut tables = vec![last];
    let stop = loop {
        let table = tables.last().expect("non-empty");
        let h1 = h1_of_subgroup(table, Coefficients::Prime(prime))?.fp_dim(prime)?;
        levels.push(ChainLevel::new(table.index(), h1));
        if levels.len() > depth {
            break ChainStop::Depth;
        }
        if h1 == 0 {
            break ChainStop::Stabilized;
        }
        if derived_index(table.index(), prime, h1, cap).is_none() {
            break ChainStop::Truncated;
        }
        let next = p_derived_step(table, prime, cap)?;
        debug_assert_eq!(derived_index(table.index(), prime, h1, cap), Some(next.index()));
        tables.push(next);
    };
    let report = ChainReport {
        p: prime,
        depth,
        cap,
        levels,
        stop,
    };
    debug_assert!(report.corrected_non_increasing());
    Ok(Chain {
        report,
        tables,
        first_table_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::free_group;

    #[test]
    fn free_group_chain() {
        let r = p_derived_chain(&free_group(2), 2, 2, 1_000_000).unwrap();
        let got: Vec<(usize, Rational)> = r.levels.iter().map(|l| (l.index, l.normalized)).collect();
        assert_eq!(
            got,
            vec![
                (1, Rational::from_integer(2)),
                (4, Rational::new(5, 4)),
                (128, Rational::new(129, 128))
            ]
        );
        assert_eq!(r.stop, ChainStop::Depth);
        assert!(r.corrected_non_increasing());
        assert!(r.indices_are_p_power_steps());
    }

    #[test]
    fn stops() {
        let trivial = Presentation::parse("gens: a\nrel: a\n").unwrap();
        let r = p_derived_chain(&trivial, 2, 3, 100).unwrap();
        assert_eq!(r.levels, vec![ChainLevel::new(1, 0)]);
        assert_eq!(r.stop, ChainStop::Stabilized);

        let r = p_derived_chain(&free_group(2), 2, 5, 100).unwrap();
        assert_eq!(r.levels.len(), 2);
        assert_eq!(r.stop, ChainStop::Truncated);

        let z = free_group(1);
        let r = p_derived_chain(&z, 3, 2, 100).unwrap();
        let norm: Vec<Rational> = r.levels.iter().map(|l| l.normalized).collect();
        assert_eq!(
            norm,
            vec![
                Rational::from_integer(1),
                Rational::new(1, 3),
                Rational::new(1, 9)
            ]
        );
    }

    #[test]
    fn resuming_matches_fresh() {
        let p = Presentation::parse("gens: a b\nrel: a^2\n").unwrap();
        let fresh = build_chain(&p, 2, 2, 1000).unwrap();
        let partial = build_chain(&p, 2, 1, 1000).unwrap();
        let mut prior = partial.report.levels.clone();
        prior.pop();
        let resumed = extend_chain(prior, partial.tables[1].clone(), 2, 2, 1000).unwrap();
        assert_eq!(resumed.report, fresh.report);
        assert_eq!(resumed.table(2), fresh.table(2));
    }
}
