use serde::Serialize;

use super::ChainReport;
use crate::cosets::{low_index_subgroups, Conjugates};
use crate::error::Result;
use crate::homology::{h1_of_subgroup, Coefficients};
use crate::presentations::Presentation;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    RgUpper,
    HrgSample,
    NhrgSample,
}

/// How a value relates to the invariant it estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// An upper bound for the limit.
    Upper,
    /// One value from a finite sample of subgroups; the liminf over all
    /// subgroups is not computed.
    Sample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradientEstimate {
    pub kind: EstimateKind,
    #[serde(with = "crate::rational::string")]
    pub value: Rational,
    pub witness: String,
    pub direction: Direction,
}

/// The deepest level's `(h1 − 1)/index + 1/index`, an upper bound for the
/// rank gradient of the pro-p completion.
pub fn rg_estimate(chain: &ChainReport) -> GradientEstimate {
    let level = chain.deepest();
    GradientEstimate {
        kind: EstimateKind::RgUpper,
        value: level.corrected + Rational::new(1, level.index as i64),
        witness: format!(
            "p={} chain level {} (index {})",
            chain.p,
            chain.levels.len() - 1,
            level.index
        ),
        direction: Direction::Upper,
    }
}

/// `d(H₁(U; Ẑ)) / |G:U|` for every subgroup (or every normal subgroup) of
/// index at most `max_index`, conjugates included, in enumeration order.
pub fn hrg_nhrg_samples(
    p: &Presentation,
    max_index: usize,
    normal_only: bool,
) -> Result<Vec<GradientEstimate>> {
    let tables = low_index_subgroups(p, max_index, normal_only, Conjugates::All)?;
    let kind = if normal_only {
        EstimateKind::NhrgSample
    } else {
        EstimateKind::HrgSample
    };
    tables
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let d = h1_of_subgroup(t, Coefficients::Integral)?.d_profinite();
            Ok(GradientEstimate {
                kind,
                value: Rational::new(d as i64, t.index() as i64),
                witness: format!("subgroup #{i} of index {}", t.index()),
                direction: Direction::Sample,
            })
        })
        .collect()
}

/// The smallest value in a sample, labelled as such.
pub fn sample_minimum(samples: &[GradientEstimate]) -> Option<&GradientEstimate> {
    samples.iter().min_by(|a, b| a.value.cmp(&b.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradients::p_derived_chain;
    use crate::presentations::free_group;

    #[test]
    fn free_group_samples() {
        let f2 = free_group(2);
        let s = hrg_nhrg_samples(&f2, 3, false).unwrap();
        assert_eq!(s.len(), 17);
        assert_eq!(sample_minimum(&s).unwrap().value, Rational::new(4, 3));
        let n = hrg_nhrg_samples(&f2, 2, true).unwrap();
        let proper: Vec<_> = n
            .iter()
            .filter(|e| e.value != Rational::from_integer(2))
            .collect();
        assert_eq!(proper.len(), 3);
        assert!(proper.iter().all(|e| e.value == Rational::new(3, 2)));

        let z = free_group(1);
        let s = hrg_nhrg_samples(&z, 5, false).unwrap();
        let v: Vec<Rational> = s.iter().map(|e| e.value).collect();
        assert_eq!(v, (1..=5).map(|n| Rational::new(1, n)).collect::<Vec<_>>());
    }

    #[test]
    fn rg_estimates() {
        let c = p_derived_chain(&free_group(2), 2, 2, 1000).unwrap();
        assert_eq!(rg_estimate(&c).value, Rational::new(129, 128));
        let trivial = Presentation::parse("gens: a\nrel: a\n").unwrap();
        let c = p_derived_chain(&trivial, 2, 2, 1000).unwrap();
        assert_eq!(rg_estimate(&c).value, Rational::from_integer(0));
    }
}
