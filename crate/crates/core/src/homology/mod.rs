//! First homology over the integers and over prime fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cosets::CosetTable;
use crate::error::{check_prime, Result};
use crate::linalg::{abelian_invariants, d_profinite, AbelianInvariants, IntMatrix, SparseEchelon};
use crate::presentations::{simplify, Presentation};
use crate::rewriting::subgroup_presentation;

/// Exponent-sum rows of the relators, sparse.
fn exponent_rows(p: &Presentation) -> impl Iterator<Item = Vec<(usize, i64)>> + '_ {
    let n = p.generator_count();
    p.relators().iter().map(move |r| {
        r.exponent_sums(n)
            .into_iter()
            .enumerate()
            .filter(|&(_, e)| e != 0)
            .collect()
    })
}

/// `H₁(G; Z)` as the cokernel of the relator exponent-sum matrix.
pub fn h1_integral(p: &Presentation) -> AbelianInvariants {
    let n = p.generator_count();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(n)).collect();
    abelian_invariants(&IntMatrix::from_rows(n, &rows))
}

/// `dim H₁(G; F_p)`: generators minus the rank of the exponent matrix mod p.
pub fn h1_mod_p(p: &Presentation, prime: u64) -> Result<usize> {
    let mut e = SparseEchelon::new(prime, p.generator_count())?;
    for row in exponent_rows(p) {
        e.push_row(&row);
    }
    Ok(p.generator_count() - e.rank())
}

/// Coefficients for [`h1_of_subgroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integral,
    Prime(u64),
}

/// First homology of a subgroup, computed from its Reidemeister–Schreier
/// presentation.
#[derive(Clone, Debug)]
pub struct H1Report {
    pub subject: Arc<Presentation>,
    pub invariants: Option<AbelianInvariants>,
    pub fp: BTreeMap<u64, usize>,
}

impl H1Report {
    /// `dim H₁(·; F_p)`, from the cached value or the integral invariants.
    pub fn fp_dim(&mut self, p: u64) -> Result<usize> {
        if let Some(&d) = self.fp.get(&p) {
            return Ok(d);
        }
        check_prime(p)?;
        let d = match &self.invariants {
            Some(a) => a.fp_dim(p),
            None => h1_mod_p(&self.subject, p)?,
        };
        self.fp.insert(p, d);
        Ok(d)
    }

    /// The integral invariants, computed on first use.
    pub fn integral(&mut self) -> &AbelianInvariants {
        self.invariants.get_or_insert_with(|| h1_integral(&self.subject))
    }

    /// `d(H₁(U; Ẑ))`, the minimal number of generators of the profinite
    /// completion of `H₁`.
    pub fn d_profinite(&mut self) -> usize {
        d_profinite(self.integral())
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        if let Some(a) = &self.invariants {
            out.insert("free_rank".into(), json!(a.free_rank));
            out.insert("torsion".into(), Value::Array(a.torsion_json()));
        }
        let fp: Map<String, Value> = self.fp.iter().map(|(p, d)| (p.to_string(), json!(d))).collect();
        out.insert("fp".into(), Value::Object(fp));
        Value::Object(out)
    }
}

/// Reidemeister–Schreier, then simplification, then homology with the
/// requested coefficients.
pub fn h1_of_subgroup(table: &CosetTable, coefficients: Coefficients) -> Result<H1Report> {
    if let Coefficients::Prime(p) = coefficients {
        check_prime(p)?;
    }
    let subject = Arc::new(simplify(&subgroup_presentation(table)));
    let mut report = H1Report {
        subject,
        invariants: None,
        fp: BTreeMap::new(),
    };
    match coefficients {
        Coefficients::Integral => {
            report.integral();
        }
        Coefficients::Prime(p) => {
            report.fp_dim(p)?;
        }
    }
    Ok(report)
}

/// `H₁` of the whole group presented by `p`, as a report.
pub fn h1_report(p: &Presentation, coefficients: Coefficients) -> Result<H1Report> {
    h1_of_subgroup(&CosetTable::whole_group(Arc::new(p.clone())), coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{free_group, surface_group};

    #[test]
    fn whole_group_homology() {
        assert_eq!(h1_integral(&free_group(2)), AbelianInvariants::new(2, vec![]));
        let p = Presentation::parse("gens: a b\nrel: a^2\n").unwrap();
        assert_eq!(h1_integral(&p), AbelianInvariants::new(1, vec![2.into()]));
        assert_eq!(h1_mod_p(&p, 2).unwrap(), 2);
        assert_eq!(h1_mod_p(&p, 3).unwrap(), 1);
        let s = surface_group(2).unwrap();
        assert_eq!(h1_integral(&s).free_rank, 4);
    }

    #[test]
    fn subgroup_homology() {
        let f2 = Arc::new(free_group(2));
        let t = CosetTable::from_generator_images(f2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let mut r = h1_of_subgroup(&t, Coefficients::Integral).unwrap();
        assert_eq!(r.d_profinite(), 3);
        assert_eq!(r.fp_dim(5).unwrap(), 3);
        let v = r.to_json();
        assert_eq!(v, json!({"free_rank": 3, "torsion": [], "fp": {"5": 3}}));
    }

    #[test]
    fn report_json_mod_p_only() {
        let p = Presentation::parse("gens: a b\nrel: a^2\n").unwrap();
        let r = h1_report(&p, Coefficients::Prime(2)).unwrap();
        assert_eq!(r.to_json(), json!({"fp": {"2": 2}}));
        assert!(h1_report(&p, Coefficients::Prime(4)).is_err());
    }
}
