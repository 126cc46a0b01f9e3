use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::{json, Value};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `1 < d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Panics if `torsion` is not a divisibility chain of entries above 1.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        assert!(
            torsion.iter().all(|d| *d > BigInt::from(1)),
            "torsion entries must exceed 1"
        );
        assert!(
            torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            "torsion entries must divide each other in order"
        );
        AbelianInvariants { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// `dim A/pA`: the free rank plus the torsion entries divisible by `p`.
    pub fn fp_dim(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    /// Torsion entries as JSON numbers, or decimal strings when they do not
    /// fit in 64 bits.
    pub(crate) fn torsion_json(&self) -> Vec<Value> {
        self.torsion
            .iter()
            .map(|d| d.to_u64().map_or_else(|| json!(d.to_string()), |x| json!(x)))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &self.torsion_json())?;
        st.end()
    }
}

/// Minimal number of generators of the profinite completion:
/// `max_p dim A/pA`.
///
/// Every torsion entry is divisible by any prime factor of the first one, so
/// the maximum is the free rank plus the number of torsion entries.
pub fn d_profinite(a: &AbelianInvariants) -> usize {
    a.free_rank + a.torsion.len()
}
