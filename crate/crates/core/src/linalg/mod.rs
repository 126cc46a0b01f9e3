//! Exact integer and prime-field linear algebra.

mod abelian;
mod fp;
mod int;

pub use abelian::{d_profinite, AbelianInvariants};
pub(crate) use fp::inv_mod;
pub use fp::{fp_rank, FpMatrix, Projection, SparseEchelon};
pub use int::{abelian_invariants, smith_normal_form, IntMatrix, SmithForm};
