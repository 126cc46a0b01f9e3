//! Explicit finite groups: elements listed as permutations, with naive
//! subgroup algorithms that double as oracles.

mod almost_prime;
mod builtin;
mod group;
mod subgroups;

pub use almost_prime::{almost_prime, almost_prime_witness};
pub use builtin::builtin_corpus;
pub use group::{FiniteGroup, MAX_ORDER};
pub use subgroups::{
    abelian_d, centralizer, derived_subgroup, generated, generating_set, lemma31_check, normal_closure,
    Lemma31Record, SubgroupHandle,
};

/// Lcm of the element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    g.exponent()
}
