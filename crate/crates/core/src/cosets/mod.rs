//! Coset enumeration, coset tables and low-index subgroups.

mod low_index;
mod table;
mod todd_coxeter;

pub use low_index::{low_index_subgroups, low_index_subgroups_with_budget, Conjugates, DEFAULT_NODE_BUDGET};
pub use table::{CosetTable, PermAction};
pub use todd_coxeter::todd_coxeter;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;

/// Default cap on live cosets, and on chain indices.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_COSETS`].
pub const MAX_COSETS_ENV: &str = "GRADLAB_MAX_COSETS";

/// The coset cap, honouring `GRADLAB_MAX_COSETS` when it parses.
pub fn max_cosets_from_env() -> usize {
    std::env::var(MAX_COSETS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// Whether the subgroup described by `table` is normal.
pub fn is_normal(table: &CosetTable) -> bool {
    table.is_normal()
}

/// The permutation action of the generators on the cosets.
pub fn permutation_rep(table: &CosetTable) -> PermAction {
    table.permutation_rep()
}

/// The quotient group `G/N` for a normal table, with element `c` the coset
/// `N t_c`.
pub fn regular_quotient(table: &CosetTable) -> Result<FiniteGroup> {
    if !table.is_normal() {
        return Err(Error::NotNormal);
    }
    FiniteGroup::from_regular_table(table)
}
