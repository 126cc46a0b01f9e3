//! Reidemeister–Schreier rewriting and the mod-p derived step.

mod derived;
mod schreier;

pub use derived::{derived_index, p_derived_step};
pub use schreier::{schreier_data, subgroup_presentation, SchreierData};
