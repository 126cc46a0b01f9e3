//! Subgroup chains and the finite-level gradient estimators built on them.

mod certificates;
mod chain;
mod estimates;

pub use certificates::{prop21_certificate, sp_certificate, Certificate, CertifiedLevel};
pub use chain::{build_chain, extend_chain, p_derived_chain, Chain, ChainLevel, ChainReport, ChainStop};
pub use estimates::{
    hrg_nhrg_samples, rg_estimate, sample_minimum, Direction, EstimateKind, GradientEstimate,
};
