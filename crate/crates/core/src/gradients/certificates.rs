use serde::Serialize;
use serde_json::Value;

use super::{p_derived_chain, rg_estimate, ChainReport, ChainStop};
use crate::error::{check_prime, Error, Result};
use crate::presentations::{
    adjoin_power_relator, free_group, schlage_puchta_truncation, Presentation, ReducedWords, Word,
    WORD_ENUMERATION_ORDER,
};
use crate::rational::Rational;

/// One chain level checked against a threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedLevel {
    pub index: usize,
    pub h1: usize,
    #[serde(with = "crate::rational::string")]
    pub normalized: Rational,
    pub pass: bool,
}

/// A lower-bound certificate: every chain-level upper bound for the rank
/// gradient of the quotient stays above `threshold`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub presentation: String,
    pub parameters: Value,
    pub levels: Vec<CertifiedLevel>,
    #[serde(with = "crate::rational::string")]
    pub threshold: Rational,
    pub stop: ChainStop,
    pub pass: bool,
}

fn certify(
    kind: &str,
    group: &Presentation,
    parameters: Value,
    threshold: Rational,
    p: u64,
    depth: usize,
    cap: usize,
) -> Result<Certificate> {
    let chain = p_derived_chain(group, p, depth, cap)?;
    Ok(assemble(kind, group, parameters, threshold, &chain))
}

fn assemble(
    kind: &str,
    group: &Presentation,
    parameters: Value,
    threshold: Rational,
    chain: &ChainReport,
) -> Certificate {
    let levels: Vec<CertifiedLevel> = (0..chain.levels.len())
        .map(|i| {
            let prefix = ChainReport {
                levels: chain.levels[..=i].to_vec(),
                ..chain.clone()
            };
            let l = &chain.levels[i];
            let value = rg_estimate(&prefix).value;
            CertifiedLevel {
                index: l.index,
                h1: l.h1,
                normalized: value,
                pass: value >= threshold,
            }
        })
        .collect();
    let pass = levels.iter().all(|l| l.pass);
    Certificate {
        kind: kind.to_string(),
        presentation: group.to_string(),
        parameters,
        levels,
        threshold,
        stop: chain.stop,
        pass,
    }
}

fn inverse_power(p: u64, k: u32) -> Result<Rational> {
    let d = p
        .checked_pow(k)
        .filter(|&d| d <= i64::MAX as u64)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} is too large")))?;
    Ok(Rational::new(1, d as i64))
}

/// Checks `rg(F_d / ⟨⟨g^{p^k}⟩⟩) ≥ (d − 1) − 1/p^k` against every chain level,
/// with the threshold clamped at 0.
pub fn prop21_certificate(
    d: usize,
    g: &Word,
    p: u64,
    k: u32,
    depth: usize,
    cap: usize,
) -> Result<Certificate> {
    check_prime(p)?;
    let free = free_group(d);
    let group = adjoin_power_relator(&free, g, p, k)?;
    let raw = Rational::from_integer(d as i64 - 1) - inverse_power(p, k)?;
    let threshold = raw.max(Rational::from_integer(0));
    let params = serde_json::json!({
        "d": d,
        "g": free.display_word(g).to_string(),
        "p": p,
        "k": k,
        "depth": depth,
        "cap": cap,
    });
    certify("prop21", &group, params, threshold, p, depth, cap)
}

/// Checks `rg(Γ_n) ≥ d − 1 − Σ 1/p^{k_i}` for the truncation `Γ_n` built from
/// the first `n` words of the fixed enumeration.
pub fn sp_certificate(d: usize, p: u64, exponents: &[u32], depth: usize, cap: usize) -> Result<Certificate> {
    let group = schlage_puchta_truncation(d, p, exponents)?;
    let mut threshold = Rational::from_integer(d as i64 - 1);
    for &k in exponents {
        threshold -= inverse_power(p, k)?;
    }
    let free = free_group(d);
    let words: Vec<String> = ReducedWords::new(d)
        .take(exponents.len())
        .map(|w| free.display_word(&w).to_string())
        .collect();
    let params = serde_json::json!({
        "d": d,
        "p": p,
        "exponents": exponents,
        "depth": depth,
        "cap": cap,
        "enumeration": WORD_ENUMERATION_ORDER,
        "words": words,
    });
    certify("sp", &group, params, threshold, p, depth, cap)
}
