//! Fox calculus and Sylvester rank functions at finite quotients.
//!
//! A matrix `M` over the group ring with `c` columns presents the module
//! `W = F[G]^c / F[G]^r·M`. At a finite quotient `Q = G/N` the rank value is
//! `dim_F (F[Q] ⊗ W) / |Q|`, computed from the right-regular representation.

mod ring;

pub use ring::{GroupRingElement, GroupRingMatrix};

use num_integer::Integer;
use serde::Serialize;

use crate::cosets::CosetTable;
use crate::error::{check_prime, Error, Result};
use crate::linalg::{fp_rank, FpMatrix};
use crate::presentations::{Letter, Presentation, Word};
use crate::rational::Rational;

/// `∂w/∂x_i`: each occurrence of `x_i` contributes its prefix, each
/// occurrence of `x_i⁻¹` minus its prefix including the letter.
pub fn fox_derivative(w: &Word, i: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let letters = w.letters();
    for (k, l) in letters.iter().enumerate() {
        if l.generator() != i {
            continue;
        }
        if l.is_inverse() {
            out.add_term(Word::new(letters[..=k].iter().copied()), -1);
        } else {
            out.add_term(Word::new(letters[..k].iter().copied()), 1);
        }
    }
    out
}

/// Relators × generators matrix of Fox derivatives; it presents the
/// augmentation ideal.
pub fn fox_jacobian(p: &Presentation) -> GroupRingMatrix {
    let n = p.generator_count();
    let mut m = GroupRingMatrix::zeros(p.relators().len(), n);
    for (r, w) in p.relators().iter().enumerate() {
        for i in 0..n {
            m.set(r, i, fox_derivative(w, i));
        }
    }
    m
}

/// Replaces each entry by its `|Q|×|Q|` right-regular block over `F_p`,
/// with `Q` the quotient by the normal subgroup of `table` and the cosets of
/// `table` as basis: `B[h][h·w] += c_w`.
pub fn push_to_quotient(m: &GroupRingMatrix, table: &CosetTable, p: u64) -> Result<FpMatrix> {
    check_prime(p)?;
    if !table.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = table.index();
    let mut out = FpMatrix::zeros(p, m.rows() * n, m.cols() * n)?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (w, c) in m.get(i, j).terms() {
                let c = c.rem_euclid(p as i64) as u32;
                if c == 0 {
                    continue;
                }
                for h in 0..n {
                    out.add_to(i * n + h, j * n + table.trace(h, w), c);
                }
            }
        }
    }
    Ok(out)
}

/// A rank value at a finite quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SylvesterValue {
    #[serde(with = "crate::rational::string")]
    pub value: Rational,
    pub quotient_order: usize,
    pub p: u64,
}

/// `(c·|Q| − rank) / |Q|` for the module presented by `m`.
pub fn sylvester_dim(m: &GroupRingMatrix, table: &CosetTable, p: u64) -> Result<SylvesterValue> {
    let block = push_to_quotient(m, table, p)?;
    let n = table.index();
    let corank = m.cols() * n - fp_rank(&block);
    Ok(SylvesterValue {
        value: Rational::new(corank as i64, n as i64),
        quotient_order: n,
        p,
    })
}

/// The rank value of the augmentation ideal, presented by the Fox Jacobian.
pub fn augmentation_dim(p: &Presentation, table: &CosetTable, prime: u64) -> Result<SylvesterValue> {
    sylvester_dim(&fox_jacobian(p), table, prime)
}

/// Order of the image of `g` in the quotient.
pub fn quotient_order_of(table: &CosetTable, g: &Word) -> usize {
    let mut c = table.trace(0, g);
    let mut k = 1;
    while c != 0 {
        c = table.trace(c, g);
        k += 1;
    }
    k
}

/// The rank value of `F[G]/F[G](g − 1)`; requires the image of `g` to have
/// order exactly `p^k`.
pub fn boundpower_check(table: &CosetTable, g: &Word, p: u64, k: u32) -> Result<SylvesterValue> {
    check_prime(p)?;
    if !table.is_normal() {
        return Err(Error::NotNormal);
    }
    let expected = p
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} overflows")))?;
    let actual = quotient_order_of(table, g) as u64;
    if actual != expected {
        return Err(Error::OrderMismatch { expected, actual });
    }
    let mut m = GroupRingMatrix::zeros(1, 1);
    m.set(0, 0, GroupRingElement::minus_one(g.clone()));
    sylvester_dim(&m, table, p)
}

/// `Σ_i ∂w/∂x_i · (x_i − 1)`, which equals `w − 1`.
pub fn fundamental_sum(w: &Word, generator_count: usize) -> GroupRingElement {
    (0..generator_count).fold(GroupRingElement::zero(), |acc, i| {
        let x = GroupRingElement::minus_one(Word::new([Letter::positive(i)]));
        acc.add(&fox_derivative(w, i).mul(&x))
    })
}

/// `1 + (h − 1)/index`, the value the augmentation ideal must take when the
/// subgroup has `dim H₁ = h`.
pub fn expected_augmentation(h1: usize, index: usize) -> Rational {
    Rational::from_integer(1) + Rational::new(h1 as i64 - 1, index as i64)
}

/// Whether `value` could be a rank value at a quotient of order `n`.
pub fn denominator_divides(value: &Rational, n: usize) -> bool {
    (n as i64).is_multiple_of(value.denom())
}
