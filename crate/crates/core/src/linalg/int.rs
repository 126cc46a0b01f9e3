use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AbelianInvariants;

/// A dense matrix of unbounded integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// From a rectangular grid. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

/// Scalars the Smith elimination runs over. Arithmetic is checked: `None`
/// means the result does not fit and the computation must be redone with
/// wider integers.
trait Scalar: Clone + PartialEq + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn below_zero(&self) -> bool;
    fn negated(&self) -> Option<Self>;
    /// `self - q·other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, other: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn below_zero(&self) -> bool {
        *self < 0
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self) == Some(0)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn below_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Grid<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Grid<T> {
    fn identity(n: usize) -> Self {
        let mut a = vec![T::nil(); n * n];
        for i in 0..n {
            a[i * n + i] = T::unit();
        }
        Grid { rows: n, cols: n, a }
    }
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }
    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }
    /// row_i -= q·row_k
    fn row_sub(&mut self, i: usize, q: &T, k: usize) -> Option<()> {
        for j in 0..self.cols {
            let b = &self.a[k * self.cols + j];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].sub_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    /// col_j -= q·col_k
    fn col_sub(&mut self, j: usize, q: &T, k: usize) -> Option<()> {
        for i in 0..self.rows {
            let b = &self.a[i * self.cols + k];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].sub_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.a[i * self.cols + j].negated()?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }
    fn to_int(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.a.iter().map(Scalar::to_big).collect(),
        }
    }
}

struct Elimination<T> {
    d: Grid<T>,
    u: Option<Grid<T>>,
    v: Option<Grid<T>>,
}

impl<T: Scalar> Elimination<T> {
    fn run(&mut self) -> Option<()> {
        let (rows, cols) = (self.d.rows, self.d.cols);
        for t in 0..rows.min(cols) {
            loop {
                // smallest nonzero |entry| in the trailing block, first in row-major order
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = self.d.at(i, j);
                        if !x.is_nil()
                            && best.is_none_or(|(bi, bj)| x.cmp_abs(self.d.at(bi, bj)) == Ordering::Less)
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return Some(());
                };
                self.d.swap_rows(t, pi);
                if let Some(u) = &mut self.u {
                    u.swap_rows(t, pi);
                }
                self.d.swap_cols(t, pj);
                if let Some(v) = &mut self.v {
                    v.swap_cols(t, pj);
                }
                let pivot = self.d.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let x = self.d.at(i, t);
                    if !x.is_nil() {
                        let q = x.quot(&pivot)?;
                        self.d.row_sub(i, &q, t)?;
                        if let Some(u) = &mut self.u {
                            u.row_sub(i, &q, t)?;
                        }
                        clean &= self.d.at(i, t).is_nil();
                    }
                }
                for j in t + 1..cols {
                    let x = self.d.at(t, j);
                    if !x.is_nil() {
                        let q = x.quot(&pivot)?;
                        self.d.col_sub(j, &q, t)?;
                        if let Some(v) = &mut self.v {
                            v.col_sub(j, &q, t)?;
                        }
                        clean &= self.d.at(t, j).is_nil();
                    }
                }
                if !clean {
                    continue;
                }
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !pivot.divides(self.d.at(i, j))));
                if let Some(i) = bad {
                    let one = T::unit().negated()?;
                    // row_t += row_i
                    self.d.row_sub(t, &one, i)?;
                    if let Some(u) = &mut self.u {
                        u.row_sub(t, &one, i)?;
                    }
                    continue;
                }
                if pivot.below_zero() {
                    self.d.negate_row(t)?;
                    if let Some(u) = &mut self.u {
                        u.negate_row(t)?;
                    }
                }
                break;
            }
        }
        Some(())
    }
}

/// Smith normal form `U·M·V = D` with unimodular `U`, `V` and diagonal `D`
/// whose nonzero entries are positive and form a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Invariants of the cokernel `Z^cols / rowspace(M)`.
    pub invariants: AbelianInvariants,
}

impl SmithForm {
    /// Re-checks `U·M·V = D` and the shape of `D`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let diag: Vec<&BigInt> = (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i))
            .collect();
        self.u.mul(m).mul(&self.v) == self.d
            && self.d.is_diagonal()
            && diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (w[1] % w[0]).is_zero()
                }
            })
    }
}

fn run<T: Scalar>(d: Grid<T>, certificate: bool) -> Option<(IntMatrix, Option<(IntMatrix, IntMatrix)>)> {
    let (rows, cols) = (d.rows, d.cols);
    let mut e = Elimination {
        d,
        u: certificate.then(|| Grid::identity(rows)),
        v: certificate.then(|| Grid::identity(cols)),
    };
    e.run()?;
    let cert = certificate.then(|| {
        (
            e.u.as_ref().expect("tracked").to_int(),
            e.v.as_ref().expect("tracked").to_int(),
        )
    });
    Some((e.d.to_int(), cert))
}

fn diagonalize(m: &IntMatrix, certificate: bool) -> (IntMatrix, Option<(IntMatrix, IntMatrix)>) {
    let small: Option<Vec<i64>> = m.entries.iter().map(ToPrimitive::to_i64).collect();
    if let Some(a) = small {
        let grid = Grid {
            rows: m.rows,
            cols: m.cols,
            a,
        };
        if let Some(out) = run(grid, certificate) {
            return out;
        }
    }
    let grid = Grid {
        rows: m.rows,
        cols: m.cols,
        a: m.entries.clone(),
    };
    run(grid, certificate).expect("unbounded arithmetic cannot overflow")
}

fn invariants_of_diagonal(d: &IntMatrix) -> AbelianInvariants {
    let diag: Vec<BigInt> = (0..d.rows.min(d.cols))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    let rank = diag.len();
    AbelianInvariants::new(d.cols - rank, diag.into_iter().filter(|x| !x.is_one()).collect())
}

/// Smith normal form with transform certificate. The invariants describe
/// the cokernel `Z^cols / (row space of M)`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (d, cert) = diagonalize(m, true);
    let (u, v) = cert.expect("certificate requested");
    let invariants = invariants_of_diagonal(&d);
    SmithForm { u, d, v, invariants }
}

/// Only the cokernel invariants, skipping the certificate.
pub fn abelian_invariants(m: &IntMatrix) -> AbelianInvariants {
    invariants_of_diagonal(&diagonalize(m, false).0)
}
