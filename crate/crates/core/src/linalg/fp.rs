use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::error::{check_prime, Result};

pub(crate) fn mod_p(x: i64, p: u64) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u64) -> u32 {
    // Fermat; p is prime
    let (mut base, mut e, mut acc) = (a as u64 % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

/// A dense matrix over the prime field `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        check_prime(p)?;
        if p > u32::MAX as u64 {
            return Err(crate::Error::InvalidArgument(format!("prime {p} is too large")));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    /// Reduces integer rows mod `p`. Panics if the rows are ragged.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = mod_p(x, p);
            }
        }
        Ok(m)
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Result<Self> {
        let mut out = Self::zeros(p, m.rows(), m.cols())?;
        let big_p = num_bigint::BigInt::from(p);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let r = (m.get(i, j) % &big_p + &big_p) % &big_p;
                out.data[i * m.cols() + j] = r.to_u32().expect("reduced mod p");
            }
        }
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = mod_p(v, self.p);
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let e = &mut self.data[i * self.cols + j];
        *e = ((*e as u64 + v as u64) % self.p) as u32;
    }

    pub fn rank(&self) -> usize {
        let (p, cols) = (self.p, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..cols {
            let Some(r) = (rank..self.rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(r * cols + j, rank * cols + j);
            }
            let inv = inv_mod(a[rank * cols + c], p) as u64;
            for j in c..cols {
                a[rank * cols + j] = (a[rank * cols + j] as u64 * inv % p) as u32;
            }
            for i in rank + 1..self.rows {
                let f = a[i * cols + c] as u64;
                if f != 0 {
                    for j in c..cols {
                        let sub = f * a[rank * cols + j] as u64 % p;
                        a[i * cols + j] = ((a[i * cols + j] as u64 + p - sub) % p) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Rank over `F_p` by elimination.
pub fn fp_rank(m: &FpMatrix) -> usize {
    m.rank()
}

/// Row echelon form over `F_p` built one sparse row at a time.
///
/// Rows are reduced against existing pivots in increasing column order; a
/// row that survives becomes a new pivot row normalized to leading entry 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    p: u64,
    cols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<Vec<(u32, u32)>>,
    acc: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl SparseEchelon {
    pub fn new(p: u64, cols: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(SparseEchelon {
            p,
            cols,
            pivot_row: vec![NO_PIVOT; cols],
            rows: Vec::new(),
            acc: vec![0; cols],
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a row given as `(column, integer coefficient)` pairs; returns
    /// whether it raised the rank.
    pub fn push_row(&mut self, entries: &[(usize, i64)]) -> bool {
        let p = self.p;
        let mut heap = BinaryHeap::new();
        let mut touched = Vec::new();
        for &(j, v) in entries {
            let r = mod_p(v, p);
            if r == 0 {
                continue;
            }
            if self.acc[j] == 0 {
                touched.push(j);
                heap.push(Reverse(j));
            }
            self.acc[j] = ((self.acc[j] as u64 + r as u64) % p) as u32;
        }
        let mut lead = None;
        while let Some(Reverse(c)) = heap.pop() {
            if heap.peek() == Some(&Reverse(c)) {
                continue;
            }
            let f = self.acc[c];
            if f == 0 {
                continue;
            }
            let pr = self.pivot_row[c];
            if pr == NO_PIVOT {
                lead = Some(c);
                break;
            }
            for &(j, v) in &self.rows[pr as usize] {
                let j = j as usize;
                let sub = f as u64 * v as u64 % p;
                if self.acc[j] == 0 {
                    touched.push(j);
                    heap.push(Reverse(j));
                }
                self.acc[j] = ((self.acc[j] as u64 + p - sub) % p) as u32;
            }
        }
        let added = if let Some(c) = lead {
            let inv = inv_mod(self.acc[c], p) as u64;
            let mut row: Vec<(u32, u32)> = touched
                .iter()
                .filter(|&&j| j >= c && self.acc[j] != 0)
                .map(|&j| (j as u32, (self.acc[j] as u64 * inv % p) as u32))
                .collect();
            row.sort_unstable();
            row.dedup_by_key(|e| e.0);
            self.pivot_row[c] = self.rows.len() as u32;
            self.rows.push(row);
            true
        } else {
            false
        };
        for j in touched {
            self.acc[j] = 0;
        }
        added
    }

    /// Columns without a pivot, in increasing order. Their classes form the
    /// frozen basis of the quotient `F_p^cols / rowspace`.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| self.pivot_row[j] == NO_PIVOT)
            .collect()
    }

    /// The quotient map `F_p^cols → F_p^cols / rowspace`, in the basis of
    /// [`free_columns`](Self::free_columns).
    pub fn projection(&self) -> Projection {
        let p = self.p;
        let free = self.free_columns();
        let mut position = vec![u32::MAX; self.cols];
        for (i, &j) in free.iter().enumerate() {
            position[j] = i as u32;
        }
        let mut images: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.cols];
        for &j in &free {
            images[j] = vec![(position[j], 1)];
        }
        // pivot column j: x_j = -Σ (row entries beyond j), resolved from the
        // highest pivot down
        let mut acc = vec![0u32; free.len()];
        for c in (0..self.cols).rev() {
            let pr = self.pivot_row[c];
            if pr == NO_PIVOT {
                continue;
            }
            let mut touched = Vec::new();
            for &(j, v) in &self.rows[pr as usize] {
                let j = j as usize;
                if j == c {
                    continue;
                }
                for &(k, w) in &images[j] {
                    let k = k as usize;
                    if acc[k] == 0 {
                        touched.push(k);
                    }
                    acc[k] = ((acc[k] as u64 + v as u64 * w as u64) % p) as u32;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut img = Vec::new();
            for k in touched {
                if acc[k] != 0 {
                    img.push((k as u32, ((p - acc[k] as u64) % p) as u32));
                }
                acc[k] = 0;
            }
            images[c] = img;
        }
        Projection {
            p,
            dim: free.len(),
            images,
        }
    }
}

/// A linear map from `F_p^cols` onto `F_p^dim`, stored column by column as
/// sparse vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub p: u64,
    pub dim: usize,
    pub images: Vec<Vec<(u32, u32)>>,
}

impl Projection {
    /// Image of a sparse integer vector, densely.
    pub fn apply(&self, v: &[(usize, i64)]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for &(j, x) in v {
            let x = mod_p(x, self.p) as u64;
            for &(k, w) in &self.images[j] {
                let e = &mut out[k as usize];
                *e = ((*e as u64 + x * w as u64) % self.p) as u32;
            }
        }
        out
    }
}
