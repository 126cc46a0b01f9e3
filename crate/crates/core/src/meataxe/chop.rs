//! Dense F_p linear algebra for module splitting, kept as row vectors acted on
//! from the right: `v ↦ v·A`.

use rand::Rng;

use super::poly::{self, Poly};
use crate::linalg::inv_mod;

pub(crate) type Mat = Vec<Vec<u32>>;

pub(crate) fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

pub(crate) fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut acc = vec![0u64; cols];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b[k].iter().enumerate() {
                    acc[j] += x as u64 * y as u64;
                }
                if k % 64 == 63 {
                    acc.iter_mut().for_each(|v| *v %= p);
                }
            }
            acc.into_iter().map(|v| (v % p) as u32).collect()
        })
        .collect()
}

fn add_scaled(acc: &mut Mat, b: &Mat, c: u32, p: u64) {
    for (ra, rb) in acc.iter_mut().zip(b) {
        for (x, &y) in ra.iter_mut().zip(rb) {
            *x = ((*x as u64 + c as u64 * y as u64) % p) as u32;
        }
    }
}

pub(crate) fn transpose(a: &Mat) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn vec_mul(v: &[u32], a: &Mat, p: u64) -> Vec<u32> {
    let cols = a.first().map_or(0, Vec::len);
    let mut acc = vec![0u64; cols];
    for (k, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in a[k].iter().enumerate() {
            acc[j] = (acc[j] + x as u64 * y as u64) % p;
        }
    }
    acc.into_iter().map(|v| v as u32).collect()
}

/// `f(θ)` by Horner's rule.
fn poly_eval(f: &Poly, theta: &Mat, p: u64) -> Mat {
    let n = theta.len();
    let mut acc = vec![vec![0u32; n]; n];
    for &c in f.iter().rev() {
        acc = mat_mul(&acc, theta, p);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = ((row[i] as u64 + c as u64) % p) as u32;
        }
    }
    acc
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
pub(crate) fn charpoly(a: &Mat, p: u64) -> Poly {
    let n = a.len();
    let mut h = a.clone();
    let sub = |x: u32, y: u32| ((x as u64 + p - y as u64) % p) as u32;
    let mulp = |x: u32, y: u32| (x as u64 * y as u64 % p) as u32;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let m = mulp(h[i][j], inv);
            if m == 0 {
                continue;
            }
            // R_i −= m·R_{j+1}, then C_{j+1} += m·C_i keeps the similarity class.
            for k in 0..n {
                let t = mulp(m, h[j + 1][k]);
                h[i][k] = sub(h[i][k], t);
            }
            for row in h.iter_mut() {
                let t = mulp(m, row[i]);
                row[j + 1] = ((row[j + 1] as u64 + t as u64) % p) as u32;
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_i (Π h_{k,k−1}) h_{m−i,m} p_{m−i−1}, 1-indexed
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 1..=n {
        let hm = h[m - 1][m - 1];
        let mut next = poly::mul(&polys[m - 1], &vec![sub(0, hm), 1], p);
        let mut t = 1u32;
        for i in 1..m {
            t = mulp(t, h[m - i][m - i - 1]);
            let c = mulp(t, h[m - i - 1][m - 1]);
            if c != 0 {
                next = poly::sub(&next, &poly::mul(&polys[m - i - 1], &vec![c], p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("non-empty")
}

/// Vectors `v` with `v·a = 0`, as a basis.
pub(crate) fn left_nullspace(a: &Mat, p: u64) -> Vec<Vec<u32>> {
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<(Vec<u32>, Vec<u32>)> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (r.clone(), e)
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).find(|&i| rows[i].0[c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank].0[c], p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for r in tail.iter_mut() {
            let m = (r.0[c] as u64 * inv as u64 % p) as u32;
            if m == 0 {
                continue;
            }
            axpy(&mut r.0, &pivot.0, m, p);
            axpy(&mut r.1, &pivot.1, m, p);
        }
        rank += 1;
    }
    rows.into_iter().skip(rank).map(|(_, e)| e).collect()
}

/// `x −= m·y`
fn axpy(x: &mut [u32], y: &[u32], m: u32, p: u64) {
    for (a, &b) in x.iter_mut().zip(y) {
        if b != 0 {
            *a = ((*a as u64 + p - m as u64 * b as u64 % p) % p) as u32;
        }
    }
}

/// A semi-echelon basis: row `i` is 1 at its pivot and 0 at the pivots of all
/// earlier rows, so reducing against rows in order is exact.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub(crate) fn new(p: u64, dim: usize) -> Self {
        Echelon {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place, returning the coefficient of each basis row.
    fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|(piv, row)| {
                let c = v[*piv];
                if c != 0 {
                    axpy(v, row, c, self.p);
                }
                c
            })
            .collect()
    }

    /// Adds `v` if it is independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], self.p);
        for x in v.iter_mut() {
            *x = (*x as u64 * inv as u64 % self.p) as u32;
        }
        self.rows.push((piv, v));
        true
    }

    /// The smallest subspace containing `v` and closed under every matrix in
    /// `gens`.
    pub(crate) fn spin(v: Vec<u32>, gens: &[Mat], p: u64) -> Self {
        let mut e = Echelon::new(p, v.len());
        e.insert(v);
        let mut next = 0;
        while next < e.rows.len() {
            let row = e.rows[next].1.clone();
            for g in gens {
                e.insert(vec_mul(&row, g, p));
            }
            next += 1;
        }
        e
    }

    /// Actions of `gens` on this invariant subspace and on the quotient.
    pub(crate) fn split(&self, gens: &[Mat]) -> (Vec<Mat>, Vec<Mat>) {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        let complement: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let mut subs = Vec::with_capacity(gens.len());
        let mut quots = Vec::with_capacity(gens.len());
        for g in gens {
            let sub: Mat = self
                .rows
                .iter()
                .map(|(_, row)| {
                    let mut image = vec_mul(row, g, self.p);
                    let coords = self.reduce(&mut image);
                    debug_assert!(image.iter().all(|&x| x == 0), "subspace is not invariant");
                    coords
                })
                .collect();
            let quot: Mat = complement
                .iter()
                .map(|&k| {
                    let mut image = g[k].clone();
                    self.reduce(&mut image);
                    complement.iter().map(|&c| image[c]).collect()
                })
                .collect();
            subs.push(sub);
            quots.push(quot);
        }
        (subs, quots)
    }

    fn basis(&self) -> Mat {
        self.rows.iter().map(|r| r.1.clone()).collect()
    }
}

/// Whether exhaustive search is affordable: every nonzero vector up to scalars
/// is spun.
fn exhaustive_ok(dim: usize, p: u64) -> bool {
    dim < 8 && (p as u128).pow(dim as u32) <= 1 << 16
}

fn exhaustive_submodule(gens: &[Mat], dim: usize, p: u64) -> Option<Echelon> {
    let total = (p as usize).pow(dim as u32);
    for k in 1..total {
        let v: Vec<u32> = (0..dim)
            .map(|i| ((k / (p as usize).pow(i as u32)) % p as usize) as u32)
            .collect();
        // one representative per line: first nonzero coordinate is 1
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let e = Echelon::spin(v, gens, p);
        if e.rank() < dim {
            return Some(e);
        }
    }
    None
}

/// A proper nonzero invariant subspace, or `None` when the module is simple.
pub(crate) fn find_submodule<R: Rng>(gens: &[Mat], dim: usize, p: u64, rng: &mut R) -> Option<Echelon> {
    if dim <= 1 {
        return None;
    }
    if exhaustive_ok(dim, p) {
        return exhaustive_submodule(gens, dim, p);
    }
    let transposed: Vec<Mat> = gens.iter().map(transpose).collect();
    let mut pool: Vec<Mat> = gens.to_vec();
    pool.push(identity(dim));
    loop {
        // Holt–Rees: a random algebra element θ from products and sums.
        let a = rng.gen_range(0..pool.len());
        let b = rng.gen_range(0..pool.len());
        let prod = mat_mul(&pool[a], &pool[b], p);
        if pool.len() < 24 {
            pool.push(prod);
        } else {
            let slot = rng.gen_range(gens.len() + 1..pool.len());
            pool[slot] = prod;
        }
        let mut theta = vec![vec![0u32; dim]; dim];
        for m in &pool {
            let c = rng.gen_range(0..p) as u32;
            if c != 0 {
                add_scaled(&mut theta, m, c, p);
            }
        }
        let cp = charpoly(&theta, p);
        for f in poly::irreducible_factors(&cp, p, rng) {
            let deg = f.len() - 1;
            let f_theta = poly_eval(&f, &theta, p);
            let null = left_nullspace(&f_theta, p);
            let Some(v) = null.first().cloned() else {
                continue;
            };
            let e = Echelon::spin(v, gens, p);
            if e.rank() < dim {
                return Some(e);
            }
            if null.len() == deg {
                let w = left_nullspace(&transpose(&f_theta), p)
                    .into_iter()
                    .next()
                    .expect("f(θ) is singular on both sides");
                let dual = Echelon::spin(w, &transposed, p);
                if dual.rank() < dim {
                    let ann = left_nullspace(&transpose(&dual.basis()), p);
                    let mut e = Echelon::new(p, dim);
                    for v in ann {
                        e.insert(v);
                    }
                    return Some(e);
                }
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_mat<R: Rng>(n: usize, p: u64, rng: &mut R) -> Mat {
        (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p) as u32).collect())
            .collect()
    }

    #[test]
    fn cayley_hamilton() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 7] {
            for n in 1..9 {
                let a = random_mat(n, p, &mut rng);
                let cp = charpoly(&a, p);
                assert_eq!(cp.len(), n + 1);
                assert_eq!(cp[n], 1);
                let z = poly_eval(&cp, &a, p);
                assert!(z.iter().flatten().all(|&x| x == 0), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn nullspace_and_split() {
        let p = 3;
        let a: Mat = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]];
        let null = left_nullspace(&a, p);
        assert_eq!(null.len(), 2);
        for v in &null {
            assert!(vec_mul(v, &a, p).iter().all(|&x| x == 0));
        }
        // upper triangular unipotent: e_2 spans an invariant line
        let g: Mat = vec![vec![1, 1], vec![0, 1]];
        let e = Echelon::spin(vec![0, 1], std::slice::from_ref(&g), p);
        assert_eq!(e.rank(), 1);
        let (s, q) = e.split(&[g]);
        assert_eq!(s, vec![vec![vec![1]]]);
        assert_eq!(q, vec![vec![vec![1]]]);
    }
}
