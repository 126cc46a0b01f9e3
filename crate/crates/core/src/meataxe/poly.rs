//! Dense univariate polynomials over F_p, lowest coefficient first, never
//! with trailing zeros.

use std::collections::BTreeSet;

use rand::Rng;

use crate::linalg::inv_mod;

pub(crate) type Poly = Vec<u32>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn mulmod(a: u32, b: u32, p: u64) -> u32 {
    (a as u64 * b as u64 % p) as u32
}

pub(crate) fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(crate) fn monic(f: &Poly, p: u64) -> Poly {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = inv_mod(lead, p);
            f.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn sub(f: &Poly, g: &Poly, p: u64) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0) as u64;
            let b = g.get(i).copied().unwrap_or(0) as u64;
            ((a + p - b) % p) as u32
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(f: &Poly, g: &Poly, p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder; `g` must be nonzero.
pub(crate) fn divrem(f: &Poly, g: &Poly, p: u64) -> (Poly, Poly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let inv = inv_mod(g[dg], p);
    let mut r: Vec<u32> = f.clone();
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - dg];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + dg], inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            let t = mulmod(c, b, p) as u64;
            r[k + j] = ((r[k + j] as u64 + p - t) % p) as u32;
        }
    }
    r.truncate(dg);
    (trim(q), trim(r))
}

pub(crate) fn rem(f: &Poly, g: &Poly, p: u64) -> Poly {
    divrem(f, g, p).1
}

pub(crate) fn gcd(f: &Poly, g: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

fn derivative(f: &Poly, p: u64) -> Poly {
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, (i as u64 % p) as u32, p))
        .collect();
    trim(out)
}

fn mulmod_poly(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

fn powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_poly(&result, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// The distinct monic irreducible factors of `f`, smallest degree first.
pub(crate) fn irreducible_factors<R: Rng>(f: &Poly, p: u64, rng: &mut R) -> Vec<Poly> {
    let mut out = BTreeSet::new();
    collect_factors(&monic(f, p), p, rng, &mut out);
    let mut v: Vec<Poly> = out.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn collect_factors<R: Rng>(f: &Poly, p: u64, rng: &mut R, out: &mut BTreeSet<Poly>) {
    if f.len() <= 1 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f(x) = g(x^p) = g(x)^p over F_p
        let root: Poly = f.iter().step_by(p as usize).copied().collect();
        collect_factors(&root, p, rng, out);
        return;
    }
    let g = gcd(f, &df, p);
    let squarefree = divrem(f, &g, p).0;
    distinct_degree(&monic(&squarefree, p), p, rng, out);
    collect_factors(&g, p, rng, out);
}

fn distinct_degree<R: Rng>(f: &Poly, p: u64, rng: &mut R, out: &mut BTreeSet<Poly>) {
    let x: Poly = vec![0, 1];
    let mut h = f.clone();
    let mut w = rem(&x, &h, p);
    let mut d = 0;
    while h.len() > 1 {
        d += 1;
        if 2 * d > h.len() - 1 {
            out.insert(monic(&h, p));
            return;
        }
        w = powmod(&w, p, &h, p);
        let g = gcd(&h, &sub(&w, &x, p), p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, out);
            h = divrem(&h, &g, p).0;
            w = rem(&w, &h, p);
        }
    }
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` factors.
fn equal_degree<R: Rng>(f: &Poly, d: usize, p: u64, rng: &mut R, out: &mut BTreeSet<Poly>) {
    let n = f.len() - 1;
    if n == d {
        out.insert(monic(f, p));
        return;
    }
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..p) as u32).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // a + a² + … + a^{2^{d-1}}
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod_poly(&t, &t, f, p);
                acc = sub(&acc, &t, p); // characteristic 2
            }
            acc
        } else {
            // a^{(p^d − 1)/2} as the norm a^{1 + p + … + p^{d−1}} raised to (p − 1)/2
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = powmod(&t, p, f, p);
                norm = mulmod_poly(&norm, &t, f, p);
            }
            sub(&powmod(&norm, (p - 1) / 2, f, p), &vec![1], p)
        };
        let g = gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

/// Coefficient list from signed integers, reduced mod p.
#[cfg(test)]
pub(crate) fn from_signed(c: &[i64], p: u64) -> Poly {
    trim(c.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(fs: &[Poly], p: u64) -> Poly {
        fs.iter().fold(vec![1], |acc, f| mul(&acc, f, p))
    }

    /// Whether `f` has no factor of degree ≤ deg/2, by trial division
    /// against every monic polynomial.
    fn brute_irreducible(f: &Poly, p: u64) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for k in 0..count {
                let mut g: Poly = (0..d)
                    .map(|i| ((k / (p as usize).pow(i as u32)) % p as usize) as u32)
                    .collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factor_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^3 − 1 over F_2
        let f = from_signed(&[-1, 0, 0, 1], 2);
        assert_eq!(
            irreducible_factors(&f, 2, &mut rng),
            vec![vec![1, 1], vec![1, 1, 1]]
        );
        // (x − 1)^2 (x + 1) over F_3
        let f = from_signed(&[1, -1, -1, 1], 3);
        assert_eq!(irreducible_factors(&f, 3, &mut rng), vec![vec![1, 1], vec![2, 1]]);
        // x^4 = (x)^4 over F_2, and x^4 + 1 = (x + 1)^4
        assert_eq!(
            irreducible_factors(&vec![0, 0, 0, 0, 1], 2, &mut rng),
            vec![vec![0, 1]]
        );
        assert_eq!(
            irreducible_factors(&vec![1, 0, 0, 0, 1], 2, &mut rng),
            vec![vec![1, 1]]
        );
    }

    #[test]
    fn factors_are_irreducible_and_cover() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            for seed in 0..40u64 {
                let mut r = ChaCha8Rng::seed_from_u64(seed * 31 + p);
                let n = r.gen_range(1..9);
                let mut f: Poly = (0..n).map(|_| r.gen_range(0..p) as u32).collect();
                f.push(1);
                let fs = irreducible_factors(&f, p, &mut rng);
                for g in &fs {
                    assert!(brute_irreducible(g, p), "{g:?} over F_{p}");
                    assert!(rem(&f, g, p).is_empty());
                }
                // f divides a power of the product of its distinct factors
                let rad = product(&fs, p);
                let big = (0..f.len()).fold(vec![1], |acc, _| mul(&acc, &rad, p));
                assert!(rem(&big, &f, p).is_empty());
            }
        }
    }
}
