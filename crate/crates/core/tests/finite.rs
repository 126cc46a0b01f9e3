use gradlab::finite::{abelian_d, builtin_corpus, derived_subgroup, normal_closure, FiniteGroup};
use gradlab::meataxe::{chop, regular_module, ModuleRep};

type Mat = Vec<Vec<u64>>;

fn dense(m: &ModuleRep) -> Vec<Mat> {
    m.generator_actions
        .iter()
        .map(|a| {
            (0..a.rows())
                .map(|i| (0..a.cols()).map(|j| a.get(i, j) as u64).collect())
                .collect()
        })
        .collect()
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).unwrap()
}

/// Reduced row echelon form of `rows`, returning (basis, pivots).
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        rows[r].iter_mut().for_each(|x| *x = *x * s % p);
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                let pivot = rows[r].clone();
                rows[k]
                    .iter_mut()
                    .zip(&pivot)
                    .for_each(|(x, y)| *x = (*x + p * p - f * y) % p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn act(v: &[u64], m: &Mat, p: u64) -> Vec<u64> {
    (0..m.len())
        .map(|j| v.iter().enumerate().map(|(i, x)| x * m[i][j]).sum::<u64>() % p)
        .collect()
}

fn span_closure(v: Vec<u64>, gens: &[Mat], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut basis = vec![v];
    loop {
        let (b, piv) = rref(basis.clone(), p);
        let mut grown = b.clone();
        for u in &b {
            for g in gens {
                grown.push(act(u, g, p));
            }
        }
        let (c, _) = rref(grown, p);
        if c.len() == b.len() {
            return (b, piv);
        }
        basis = c;
    }
}

/// Composition factors by exhaustive search: the smallest cyclic submodule is
/// simple; split it off and recurse on the quotient.
fn oracle(gens: &[Mat], dim: usize, p: u64) -> Vec<usize> {
    if dim == 0 {
        return vec![];
    }
    let mut best: Option<(Vec<Vec<u64>>, Vec<usize>)> = None;
    for k in 1..p.pow(dim as u32) {
        let v: Vec<u64> = (0..dim).map(|i| k / p.pow(i as u32) % p).collect();
        let s = span_closure(v, gens, p);
        if best.as_ref().is_none_or(|b| s.0.len() < b.0.len()) {
            best = Some(s);
        }
    }
    let (sub, pivots) = best.unwrap();
    if sub.len() == dim {
        return vec![dim];
    }
    // quotient coordinates: the non-pivot columns after reducing by `sub`
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let reduce = |mut v: Vec<u64>| {
        for (row, &c) in sub.iter().zip(&pivots) {
            let f = v[c];
            v.iter_mut()
                .zip(row)
                .for_each(|(x, y)| *x = (*x + p * p - f * y) % p);
        }
        v
    };
    let quotient: Vec<Mat> = gens
        .iter()
        .map(|g| {
            free.iter()
                .map(|&k| {
                    let image = reduce(g[k].clone());
                    free.iter().map(|&c| image[c]).collect()
                })
                .collect()
        })
        .collect();
    let mut out = vec![sub.len()];
    out.extend(oracle(&quotient, free.len(), p));
    out.sort();
    out
}

#[test]
fn chop_matches_exhaustive_search() {
    for (name, p) in [
        ("sym:3", 2u64),
        ("sym:3", 3),
        ("cyclic:3", 2),
        ("cyclic:6", 2),
        ("cyclic:6", 3),
        ("cyclic:5", 2),
        ("abelian:2,2", 2),
        ("dihedral:6", 2),
        ("cyclic:4", 2),
    ] {
        let m = regular_module(&FiniteGroup::builtin(name).unwrap(), p).unwrap();
        let expected = oracle(&dense(&m), m.dimension, p);
        for seed in 0..5 {
            assert_eq!(chop(&m, seed).dimensions(), expected, "{name} over F_{p}");
        }
    }
    let s3 = regular_module(&FiniteGroup::builtin("sym:3").unwrap(), 2).unwrap();
    assert_eq!(chop(&s3, 0).dimensions(), vec![1, 1, 2, 2]);
    let s3 = regular_module(&FiniteGroup::builtin("sym:3").unwrap(), 3).unwrap();
    assert_eq!(chop(&s3, 0).max_degree, 1);
}

#[test]
fn regular_chops_cover_the_group() {
    for name in builtin_corpus(24) {
        let g = FiniteGroup::builtin(&name).unwrap();
        for p in [2u64, 3, 5] {
            let r = chop(&regular_module(&g, p).unwrap(), 11);
            assert_eq!(r.total_dimension(), g.order(), "{name} p={p}");
            if !g.order().is_multiple_of(p as usize) && g.is_abelian() {
                // simples are Frobenius orbits of characters, the largest of
                // size ord_e(p) for e the exponent
                let e = g.exponent();
                let ord = (1..=e).find(|&k| p.pow(k as u32) % e == 1 % e).unwrap();
                assert_eq!(r.max_degree as u64, ord, "{name} p={p}");
            }
        }
    }
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![g.identity()];
    let mut k = 0;
    while k < out.len() {
        for &s in gens {
            let y = g.mul(out[k], s);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        k += 1;
    }
    out.sort();
    out
}

/// d(K/[K,K]) as the least size of S ⊆ K with ⟨S ∪ [K,K]⟩ = K.
fn brute_abelian_d(g: &FiniteGroup, k: &[usize], derived: &[usize]) -> usize {
    let full = closure(g, k);
    for size in 0..=4 {
        let mut idx = vec![0usize; size];
        loop {
            let mut gens: Vec<usize> = derived.to_vec();
            gens.extend(idx.iter().map(|&i| k[i]));
            if closure(g, &gens) == full {
                return size;
            }
            let mut i = 0;
            while i < size {
                idx[i] += 1;
                if idx[i] < k.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == size {
                break;
            }
        }
    }
    panic!("more than four generators needed");
}

#[test]
fn abelian_d_matches_brute_force() {
    for name in builtin_corpus(16)
        .into_iter()
        .chain(["sym:4".to_string(), "alt:4".to_string()])
    {
        let g = FiniteGroup::builtin(&name).unwrap();
        for x in 0..g.order() {
            let k = normal_closure(&g, &[x]);
            let d = derived_subgroup(&g, &k);
            assert_eq!(
                abelian_d(&g, &k),
                brute_abelian_d(&g, k.elements(), d.elements()),
                "{name} element {x}"
            );
        }
    }
}
