//! Subgroup counts against two independent oracles: Hall's recursion for
//! free groups and a brute-force count of transitive permutation actions.

use gradlab::cosets::{low_index_subgroups, Conjugates};
use gradlab::presentations::{free_group, Presentation};
use num_bigint::BigInt;

/// a_n(F_r) = n·(n!)^{r−1} − Σ_{k<n} ((n−k)!)^{r−1}·a_k
fn hall(r: u32, max: usize) -> Vec<BigInt> {
    let fact = |n: usize| (1..=n).fold(BigInt::from(1), |a, k| a * k);
    let mut a: Vec<BigInt> = vec![BigInt::from(0)];
    for n in 1..=max {
        let mut v = BigInt::from(n) * fact(n).pow(r - 1);
        for k in 1..n {
            v -= fact(n - k).pow(r - 1) * &a[k];
        }
        a.push(v);
    }
    a
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Transitive homomorphisms G → S_n divided by (n−1)!, i.e. the number of
/// index-n subgroups, with the normal ones counted separately.
fn brute_counts(p: &Presentation, n: usize) -> (usize, usize) {
    let perms = permutations(n);
    let g = p.generator_count();
    let mut total = 0usize;
    let mut normal = 0usize;
    let mut choice = vec![0usize; g];
    loop {
        let images: Vec<&Vec<usize>> = choice.iter().map(|&i| &perms[i]).collect();
        let act = |mut x: usize, w: &gradlab::presentations::Word| {
            for l in w.letters() {
                let pi = images[l.generator()];
                x = if l.is_inverse() {
                    pi.iter().position(|&y| y == x).unwrap()
                } else {
                    pi[x]
                };
            }
            x
        };
        let relators_hold = p.relators().iter().all(|r| (0..n).all(|x| act(x, r) == x));
        if relators_hold {
            // orbit of 0
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(x) = stack.pop() {
                for pi in &images {
                    for y in [pi[x], pi.iter().position(|&z| z == x).unwrap()] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            if seen.iter().all(|&s| s) {
                total += 1;
                // the stabilizer is normal iff the image acts regularly
                if is_regular(&images, n) {
                    normal += 1;
                }
            }
        }
        // next choice
        let mut i = 0;
        while i < g {
            choice[i] += 1;
            if choice[i] < perms.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == g {
            break;
        }
    }
    let fact: usize = (1..n).product();
    assert_eq!(total % fact, 0);
    assert_eq!(normal % fact, 0);
    (total / fact, normal / fact)
}

fn is_regular(images: &[&Vec<usize>], n: usize) -> bool {
    let mut group: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut k = 0;
    while k < group.len() {
        for pi in images {
            let next: Vec<usize> = group[k].iter().map(|&x| pi[x]).collect();
            if !group.contains(&next) {
                group.push(next);
            }
        }
        k += 1;
    }
    group.len() == n
}

fn counts(p: &Presentation, max: usize, normal_only: bool) -> Vec<usize> {
    let tables = low_index_subgroups(p, max, normal_only, Conjugates::All).unwrap();
    let mut c = vec![0; max + 1];
    for t in &tables {
        c[t.index()] += 1;
    }
    c
}

#[test]
fn free_group_counts_match_hall() {
    let f2 = free_group(2);
    let c = counts(&f2, 4, false);
    let h = hall(2, 4);
    for n in 1..=4 {
        assert_eq!(BigInt::from(c[n]), h[n], "index {n}");
    }
    assert_eq!(&c[1..=3], &[1, 3, 13]);
    let normal = counts(&f2, 3, true);
    assert_eq!(&normal[1..=3], &[1, 3, 4]);

    let f3 = free_group(3);
    let c = counts(&f3, 3, false);
    let h = hall(3, 3);
    for n in 1..=3 {
        assert_eq!(BigInt::from(c[n]), h[n], "F3 index {n}");
    }
}

#[test]
fn counts_match_permutation_oracle() {
    let groups = [
        "gens: a b\n",
        "gens: a b\nrel: a^2\n",
        "gens: a b\nrel: (ab)^4\n",
        "gens: a b\nrel: a^3\nrel: b^2\nrel: (ab)^2\n",
        "gens: a b\nrel: [a,b]\n",
    ];
    for text in groups {
        let p = Presentation::parse(text).unwrap();
        let all = counts(&p, 4, false);
        let normal = counts(&p, 4, true);
        for n in 1..=4 {
            let (t, nm) = brute_counts(&p, n);
            assert_eq!(all[n], t, "{text:?} index {n}");
            assert_eq!(normal[n], nm, "{text:?} normal index {n}");
        }
    }
}

#[test]
fn representatives_are_fewer() {
    let f2 = free_group(2);
    let reps = low_index_subgroups(&f2, 3, false, Conjugates::Representatives).unwrap();
    let all = low_index_subgroups(&f2, 3, false, Conjugates::All).unwrap();
    assert!(reps.len() < all.len());
    // index-3 classes of F2: 4 normal + 3 classes of size 3
    assert_eq!(reps.iter().filter(|t| t.index() == 3).count(), 7);
}
