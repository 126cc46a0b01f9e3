use serde::Serialize;

use super::FiniteGroup;
use crate::error::is_prime;

/// A subgroup of a [`FiniteGroup`], as a sorted set of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl SubgroupHandle {
    fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        SubgroupHandle { members, mask }
    }

    /// The whole group.
    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_mask(vec![true; g.order()])
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Self::from_mask(mask)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn elements(&self) -> &[usize] {
        &self.members
    }

    /// Checks closure under products and inverses, and that the identity is
    /// present.
    pub fn is_closed_in(&self, g: &FiniteGroup) -> bool {
        self.mask.len() == g.order()
            && self.contains(0)
            && self.members.iter().all(|&x| {
                self.contains(g.inverse(x)) && self.members.iter().all(|&y| self.contains(g.mul(x, y)))
            })
    }
}

/// The subgroup generated by `gens`.
pub fn generated(g: &FiniteGroup, gens: &[usize]) -> SubgroupHandle {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
    }
    SubgroupHandle::from_mask(mask)
}

/// A generating set for `h`, chosen greedily in element order.
pub fn generating_set(g: &FiniteGroup, h: &SubgroupHandle) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = SubgroupHandle::trivial(g);
    for &x in h.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = generated(g, &gens);
        }
        if span.order() == h.order() {
            break;
        }
    }
    gens
}

fn checked(g: &FiniteGroup, h: SubgroupHandle) -> SubgroupHandle {
    debug_assert!(h.is_closed_in(g), "subgroup computation returned a non-subgroup");
    h
}

/// `{x : xg = gx}` by exhaustive scan.
pub fn centralizer(g: &FiniteGroup, x: usize) -> SubgroupHandle {
    let mask = (0..g.order()).map(|y| g.mul(x, y) == g.mul(y, x)).collect();
    checked(g, SubgroupHandle::from_mask(mask))
}

/// Saturates `⟨seed⟩` under conjugation by `by`.
fn closure_under_conjugation(g: &FiniteGroup, seed: &[usize], by: &[usize]) -> SubgroupHandle {
    let mut gens: Vec<usize> = seed.iter().copied().filter(|&s| s != 0).collect();
    let mut k = generated(g, &gens);
    let mut i = 0;
    while i < gens.len() {
        let x = gens[i];
        for &y in by {
            let c = g.conjugate(x, y);
            if !k.contains(c) {
                gens.push(c);
                k = generated(g, &gens);
            }
        }
        i += 1;
    }
    k
}

/// The smallest normal subgroup containing `s`.
pub fn normal_closure(g: &FiniteGroup, s: &[usize]) -> SubgroupHandle {
    checked(g, closure_under_conjugation(g, s, g.generators()))
}

/// `[H, H]`, generated by commutators of a generating set of `h` and closed
/// under conjugation by `h`.
pub fn derived_subgroup(g: &FiniteGroup, h: &SubgroupHandle) -> SubgroupHandle {
    let gens = generating_set(g, h);
    let mut comms = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            comms.push(g.commutator(x, y));
        }
    }
    checked(g, closure_under_conjugation(g, &comms, &gens))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Minimal number of generators of `H/[H,H]`: the largest `log_p |A/pA|`
/// over primes `p`, where `pA` is the image of `H^p[H,H]`.
pub fn abelian_d(g: &FiniteGroup, h: &SubgroupHandle) -> usize {
    let derived = derived_subgroup(g, h);
    let quotient = h.order() / derived.order();
    let gens = generating_set(g, h);
    let mut best = 0;
    for p in prime_factors(quotient) {
        debug_assert!(is_prime(p as u64));
        let mut seed = generating_set(g, &derived);
        seed.extend(gens.iter().map(|&x| g.power(x, p as u64)));
        let index = h.order() / generated(g, &seed).order();
        let mut dim = 0;
        let mut m = index;
        while m > 1 {
            debug_assert_eq!(m % p, 0);
            m /= p;
            dim += 1;
        }
        best = best.max(dim);
    }
    best
}

/// Outcome of checking `d(K/[K,K]) ≤ |G : C_G(g)K|` for `K` the normal
/// closure of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Record {
    pub d: usize,
    pub bound: usize,
    pub pass: bool,
}

pub fn lemma31_check(g: &FiniteGroup, x: usize) -> Lemma31Record {
    let k = normal_closure(g, &[x]);
    let c = centralizer(g, x);
    let meet = c.elements().iter().filter(|&&y| k.contains(y)).count();
    // K is normal, so CK is a subgroup of order |C||K|/|C ∩ K|
    let ck = c.order() * k.order() / meet;
    let bound = g.order() / ck;
    let d = abelian_d(g, &k);
    Lemma31Record {
        d,
        bound,
        pass: d <= bound,
    }
}
