use gradlab::checks::chain_corpus;
use gradlab::cosets::{low_index_subgroups, Conjugates};
use gradlab::homology::{h1_integral, h1_mod_p, h1_of_subgroup, Coefficients};
use gradlab::linalg::d_profinite;
use gradlab::presentations::{free_group, simplify, Presentation};
use gradlab::rewriting::subgroup_presentation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn corpus() -> Vec<Presentation> {
    let mut out: Vec<Presentation> = chain_corpus().into_iter().map(|(_, p)| p).collect();
    for text in [
        "gens: a b\nrel: a^4\nrel: b^6\nrel: [a,b]\n",
        "gens: a b c\nrel: a^2 b^3 c^5\n",
        "gens: x y\nrel: x^3\nrel: y^2\nrel: (xy)^2\n",
        "gens: a\nrel: a^12\n",
        "gens: a b\nrel: a\nrel: abAB\n",
    ] {
        out.push(Presentation::parse(text).unwrap());
    }
    out
}

fn p_part_count(torsion: &[BigInt], p: u64) -> usize {
    torsion.iter().filter(|t| (*t % p).to_u64() == Some(0)).count()
}

#[test]
fn mod_p_agrees_with_integral() {
    for g in corpus() {
        let inv = h1_integral(&g);
        for p in PRIMES {
            assert_eq!(
                h1_mod_p(&g, p).unwrap(),
                inv.free_rank + p_part_count(&inv.torsion, p),
                "{g} p={p}"
            );
        }
        let max = PRIMES.iter().map(|&p| inv.fp_dim(p)).max().unwrap();
        assert_eq!(d_profinite(&inv), max, "{g}");
    }
}

#[test]
fn simplify_preserves_h1() {
    for g in corpus() {
        let s = simplify(&g);
        assert_eq!(h1_integral(&g), h1_integral(&s), "{g}");
        assert!(s.total_relator_length() <= g.total_relator_length());
    }
}

#[test]
fn known_values() {
    let cases = [
        ("gens: a b\nrel: a^2\n", 1, vec![2]),
        ("gens: a b\nrel: a^4\nrel: b^6\nrel: [a,b]\n", 0, vec![2, 12]),
        ("gens: x y\nrel: x^3\nrel: y^2\nrel: (xy)^2\n", 0, vec![2]),
    ];
    for (text, free, torsion) in cases {
        let inv = h1_integral(&Presentation::parse(text).unwrap());
        assert_eq!(inv.free_rank, free);
        assert_eq!(
            inv.torsion,
            torsion.into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }
}

/// A subgroup of index n in F_r is free of rank (r − 1)n + 1.
#[test]
fn nielsen_schreier() {
    for (r, max) in [(1usize, 6usize), (2, 4), (3, 3)] {
        let f = free_group(r);
        for t in low_index_subgroups(&f, max, false, Conjugates::All).unwrap() {
            let n = t.index();
            let rank = (r - 1) * n + 1;
            let raw = subgroup_presentation(&t);
            assert_eq!(
                raw.generator_count(),
                rank,
                "Schreier generators of an index-{n} subgroup"
            );
            assert!(raw.relators().is_empty());
            let mut rep = h1_of_subgroup(&t, Coefficients::Integral).unwrap();
            let inv = rep.integral().clone();
            assert_eq!((inv.free_rank, inv.torsion.len()), (rank, 0));
            assert_eq!(rep.fp_dim(2).unwrap(), rank);
        }
    }
}

/// Every subgroup of Z/4 × Z/6 is abelian of order 24/index, so its H₁ is
/// finite of exactly that order.
#[test]
fn subgroups_of_finite_abelian_groups() {
    let g = Presentation::parse("gens: a b\nrel: a^4\nrel: b^6\nrel: [a,b]\n").unwrap();
    for t in low_index_subgroups(&g, 24, false, Conjugates::All).unwrap() {
        let mut rep = h1_of_subgroup(&t, Coefficients::Integral).unwrap();
        let inv = rep.integral().clone();
        assert_eq!(inv.free_rank, 0);
        let order: BigInt = inv.torsion.iter().product();
        assert_eq!(
            order,
            BigInt::from(24 / t.index()),
            "subgroup of index {}",
            t.index()
        );
    }
}
