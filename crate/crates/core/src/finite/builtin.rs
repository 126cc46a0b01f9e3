use super::group::MAX_ORDER;
use super::FiniteGroup;
use crate::cosets::{regular_quotient, todd_coxeter};
use crate::error::{Error, Result};
use crate::presentations::Presentation;

fn cycle_perm(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (i, &x) in points.iter().enumerate() {
        p[x] = points[(i + 1) % points.len()];
    }
    p
}

fn cyclic_product(factors: &[usize]) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for &m in factors {
        gens.push(cycle_perm(degree, &(offset..offset + m).collect::<Vec<_>>()));
        offset += m;
    }
    FiniteGroup::from_permutations(degree, gens)
}

fn parse_size(name: &str, arg: &str) -> Result<usize> {
    arg.trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n >= 1)
        .ok_or_else(|| Error::InvalidArgument(format!("bad size `{arg}` in group `{name}`")))
}

impl FiniteGroup {
    /// The group presented by `presentation`, if it is finite and small
    /// enough to enumerate.
    pub fn from_presentation(presentation: &Presentation) -> Result<Self> {
        let table = todd_coxeter(presentation, &[], MAX_ORDER)?;
        regular_quotient(&table)
    }

    /// A named group: `cyclic:n`, `dihedral:n` and `quaternion:n` (of order
    /// `n`), `sym:n`, `alt:n`, `abelian:d1,d2,...`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (family, arg) = name
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("unknown group `{name}`")))?;
        match family {
            "cyclic" => cyclic_product(&[parse_size(name, arg)?]),
            "abelian" => {
                let factors = arg
                    .split(',')
                    .map(|a| parse_size(name, a))
                    .collect::<Result<Vec<_>>>()?;
                cyclic_product(&factors)
            }
            "dihedral" => {
                let n = parse_size(name, arg)?;
                if n % 2 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "dihedral groups have even order, got {n}"
                    )));
                }
                let m = n / 2;
                let text = format!("gens: r s\nrel: r^{m}\nrel: s^2\nrel: (rs)^2\n");
                FiniteGroup::from_presentation(&Presentation::parse(&text)?)
            }
            "quaternion" => {
                let n = parse_size(name, arg)?;
                if n < 8 || !n.is_power_of_two() {
                    return Err(Error::InvalidArgument(format!(
                        "quaternion groups have order 2^k ≥ 8, got {n}"
                    )));
                }
                let m = n / 4;
                let text = format!("gens: x y\nrel: x^{}\nrel: x^{m}Y^2\nrel: Yxyx\n", 2 * m);
                FiniteGroup::from_presentation(&Presentation::parse(&text)?)
            }
            "sym" => {
                let n = parse_size(name, arg)?;
                if n > 7 {
                    return Err(Error::exhausted("group order", MAX_ORDER as u64));
                }
                let gens = if n == 1 {
                    vec![]
                } else {
                    vec![cycle_perm(n, &[0, 1]), cycle_perm(n, &(0..n).collect::<Vec<_>>())]
                };
                FiniteGroup::from_permutations(n, gens)
            }
            "alt" => {
                let n = parse_size(name, arg)?;
                if n > 8 {
                    return Err(Error::exhausted("group order", MAX_ORDER as u64));
                }
                let gens = (2..n).map(|i| cycle_perm(n, &[0, 1, i])).collect();
                FiniteGroup::from_permutations(n, gens)
            }
            _ => Err(Error::InvalidArgument(format!("unknown group family `{family}`"))),
        }
    }
}

fn invariant_factor_lists(max_order: usize) -> Vec<Vec<usize>> {
    // chains d1 | d2 | ... with every di ≥ 2 and product ≤ max_order
    fn extend(prefix: &mut Vec<usize>, product: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let last = *prefix.last().unwrap_or(&1);
        let mut d = last.max(2);
        while product * d <= max {
            if d.is_multiple_of(last) {
                prefix.push(d);
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

/// Names of the built-in groups of order at most `max_order`: dihedral,
/// quaternion, cyclic and non-cyclic abelian groups, and symmetric and
/// alternating groups on at most 4 letters.
pub fn builtin_corpus(max_order: usize) -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=max_order {
        names.push(format!("cyclic:{n}"));
    }
    for n in (2..=max_order).step_by(2) {
        names.push(format!("dihedral:{n}"));
    }
    let mut q = 8;
    while q <= max_order {
        names.push(format!("quaternion:{q}"));
        q *= 2;
    }
    for f in invariant_factor_lists(max_order) {
        let parts: Vec<String> = f.iter().map(usize::to_string).collect();
        names.push(format!("abelian:{}", parts.join(",")));
    }
    let factorial = |n: usize| (1..=n).product::<usize>();
    for n in 1..=4 {
        if factorial(n) <= max_order {
            names.push(format!("sym:{n}"));
        }
        if factorial(n) / 2 <= max_order {
            names.push(format!("alt:{n}"));
        }
    }
    names
}
