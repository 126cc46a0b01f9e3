//! Named corpora and the verification suites run over them.
//!
//! A suite expands into independent [`Case`]s so callers can schedule them
//! on a worker pool; every case returns a JSON detail record and a verdict.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cosets::{regular_quotient, todd_coxeter, CosetTable};
use crate::error::{is_prime, Error, Result};
use crate::finite::{almost_prime, almost_prime_witness, builtin_corpus, lemma31_check, FiniteGroup};
use crate::fox::{augmentation_dim, boundpower_check, expected_augmentation, quotient_order_of};
use crate::gradients::{build_chain, prop21_certificate, sp_certificate};
use crate::meataxe::{chop, lemma32_check, regular_module};
use crate::presentations::{
    free_group, schlage_puchta_truncation, surface_group, Presentation, ReducedWords, Word,
};
use crate::rational::{self, Rational};

pub const SUITES: [&str; 8] = [
    "lemma31",
    "lemma32",
    "prop21",
    "sp",
    "foxdual",
    "boundpower",
    "almostprime",
    "monotone",
];

/// Finitely presented groups whose p-derived chains the suites walk.
pub fn chain_corpus() -> Vec<(String, Presentation)> {
    let f2 = free_group(2);
    let with = |r: &str| {
        f2.with_relator(f2.word(r).expect("valid word"))
            .expect("valid relator")
    };
    vec![
        ("F2".into(), f2.clone()),
        ("F3".into(), free_group(3)),
        ("<a,b|a^2>".into(), with("a^2")),
        ("<a,b|(ab)^4>".into(), with("(ab)^4")),
        ("surface:2".into(), surface_group(2).expect("genus 2")),
        (
            "sp:2,2,(3,3)".into(),
            schlage_puchta_truncation(2, 2, &[3, 3]).expect("valid truncation"),
        ),
    ]
}

pub const CHAIN_PRIMES: [u64; 2] = [2, 3];

/// Reads a presentation family name: `free:d`, `surface:g`,
/// `sp:d,p,k1,k2,...` or `builtin:<finite group>`.
pub fn named_presentation(name: &str) -> Result<Presentation> {
    let (family, args) = name
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("`{name}` is not a family name")))?;
    let nums = |s: &str| -> Result<Vec<u64>> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad number `{t}` in `{name}`")))
            })
            .collect()
    };
    match family {
        "free" => Ok(free_group(nums(args)?.first().copied().unwrap_or(0) as usize)),
        "surface" => surface_group(nums(args)?.first().copied().unwrap_or(0) as usize),
        "sp" => {
            let v = nums(args)?;
            if v.len() < 2 {
                return Err(Error::InvalidArgument("sp needs d,p[,k...]".into()));
            }
            let ks: Vec<u32> = v[2..].iter().map(|&k| k as u32).collect();
            schlage_puchta_truncation(v[0] as usize, v[1], &ks)
        }
        "builtin" => builtin_presentation(args),
        _ => Err(Error::InvalidArgument(format!("unknown family `{family}`"))),
    }
}

/// Presentations for the cyclic, dihedral, quaternion and abelian built-ins.
pub fn builtin_presentation(name: &str) -> Result<Presentation> {
    let (kind, arg) = name
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("bad group name `{name}`")))?;
    let ns: Vec<usize> = arg
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad group name `{name}`")))?;
    let text = match (kind, ns.as_slice()) {
        ("cyclic", [n]) => format!("gens: a\nrel: a^{n}\n"),
        ("dihedral", [n]) if n % 2 == 0 && *n >= 2 => {
            format!("gens: r s\nrel: r^{}\nrel: s^2\nrel: (rs)^2\n", n / 2)
        }
        ("quaternion", [n]) if n.is_power_of_two() && *n >= 8 => {
            let m = n / 4;
            format!("gens: x y\nrel: x^{}\nrel: x^{m} Y^2\nrel: Y x y x\n", 2 * m)
        }
        ("abelian", fs) if !fs.is_empty() && fs.len() <= 26 => {
            let names = crate::presentations::default_names(fs.len());
            let mut rels: Vec<String> = fs.iter().zip(&names).map(|(f, a)| format!("{a}^{f}")).collect();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    rels.push(format!("[{},{}]", names[i], names[j]));
                }
            }
            let rels: String = rels.iter().map(|r| format!("rel: {r}\n")).collect();
            format!("gens: {}\n{rels}", names.join(" "))
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no presentation for built-in group `{name}`"
            )))
        }
    };
    Presentation::parse(&text)
}

/// One unit of work in a suite.
pub struct Case {
    pub name: String,
    run: Box<dyn Fn() -> Result<CaseResult> + Send + Sync>,
}

impl Case {
    fn new(name: impl Into<String>, run: impl Fn() -> Result<CaseResult> + Send + Sync + 'static) -> Self {
        Case {
            name: name.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> Result<CaseResult> {
        (self.run)()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub corpus: String,
    pub pass: bool,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn new(suite: &str, corpus: &str, cases: Vec<CaseResult>) -> Self {
        SuiteReport {
            suite: suite.into(),
            corpus: corpus.into(),
            pass: cases.iter().all(|c| c.pass),
            cases,
        }
    }
}

/// The corpus a suite uses when none is named.
pub fn default_corpus(suite: &str) -> &'static str {
    match suite {
        "lemma31" => "all",
        "lemma32" => "acceptance",
        _ => "default",
    }
}

/// Expands `suite` over `corpus` into cases. `seed` drives the randomized
/// module splitting of the lemma32 suite.
pub fn suite_cases(suite: &str, corpus: &str, seed: u64) -> Result<Vec<Case>> {
    let bad_corpus = || Error::InvalidArgument(format!("unknown corpus `{corpus}` for suite `{suite}`"));
    match suite {
        "lemma31" => {
            let (builtin, chains) = match corpus {
                "all" => (true, true),
                "builtin" => (true, false),
                "chains" => (false, true),
                _ => return Err(bad_corpus()),
            };
            let mut cases = Vec::new();
            if builtin {
                for name in builtin_corpus(32) {
                    cases.push(Case::new(name.clone(), move || {
                        lemma31_group(&name, &FiniteGroup::builtin(&name)?)
                    }));
                }
            }
            if chains {
                for (name, p) in chain_corpus() {
                    for prime in CHAIN_PRIMES {
                        let name = format!("{name} p={prime}");
                        let p = p.clone();
                        cases.push(Case::new(name.clone(), move || lemma31_chain(&name, &p, prime)));
                    }
                }
            }
            Ok(cases)
        }
        "lemma32" => {
            let names: Vec<String> = match corpus {
                "acceptance" => ["sym:3", "alt:4", "dihedral:8", "quaternion:8", "cyclic:12"]
                    .map(String::from)
                    .to_vec(),
                "builtin" => builtin_corpus(32),
                _ => return Err(bad_corpus()),
            };
            let mut cases = Vec::new();
            for name in names {
                let order = FiniteGroup::builtin(&name)?.order() as u64;
                for p in prime_divisors(order) {
                    let name = name.clone();
                    cases.push(Case::new(format!("{name} p={p}"), move || {
                        lemma32_case(&name, p, seed)
                    }));
                }
            }
            Ok(cases)
        }
        "prop21" => {
            if corpus != "default" {
                return Err(bad_corpus());
            }
            let f2 = free_group(2);
            let a = f2.word("a")?;
            let ab = f2.word("ab")?;
            let params = [
                (2, a.clone(), 2, 1),
                (2, a.clone(), 2, 2),
                (2, ab, 2, 2),
                (3, a, 2, 2),
            ];
            Ok(params
                .into_iter()
                .map(|(d, g, p, k)| {
                    let name = format!("d={d} g={} p={p} k={k}", f2.display_word(&g));
                    Case::new(name.clone(), move || {
                        let c = prop21_certificate(d, &g, p, k, 1, 1_000_000)?;
                        Ok(CaseResult {
                            name: name.clone(),
                            pass: c.pass && c.levels.len() >= 2,
                            detail: serde_json::to_value(&c).expect("serializable"),
                        })
                    })
                })
                .collect())
        }
        "sp" => {
            if corpus != "default" {
                return Err(bad_corpus());
            }
            let params: Vec<(usize, u64, Vec<u32>)> = vec![
                (2, 2, vec![3, 3]),
                (2, 2, vec![]),
                (2, 2, vec![2]),
                (2, 3, vec![1]),
            ];
            Ok(params
                .into_iter()
                .map(|(d, p, ks)| {
                    let name = format!("d={d} p={p} exponents={ks:?}");
                    Case::new(name.clone(), move || {
                        let c = sp_certificate(d, p, &ks, 1, 1_000_000)?;
                        Ok(CaseResult {
                            name: name.clone(),
                            pass: c.pass,
                            detail: serde_json::to_value(&c).expect("serializable"),
                        })
                    })
                })
                .collect())
        }
        "foxdual" | "monotone" => {
            if corpus != "default" {
                return Err(bad_corpus());
            }
            let fox = suite == "foxdual";
            let mut cases = Vec::new();
            for (name, p) in chain_corpus() {
                for prime in CHAIN_PRIMES {
                    let name = format!("{name} p={prime}");
                    let p = p.clone();
                    cases.push(Case::new(name.clone(), move || {
                        if fox {
                            foxdual_case(&name, &p, prime)
                        } else {
                            monotone_case(&name, &p, prime)
                        }
                    }));
                }
            }
            Ok(cases)
        }
        "boundpower" => {
            if corpus != "default" {
                return Err(bad_corpus());
            }
            Ok(boundpower_ambients()
                .into_iter()
                .map(|name| {
                    let n = name.clone();
                    Case::new(name, move || boundpower_case(&n))
                })
                .collect())
        }
        "almostprime" => {
            if corpus != "default" {
                return Err(bad_corpus());
            }
            // one case per block of n so the work spreads across workers
            Ok((0..10u64)
                .map(|b| {
                    let (lo, hi) = (b * 1000 + 1, (b + 1) * 1000);
                    let name = format!("n in {lo}..={hi}");
                    Case::new(name.clone(), move || almostprime_case(&name, lo, hi))
                })
                .collect())
        }
        _ => Err(Error::InvalidArgument(format!("unknown suite `{suite}`"))),
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

/// One representative per conjugacy class; every quantity in the lemma is
/// invariant under conjugation.
fn class_representatives(g: &FiniteGroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &s in g.generators() {
                let z = g.conjugate(y, s);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    reps
}

fn lemma31_group(name: &str, g: &FiniteGroup) -> Result<CaseResult> {
    let reps = class_representatives(g);
    let mut failures = Vec::new();
    let mut tight = 0;
    for &x in &reps {
        let r = lemma31_check(g, x);
        if !r.pass {
            failures.push(json!({"element": x, "d": r.d, "bound": r.bound}));
        }
        if r.d == r.bound {
            tight += 1;
        }
    }
    Ok(CaseResult {
        name: name.into(),
        pass: failures.is_empty(),
        detail: json!({
            "order": g.order(),
            "classes": reps.len(),
            "tight": tight,
            "failures": failures,
        }),
    })
}

/// Largest chain quotient order the lemma31 suite visits.
pub const LEMMA31_CHAIN_ORDER: usize = 2000;

fn lemma31_chain(name: &str, p: &Presentation, prime: u64) -> Result<CaseResult> {
    let chain = build_chain(p, prime, usize::MAX, LEMMA31_CHAIN_ORDER)?;
    let mut levels = Vec::new();
    let mut pass = true;
    for t in chain.tables.iter().skip(1) {
        let q = regular_quotient(t)?;
        let r = lemma31_group(name, &q)?;
        pass &= r.pass;
        levels.push(r.detail);
    }
    Ok(CaseResult {
        name: name.into(),
        pass,
        detail: json!({ "quotients": levels }),
    })
}

fn lemma32_case(name: &str, p: u64, seed: u64) -> Result<CaseResult> {
    let q = FiniteGroup::builtin(name)?;
    let record = lemma32_check(&q, p, seed)?;
    // the multiset of composition factors must not depend on the seed
    let reference = chop(&regular_module(&q, p)?, seed);
    let stable = (1..5).all(|s| {
        regular_module(&q, p)
            .map(|m| chop(&m, seed.wrapping_add(s)) == reference)
            .unwrap_or(false)
    });
    let covers = reference.total_dimension() == q.order();
    Ok(CaseResult {
        name: format!("{name} p={p}"),
        pass: record.pass && stable && covers,
        detail: json!({
            "record": record,
            "degrees": reference.dimensions(),
            "seed_stable": stable,
        }),
    })
}

/// Chain depth and cap used by the monotonicity and dual-route suites.
pub const SUITE_CHAIN_DEPTH: usize = 3;
pub const SUITE_CHAIN_CAP: usize = crate::cosets::DEFAULT_MAX_COSETS;
/// Largest index at which the dual-route identity is checked.
pub const FOXDUAL_MAX_INDEX: usize = 128;

fn monotone_case(name: &str, p: &Presentation, prime: u64) -> Result<CaseResult> {
    let chain = build_chain(p, prime, SUITE_CHAIN_DEPTH, SUITE_CHAIN_CAP)?;
    let r = &chain.report;
    Ok(CaseResult {
        name: name.into(),
        pass: r.corrected_non_increasing() && r.indices_are_p_power_steps(),
        detail: serde_json::to_value(r).expect("serializable"),
    })
}

fn foxdual_case(name: &str, p: &Presentation, prime: u64) -> Result<CaseResult> {
    let chain = build_chain(p, prime, SUITE_CHAIN_DEPTH, SUITE_CHAIN_CAP)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for (i, level) in chain.report.levels.iter().enumerate() {
        let Some(t) = chain.table(i) else { continue };
        if level.index > FOXDUAL_MAX_INDEX {
            continue;
        }
        let fox = augmentation_dim(p, t, prime)?.value;
        let rs = expected_augmentation(level.h1, level.index);
        pass &= fox == rs;
        rows.push(json!({
            "level": i,
            "index": level.index,
            "h1": level.h1,
            "fox": rational::format(&fox),
            "schreier": rational::format(&rs),
        }));
    }
    Ok(CaseResult {
        name: name.into(),
        pass,
        detail: json!({ "levels": rows }),
    })
}

/// Ambient quotients of order at most 64 with elements of 2- or 3-power order.
fn boundpower_ambients() -> Vec<String> {
    let mut names: Vec<String> = [2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 36, 54]
        .iter()
        .map(|n| format!("cyclic:{n}"))
        .collect();
    names.extend(
        [
            "dihedral:8",
            "dihedral:12",
            "dihedral:16",
            "dihedral:18",
            "dihedral:54",
        ]
        .map(String::from),
    );
    names.extend(["quaternion:8", "quaternion:16", "quaternion:32", "quaternion:64"].map(String::from));
    names.extend(
        [
            "abelian:2,4",
            "abelian:3,9",
            "abelian:2,8",
            "abelian:4,4",
            "abelian:2,2,2",
        ]
        .map(String::from),
    );
    names
}

fn boundpower_case(name: &str) -> Result<CaseResult> {
    let p = Arc::new(builtin_presentation(name)?);
    let regular = todd_coxeter(&p, &[], 64)?;
    boundpower_on(name, &p, &regular)
}

fn boundpower_on(name: &str, p: &Presentation, table: &CosetTable) -> Result<CaseResult> {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut seen_orders = BTreeSet::new();
    for w in ReducedWords::new(p.generator_count()).take_while(|w| w.len() <= 3) {
        let n = quotient_order_of(table, &w) as u64;
        for prime in [2u64, 3] {
            // g = w^(n/p^j) generates the cyclic subgroup of order p^j
            for k in 1..=valuation(n, prime).min(3) {
                let order = prime.pow(k);
                let g = w.pow((n / order) as i64);
                let v = boundpower_check(table, &g, prime, k)?.value;
                let expected = Rational::new(1, order as i64);
                pass &= v == expected;
                if seen_orders.insert(order) || v != expected {
                    rows.push(json!({
                        "g": p.display_word(&g).to_string(),
                        "order": order,
                        "value": rational::format(&v),
                    }));
                }
            }
        }
    }
    Ok(CaseResult {
        name: name.into(),
        pass: pass && !rows.is_empty(),
        detail: json!({ "order": table.index(), "samples": rows }),
    })
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn almostprime_case(name: &str, lo: u64, hi: u64) -> Result<CaseResult> {
    let mut mismatches = Vec::new();
    let mut witnesses = 0u64;
    for n in lo..=hi {
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        for c in 1..=100u64 {
            let oracle = divisors.iter().all(|&k| k <= c || n / k <= c);
            if almost_prime(n, c) != oracle {
                mismatches.push(json!({"n": n, "c": c}));
                continue;
            }
            if oracle && n > 1 {
                let p = almost_prime_witness(n, c)?;
                if n % p != 0 || n / p > c * c || !is_prime(p) {
                    mismatches.push(json!({"n": n, "c": c, "witness": p}));
                }
                witnesses += 1;
            }
        }
    }
    Ok(CaseResult {
        name: name.into(),
        pass: mismatches.is_empty(),
        detail: json!({ "witnesses": witnesses, "mismatches": mismatches }),
    })
}

/// Runs every case in order on the current thread.
pub fn run_suite(suite: &str, corpus: &str, seed: u64) -> Result<SuiteReport> {
    let cases = suite_cases(suite, corpus, seed)?;
    let results = cases.iter().map(Case::run).collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new(suite, corpus, results))
}

/// Whether `w` names a reduced word over `p` (used by CLI argument parsing).
pub fn parse_word_for(p: &Presentation, w: &str) -> Result<Word> {
    let word = p.word(w)?;
    if word.is_empty() {
        return Err(Error::InvalidArgument("g must be a nontrivial word".into()));
    }
    Ok(word)
}
