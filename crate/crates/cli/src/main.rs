mod manifest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use gradlab::checks::{self, CaseResult, SuiteReport};
use gradlab::cosets::{low_index_subgroups, max_cosets_from_env, Conjugates, CosetTable};
use gradlab::finite::{lemma31_check, FiniteGroup};
use gradlab::gradients::{
    build_chain, extend_chain, prop21_certificate, rg_estimate, sp_certificate, Certificate, ChainLevel,
    ChainReport, ChainStop,
};
use gradlab::homology::{h1_of_subgroup, h1_report, Coefficients};
use gradlab::meataxe::{chop, lemma32_check, regular_module, seed_from_env};
use gradlab::presentations::{free_group, Presentation};
use gradlab::rational::{self, Rational};
use gradlab::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use manifest::{sha256_hex, write_json, Cache, RunManifest};

#[derive(Parser)]
#[command(
    name = "gradlab",
    version,
    about = "Rank gradients and homology growth at finite quotients"
)]
struct Cli {
    /// Ignore and do not write the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the run manifest (parameters, hashes and payload) to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// First homology of a presented group.
    H1 {
        /// Presentation file, or a family name such as `free:2`, `surface:2`, `sp:2,2,3,3`.
        presentation: String,
        #[arg(long = "p", conflicts_with = "integral", required_unless_present = "integral")]
        prime: Option<u64>,
        #[arg(long)]
        integral: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The p-derived chain with normalized homology ranks.
    Chain {
        presentation: String,
        #[arg(long = "p")]
        prime: u64,
        #[arg(long)]
        depth: usize,
        /// Largest index to construct (default: GRADLAB_MAX_COSETS or 10^6).
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Subgroups of small index with d(H1(U; Z^)) / |G:U|.
    Lowindex {
        presentation: String,
        #[arg(long)]
        max_index: usize,
        #[arg(long)]
        normal_only: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        corpus: Option<String>,
        /// Worker threads (default: available parallelism, at most 8).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Lower-bound certificates checked along a p-derived chain.
    Cert {
        #[command(subcommand)]
        kind: CertKind,
    },
    /// Queries on a built-in finite group such as `sym:4` or `dihedral:8`.
    Finite {
        group: String,
        /// Composition factor dimensions of the regular module over F_p.
        #[arg(long, value_name = "P")]
        chop: Option<u64>,
        /// The simple-module degree bound over F_p.
        #[arg(long, value_name = "P")]
        lemma32: Option<u64>,
        /// The centralizer bound for every conjugacy class.
        #[arg(long)]
        lemma31: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum CertKind {
    /// rg(F_d / <<g^(p^k)>>) >= d - 1 - 1/p^k
    Prop21 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: String,
        #[arg(long = "p")]
        prime: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// rg of the truncated presentation >= d - 1 - sum 1/p^k_i
    Sp {
        #[arg(long)]
        d: usize,
        #[arg(long = "p")]
        prime: u64,
        /// Comma-separated k_i.
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceExhausted { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = Cache::from_env(cli.no_cache);
    match run(cli.command, &cache) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn load_presentation(arg: &str) -> Result<Presentation, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Presentation::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())));
    }
    if arg.contains(':') {
        return Ok(checks::named_presentation(arg)?);
    }
    Err(Failure::Input(format!("{arg}: no such file")))
}

fn emit(
    command: &str,
    presentation: Option<&Presentation>,
    parameters: Value,
    payload: Value,
    out: &Output,
    cache: &Cache,
) -> Result<(), Failure> {
    let text = presentation.map(Presentation::to_text);
    let m = RunManifest::new(command, text.as_deref(), parameters, payload);
    cache.store_manifest(&m);
    if let Some(path) = &out.json {
        write_json(path, &m).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_json(v: &Value) {
    print_line(&serde_json::to_string_pretty(v).expect("serializable"));
}

// a closed pipe (`gradlab ... | head`) is not an error worth a panic
fn print_line(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn run(command: Command, cache: &Cache) -> Outcome {
    match command {
        Command::H1 {
            presentation,
            prime,
            integral,
            out,
        } => {
            let p = load_presentation(&presentation)?;
            let coefficients = match prime {
                Some(q) if !integral => Coefficients::Prime(q),
                _ => Coefficients::Integral,
            };
            let mut report = h1_report(&p, coefficients)?;
            let mut payload = report.to_json();
            if integral {
                let inv = report.integral().clone();
                payload["display"] = json!(inv.to_string());
                payload["d_profinite"] = json!(report.d_profinite());
            }
            print_json(&payload);
            let params = json!({ "p": prime, "integral": integral });
            emit("h1", Some(&p), params, payload, &out, cache)?;
            Ok(true)
        }
        Command::Chain {
            presentation,
            prime,
            depth,
            cap,
            out,
        } => {
            let p = load_presentation(&presentation)?;
            let cap = cap.unwrap_or_else(max_cosets_from_env);
            let report = cached_chain(&p, prime, depth, cap, cache)?;
            let estimate = rg_estimate(&report);
            let mut payload = serde_json::to_value(&report).expect("serializable");
            payload["rg_estimate"] = serde_json::to_value(&estimate).expect("serializable");
            print_json(&payload);
            let params = json!({ "p": prime, "depth": depth, "cap": cap });
            emit("chain", Some(&p), params, payload, &out, cache)?;
            Ok(true)
        }
        Command::Lowindex {
            presentation,
            max_index,
            normal_only,
            out,
        } => {
            let p = load_presentation(&presentation)?;
            let payload = lowindex_payload(&p, max_index, normal_only)?;
            print_json(&payload);
            let params = json!({ "max_index": max_index, "normal_only": normal_only });
            emit("lowindex", Some(&p), params, payload, &out, cache)?;
            Ok(true)
        }
        Command::Check {
            suite,
            corpus,
            jobs,
            out,
        } => {
            let corpus = corpus.unwrap_or_else(|| checks::default_corpus(&suite).to_string());
            let seed = seed_from_env();
            let report = run_suite(&suite, &corpus, seed, jobs)?;
            for c in &report.cases {
                print_line(&format!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name));
            }
            let failed = report.cases.iter().filter(|c| !c.pass).count();
            print_line(&format!(
                "suite {suite} (corpus {corpus}): {} cases, {failed} failed: {}",
                report.cases.len(),
                if report.pass { "pass" } else { "fail" }
            ));
            let pass = report.pass;
            let params = json!({ "suite": suite, "corpus": corpus, "seed": seed });
            emit(
                "check",
                None,
                params,
                serde_json::to_value(&report).expect("serializable"),
                &out,
                cache,
            )?;
            Ok(pass)
        }
        Command::Cert { kind } => run_cert(kind, cache),
        Command::Finite {
            group,
            chop: chop_p,
            lemma32,
            lemma31,
            out,
        } => {
            let g = FiniteGroup::builtin(&group)?;
            let seed = seed_from_env();
            let mut payload = json!({
                "group": group,
                "order": g.order(),
                "exponent": g.exponent(),
                "abelian": g.is_abelian(),
            });
            let mut pass = true;
            if let Some(p) = chop_p {
                let r = chop(&regular_module(&g, p)?, seed);
                payload["chop"] = json!({ "p": p, "dimensions": r.dimensions(), "max_degree": r.max_degree });
            }
            if let Some(p) = lemma32 {
                let r = lemma32_check(&g, p, seed)?;
                pass &= r.pass;
                payload["lemma32"] = serde_json::to_value(&r).expect("serializable");
            }
            if lemma31 {
                let records: Vec<Value> = (0..g.order())
                    .map(|x| {
                        let r = lemma31_check(&g, x);
                        json!({ "element": x, "d": r.d, "bound": r.bound, "pass": r.pass })
                    })
                    .collect();
                pass &= records.iter().all(|r| r["pass"] == json!(true));
                payload["lemma31"] = Value::Array(records);
            }
            print_json(&payload);
            let params = json!({ "group": group, "chop": chop_p, "lemma32": lemma32, "lemma31": lemma31, "seed": seed });
            emit("finite", None, params, payload, &out, cache)?;
            Ok(pass)
        }
    }
}

fn run_cert(kind: CertKind, cache: &Cache) -> Outcome {
    let (name, cert, params, out): (&str, Certificate, Value, Output) = match kind {
        CertKind::Prop21 {
            d,
            g,
            prime,
            k,
            depth,
            cap,
            out,
        } => {
            let cap = cap.unwrap_or_else(max_cosets_from_env);
            let w = checks::parse_word_for(&free_group(d), &g)?;
            let cert = prop21_certificate(d, &w, prime, k, depth, cap)?;
            let params = json!({ "d": d, "g": g, "p": prime, "k": k, "depth": depth, "cap": cap });
            ("cert prop21", cert, params, out)
        }
        CertKind::Sp {
            d,
            prime,
            exponents,
            depth,
            cap,
            out,
        } => {
            let cap = cap.unwrap_or_else(max_cosets_from_env);
            let cert = sp_certificate(d, prime, &exponents, depth, cap)?;
            let params = json!({ "d": d, "p": prime, "exponents": exponents, "depth": depth, "cap": cap });
            ("cert sp", cert, params, out)
        }
    };
    let payload = serde_json::to_value(&cert).expect("serializable");
    print_json(&payload);
    emit(name, None, params, payload, &out, cache)?;
    Ok(cert.pass)
}

fn run_suite(suite: &str, corpus: &str, seed: u64, jobs: Option<usize>) -> Result<SuiteReport, Failure> {
    let cases = checks::suite_cases(suite, corpus, seed)?;
    let threads = jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1)
    });
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))?;
    // collect() keeps case order, so reports do not depend on scheduling
    let results: Vec<Result<CaseResult, Error>> =
        pool.install(|| cases.par_iter().map(|c| c.run()).collect());
    let results = results
        .into_iter()
        .zip(&cases)
        .map(|(r, c)| match r {
            Ok(r) => Ok(r),
            // a resource limit inside one case is a failed case, not a crash
            Err(e @ Error::ResourceExhausted { .. }) => Ok(CaseResult {
                name: c.name.clone(),
                pass: false,
                detail: json!({ "error": e.to_string() }),
            }),
            Err(e) => Err(Failure::from(e)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new(suite, corpus, results))
}

fn lowindex_payload(p: &Presentation, max_index: usize, normal_only: bool) -> Result<Value, Failure> {
    let tables = low_index_subgroups(p, max_index, normal_only, Conjugates::All)?;
    let mut rows = Vec::new();
    let mut counts = vec![0usize; max_index + 1];
    let mut min: Option<Rational> = None;
    for t in &tables {
        let mut h = h1_of_subgroup(t, Coefficients::Integral)?;
        let d = h.d_profinite();
        let value = Rational::new(d as i64, t.index() as i64);
        if t.index() > 1 {
            min = Some(min.map_or(value, |m| m.min(value)));
        }
        counts[t.index()] += 1;
        rows.push(json!({
            "index": t.index(),
            "normal": t.is_normal(),
            "h1": h.integral().to_string(),
            "d": d,
            "normalized": rational::format(&value),
        }));
    }
    let counts: serde_json::Map<String, Value> = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i.to_string(), json!(c)))
        .collect();
    Ok(json!({
        "subgroups": rows,
        "counts": counts,
        "min_proper_normalized": min.map(|m| rational::format(&m)),
    }))
}

/// Chain with resumption from the deepest cached prefix for the same
/// presentation, prime and cap.
fn cached_chain(
    p: &Presentation,
    prime: u64,
    depth: usize,
    cap: usize,
    cache: &Cache,
) -> Result<ChainReport, Failure> {
    let key = sha256_hex(
        json!({ "presentation": p.to_text(), "p": prime, "cap": cap })
            .to_string()
            .as_bytes(),
    );
    if let Some(entry) = cache.load("chains", &key) {
        if let Some((report, last)) = reuse_chain(&entry, Arc::new(p.clone()), prime, depth, cap)? {
            if report.levels.len() > entry_levels(&entry) {
                // store only when the resumed chain went deeper
                store_chain(cache, &key, &report, &last);
            }
            return Ok(report);
        }
    }
    let chain = build_chain(p, prime, depth, cap)?;
    let last = chain.tables.last().expect("a chain holds a table");
    store_chain(cache, &key, &chain.report, last);
    Ok(chain.report)
}

fn entry_levels(entry: &Value) -> usize {
    entry["levels"].as_array().map_or(0, Vec::len)
}

fn store_chain(cache: &Cache, key: &str, report: &ChainReport, last: &CosetTable) {
    let entry = json!({
        "levels": report.levels,
        "stop": report.stop,
        "table": last.to_json(),
    });
    cache.store("chains", key, &entry);
}

/// Resumes from a cached entry. Returns the report and the table of its
/// deepest level, or `None` if the entry is unusable.
#[allow(clippy::type_complexity)]
fn reuse_chain(
    entry: &Value,
    presentation: Arc<Presentation>,
    prime: u64,
    depth: usize,
    cap: usize,
) -> Result<Option<(ChainReport, CosetTable)>, Failure> {
    let Some(levels) = parse_levels(&entry["levels"]) else {
        return Ok(None);
    };
    let Ok(stop) = serde_json::from_value::<ChainStop>(entry["stop"].clone()) else {
        return Ok(None);
    };
    let Ok(table) = CosetTable::from_json(presentation, &entry["table"]) else {
        return Ok(None);
    };
    if levels.is_empty() || table.index() != levels.last().map_or(0, |l| l.index) {
        return Ok(None);
    }
    let report = |levels: Vec<ChainLevel>, stop| ChainReport {
        p: prime,
        depth,
        cap,
        levels,
        stop,
    };
    if levels.len() > depth + 1 {
        let mut head = levels;
        head.truncate(depth + 1);
        // the deepest table is not the one held; do not return it for storage
        return Ok(Some((report(head, ChainStop::Depth), table)));
    }
    if levels.len() == depth + 1 || stop != ChainStop::Depth {
        let stop = if levels.len() == depth + 1 && stop == ChainStop::Depth {
            ChainStop::Depth
        } else {
            stop
        };
        return Ok(Some((report(levels, stop), table)));
    }
    let mut prior = levels;
    prior.pop();
    let chain = extend_chain(prior, table, prime, depth, cap)?;
    let last = chain.tables.last().expect("a chain holds a table").clone();
    Ok(Some((chain.report, last)))
}

fn parse_levels(v: &Value) -> Option<Vec<ChainLevel>> {
    v.as_array()?
        .iter()
        .map(|l| {
            let index = l["index"].as_u64()? as usize;
            let h1 = l["h1"].as_u64()? as usize;
            let level = ChainLevel::new(index, h1);
            (l["normalized"].as_str().and_then(rational::parse) == Some(level.normalized)).then_some(level)
        })
        .collect()
}
