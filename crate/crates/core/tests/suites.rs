use std::time::Instant;

use gradlab::checks::{default_corpus, run_suite, SUITES};

fn run(suite: &str) {
    let t = Instant::now();
    let r = run_suite(suite, default_corpus(suite), 7).unwrap();
    for c in r.cases.iter().filter(|c| !c.pass) {
        eprintln!("{suite}: {} failed: {}", c.name, c.detail);
    }
    eprintln!("{suite}: {} cases in {:.1?}", r.cases.len(), t.elapsed());
    assert!(r.pass, "{suite}");
}

#[test]
fn every_suite_passes() {
    for s in SUITES {
        run(s);
    }
}
