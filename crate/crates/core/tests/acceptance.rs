//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use zonomorse::suites::{run_suite, SuiteOptions, SuiteReport};

struct Criterion {
    suite: &'static str,
    limit: Option<Duration>,
    /// Extra requirements on the report beyond a passing status.
    extra: fn(&SuiteReport) -> Result<(), String>,
}

fn none(_: &SuiteReport) -> Result<(), String> {
    Ok(())
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn faces(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("generator_sets") == 50 && r.counter("directions") == 1000, || format!("sample sizes {:?}", r.counters))
}

fn walls(r: &SuiteReport) -> Result<(), String> {
    // A2, B2, G2, A3, B3 have 3 + 4 + 6 + 6 + 9 positive roots
    require(r.counter("walls") == 28 && r.counter("faces") > 0, || format!("walls {}, faces {}", r.counter("walls"), r.counter("faces")))
}

fn simplices(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("simplices") > 0 && r.counter("positive_minimum") > 0, || format!("{:?}", r.counters))
}

fn edges(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("edges") > 0 && r.counter("obtuse_endpoints") > 0, || format!("{:?}", r.counters))
}

fn depth(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("positive_height") > 0 && r.counter("depths_compared") > 0, || format!("{:?}", r.counters))?;
    require(r.observations.keys().any(|k| k.ends_with("max depth")), || "no max depth reported".into())
}

fn desc(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("links") > 0 && r.counter("proper_minimal_face") == r.counter("acyclic"), || format!("{:?}", r.counters))
}

fn row<'a>(r: &'a SuiteReport, label: &str) -> Result<&'a [usize], String> {
    r.betti.iter().find(|b| b.label == label).map(|b| b.reduced_betti.as_slice()).ok_or_else(|| format!("no row {label}"))
}

fn solomon_tits(r: &SuiteReport) -> Result<(), String> {
    // incidence graphs: 14 vertices and 21 edges, 30 vertices and 45 edges
    let a2 = row(r, "A2(2)")?;
    let c2 = row(r, "C2(2)")?;
    require(a2 == [0, 0, 21 - 14 + 1], || format!("A2(2): {a2:?}"))?;
    require(c2 == [0, 0, 45 - 30 + 1], || format!("C2(2): {c2:?}"))
}

fn hemispheres(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("poles") == 12, || format!("{} poles", r.counter("poles")))
}

fn thick(r: &SuiteReport) -> Result<(), String> {
    require(
        r.counter("tree_vertices") > 0 && r.counter("plane_vertices") >= 5 && r.counter("plane_edges") >= 2 && r.counter("max_top_betti") > 0,
        || format!("{:?}", r.counters),
    )
}

fn filtration(r: &SuiteReport) -> Result<(), String> {
    require(r.counter("stages") > 1, || format!("{:?}", r.counters))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { suite: "zonotope-faces", limit: secs(30), extra: faces },
        Criterion { suite: "no-wall", limit: secs(60), extra: walls },
        Criterion { suite: "contains-vertex", limit: secs(300), extra: simplices },
        Criterion { suite: "gradient-criterion", limit: secs(300), extra: edges },
        Criterion { suite: "depth", limit: None, extra: depth },
        Criterion { suite: "no-critical-edges", limit: None, extra: none },
        Criterion { suite: "descending-join", limit: None, extra: desc },
        Criterion { suite: "solomon-tits", limit: secs(10), extra: solomon_tits },
        Criterion { suite: "hemispheres", limit: secs(120), extra: hemispheres },
        Criterion { suite: "thick-desclinks", limit: secs(300), extra: thick },
        Criterion { suite: "filtration", limit: None, extra: filtration },
    ];
    let opts = SuiteOptions { q: Some(2), seed: 20240611, ..Default::default() };
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let report = run_suite(c.suite, &opts).expect("registered suite");
        let elapsed = start.elapsed();
        let mut problems = Vec::new();
        if !report.passed() {
            problems.push(format!("status {:?}: {}", report.status, report.witnesses.join("; ")));
        }
        if let Err(e) = (c.extra)(&report) {
            problems.push(e);
        }
        if let Some(limit) = c.limit {
            if elapsed > limit {
                problems.push(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        if problems.is_empty() {
            println!("PASS {:>2} {} ({elapsed:.2?})", i + 1, c.suite);
        } else {
            failed += 1;
            println!("FAIL {:>2} {} ({elapsed:.2?}): {}", i + 1, c.suite, problems.join(" | "));
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
