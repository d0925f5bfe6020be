//! Verification suites, one per checked statement, each producing a
//! structured report.

mod geometry;
mod morse;
mod spherical;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;

use crate::coxeter::{generate_patch, FiniteType, TypeTag};
use crate::error::{Error, Result};
use crate::homology::{BettiReport, Verdict};
use crate::morse::HeightTable;
use crate::scalar::Vector;
use crate::zonotope::{build_generators, GeneratorSet, Richness};

pub const SUITES: [&str; 11] = [
    "zonotope-faces",
    "no-wall",
    "contains-vertex",
    "gradient-criterion",
    "depth",
    "no-critical-edges",
    "descending-join",
    "solomon-tits",
    "hemispheres",
    "thick-desclinks",
    "filtration",
];

/// Overrides for the built-in suite parameters. `None` keeps the default.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteOptions {
    pub types: Option<Vec<FiniteType>>,
    pub radius: Option<usize>,
    pub richness: Option<Richness>,
    pub q: Option<u32>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// The check could not be completed as configured.
    Fail,
    /// A counterexample to a statement that must hold was found.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub label: String,
    pub f_vector: Vec<usize>,
    /// Starts in degree -1.
    pub reduced_betti: Vec<usize>,
    pub verdict: Verdict,
}

impl BettiRow {
    pub fn new(label: impl Into<String>, r: &BettiReport) -> Self {
        BettiRow { label: label.into(), f_vector: r.f_vector.clone(), reduced_betti: r.reduced_betti.clone(), verdict: r.verdict }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    pub counters: BTreeMap<String, u64>,
    pub observations: BTreeMap<String, String>,
    /// Reproducible descriptions of failures, first ones only.
    pub witnesses: Vec<String>,
    pub betti: Vec<BettiRow>,
    /// Seed of sampled checks, absent for exhaustive suites.
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }
}

const MAX_WITNESSES: usize = 10;

/// Accumulates a report while a suite runs.
pub(crate) struct Tally {
    report: SuiteReport,
    start: Instant,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            report: SuiteReport {
                name: name.to_string(),
                status: Status::Pass,
                counters: BTreeMap::new(),
                observations: BTreeMap::new(),
                witnesses: Vec::new(),
                betti: Vec::new(),
                seed: None,
                elapsed_ms: 0,
            },
            start: Instant::now(),
        }
    }

    fn add(&mut self, key: &str, n: u64) {
        *self.report.counters.entry(key.to_string()).or_insert(0) += n;
    }

    fn bump(&mut self, key: &str) {
        self.add(key, 1);
    }

    fn set_max(&mut self, key: &str, n: u64) {
        let e = self.report.counters.entry(key.to_string()).or_insert(0);
        *e = (*e).max(n);
    }

    fn note(&mut self, key: impl Into<String>, value: impl Display) {
        self.report.observations.insert(key.into(), value.to_string());
    }

    fn seed(&mut self, seed: u64) {
        self.report.seed = Some(seed);
    }

    fn betti(&mut self, label: impl Into<String>, r: &BettiReport) {
        self.report.betti.push(BettiRow::new(label, r));
    }

    fn raise(&mut self, s: Status, witness: String) {
        self.report.status = self.report.status.max(s);
        self.bump(match s {
            Status::Contradiction => "contradictions",
            _ => "failures",
        });
        if self.report.witnesses.len() < MAX_WITNESSES {
            self.report.witnesses.push(witness);
        }
    }

    fn contradiction(&mut self, witness: impl Into<String>) {
        self.raise(Status::Contradiction, witness.into());
    }

    fn fail(&mut self, witness: impl Into<String>) {
        self.raise(Status::Fail, witness.into());
    }

    /// Records an error from the library: violations are contradictions,
    /// anything else means the check did not complete.
    fn error(&mut self, context: &str, e: Error) {
        match e {
            Error::TheoremViolation { .. } => self.contradiction(format!("{context}: {e}")),
            _ => self.fail(format!("{context}: {e}")),
        }
    }

    /// Unwraps a result, recording the error.
    fn check<T>(&mut self, context: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.error(context, e);
                None
            }
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        self.report
    }
}

/// Generators of the requested level for an affine type, built on the
/// smallest patch that shows them.
pub fn generators_for(t: FiniteType, level: Richness) -> Result<GeneratorSet> {
    let mut last = None;
    for r in 2..=12 {
        match build_generators(&generate_patch(TypeTag::affine(t), r)?, level) {
            Err(e @ Error::InsufficientRadius(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or_else(|| Error::InsufficientRadius(format!("{level} generators for {t}"))))
}

/// Height table of the radius-`r` patch of the affine type `t`.
pub fn height_table(t: FiniteType, r: usize, level: Richness) -> Result<HeightTable> {
    let g = generators_for(t, level)?;
    HeightTable::new(generate_patch(TypeTag::affine(t), r)?, &g)
}

/// Vertex coordinates of a simplex, for witnesses.
pub(crate) fn show(coords: &[Vector]) -> String {
    let parts: Vec<String> = coords.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let report = match name {
        "zonotope-faces" => geometry::zonotope_faces(opts),
        "no-wall" => geometry::no_wall(opts),
        "contains-vertex" => geometry::contains_vertex(opts),
        "gradient-criterion" => geometry::gradient_criterion(opts),
        "depth" => morse::depth(opts),
        "no-critical-edges" => morse::no_critical_edges(opts),
        "descending-join" => morse::descending_join(opts),
        "solomon-tits" => spherical::solomon_tits(opts),
        "hemispheres" => spherical::hemispheres(opts),
        "thick-desclinks" => spherical::thick_desclinks(opts),
        "filtration" => morse::filtration(opts),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(report)
}
