mod commands;
mod config;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zonomorse::coxeter::FiniteType;
use zonomorse::error::{Error, Result};
use zonomorse::spherical::BuildingSpec;
use zonomorse::suites::Status;
use zonomorse::zonotope::Richness;

use commands::PoleKind;
use config::{check_q, check_radius, parse_richness, parse_type, Format, ScenarioConfig};
use render::Output;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;

#[derive(Parser)]
#[command(name = "zonomorse", version, about = "Exact checks of zonotopal Morse theory on Coxeter complexes and spherical buildings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Affine type such as ~A2, C2~ or affine-G2.
    #[arg(long = "type")]
    affine_type: Option<String>,
    /// Number of alcove layers around the origin.
    #[arg(long)]
    radius: Option<usize>,
    /// orbit, almost-rich or rich.
    #[arg(long)]
    richness: Option<String>,
    /// Thickness of the spherical building models.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Structured)]
    format: Format,
}

impl Common {
    fn finite(&self) -> Result<FiniteType> {
        parse_type(self.affine_type.as_deref().ok_or_else(|| Error::InvalidConfig("--type is required".into()))?)
    }

    fn radius_or(&self, default: usize) -> Result<usize> {
        check_radius(self.radius.unwrap_or(default))
    }

    fn level(&self) -> Result<Richness> {
        self.richness.as_deref().map(parse_richness).transpose().map(|r| r.unwrap_or(Richness::AlmostRich))
    }

    fn q(&self) -> Result<Option<u32>> {
        self.q.map(check_q).transpose()
    }

    fn scenario(&self, suites: Vec<String>) -> ScenarioConfig {
        ScenarioConfig {
            schema_version: None,
            affine_type: self.affine_type.clone(),
            radius: self.radius,
            richness: self.richness.clone(),
            q: self.q,
            seed: self.seed,
            suites,
            out: self.out.clone(),
            format: Some(self.format),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Vertices and simplex counts of an apartment patch.
    Patch(Common),
    /// Generator set and zonotope of a richness level.
    Zonotope(Common),
    /// Heights, horizontal simplices, minimal faces and depths.
    Morse(Common),
    /// The subdivision along horizontal simplices.
    Subdivide(Common),
    /// Descending links, in the apartment or (with --q) in the thick links.
    Desclinks(Common),
    /// Hemisphere complexes of a spherical building.
    Spherical {
        #[command(flatten)]
        common: Common,
        /// A1(q), A2(q), C2(q), thin-A2, or joins such as A1(2)*A1(2).
        #[arg(long)]
        building: String,
        #[arg(long, value_enum, default_value_t = PoleKind::All)]
        pole: PoleKind,
        /// Type of the base chamber vertex used as a vertex pole.
        #[arg(long, default_value_t = 0)]
        vertex_type: usize,
    },
    /// Reduced homology of a building or of a complex file.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        building: Option<String>,
        /// JSON list of simplices, each a list of vertex ids.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Runs a scenario from a config file, or from the flags.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Suite to run (repeatable); defaults to all.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Runs one suite and writes its report.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => EXIT_FAILURE,
        Status::Contradiction => EXIT_CONTRADICTION,
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::InvalidConfig(_) | Error::UnknownSuite(_) | Error::UnsupportedType(_) | Error::UnsupportedSpec(_) | Error::InvalidRadius(_) => EXIT_USAGE,
        Error::TheoremViolation { .. } => EXIT_CONTRADICTION,
        _ => EXIT_FAILURE,
    }
}

fn emit(out: &Output, c: &Common) -> Result<u8> {
    out.emit(c.format, c.out.as_deref()).map_err(|e| Error::InvalidConfig(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn scenario_from(common: &Common, config: Option<&PathBuf>, suites: Vec<String>) -> Result<ScenarioConfig> {
    match config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?;
            ScenarioConfig::from_json(&text)
        }
        None => Ok(common.scenario(suites)),
    }
}

fn run_scenario(cfg: ScenarioConfig, default_out: Option<PathBuf>) -> Result<u8> {
    let scenario = cfg.validate()?;
    let (out, reports) = commands::run(&scenario)?;
    let path = scenario.config.out.clone().or(default_out);
    out.emit(scenario.format, path.as_deref()).map_err(|e| Error::InvalidConfig(format!("cannot write report: {e}")))?;
    for r in &reports {
        let verdict = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Contradiction => "CONTRADICTION",
        };
        let at = path.as_ref().map(|p| format!(" report: {}", p.display())).unwrap_or_default();
        eprintln!("{verdict} {} ({} ms){at}", r.name, r.elapsed_ms);
    }
    Ok(status_code(commands::worst(&reports)))
}

fn dispatch(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Patch(c) => emit(&commands::patch(c.finite()?, c.radius_or(3)?)?, &c),
        Command::Zonotope(c) => emit(&commands::zonotope(c.finite()?, c.level()?)?, &c),
        Command::Morse(c) => emit(&commands::morse(c.finite()?, c.radius_or(6)?, c.level()?)?, &c),
        Command::Subdivide(c) => emit(&commands::subdivide_cmd(c.finite()?, c.radius_or(6)?, c.level()?)?, &c),
        Command::Desclinks(c) => emit(&commands::desclinks(c.finite()?, c.radius_or(10)?, c.level()?, c.q()?)?, &c),
        Command::Spherical { common, building, pole, vertex_type } => {
            let spec: BuildingSpec = building.parse()?;
            emit(&commands::spherical(&spec, pole, vertex_type, common.seed)?, &common)
        }
        Command::Homology { common, building, complex } => {
            let spec = building.as_deref().map(str::parse::<BuildingSpec>).transpose()?;
            emit(&commands::homology(spec.as_ref(), complex.as_deref())?, &common)
        }
        Command::Run { common, config, suites } => run_scenario(scenario_from(&common, config.as_ref(), suites)?, None),
        Command::Verify { suite, common } => {
            let default_out = PathBuf::from(format!("{suite}.report.json"));
            run_scenario(common.scenario(vec![suite]), Some(default_out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
