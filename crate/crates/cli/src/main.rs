use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use annulus::scenario::{self, ScenarioConfig};
use annulus::{EngineRegistry, Error};
use clap::Parser;

/// Time evolution of Dirac-point wave packets in graphene, written as CSV.
///
/// Settings are applied in order: defaults, --scenario, --config file, then the remaining flags.
#[derive(Debug, Parser)]
#[command(name = "annulus", version)]
struct Args {
    /// Print the builtin scenarios and exit.
    #[arg(long)]
    list: bool,
    /// Builtin scenario to start from.
    #[arg(long)]
    scenario: Option<String>,
    /// Plain `key = value` settings file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Engine: free, free-direct or landau.
    #[arg(long)]
    mode: Option<String>,
    /// Free-packet coefficient family: gaussian or step.
    #[arg(long)]
    coeff: Option<String>,
    /// Coefficient width, nm^-1.
    #[arg(long)]
    dk: Option<String>,
    /// plus, minus or both.
    #[arg(long)]
    branches: Option<String>,
    /// K or Kp.
    #[arg(long)]
    valley: Option<String>,
    /// Initial Gaussian width in a field, nm.
    #[arg(long)]
    sigma: Option<String>,
    /// Magnetic field, T.
    #[arg(long)]
    bfield: Option<String>,
    /// start:end:step, fs.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Largest radius, nm.
    #[arg(long)]
    rmax: Option<String>,
    /// Number of radial points.
    #[arg(long)]
    nr: Option<String>,
    /// profile, trace, rings or coeffs.
    #[arg(long)]
    emit: Option<String>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<String>,
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        [
            ("mode", &self.mode),
            ("coeff", &self.coeff),
            ("dk", &self.dk),
            ("branches", &self.branches),
            ("valley", &self.valley),
            ("sigma", &self.sigma),
            ("bfield", &self.bfield),
            ("t", &self.t),
            ("rmax", &self.rmax),
            ("nr", &self.nr),
            ("emit", &self.emit),
            ("tol", &self.tol),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}

fn configure(args: &Args) -> Result<ScenarioConfig, Error> {
    let mut config = match &args.scenario {
        Some(name) => scenario::builtin(name)?,
        None => ScenarioConfig::default(),
    };
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        config.apply_file(&text)?;
    }
    for (key, value) in args.overrides() {
        config.set(key, value)?;
    }
    config.validate()?;
    Ok(config)
}

fn execute(args: &Args) -> Result<(), Error> {
    let config = configure(args)?;
    let registry = EngineRegistry::default();
    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            scenario::run(&config, &registry, &mut w)?;
            w.flush().map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
        }
        None => scenario::run(&config, &registry, &mut io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        print!("{}", scenario::list_scenarios());
        return ExitCode::SUCCESS;
    }
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("annulus: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
