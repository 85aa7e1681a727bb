use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use modiag::diagram::to_dot;
use modiag::ext::ext1;
use modiag::io::{chop_out, ext_entry, load_algebra, load_module, series_out};
use modiag::oracle::lattice_oracle;
use modiag::series::{loewy_series, SeriesKind};
use modiag::{central_diagram, corpus, decompose, tuned_diagram, verify_diagram, Config, Diagram, Error, Exec};
use modiag::{OutputFormat, SeedStream};

#[derive(Parser)]
#[command(name = "modiag", version, about = "Module diagrams over prime fields")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format for diagrams.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Composition factors and indecomposable summands.
    Chop { module: PathBuf },
    /// Radical or socle series with chosen layer slots.
    Series {
        module: PathBuf,
        #[arg(long, value_enum, default_value = "radical")]
        kind: SeriesKind,
    },
    /// The Ext¹ table between simples: an algebra file or a corpus name.
    Ext { algebra: String },
    /// Tuned diagram, or the central one with `--central`.
    Diagram {
        module: PathBuf,
        #[arg(long)]
        central: bool,
        /// Write `<out>.json` and/or `<out>.dot` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a diagram against its module; exit 0 iff every check passes.
    Verify { diagram: PathBuf, module: PathBuf },
    /// Exhaustive submodule lattice data.
    Oracle { module: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TuningConflict(_) => 3,
        Error::NotSplit(_) => 4,
        Error::Invalid(_)
        | Error::BadAction(_)
        | Error::DimCapExceeded { .. }
        | Error::NotPrime(_)
        | Error::AmbientMismatch(..)
        | Error::NotAssociative(..)
        | Error::NoIdentity
        | Error::GroupClosureOverflow(_) => 2,
        _ => 1,
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("output serializes")
}

fn config(cli: &Cli) -> Result<Config, Error> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    Ok(cfg)
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Runs one command; `Ok(false)` means it ran but the answer is negative.
fn run(cli: &Cli) -> Result<bool, Error> {
    let cfg = config(cli)?;
    let rng = SeedStream::new(cfg.seed);
    match &cli.command {
        Command::Chop { module } => {
            let m = load_module(module, &cfg)?;
            let parts = decompose(&m, &cfg, &rng)?;
            println!("{}", json(&chop_out(&m, &parts)));
        }
        Command::Series { module, kind } => {
            let m = load_module(module, &cfg)?;
            println!("{}", json(&series_out(&loewy_series(&m, *kind)?)));
        }
        Command::Ext { algebra } => {
            let alg = if corpus::algebra_specs().iter().any(|(n, _)| n == algebra) {
                corpus::algebra(algebra)?
            } else {
                load_algebra(Path::new(algebra), &cfg)?
            };
            let k = alg.num_simples();
            let mut table = Vec::new();
            for s in 0..k {
                for n in 0..k {
                    table.push(ext_entry(&ext1(&alg, s, n)?));
                }
            }
            println!("{}", json(&table));
        }
        Command::Diagram { module, central, out } => {
            let m = load_module(module, &cfg)?;
            let d = if *central { central_diagram(&m, &cfg)? } else { tuned_diagram(&m, &cfg)? };
            let (j, g) = (d.to_json(), to_dot(&d));
            let (want_json, want_dot) = match cfg.output_format {
                OutputFormat::Json => (true, false),
                OutputFormat::Dot => (false, true),
                OutputFormat::Both => (true, true),
            };
            match out {
                Some(stem) => {
                    if want_json {
                        write(&stem.with_extension("json"), &format!("{j}\n"))?;
                    }
                    if want_dot {
                        write(&stem.with_extension("dot"), &g)?;
                    }
                }
                None => {
                    if want_json {
                        println!("{j}");
                    }
                    if want_dot {
                        print!("{g}");
                    }
                }
            }
        }
        Command::Verify { diagram, module } => {
            let text = std::fs::read_to_string(diagram)
                .map_err(|e| Error::Invalid(format!("{}: {e}", diagram.display())))?;
            let d = Diagram::from_json(&text)?;
            let m = load_module(module, &cfg)?;
            let report = verify_diagram(&d, &m, &cfg)?;
            println!("{}", json(&report));
            return Ok(report.passed);
        }
        Command::Oracle { module } => {
            let m = load_module(module, &cfg)?;
            println!("{}", json(&lattice_oracle(&m, cfg.oracle_dim_cap, Exec::Parallel)?));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match &e {
                Error::TuningConflict(dump) => eprintln!("tuning conflict\n{dump}"),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
