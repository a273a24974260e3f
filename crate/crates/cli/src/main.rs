use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scramble_cli::{bundled, run, CliError, ExperimentSpec};

#[derive(Parser)]
#[command(name = "scramble", version, about = "Run operator-scrambling experiments from TOML specs")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a spec file or a bundled spec by name.
    Run {
        spec: String,
        /// Output directory; defaults to the spec's `output` or `out/<name>`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the bundled specs.
    List,
    /// Print a bundled spec.
    Show { name: String },
}

fn load(spec: &str, seed: Option<u64>) -> Result<ExperimentSpec, CliError> {
    let path = Path::new(spec);
    let (text, fallback) = if path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment").to_string();
        (fs::read_to_string(path)?, stem)
    } else if let Some(text) = bundled::find(spec) {
        (text.to_string(), spec.to_string())
    } else {
        return Err(CliError::Usage(format!("no spec file or bundled spec named `{spec}`")));
    };
    ExperimentSpec::parse(&text, &fallback, seed).map_err(|error| CliError::Spec { source_name: spec.to_string(), error })
}

fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::List => print!("{}", bundled::table()),
        Command::Show { name } => match bundled::find(&name) {
            Some(text) => print!("{text}"),
            None => return Err(CliError::Usage(format!("no bundled spec named `{name}`"))),
        },
        Command::Run { spec, out, seed } => {
            let spec = load(&spec, seed)?;
            let dir = out
                .or_else(|| spec.output.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| Path::new("out").join(&spec.name));
            let (files, report) = run(&spec, &dir)?;
            for f in files {
                println!("wrote {}", f.display());
            }
            for e in report {
                match e.stderr {
                    Some(se) => println!("{}: {:.6} +- {:.6}", e.quantity, e.estimate, se),
                    None => println!("{}: {:.6}", e.quantity, e.estimate),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Spec { source_name, error } => eprintln!("error: {source_name}: {error}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
