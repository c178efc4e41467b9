use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use blimwb_core::cli;
use blimwb_core::config::Caps;
use blimwb_core::error::Error;

#[derive(Parser)]
#[command(name = "blimwb", version, about = "Dimension quotient and boundary limit workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare Blim F/R'γ_n(F) with D_n(G)/γ_n(G) on presentation files.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the enumeration caps (also via BLIMWB_CAP).
        #[arg(long)]
        cap: Option<u64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// The dimension quotient D_n(G)/γ_n(G) as a subgroup of G/γ_n(G).
    Dimq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
        path: PathBuf,
    },
    /// The boundary limit of F/R'γ_n(F) inside G/γ_n(G).
    Blim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: Option<u64>,
        path: PathBuf,
    },
    /// Property checks: inclusion, sym, identity, mono.
    Props {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
        path: PathBuf,
    },
    /// Finite-category limit computations on a category/functor JSON file.
    Catlim {
        #[arg(long)]
        cmd: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        cap: Option<u64>,
        file: PathBuf,
    },
}

fn caps_with(cap: Option<u64>) -> Caps {
    let mut caps = Caps::from_env();
    if let Some(c) = cap {
        caps.apply_override(c);
    }
    caps
}

fn read(path: &PathBuf) -> Result<(String, String), Error> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned());
    let text = std::fs::read_to_string(path)?;
    Ok((name, text))
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> Result<(), Error> {
    let rendered = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify { n, seed, cap, out, paths } => {
            let caps = caps_with(cap);
            let inputs = paths.iter().map(read).collect::<Result<Vec<_>, _>>()?;
            let (report, passed) = cli::run_verify(&inputs, n, seed, &caps)?;
            emit(&report, out.as_ref())?;
            Ok(passed)
        }
        Command::Dimq { n, seed, cap, path } => {
            let caps = caps_with(cap);
            let (name, text) = read(&path)?;
            let report = cli::run_dimq(&name, &text, n, &caps, seed)?;
            emit(&report, None)?;
            Ok(true)
        }
        Command::Blim { n, cap, path } => {
            let caps = caps_with(cap);
            let (name, text) = read(&path)?;
            let report = cli::run_blim(&name, &text, n, &caps)?;
            emit(&report, None)?;
            Ok(true)
        }
        Command::Props { which, n, seed, cap, path } => {
            let caps = caps_with(cap);
            let (name, text) = read(&path)?;
            let (report, passed) = cli::run_props(&name, &text, &which, n, &caps, seed)?;
            emit(&report, None)?;
            Ok(passed)
        }
        Command::Catlim { cmd, degree, cap, file } => {
            let caps = caps_with(cap);
            let (_, text) = read(&file)?;
            let (report, passed) = cli::run_catlim(&text, &cmd, degree, &caps)?;
            emit(&report, None)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            let code = err.exit_code();
            println!("{}", serde_json::to_string_pretty(&cli::error_json(&err)).expect("serializable"));
            ExitCode::from(code as u8)
        }
    }
}
