mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "bitcong", version, about = "Bitangent congruences of quartic surfaces over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full verification suite for a characteristic-2 Kummer family.
    VerifyKummer {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        common: Common,
    },
    /// Bitangents through a point (order) or inside a plane (class).
    Count {
        #[arg(long, value_enum, default_value_t = Mode::Point)]
        mode: Mode,
        #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
        family: Option<String>,
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        common: Common,
    },
    /// Universal discriminant of binary forms modulo 2 and its square root.
    Disc {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bitangent count and 2-rank of a plane quartic in characteristic 2.
    Wall {
        /// One of the pinned normal-form fixtures: I, II, III or IV.
        #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
        kind: Option<String>,
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        common: Common,
    },
    /// Pinned fixtures with their defining data.
    Fixtures {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Point,
    Plane,
}

#[derive(Args, Debug, Clone)]
pub struct PolyInput {
    /// Polynomial in x, y, z, w (or x0, x1, ...).
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,
    #[arg(long)]
    poly_file: Option<PathBuf>,
}

impl PolyInput {
    fn text(&self) -> anyhow::Result<Option<String>> {
        match (&self.poly, &self.poly_file) {
            (Some(p), _) => Ok(Some(p.clone())),
            (None, Some(path)) => Ok(Some(std::fs::read_to_string(path)?.trim().to_string())),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = bitcong::quartic_curves::DEFAULT_K_MAX)]
    k_max: u32,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn dispatch(command: &Command) -> anyhow::Result<Report> {
    match command {
        Command::VerifyKummer { family, common } => commands::verify_kummer(family, common),
        Command::Count { mode, family, input, common } => commands::count(*mode, family.as_deref(), &input.text()?, common),
        Command::Disc { degree, common } => commands::disc(*degree, common),
        Command::Wall { kind, input, common } => commands::wall(kind.as_deref(), &input.text()?, common),
        Command::Fixtures { common } => commands::fixtures(common),
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::VerifyKummer { common, .. }
        | Command::Count { common, .. }
        | Command::Disc { common, .. }
        | Command::Wall { common, .. }
        | Command::Fixtures { common } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match pool.install(|| dispatch(&cli.command)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report.json).expect("serializable") + "\n";
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(msg) = &report.message {
        eprintln!("{msg}");
    }
    ExitCode::from(match report.outcome {
        Outcome::Pass => 0,
        Outcome::Fail => 1,
        Outcome::Inconclusive => 3,
    })
}
