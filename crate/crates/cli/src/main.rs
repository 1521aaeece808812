use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Report;

/// Equivariant cohomology of regular semisimple Hessenberg varieties via GKM
/// graphs: classes, orbits under the dot action and independence checks.
#[derive(Parser, Debug)]
#[command(name = "hgkm", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Seed for the random evaluation points used by independence checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum number of evaluation points tried before exact elimination.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for the library's parallel loops.
    #[arg(long, global = true, env = "HGKM_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the GKM graph of a Hessenberg function.
    Graph {
        /// Hessenberg function as a comma list, e.g. 2,3,3.
        #[arg(long)]
        h: String,
    },
    /// Construct a class.
    Class {
        #[arg(long, value_enum)]
        kind: ClassKind,
        #[arg(long)]
        h: String,
        /// Composition for `--kind top`.
        #[arg(long, required_if_eq("kind", "top"))]
        mu: Option<String>,
        /// Two-part composition for `--kind fk`.
        #[arg(long, required_if_eq("kind", "fk"))]
        lambda: Option<String>,
        #[arg(long, required_if_eq("kind", "fk"))]
        k: Option<usize>,
        /// Build `fk` classes even when h(k+2) = n fails.
        #[arg(long)]
        no_hypothesis: bool,
    },
    /// Check the GKM conditions of a class file.
    Verify {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        h: String,
    },
    /// Orbit of a class under the dot action of the minimal coset representatives.
    Orbit {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Decide linear independence of classes (class or orbit files).
    Indep {
        #[arg(long, num_args = 1.., required = true)]
        classes: Vec<PathBuf>,
    },
    /// Orbit-independence check for f^(lambda_2 - 1).
    Thm5 {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        h: String,
    },
    /// Two-orbit independence check for lambda = (1, n-1).
    Thm6 {
        #[arg(long)]
        h: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    Top,
    Fk,
}

fn emit(report: &Report, global: &GlobalOpts) -> anyhow::Result<()> {
    let body = match global.format {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Text => report.text.clone(),
        Format::Dot => match &report.dot {
            Some(d) => d.clone(),
            None => bail!("--format dot is only available for the graph command"),
        },
    };
    match &global.output {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let g = &cli.global;
    if let Some(threads) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    let opts = hgkm_core::IndependenceOptions {
        seed: g.seed,
        trials: g.trials,
        ..Default::default()
    };
    if g.format == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        bail!("--format dot is only available for the graph command");
    }
    let report = match cli.command {
        Command::Graph { h } => commands::graph(&h)?,
        Command::Class { kind, h, mu, lambda, k, no_hypothesis } => {
            commands::class(kind, &h, mu.as_deref(), lambda.as_deref(), k, no_hypothesis)?
        }
        Command::Verify { class, h } => commands::verify(&class, &h)?,
        Command::Orbit { class, lambda } => commands::orbit(&class, &lambda)?,
        Command::Indep { classes } => commands::indep(&classes, &opts)?,
        Command::Thm5 { lambda, h } => commands::thm5(&lambda, &h, &opts)?,
        Command::Thm6 { h } => commands::thm6(&h, &opts)?,
    };
    emit(&report, g)?;
    Ok(report.success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
