use clap::{Parser, Subcommand, ValueEnum};
use disjoint_kit_cli::commands::{self, CausalOpts, ChiralOpts};
use disjoint_kit_cli::report::Report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "disjoint-kit",
    about = "Verification suites for disjointness relations on finite categories and lattice spacetime models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for the run report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the full JSON report to a file as well.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the disjointness-relation axioms and the complement
    /// characterisation of a category-with-table file.
    VerifyAxioms { input: PathBuf },
    /// List overlap-monic morphisms; optionally render the category to DOT.
    OverlapMonics {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Analyze a causal patch file.
    Causal {
        input: PathBuf,
        #[arg(long)]
        classify: bool,
        /// Subset to test for causal convexity, as "u,v;u,v;...".
        #[arg(long)]
        convex: Option<String>,
        #[arg(long)]
        cauchy: bool,
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Analyze a chiral patch file.
    Chiral {
        input: PathBuf,
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        convex: Option<String>,
        #[arg(long)]
        cauchy: bool,
        #[arg(long)]
        theorems: bool,
        /// Write the quotient bundle file here.
        #[arg(long)]
        quotient: Option<PathBuf>,
        /// Initial-data file for the transport demo.
        #[arg(long)]
        fermion: Option<PathBuf>,
        /// Where to write the transported field (default fermion_field.json).
        #[arg(long)]
        fermion_out: Option<PathBuf>,
    },
    /// Run a suite manifest and aggregate the outcomes.
    Suite { manifest: PathBuf },
}

fn parse_points(text: &str) -> Result<Vec<(i64, i64)>, String> {
    text.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            let mut parts = chunk.split(',').map(str::trim);
            let u = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad point {chunk:?}"))?;
            let v = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad point {chunk:?}"))?;
            if parts.next().is_some() {
                return Err(format!("bad point {chunk:?}"));
            }
            Ok((u, v))
        })
        .collect()
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.text()),
        Format::Json => println!("{}", report.full_json()),
    }
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, report.full_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DISJOINT_KIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyAxioms { input } => commands::cmd_verify_axioms(input),
        Command::OverlapMonics { input, dot } => commands::cmd_overlap_monics(input, dot.as_deref()),
        Command::Causal { input, classify, convex, cauchy, theorems, dot } => {
            let convex = match convex.as_deref().map(parse_points) {
                Some(Ok(points)) => Some(points),
                Some(Err(e)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                None => None,
            };
            commands::cmd_causal(
                input,
                &CausalOpts {
                    classify: *classify,
                    convex,
                    cauchy: *cauchy,
                    theorems: *theorems,
                    dot: dot.clone(),
                },
            )
        }
        Command::Chiral { input, classify, convex, cauchy, theorems, quotient, fermion, fermion_out } => {
            let convex = match convex.as_deref().map(parse_points) {
                Some(Ok(points)) => Some(points),
                Some(Err(e)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                None => None,
            };
            commands::cmd_chiral(
                input,
                &ChiralOpts {
                    classify: *classify,
                    convex,
                    cauchy: *cauchy,
                    theorems: *theorems,
                    quotient: quotient.clone(),
                    fermion: fermion.clone(),
                    fermion_out: fermion_out.clone(),
                },
            )
        }
        Command::Suite { manifest } => commands::cmd_suite(manifest),
    };
    match result {
        Ok(report) => emit(&report, cli.format, cli.out.as_ref()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
