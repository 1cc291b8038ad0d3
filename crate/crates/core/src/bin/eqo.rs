//! Command-line front end; see `eqo --help`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eqo::cli::{self, CliError, SolverChoice};
use eqo::document::ReportDocument;
use eqo::quadrature::Quadrature;

#[derive(Parser)]
#[command(name = "eqo", version, about = "Classify and solve quadratic operator equations")]
struct Args {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solvers; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elliptic / parabolic / hyperbolic verdict with witness and margin.
    Classify { path: PathBuf },
    /// Enumerate roots, or follow one Newton run with --from.
    Solve {
        path: PathBuf,
        #[arg(long, default_value_t = cli::DEFAULT_STARTS)]
        starts: usize,
        /// Center of the sampling box, e.g. "(0,0)".
        #[arg(long)]
        box_center: Option<String>,
        #[arg(long)]
        box_radius: Option<f64>,
        /// Residual tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Single start point, e.g. "(2,4)".
        #[arg(long)]
        from: Option<String>,
        /// Include Newton iterates in the report.
        #[arg(long)]
        trace: bool,
        /// auto, multistart, resultant or homotopy.
        #[arg(long, default_value = "auto")]
        solver: String,
    },
    /// Rank-one certificate, largest root and all roots.
    Rank1 {
        path: PathBuf,
        #[arg(long, default_value_t = cli::DEFAULT_STARTS)]
        starts: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reduce and solve a Hammerstein equation; writes sampled solutions.
    Hammerstein {
        path: PathBuf,
        /// trapezoid or gauss(k).
        #[arg(long)]
        quadrature: Option<String>,
        #[arg(long, default_value_t = cli::DEFAULT_STARTS)]
        starts: usize,
        #[arg(long, default_value = "eqo-solutions")]
        out_dir: PathBuf,
    },
    /// Built-in problem catalog.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    Export { id: String },
}

fn run(args: Args) -> Result<String, CliError> {
    let seed = cli::seed_from_env()?;
    let point = |s: Option<String>| s.as_deref().map(cli::parse_point).transpose();
    let report: ReportDocument = match args.command {
        Command::Gallery { action } => {
            return match action {
                GalleryAction::List => Ok(cli::cmd_gallery_list()),
                GalleryAction::Export { id } => cli::cmd_gallery_export(&id),
            };
        }
        Command::Classify { path } => {
            let flags = cli::ClassifyFlags { seed };
            cli::with_threads(args.threads, || cli::cmd_classify(&path, &flags))??
        }
        Command::Solve {
            path,
            starts,
            box_center,
            box_radius,
            tol,
            from,
            trace,
            solver,
        } => {
            let flags = cli::SolveFlags {
                starts,
                box_center: point(box_center)?,
                box_radius,
                tol,
                from: point(from)?,
                trace,
                solver: solver.parse::<SolverChoice>()?,
                seed,
            };
            cli::with_threads(args.threads, || cli::cmd_solve(&path, &flags))??
        }
        Command::Rank1 { path, starts, tol } => {
            let flags = cli::Rank1Flags { starts, tol, seed };
            cli::with_threads(args.threads, || cli::cmd_rank1(&path, &flags))??
        }
        Command::Hammerstein {
            path,
            quadrature,
            starts,
            out_dir,
        } => {
            let quadrature = quadrature
                .map(|q| q.parse::<Quadrature>().map_err(|e| CliError::Usage(e.to_string())))
                .transpose()?;
            let flags = cli::HammersteinFlags {
                quadrature,
                starts,
                out_dir,
                seed,
            };
            cli::with_threads(args.threads, || cli::cmd_hammerstein(&path, &flags))??
        }
    };
    Ok(if args.json {
        cli::render_json(&report)
    } else {
        cli::render_text(&report)
    })
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("eqo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
