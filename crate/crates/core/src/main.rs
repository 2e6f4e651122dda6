use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gabor_core::algebra::kernel_basis;
use gabor_core::diagnostics::{biorthogonality_residual, wexler_raz_dual};
use gabor_core::gallery::{make_window, WindowRecipe};
use gabor_core::report::{
    divisor_grid, gallery_summary, index_summary, parse_grid, parse_pair, parse_tasks, run, sweep,
    sweep_csv, AnalysisConfig, Task, DEFAULT_SEED,
};
use gabor_core::{io, GaborError, Tolerance};

#[derive(Parser)]
#[command(name = "gabor", version, about = "Finite Gabor frame diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Signal length L.
    #[arg(long)]
    length: usize,
    /// Window recipe (delta, gaussian, bspline:<order>:<width>, conv:<w1>,<w2>,...,
    /// random:<seed>, file:<path>) or a path to a window file.
    #[arg(long, default_value = "gaussian")]
    window: String,
    /// Tolerance scale factor.
    #[arg(long, default_value_t = 1e3)]
    tol_scale: f64,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one (window, lattice) pair.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Lattice steps `a,b`.
        #[arg(long)]
        lattice: String,
        /// Comma-separated subset of bounds,conditions,duality,janssen,dual_window,kernel,index,gallery.
        #[arg(long, default_value = "bounds,conditions,duality,janssen,dual_window")]
        tasks: String,
        /// Write eigenvalue spectra as CSV.
        #[arg(long)]
        spectra: Option<PathBuf>,
        /// Include wall-clock timing in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Tabulate bounds and verdicts over a grid of lattices.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `a,b;a,b;...`; all divisor pairs of L when omitted.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Run the counterexample gallery.
    Gallery {
        #[arg(long, default_value_t = 1e3)]
        tol_scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the canonical dual window and write it as a window file.
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lattice: String,
    },
    /// Kernel of the adjoint synthesis operator and, when defined, the index.
    Kernel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lattice: String,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), GaborError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| GaborError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn config(common: &Common, lattice: &str, tasks: Vec<Task>) -> Result<AnalysisConfig, GaborError> {
    let (a, b) = parse_pair(lattice, "lattice")?;
    let window: WindowRecipe = common.window.parse()?;
    let mut cfg = AnalysisConfig::new(common.length, a, b, window, tasks);
    cfg.tol_scale = common.tol_scale;
    cfg.seed = common.seed;
    cfg.out = common.out.clone();
    Ok(cfg)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: Cli) -> Result<bool, GaborError> {
    match cli.command {
        Command::Analyze {
            common,
            lattice,
            tasks,
            spectra,
            timing,
        } => {
            let mut cfg = config(&common, &lattice, parse_tasks(&tasks)?)?;
            cfg.spectra = spectra.clone();
            cfg.timing = timing;
            let output = run(&cfg)?;
            emit(common.out.as_deref(), &(output.report.to_json() + "\n"))?;
            if let (Some(path), Some(csv)) = (spectra.as_deref(), output.spectra_csv.as_deref()) {
                emit(Some(path), csv)?;
            }
            Ok(output.report.consistent())
        }
        Command::Sweep { common, pairs } => {
            let cfg = config(&common, "1,1", vec![Task::Bounds])?;
            let grid = match pairs {
                Some(p) => parse_grid(&p)?,
                None => divisor_grid(common.length),
            };
            let rows = sweep(&cfg, &grid)?;
            emit(common.out.as_deref(), &sweep_csv(&rows))?;
            Ok(rows
                .iter()
                .all(|r| (r.consistent || r.marginal) && r.duality_agree))
        }
        Command::Gallery { tol_scale, out } => {
            let summary = gallery_summary(&Tolerance::new(tol_scale))?;
            emit(out.as_deref(), &to_json(&summary))?;
            Ok(true)
        }
        Command::Dual { common, lattice } => {
            let cfg = config(&common, &lattice, vec![Task::DualWindow])?;
            let (model, lat) = cfg.validate()?;
            let g = make_window(&cfg.window, &model)?;
            let dual = wexler_raz_dual(&g, &lat, &cfg.tolerance())?;
            let residual = biorthogonality_residual(&dual.samples, &g, &lat)?;
            match common.out.as_deref() {
                Some(path) => io::write_samples(path, &dual.samples)?,
                None => print!("{}", io::format_samples(&dual.samples)),
            }
            eprintln!(
                "biorthogonality constant {:e}, residual {:e}",
                dual.biorthogonality_constant, residual
            );
            Ok(true)
        }
        Command::Kernel { common, lattice } => {
            let cfg = config(&common, &lattice, vec![Task::Kernel, Task::Index])?;
            let (model, lat) = cfg.validate()?;
            let g = make_window(&cfg.window, &model)?;
            let tol = cfg.tolerance();
            let basis: Vec<_> = kernel_basis(&g, &lat.adjoint(), &tol)?
                .into_iter()
                .map(|s| s.into_values())
                .collect();
            let index = index_summary(&g, &lat, &tol)?;
            let doc = serde_json::json!({
                "schema_version": gabor_core::report::SCHEMA_VERSION,
                "kernel_dimension": basis.len(),
                "kernel_basis": basis,
                "index": index,
            });
            emit(common.out.as_deref(), &to_json(&doc))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("equivalence verdicts disagree");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
