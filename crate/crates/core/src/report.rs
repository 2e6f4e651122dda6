//! Analysis configuration, report assembly and lattice sweeps.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{index_commutative, janssen_coefficients, kernel_basis, represent};
use crate::diagnostics::{
    biorthogonality_residual, check_all_conditions, duality_check, frame_bounds,
    reconstruction_error, wexler_raz_dual, BoundsReport, DualityCheck, EquivalenceVerdict,
};
use crate::error::{GaborError, Result};
use crate::gallery::{
    alternating_kernel_probe, gaussian_alternating_kernel_probe, make_window,
    partition_of_unity_kernel, AlternatingProbe, WindowRecipe,
};
use crate::lattice::{divisors, FiniteModel, SeparableLattice};
use crate::linalg::{norm2, Tolerance};
use crate::ops::{coefficient_map, frame_operator_matrix, Window};

pub const SCHEMA_VERSION: &str = "gabor-diagnostics/1";
pub const DEFAULT_SEED: u64 = 0x05EE_D0FF_4A3E;
/// Residual tolerances reported alongside each identity check.
pub const JANSSEN_TOL: f64 = 1e-12;
pub const DUAL_TOL: f64 = 1e-10;
/// Relative slack on the pointwise frame inequality.
pub const FRAME_INEQUALITY_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Bounds,
    Conditions,
    Duality,
    Janssen,
    DualWindow,
    Kernel,
    Index,
    Gallery,
}

impl FromStr for Task {
    type Err = GaborError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "bounds" => Task::Bounds,
            "conditions" => Task::Conditions,
            "duality" => Task::Duality,
            "janssen" => Task::Janssen,
            "dual_window" | "dual-window" | "dual" => Task::DualWindow,
            "kernel" => Task::Kernel,
            "index" => Task::Index,
            "gallery" => Task::Gallery,
            other => {
                return Err(GaborError::config(
                    "tasks",
                    format!("unknown task `{other}`"),
                ))
            }
        })
    }
}

pub fn parse_tasks(s: &str) -> Result<Vec<Task>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(Task::from_str)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub length: usize,
    pub a: usize,
    pub b: usize,
    pub window: WindowRecipe,
    pub tol_scale: f64,
    pub tasks: Vec<Task>,
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub spectra: Option<PathBuf>,
    /// Record wall-clock timing in the report (makes it non-reproducible).
    #[serde(default)]
    pub timing: bool,
}

impl AnalysisConfig {
    pub fn new(length: usize, a: usize, b: usize, window: WindowRecipe, tasks: Vec<Task>) -> Self {
        Self {
            length,
            a,
            b,
            window,
            tol_scale: Tolerance::default().scale,
            tasks,
            seed: DEFAULT_SEED,
            out: None,
            spectra: None,
            timing: false,
        }
    }

    /// Field-level validation; returns the model and lattice on success.
    pub fn validate(&self) -> Result<(FiniteModel, SeparableLattice)> {
        let model = FiniteModel::new(self.length)
            .map_err(|e| GaborError::config("length", e.to_string()))?;
        let lattice = lattice_for(model, self.a, self.b)?;
        if self.tasks.is_empty() {
            return Err(GaborError::config("tasks", "at least one task is required"));
        }
        if !(self.tol_scale.is_finite() && self.tol_scale > 0.0) {
            return Err(GaborError::config("tol_scale", "must be a positive number"));
        }
        if let WindowRecipe::File { path } = &self.window {
            if !path.exists() {
                return Err(GaborError::config(
                    "window",
                    format!("file {} does not exist", path.display()),
                ));
            }
        }
        Ok((model, lattice))
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.tol_scale)
    }
}

fn lattice_for(model: FiniteModel, a: usize, b: usize) -> Result<SeparableLattice> {
    SeparableLattice::new(model, a, b).map_err(|e| match e {
        GaborError::NotADivisor { field, .. } => GaborError::config(field, e.to_string()),
        other => other,
    })
}

/// A residual together with the tolerance it is judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Residual {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub a: usize,
    pub b: usize,
    pub cardinality: usize,
    pub adjoint_a: usize,
    pub adjoint_b: usize,
    pub adjoint_cardinality: usize,
    pub covolume: f64,
    pub redundancy: f64,
    pub adjoint_commutative: bool,
}

impl From<&SeparableLattice> for LatticeSummary {
    fn from(l: &SeparableLattice) -> Self {
        let adj = l.adjoint();
        Self {
            a: l.time_step(),
            b: l.freq_step(),
            cardinality: l.cardinality(),
            adjoint_a: adj.time_step(),
            adjoint_b: adj.freq_step(),
            adjoint_cardinality: adj.cardinality(),
            covolume: l.covolume(),
            redundancy: l.redundancy(),
            adjoint_commutative: adj.is_commutative(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSummary {
    pub label: String,
    pub original_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSummary {
    pub scale: f64,
    /// `scale * max(n, n°, L) * eps`, relative to the largest eigenvalue.
    pub threshold: f64,
}

/// Pointwise frame inequality on random signals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameInequality {
    pub trials: usize,
    /// Largest relative violation of `A ||f||^2 <= ||Cf||^2 <= B ||f||^2`.
    pub worst_violation: Residual,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualitySummary {
    pub frame: bool,
    pub adjoint_riesz: bool,
    pub agree: bool,
}

impl From<&DualityCheck> for DualitySummary {
    fn from(d: &DualityCheck) -> Self {
        Self {
            frame: d.frame,
            adjoint_riesz: d.adjoint_riesz,
            agree: d.agree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JanssenSummary {
    /// `||S - sum a_mu pi(mu)||_F / ||S||_F`.
    pub relative_residual: Residual,
    pub coefficient_l1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSummary {
    pub available: bool,
    pub reason: Option<String>,
    pub biorthogonality_constant: f64,
    pub biorthogonality: Option<Residual>,
    pub reconstruction: Option<Residual>,
    pub dual_norm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSummary {
    /// Dimension of `ker D_{g, L°}`; an upper bound for the index.
    pub dimension: usize,
    pub adjoint_cardinality: usize,
    /// Orthonormal basis vectors, each in flat adjoint-lattice order.
    pub witnesses: Vec<Vec<Complex64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSummary {
    pub commutative: bool,
    /// Exact index, only in the commutative case.
    pub index: Option<usize>,
    pub characters: Vec<(usize, usize)>,
    /// Kernel dimension, reported as the upper-bound surrogate.
    pub kernel_dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PouSummary {
    pub length: usize,
    pub window: String,
    pub period: usize,
    pub blocks: usize,
    pub lattice: LatticeSummary,
    pub residual: Residual,
    pub all_conditions_false: bool,
    pub index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GallerySummary {
    pub gaussian_ladder: Vec<AlternatingProbe>,
    pub delta_control: Vec<AlternatingProbe>,
    pub partition_of_unity: Vec<PouSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub schema_version: String,
    pub tool_version: String,
    pub config: AnalysisConfig,
    pub lattice: LatticeSummary,
    pub window: WindowSummary,
    pub tolerance: ToleranceSummary,
    pub seed: u64,
    pub bounds: Option<BoundsReport>,
    pub frame_inequality: Option<FrameInequality>,
    pub conditions: Option<EquivalenceVerdict>,
    pub duality: Option<DualitySummary>,
    pub janssen: Option<JanssenSummary>,
    pub dual_window: Option<DualSummary>,
    pub kernel: Option<KernelSummary>,
    pub index: Option<IndexSummary>,
    pub gallery: Option<GallerySummary>,
    pub timing_ms: Option<f64>,
}

impl DiagnosticsReport {
    /// False only when the equivalence harness ran and its verdicts disagree.
    pub fn consistent(&self) -> bool {
        self.conditions
            .as_ref()
            .is_none_or(|v| v.consistent || v.marginal)
            && self.duality.as_ref().is_none_or(|d| d.agree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Result of [`run`]: the report plus the spectra table when requested.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: DiagnosticsReport,
    pub spectra_csv: Option<String>,
}

fn random_signal(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn frame_inequality(
    g: &Window,
    lattice: &SeparableLattice,
    bounds: &BoundsReport,
    rng: &mut ChaCha8Rng,
    trials: usize,
) -> Result<FrameInequality> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = random_signal(rng, lattice.len());
        let energy = norm2(&f).powi(2);
        let coeff = coefficient_map(g, lattice, &f)?.norm2().powi(2);
        let low = (bounds.frame_lower * energy - coeff) / (bounds.frame_upper * energy);
        let high = (coeff - bounds.frame_upper * energy) / (bounds.frame_upper * energy);
        worst = worst.max(low).max(high);
    }
    Ok(FrameInequality {
        trials,
        worst_violation: Residual::new(worst.max(0.0), FRAME_INEQUALITY_SLACK),
    })
}

fn janssen_summary(g: &Window, lattice: &SeparableLattice) -> Result<JanssenSummary> {
    let s = frame_operator_matrix(g, lattice)?;
    let coeffs = janssen_coefficients(g, lattice)?;
    let rel = (&s - represent(&coeffs)).norm() / s.norm();
    Ok(JanssenSummary {
        relative_residual: Residual::new(rel, JANSSEN_TOL),
        coefficient_l1: coeffs.norm1(),
    })
}

fn dual_summary(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<DualSummary> {
    let constant = crate::diagnostics::wexler_raz_constant(lattice);
    match wexler_raz_dual(g, lattice, tol) {
        Ok(dual) => {
            let bio = biorthogonality_residual(&dual.samples, g, lattice)?;
            let f = random_signal(rng, lattice.len());
            let rec = reconstruction_error(&dual.samples, g, lattice, &f)? / norm2(&f);
            Ok(DualSummary {
                available: true,
                reason: None,
                biorthogonality_constant: constant,
                biorthogonality: Some(Residual::new(bio, DUAL_TOL)),
                reconstruction: Some(Residual::new(rec, DUAL_TOL)),
                dual_norm: Some(norm2(&dual.samples)),
            })
        }
        Err(e @ GaborError::NotAFrame { .. }) => Ok(DualSummary {
            available: false,
            reason: Some(e.to_string()),
            biorthogonality_constant: constant,
            biorthogonality: None,
            reconstruction: None,
            dual_norm: None,
        }),
        Err(e) => Err(e),
    }
}

fn kernel_summary(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<KernelSummary> {
    let adj = lattice.adjoint();
    let basis = kernel_basis(g, &adj, tol)?;
    Ok(KernelSummary {
        dimension: basis.len(),
        adjoint_cardinality: adj.cardinality(),
        witnesses: basis.into_iter().map(|s| s.into_values()).collect(),
    })
}

pub fn index_summary(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<IndexSummary> {
    let adj = lattice.adjoint();
    let kernel_dimension = kernel_basis(g, &adj, tol)?.len();
    if adj.is_commutative() {
        let idx = index_commutative(g, &adj, tol)?;
        Ok(IndexSummary {
            commutative: true,
            index: Some(idx.index),
            characters: idx.characters,
            kernel_dimension,
        })
    } else {
        Ok(IndexSummary {
            commutative: false,
            index: None,
            characters: Vec::new(),
            kernel_dimension,
        })
    }
}

/// Lengths of the alternating-sequence ladder.
pub const LADDER_LENGTHS: [usize; 4] = [16, 36, 64, 100];

pub fn gallery_summary(tol: &Tolerance) -> Result<GallerySummary> {
    let gaussian_ladder = LADDER_LENGTHS
        .iter()
        .map(|&l| gaussian_alternating_kernel_probe(l))
        .collect::<Result<Vec<_>>>()?;
    let delta_control = LADDER_LENGTHS
        .iter()
        .map(|&l| {
            let g = make_window(&WindowRecipe::Delta, &FiniteModel::new(l)?)?;
            alternating_kernel_probe(&g, l)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut partition_of_unity = Vec::new();
    for (len, order, width, blocks) in [(16, 1, 4, 2), (16, 1, 4, 4), (24, 2, 4, 2)] {
        let model = FiniteModel::new(len)?;
        let recipe = WindowRecipe::Bspline { order, width };
        let g = make_window(&recipe, &model)?;
        let pk = partition_of_unity_kernel(&g, width, blocks, 1)?;
        let verdict = check_all_conditions(&g, &pk.lattice, tol)?;
        let index = if pk.adjoint.is_commutative() {
            Some(index_commutative(&g, &pk.adjoint, tol)?.index)
        } else {
            None
        };
        partition_of_unity.push(PouSummary {
            length: len,
            window: recipe.to_string(),
            period: width,
            blocks,
            lattice: LatticeSummary::from(&pk.lattice),
            residual: Residual::new(pk.residual, 1e-12),
            all_conditions_false: verdict.consistent && verdict.all(false),
            index,
        });
    }
    Ok(GallerySummary {
        gaussian_ladder,
        delta_control,
        partition_of_unity,
    })
}

/// Comma-separated eigenvalues of `S_{g,L}` and `G_{g,L°}`.
pub fn spectra_csv(d: &DualityCheck) -> String {
    let mut out = String::from("operator,index,eigenvalue\n");
    for (i, v) in d.frame_spectrum.iter().enumerate() {
        let _ = writeln!(out, "frame_operator,{i},{v:e}");
    }
    for (i, v) in d.adjoint_gram_spectrum.iter().enumerate() {
        let _ = writeln!(out, "adjoint_gramian,{i},{v:e}");
    }
    out
}

/// Execute the configured tasks in dependency order.
pub fn run(config: &AnalysisConfig) -> Result<RunOutput> {
    let started = Instant::now();
    let (model, lattice) = config.validate()?;
    let tol = config.tolerance();
    let g = make_window(&config.window, &model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tasks = config.tasks.clone();
    tasks.sort();
    tasks.dedup();

    let mut report = DiagnosticsReport {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        lattice: LatticeSummary::from(&lattice),
        window: WindowSummary {
            label: g.label().to_string(),
            original_norm: g.original_norm(),
        },
        tolerance: ToleranceSummary {
            scale: tol.scale,
            threshold: tol.threshold(lattice.system_dim()),
        },
        seed: config.seed,
        bounds: None,
        frame_inequality: None,
        conditions: None,
        duality: None,
        janssen: None,
        dual_window: None,
        kernel: None,
        index: None,
        gallery: None,
        timing_ms: None,
    };
    let mut spectra = None;

    for task in tasks {
        match task {
            Task::Bounds => {
                let b = frame_bounds(&g, &lattice, &tol)?;
                report.frame_inequality = Some(frame_inequality(&g, &lattice, &b, &mut rng, 8)?);
                report.bounds = Some(b);
            }
            Task::Conditions => report.conditions = Some(check_all_conditions(&g, &lattice, &tol)?),
            Task::Duality => {
                let d = duality_check(&g, &lattice, &tol)?;
                report.duality = Some(DualitySummary::from(&d));
                spectra = Some(spectra_csv(&d));
            }
            Task::Janssen => report.janssen = Some(janssen_summary(&g, &lattice)?),
            Task::DualWindow => {
                report.dual_window = Some(dual_summary(&g, &lattice, &tol, &mut rng)?)
            }
            Task::Kernel => report.kernel = Some(kernel_summary(&g, &lattice, &tol)?),
            Task::Index => report.index = Some(index_summary(&g, &lattice, &tol)?),
            Task::Gallery => report.gallery = Some(gallery_summary(&tol)?),
        }
    }
    if config.spectra.is_some() && spectra.is_none() {
        spectra = Some(spectra_csv(&duality_check(&g, &lattice, &tol)?));
    }
    if config.timing {
        report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(RunOutput {
        report,
        spectra_csv: spectra,
    })
}

/// One row of the frame/no-frame phase diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: usize,
    pub b: usize,
    pub redundancy: f64,
    pub frame_lower: f64,
    pub frame_upper: f64,
    pub frame: bool,
    pub consistent: bool,
    pub marginal: bool,
    pub duality_agree: bool,
}

/// All divisor pairs `(a, b)` of `L`.
pub fn divisor_grid(len: usize) -> Vec<(usize, usize)> {
    let ds = divisors(len);
    ds.iter()
        .flat_map(|&a| ds.iter().map(move |&b| (a, b)))
        .collect()
}

/// Parse `a,b;a,b;...`.
pub fn parse_grid(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_pair(p, "pairs"))
        .collect()
}

pub fn parse_pair(s: &str, field: &str) -> Result<(usize, usize)> {
    let bad = || GaborError::config(field, format!("expected `a,b`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn sweep(base: &AnalysisConfig, grid: &[(usize, usize)]) -> Result<Vec<SweepRow>> {
    let model =
        FiniteModel::new(base.length).map_err(|e| GaborError::config("length", e.to_string()))?;
    let lattices = grid
        .iter()
        .map(|&(a, b)| lattice_for(model, a, b))
        .collect::<Result<Vec<_>>>()?;
    if lattices.is_empty() {
        return Ok(Vec::new());
    }
    let tol = base.tolerance();
    let g = make_window(&base.window, &model)?;
    lattices
        .par_iter()
        .map(|lattice| {
            let bounds = frame_bounds(&g, lattice, &tol)?;
            let verdict = check_all_conditions(&g, lattice, &tol)?;
            let duality = duality_check(&g, lattice, &tol)?;
            Ok(SweepRow {
                a: lattice.time_step(),
                b: lattice.freq_step(),
                redundancy: lattice.redundancy(),
                frame_lower: bounds.frame_lower,
                frame_upper: bounds.frame_upper,
                frame: verdict.get(crate::diagnostics::Condition::I).holds,
                consistent: verdict.consistent,
                marginal: verdict.marginal,
                duality_agree: duality.agree,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "a,b,redundancy,frame_lower,frame_upper,frame,consistent,marginal,duality_agree\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{:e},{},{},{},{}",
            r.a,
            r.b,
            r.redundancy,
            r.frame_lower,
            r.frame_upper,
            r.frame,
            r.consistent,
            r.marginal,
            r.duality_agree
        );
    }
    out
}
