//! Window families and explicit counterexample constructions.
//!
//! * periodized Gaussians `sum_j exp(-pi (n + jL)^2 / L)`, self-dual under
//!   the length-`L` DFT;
//! * B-splines and convolution products of indicator blocks, which satisfy
//!   a partition of unity for each block width;
//! * the alternating sequence `(-1)^(k+l)` probing the critical-density
//!   Gaussian system;
//! * the telescoping kernel sequence for partition-of-unity windows.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GaborError, Result};
use crate::lattice::{FiniteModel, SeparableLattice};
use crate::linalg::{norm2, singular_values};
use crate::ops::{synthesis_map, synthesis_matrix, LatticeSequence, TwistedSequence, Window};

/// How a window is generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WindowRecipe {
    PeriodizedGaussian,
    /// `order`-fold convolution of a length-`width` indicator block.
    Bspline {
        order: usize,
        width: usize,
    },
    /// Convolution of indicator blocks of the listed widths.
    ConvolutionProduct {
        widths: Vec<usize>,
    },
    Delta,
    /// Complex entries uniform in `[-1, 1]^2`, from a seeded ChaCha8 stream.
    Random {
        seed: u64,
    },
    File {
        path: PathBuf,
    },
}

impl fmt::Display for WindowRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowRecipe::PeriodizedGaussian => write!(f, "periodized-gaussian"),
            WindowRecipe::Bspline { order, width } => write!(f, "bspline:{order}:{width}"),
            WindowRecipe::ConvolutionProduct { widths } => {
                let ws: Vec<String> = widths.iter().map(|w| w.to_string()).collect();
                write!(f, "conv:{}", ws.join(","))
            }
            WindowRecipe::Delta => write!(f, "delta"),
            WindowRecipe::Random { seed } => write!(f, "random:{seed}"),
            WindowRecipe::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for WindowRecipe {
    type Err = GaborError;

    /// `delta`, `gaussian`, `bspline:<order>:<width>`, `conv:<w1>,<w2>,..`,
    /// `random:<seed>`, `file:<path>`; anything else is taken as a path.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| GaborError::config("window", format!("{reason}: `{s}`"));
        let parse_num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| bad("expected integer"))
        };
        let mut parts = s.splitn(2, ':');
        let head = parts.next().unwrap_or_default();
        let tail = parts.next();
        Ok(match (head, tail) {
            ("delta", None) => WindowRecipe::Delta,
            ("gaussian" | "periodized-gaussian" | "periodized_gaussian", None) => {
                WindowRecipe::PeriodizedGaussian
            }
            ("bspline", Some(rest)) => {
                let (o, w) = rest
                    .split_once(':')
                    .ok_or_else(|| bad("expected bspline:<order>:<width>"))?;
                WindowRecipe::Bspline {
                    order: parse_num(o)?,
                    width: parse_num(w)?,
                }
            }
            ("conv", Some(rest)) => WindowRecipe::ConvolutionProduct {
                widths: rest.split(',').map(parse_num).collect::<Result<_>>()?,
            },
            ("random", Some(seed)) => WindowRecipe::Random {
                seed: seed.trim().parse().map_err(|_| bad("expected seed"))?,
            },
            ("random", None) => WindowRecipe::Random { seed: 0 },
            ("file", Some(path)) => WindowRecipe::File { path: path.into() },
            _ => WindowRecipe::File { path: s.into() },
        })
    }
}

/// Unnormalized periodized Gaussian `sum_{|j| <= J} exp(-pi (n + jL)^2 / L)`,
/// exactly symmetric (`g[n] == g[L - n]`).
pub fn periodized_gaussian_raw(len: usize) -> Vec<f64> {
    let l = len as f64;
    // exp(-pi x^2 / L) < 1e-17 once x^2 > 40 L / pi.
    let reach = (40.0 * l / std::f64::consts::PI).sqrt();
    let terms = (reach / l).ceil() as i64 + 1;
    let value = |n: usize| -> f64 {
        (-terms..=terms)
            .map(|j| {
                let x = n as f64 + j as f64 * l;
                (-std::f64::consts::PI * x * x / l).exp()
            })
            .sum()
    };
    let mut g = vec![0.0; len];
    for n in 0..=len / 2 {
        let v = value(n);
        g[n] = v;
        g[(len - n) % len] = v;
    }
    g
}

fn cyclic_convolve(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0.0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            out[(i + j) % n] += xi * yj;
        }
    }
    out
}

/// Cyclic convolution of indicator blocks `[0, w_j)`, rotated so the
/// support is centred on the origin. Integer-valued, hence exact.
pub fn block_convolution_raw(len: usize, widths: &[usize]) -> Result<Vec<f64>> {
    let incompatible = |reason: String| GaborError::IncompatibleRecipe {
        length: len,
        reason,
    };
    if widths.is_empty() {
        return Err(incompatible("empty width list".into()));
    }
    for &w in widths {
        if w == 0 || !len.is_multiple_of(w) {
            return Err(incompatible(format!(
                "width {w} must be a positive divisor of L"
            )));
        }
    }
    let support: usize = widths.iter().map(|w| w - 1).sum::<usize>() + 1;
    if support > len {
        return Err(incompatible(format!("support {support} exceeds L")));
    }
    let block =
        |w: usize| -> Vec<f64> { (0..len).map(|t| if t < w { 1.0 } else { 0.0 }).collect() };
    let mut g = block(widths[0]);
    for &w in &widths[1..] {
        g = cyclic_convolve(&g, &block(w));
    }
    let shift = (support - 1) / 2;
    Ok((0..len).map(|t| g[(t + shift) % len]).collect())
}

/// Build the window described by `recipe` on `C^L`.
pub fn make_window(recipe: &WindowRecipe, model: &FiniteModel) -> Result<Window> {
    let len = model.len();
    let label = recipe.to_string();
    match recipe {
        WindowRecipe::PeriodizedGaussian => Window::from_real(&periodized_gaussian_raw(len), label),
        WindowRecipe::Bspline { order, width } => {
            if *order == 0 {
                return Err(GaborError::IncompatibleRecipe {
                    length: len,
                    reason: "bspline order must be >= 1".into(),
                });
            }
            Window::from_real(&block_convolution_raw(len, &vec![*width; *order])?, label)
        }
        WindowRecipe::ConvolutionProduct { widths } => {
            Window::from_real(&block_convolution_raw(len, widths)?, label)
        }
        WindowRecipe::Delta => {
            let mut v = vec![0.0; len];
            v[0] = 1.0;
            Window::from_real(&v, label)
        }
        WindowRecipe::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let v = (0..len)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            Window::new(v, label)
        }
        WindowRecipe::File { path } => {
            let w = crate::io::read_window(path)?;
            model.check_len(w.len())?;
            Ok(w)
        }
    }
}

/// Periodic sums `sum_k g[n - period k]`; returns `(mean, max relative deviation)`.
pub fn partition_of_unity_deviation(samples: &[Complex64], period: usize) -> (Complex64, f64) {
    let len = samples.len();
    let sums: Vec<Complex64> = (0..period)
        .map(|r| (r..len).step_by(period).map(|t| samples[t]).sum())
        .collect();
    let mean = sums.iter().sum::<Complex64>() / period as f64;
    let dev = sums.iter().map(|s| (s - mean).norm()).fold(0.0, f64::max);
    let rel = if mean.norm() > 0.0 {
        dev / mean.norm()
    } else {
        f64::INFINITY
    };
    (mean, rel)
}

/// Outcome of the alternating-sequence probe at critical density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlternatingProbe {
    pub len: usize,
    pub side: usize,
    /// `||D c|| / ||c||` for `c_kl = (-1)^(k+l)`.
    pub ratio: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

fn perfect_square_side(len: usize) -> Result<usize> {
    let s = (len as f64).sqrt().round() as usize;
    if s < 2 || s * s != len {
        return Err(GaborError::NotPerfectSquare(len));
    }
    Ok(s)
}

/// Synthesize `(-1)^(k+l)` with `g` on the adjoint of `sZ_L x sZ_L`, `L = s^2`.
pub fn alternating_kernel_probe(g: &Window, len: usize) -> Result<AlternatingProbe> {
    let side = perfect_square_side(len)?;
    let model = FiniteModel::new(len)?;
    let lattice = SeparableLattice::new(model, side, side)?;
    let adj = lattice.adjoint();
    let c = LatticeSequence::from_fn(adj, |k, l| {
        Complex64::new(if (k + l) % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
    });
    let dc = synthesis_map(g, &adj, &c)?;
    let sv = singular_values(&synthesis_matrix(g, &adj)?);
    Ok(AlternatingProbe {
        len,
        side,
        ratio: norm2(&dc) / c.norm2(),
        sigma_min: sv.last().copied().unwrap_or(0.0),
        sigma_max: sv.first().copied().unwrap_or(0.0),
    })
}

/// [`alternating_kernel_probe`] with the periodized Gaussian.
pub fn gaussian_alternating_kernel_probe(len: usize) -> Result<AlternatingProbe> {
    perfect_square_side(len)?;
    let model = FiniteModel::new(len)?;
    let g = make_window(&WindowRecipe::PeriodizedGaussian, &model)?;
    alternating_kernel_probe(&g, len)
}

/// A lattice together with an explicit sequence in `ker D_{g, Lambda°}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PouKernel {
    pub lattice: SeparableLattice,
    pub adjoint: SeparableLattice,
    pub sequence: TwistedSequence,
    /// `||D_{g, Lambda°} c|| / ||c||`.
    pub residual: f64,
    pub pou_constant: Complex64,
}

/// For a window with `sum_k g[n - period k] = const != 0`, build
/// `Lambda = step Z_L x (L N / period) Z_L`, whose adjoint has time step
/// `period / N`, and the sequence `c_{j + mN, l} = (-1)^j delta_{l,0}` for
/// `j in {0, 1}` (zero otherwise). Its synthesis telescopes to zero.
pub fn partition_of_unity_kernel(
    g: &Window,
    period: usize,
    blocks: usize,
    step: usize,
) -> Result<PouKernel> {
    let len = g.len();
    let model = FiniteModel::new(len)?;
    let fail = |reason: String| GaborError::IncompatibleRecipe {
        length: len,
        reason,
    };
    if blocks < 2 {
        return Err(fail(format!("N = {blocks} must be at least 2")));
    }
    if period == 0 || !len.is_multiple_of(period) {
        return Err(GaborError::NotADivisor {
            field: "period",
            value: period,
            length: len,
        });
    }
    if !period.is_multiple_of(blocks) {
        return Err(fail(format!(
            "N = {blocks} must divide the period {period}"
        )));
    }
    let (constant, deviation) = partition_of_unity_deviation(g.samples(), period);
    if deviation > 1e-12 || constant.norm() == 0.0 {
        return Err(GaborError::PartitionOfUnity { period, deviation });
    }
    let lattice = SeparableLattice::new(model, step, len / (period / blocks))?;
    let adjoint = lattice.adjoint();
    debug_assert_eq!(adjoint.time_step(), period / blocks);
    let sequence = LatticeSequence::from_fn(adjoint, |k, l| {
        let v = match (l, k % blocks) {
            (0, 0) => 1.0,
            (0, 1) => -1.0,
            _ => 0.0,
        };
        Complex64::new(v, 0.0)
    });
    let dc = synthesis_map(g, &adjoint, &sequence)?;
    Ok(PouKernel {
        lattice,
        adjoint,
        residual: norm2(&dc) / sequence.norm2(),
        sequence,
        pou_constant: constant,
    })
}
