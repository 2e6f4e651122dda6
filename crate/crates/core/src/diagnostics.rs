//! Frame and Riesz bounds, the fourteen-condition equivalence harness,
//! canonical duals, cross Gramians and sampled-STFT modulation norms.
//!
//! In `C^L` every "invertible on `M^1` / `M^inf` / `l^1` / `l^inf`" and every
//! "dense range" statement collapses to plain invertibility or surjectivity,
//! so each condition reduces to a rank decision. All rank decisions use the
//! same relative threshold `tau` (see [`Tolerance`]), applied to the
//! normalized spectrum of a positive operator: eigenvalues of `S` or `G`
//! directly, or squared singular values of `C` and `D`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GaborError, Result};
use crate::gallery::{make_window, WindowRecipe};
use crate::lattice::{tf_shift, FiniteModel, SeparableLattice};
use crate::linalg::{
    hermitian_eigenvalues, inner, min_relative_sq, rank_from_singular_values, singular_values,
    CMatrix, CVector, Margin, Tolerance,
};
use crate::ops::{
    coefficient_map, coefficient_matrix, frame_operator_matrix, gramian_matrix, synthesis_matrix,
    Window,
};

/// Frame bounds `A, B` (extreme eigenvalues of `S`) and Riesz bounds of the
/// Gramian `G`, stored in both squared (eigenvalue) and unsquared form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub frame_lower: f64,
    pub frame_upper: f64,
    /// Smallest eigenvalue of `S` as computed, before thresholding.
    pub frame_lower_raw: f64,
    /// `sqrt(lambda_min(G))`, zero when `G` is singular at tolerance.
    pub riesz_lower: f64,
    pub riesz_upper: f64,
    pub riesz_lower_sq: f64,
    pub riesz_upper_sq: f64,
    /// Smallest eigenvalue of `G` above tolerance.
    pub gram_nonzero_min_sq: f64,
    /// `B / A`; `None` stands for `+inf`.
    pub condition_number: Option<f64>,
    /// Relative eigenvalue threshold used for every decision above.
    pub tolerance: f64,
}

fn relative_min(eigs: &[f64]) -> f64 {
    let max = eigs.last().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0.0;
    }
    (eigs.first().copied().unwrap_or(0.0) / max).max(0.0)
}

pub fn frame_bounds(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<BoundsReport> {
    let tau = tol.threshold(lattice.system_dim());
    let s_eigs = hermitian_eigenvalues(&frame_operator_matrix(g, lattice)?);
    let g_eigs = hermitian_eigenvalues(&gramian_matrix(g, lattice)?);
    let frame_upper = s_eigs.last().copied().unwrap_or(0.0).max(0.0);
    let frame_lower_raw = s_eigs.first().copied().unwrap_or(0.0);
    let frame_lower = if relative_min(&s_eigs) > tau {
        frame_lower_raw
    } else {
        0.0
    };
    let riesz_upper_sq = g_eigs.last().copied().unwrap_or(0.0).max(0.0);
    let riesz_lower_sq = if relative_min(&g_eigs) > tau {
        g_eigs[0]
    } else {
        0.0
    };
    let gram_nonzero_min_sq = g_eigs
        .iter()
        .copied()
        .find(|&e| riesz_upper_sq > 0.0 && e / riesz_upper_sq > tau)
        .unwrap_or(0.0);
    Ok(BoundsReport {
        frame_lower,
        frame_upper,
        frame_lower_raw,
        riesz_lower: riesz_lower_sq.sqrt(),
        riesz_upper: riesz_upper_sq.sqrt(),
        riesz_lower_sq,
        riesz_upper_sq,
        gram_nonzero_min_sq,
        condition_number: (frame_lower > 0.0).then(|| frame_upper / frame_lower),
        tolerance: tau,
    })
}

/// The fourteen equivalent conditions, in their finite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
    X,
    Xi,
    Xii,
    Xiii,
    Xiv,
}

impl Condition {
    pub const ALL: [Condition; 14] = [
        Condition::I,
        Condition::Ii,
        Condition::Iii,
        Condition::Iv,
        Condition::V,
        Condition::Vi,
        Condition::Vii,
        Condition::Viii,
        Condition::Ix,
        Condition::X,
        Condition::Xi,
        Condition::Xii,
        Condition::Xiii,
        Condition::Xiv,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::Ii => "ii",
            Condition::Iii => "iii",
            Condition::Iv => "iv",
            Condition::V => "v",
            Condition::Vi => "vi",
            Condition::Vii => "vii",
            Condition::Viii => "viii",
            Condition::Ix => "ix",
            Condition::X => "x",
            Condition::Xi => "xi",
            Condition::Xii => "xii",
            Condition::Xiii => "xiii",
            Condition::Xiv => "xiv",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::I => "G(g,L) is a frame: C_{g,L} bounded below",
            Condition::Ii => "S_{g,L} invertible (M^1 form; Hermitian eigenvalues)",
            Condition::Iii => "S_{g,L} invertible (M^inf form; singular values)",
            Condition::Iv => "S_{g,L} one-to-one",
            Condition::V => "C_{g,L} one-to-one",
            Condition::Vi => "D_{g,L} onto (rank L)",
            Condition::Vii => "D_{g,L} dense range (D D^H invertible)",
            Condition::Viii => "D_{g,L°} one-to-one",
            Condition::Ix => "C_{g,L°} onto (rank n°)",
            Condition::X => "C_{g,L°} onto (bounded below adjoint)",
            Condition::Xi => "G_{g,L°} invertible (l^1 form; Hermitian eigenvalues)",
            Condition::Xii => "G_{g,L°} invertible (l^inf form; singular values)",
            Condition::Xiii => "G_{g,L°} one-to-one",
            Condition::Xiv => "G(g,L°) is a Riesz sequence",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// One evaluated condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub key: String,
    pub holds: bool,
    /// Normalized spectral quantity compared against the threshold.
    pub ratio: f64,
    /// Scalar witness in the condition's own units: a smallest
    /// eigenvalue/singular value, or a rank deficiency.
    pub witness: f64,
    pub witness_kind: String,
    pub margin: Margin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub checks: Vec<ConditionCheck>,
    /// All fourteen booleans agree.
    pub consistent: bool,
    /// Some witness sits within a factor of 10 of the threshold.
    pub marginal: bool,
    pub tolerance: f64,
    /// Kernel witness for (viii) when it fails: a unit vector in
    /// `ker D_{g, L°}` (flat lattice order).
    pub kernel_witness: Option<Vec<Complex64>>,
    pub note: String,
}

impl EquivalenceVerdict {
    pub fn get(&self, c: Condition) -> &ConditionCheck {
        &self.checks[c as usize]
    }

    /// The common verdict, when consistent.
    pub fn frame(&self) -> Option<bool> {
        self.consistent.then(|| self.checks[0].holds)
    }

    pub fn all(&self, value: bool) -> bool {
        self.checks.iter().all(|c| c.holds == value)
    }
}

const COLLAPSE_NOTE: &str = "finite model: invertibility on M^1, M^2, M^inf (and l^1, l^2, l^inf) \
coincide, dense range equals surjectivity, injectivity equals invertibility for square maps";

struct Judge {
    tau: f64,
    tol: Tolerance,
    dim: usize,
}

impl Judge {
    fn check(
        &self,
        c: Condition,
        holds: bool,
        ratio: f64,
        witness: f64,
        kind: &str,
    ) -> ConditionCheck {
        ConditionCheck {
            key: c.key().to_string(),
            holds,
            ratio,
            witness,
            witness_kind: kind.to_string(),
            margin: self.tol.margin(ratio, self.dim),
        }
    }

    /// Bounded below / invertibility from singular values of a linear map
    /// with `cols` inputs.
    fn linear_min(&self, c: Condition, sv: &[f64], cols: usize) -> ConditionCheck {
        let ratio = min_relative_sq(sv, cols);
        let smin = if sv.len() < cols {
            0.0
        } else {
            sv.last().copied().unwrap_or(0.0)
        };
        self.check(c, ratio > self.tau, ratio, smin, "sigma_min")
    }

    /// Rank test on a linear map: `rank == target`.
    fn linear_rank(&self, c: Condition, sv: &[f64], target: usize) -> ConditionCheck {
        let rank = rank_from_singular_values(sv, self.tau);
        let ratio = smallest_counted_sq(sv, target);
        self.check(
            c,
            rank == target,
            ratio,
            (target - rank.min(target)) as f64,
            "rank_deficiency",
        )
    }

    /// Injectivity on a linear map with `cols` inputs: nullity zero.
    fn linear_nullity(&self, c: Condition, sv: &[f64], cols: usize) -> ConditionCheck {
        let rank = rank_from_singular_values(sv, self.tau);
        let ratio = smallest_counted_sq(sv, cols);
        self.check(
            c,
            rank == cols,
            ratio,
            (cols - rank.min(cols)) as f64,
            "nullity",
        )
    }

    /// Positive operator from its ascending eigenvalues.
    fn positive_eigs(&self, c: Condition, eigs: &[f64], kind: &str) -> ConditionCheck {
        let ratio = relative_min(eigs);
        self.check(
            c,
            ratio > self.tau,
            ratio,
            eigs.first().copied().unwrap_or(0.0),
            kind,
        )
    }

    /// Positive operator from its singular values (already quadratic).
    fn positive_sv(&self, c: Condition, sv: &[f64], dim: usize) -> ConditionCheck {
        let smax = sv.first().copied().unwrap_or(0.0);
        let smin = if sv.len() < dim {
            0.0
        } else {
            sv.last().copied().unwrap_or(0.0)
        };
        let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
        self.check(c, ratio > self.tau, ratio, smin, "sigma_min")
    }

    fn positive_nullity(&self, c: Condition, sv: &[f64], dim: usize) -> ConditionCheck {
        let smax = sv.first().copied().unwrap_or(0.0);
        let rank = if smax > 0.0 {
            sv.iter().filter(|&&s| s / smax > self.tau).count()
        } else {
            0
        };
        let ratio = if smax > 0.0 && sv.len() >= dim {
            sv.last().copied().unwrap_or(0.0) / smax
        } else {
            0.0
        };
        self.check(
            c,
            rank == dim,
            ratio,
            (dim - rank.min(dim)) as f64,
            "nullity",
        )
    }
}

/// Squared normalized singular value that decides whether the rank reaches
/// `target` (zero when fewer than `target` singular values exist).
fn smallest_counted_sq(sv: &[f64], target: usize) -> f64 {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 || target == 0 || sv.len() < target {
        return 0.0;
    }
    (sv[target - 1] / smax).powi(2)
}

/// Evaluate all fourteen conditions independently on `(g, lattice)`.
pub fn check_all_conditions(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<EquivalenceVerdict> {
    let len = lattice.len();
    let adj = lattice.adjoint();
    let n_adj = adj.cardinality();
    let dim = lattice.system_dim();
    let judge = Judge {
        tau: tol.threshold(dim),
        tol: *tol,
        dim,
    };

    let c_mat = coefficient_matrix(g, lattice)?;
    let d_mat = synthesis_matrix(g, lattice)?;
    let s_mat = frame_operator_matrix(g, lattice)?;
    let c_adj = coefficient_matrix(g, &adj)?;
    let d_adj = synthesis_matrix(g, &adj)?;
    let g_adj = gramian_matrix(g, &adj)?;

    let sv_c = singular_values(&c_mat);
    let sv_d = singular_values(&d_mat);
    let sv_s = singular_values(&s_mat);
    let sv_c_adj = singular_values(&c_adj);
    let sv_d_adj = singular_values(&d_adj);
    let sv_g_adj = singular_values(&g_adj);
    let eig_s = hermitian_eigenvalues(&s_mat);
    let eig_ddh = hermitian_eigenvalues(&(&d_mat * d_mat.adjoint()));
    let eig_g_adj = hermitian_eigenvalues(&g_adj);

    // Riesz bounds of G(g, L°) through the bounds machinery.
    let riesz = {
        let upper = eig_g_adj.last().copied().unwrap_or(0.0).max(0.0);
        let lower = eig_g_adj.first().copied().unwrap_or(0.0).max(0.0);
        (lower.sqrt(), upper.sqrt())
    };
    let riesz_ratio = if riesz.1 > 0.0 {
        (riesz.0 / riesz.1).powi(2)
    } else {
        0.0
    };

    let checks = vec![
        judge.linear_min(Condition::I, &sv_c, len),
        judge.positive_eigs(Condition::Ii, &eig_s, "lambda_min"),
        judge.positive_sv(Condition::Iii, &sv_s, len),
        judge.positive_nullity(Condition::Iv, &sv_s, len),
        judge.linear_nullity(Condition::V, &sv_c, len),
        judge.linear_rank(Condition::Vi, &sv_d, len),
        judge.positive_eigs(Condition::Vii, &eig_ddh, "lambda_min"),
        judge.linear_nullity(Condition::Viii, &sv_d_adj, n_adj),
        judge.linear_rank(Condition::Ix, &sv_c_adj, n_adj),
        judge.linear_min(Condition::X, &sv_d_adj, n_adj),
        judge.positive_eigs(Condition::Xi, &eig_g_adj, "lambda_min"),
        judge.positive_sv(Condition::Xii, &sv_g_adj, n_adj),
        judge.positive_nullity(Condition::Xiii, &sv_g_adj, n_adj),
        judge.check(
            Condition::Xiv,
            riesz_ratio > judge.tau,
            riesz_ratio,
            riesz.0,
            "riesz_lower",
        ),
    ];

    let first = checks[0].holds;
    let consistent = checks.iter().all(|c| c.holds == first);
    let marginal = checks.iter().any(|c| c.margin == Margin::Marginal);
    let kernel_witness = if checks[Condition::Viii as usize].holds {
        None
    } else {
        crate::linalg::null_space(&d_adj, judge.tau)
            .into_iter()
            .next()
    };
    Ok(EquivalenceVerdict {
        checks,
        consistent,
        marginal,
        tolerance: judge.tau,
        kernel_witness,
        note: COLLAPSE_NOTE.to_string(),
    })
}

/// A canonical dual window `gamma = S^{-1} g`. Not normalized: its scale is
/// what makes reconstruction exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualWindow {
    pub samples: Vec<Complex64>,
    /// `c` in `<gamma, pi(mu) g> = c delta_{mu,0}` on the adjoint lattice.
    pub biorthogonality_constant: f64,
    pub frame_lower: f64,
}

impl AsRef<[Complex64]> for DualWindow {
    fn as_ref(&self) -> &[Complex64] {
        &self.samples
    }
}

impl AsRef<[Complex64]> for Window {
    fn as_ref(&self) -> &[Complex64] {
        self.samples()
    }
}

impl DualWindow {
    /// Unit-norm copy, recording the original norm.
    pub fn to_window(&self) -> Result<Window> {
        Window::new(self.samples.clone(), "canonical-dual")
    }
}

/// The constant on the right-hand side of the finite biorthogonality
/// relations: `s(Lambda) = ab / L`. Pinned by the orthonormal-basis case
/// (`a = 1, b = L`, `gamma = g`, constant 1) and the full lattice
/// (`gamma = g / L`, constant `1 / L`).
pub fn wexler_raz_constant(lattice: &SeparableLattice) -> f64 {
    lattice.covolume()
}

/// `gamma = S^{-1} g`. With `C = QR` (thin), `S = R^H R` and `g = C^H e_0`,
/// so `gamma = R^{-1} Q^H e_0`; this loses accuracy like `cond(C)` rather
/// than `cond(S) = cond(C)^2`.
pub fn wexler_raz_dual(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<DualWindow> {
    let len = lattice.len();
    let c = coefficient_matrix(g, lattice)?;
    let sv = singular_values(&c);
    let tau = tol.threshold(lattice.system_dim());
    let lambda_min = if sv.len() < len {
        0.0
    } else {
        sv[len - 1].powi(2)
    };
    if min_relative_sq(&sv, len) <= tau {
        return Err(GaborError::NotAFrame {
            lambda_min,
            tolerance: tau * sv.first().map_or(0.0, |s| s * s),
        });
    }
    let qr = c.qr();
    let rhs = CVector::from_iterator(len, qr.q().row(0).iter().map(|z| z.conj()));
    let gamma = qr
        .r()
        .solve_upper_triangular(&rhs)
        .ok_or(GaborError::NotAFrame {
            lambda_min,
            tolerance: tau,
        })?;
    Ok(DualWindow {
        samples: gamma.as_slice().to_vec(),
        biorthogonality_constant: wexler_raz_constant(lattice),
        frame_lower: lambda_min,
    })
}

/// `max_{mu in L°} |<gamma, pi(mu) g> - c delta_{mu,0}|`.
pub fn biorthogonality_residual(
    gamma: &[Complex64],
    g: &Window,
    lattice: &SeparableLattice,
) -> Result<f64> {
    let adj = lattice.adjoint();
    let c = wexler_raz_constant(lattice);
    let mut worst: f64 = 0.0;
    for (i, mu) in adj.points().enumerate() {
        let atom = tf_shift(adj.model(), mu, g.samples())?;
        let target = if i == 0 { c } else { 0.0 };
        worst = worst.max((inner(gamma, &atom) - target).norm());
    }
    Ok(worst)
}

/// `f - sum_lambda <f, pi(lambda) gamma> pi(lambda) g`, by direct summation.
pub fn reconstruction_error(
    gamma: &[Complex64],
    g: &Window,
    lattice: &SeparableLattice,
    f: &[Complex64],
) -> Result<f64> {
    let model = lattice.model();
    model.check_len(gamma.len())?;
    model.check_len(f.len())?;
    let mut rec = vec![Complex64::new(0.0, 0.0); model.len()];
    for p in lattice.points() {
        let dual_atom = tf_shift(model, p, gamma)?;
        let atom = tf_shift(model, p, g.samples())?;
        let coef = inner(f, &dual_atom);
        for (r, a) in rec.iter_mut().zip(&atom) {
            *r += coef * a;
        }
    }
    let err: f64 = rec.iter().zip(f).map(|(r, x)| (r - x).norm_sqr()).sum();
    Ok(err.sqrt())
}

/// `Phi[mu, nu] = <pi(nu) phi, pi(mu) g>` on `adjoint`.
pub fn cross_gramian(
    phi: &[Complex64],
    g: &[Complex64],
    adjoint: &SeparableLattice,
) -> Result<CMatrix> {
    let model = adjoint.model();
    model.check_len(phi.len())?;
    model.check_len(g.len())?;
    let n = adjoint.cardinality();
    let phis: Vec<Vec<Complex64>> = adjoint
        .points()
        .map(|p| tf_shift(model, p, phi))
        .collect::<Result<_>>()?;
    let gs: Vec<Vec<Complex64>> = adjoint
        .points()
        .map(|p| tf_shift(model, p, g))
        .collect::<Result<_>>()?;
    Ok(CMatrix::from_fn(n, n, |mu, nu| inner(&phis[nu], &gs[mu])))
}

/// Maximum absolute row sum of `Phi - I`.
pub fn row_sum_deviation(phi_matrix: &CMatrix) -> f64 {
    let n = phi_matrix.nrows();
    (0..n)
        .map(|i| {
            (0..phi_matrix.ncols())
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    (phi_matrix[(i, j)] - Complex64::new(id, 0.0)).norm()
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// `sum_mu |<phi, pi(mu) g> - delta_{mu,0}|`, i.e. `||C_{g,L°} phi - delta||_1`.
pub fn ambiguity_deviation(
    phi: &[Complex64],
    g: &Window,
    adjoint: &SeparableLattice,
) -> Result<f64> {
    let mut total = 0.0;
    for (i, mu) in adjoint.points().enumerate() {
        let atom = tf_shift(adjoint.model(), mu, g.samples())?;
        let target = if i == 0 { 1.0 } else { 0.0 };
        total += (inner(phi, &atom) - target).norm();
    }
    Ok(total)
}

/// Preimage of `target` under `C_{g, L°}` built from an approximate dual
/// `phi`: when `||Phi - I||_inf < 1`, `Phi` is inverted by a Neumann series
/// and `f = D_{phi, L°} Phi^{-1} target` satisfies `C_{g,L°} f = target`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurjectivityWitness {
    pub deviation: f64,
    pub signal: Vec<Complex64>,
    pub iterations: usize,
    pub residual: f64,
}

pub fn neumann_surjectivity(
    phi: &[Complex64],
    g: &Window,
    adjoint: &SeparableLattice,
    target: &[Complex64],
) -> Result<Option<SurjectivityWitness>> {
    let n = adjoint.cardinality();
    if target.len() != n {
        return Err(GaborError::Shape {
            expected: n,
            actual: target.len(),
        });
    }
    let phi_m = cross_gramian(phi, g.samples(), adjoint)?;
    let deviation = row_sum_deviation(&phi_m);
    if deviation >= 1.0 {
        return Ok(None);
    }
    // c = sum_k (I - Phi)^k target
    let e = CMatrix::identity(n, n) - &phi_m;
    let t = CVector::from_column_slice(target);
    let mut term = t.clone();
    let mut c = t.clone();
    let tnorm = t.norm().max(f64::MIN_POSITIVE);
    let mut iterations = 0;
    while term.norm() > 1e-17 * tnorm && iterations < 10_000 {
        term = &e * term;
        c += &term;
        iterations += 1;
    }
    let model = adjoint.model();
    let mut f = vec![Complex64::new(0.0, 0.0); model.len()];
    for (i, p) in adjoint.points().enumerate() {
        let atom = tf_shift(model, p, phi)?;
        for (x, a) in f.iter_mut().zip(&atom) {
            *x += c[i] * a;
        }
    }
    let image = coefficient_map(g, adjoint, &f)?;
    let residual = image
        .values()
        .iter()
        .zip(target)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(Some(SurjectivityWitness {
        deviation,
        signal: f,
        iterations,
        residual,
    }))
}

/// Frame/Riesz duality record for `(g, L)` and `(g, L°)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub frame: bool,
    pub adjoint_riesz: bool,
    pub agree: bool,
    /// Eigenvalues of `S_{g, L}`, ascending.
    pub frame_spectrum: Vec<f64>,
    /// Eigenvalues of `G_{g, L°}`, ascending.
    pub adjoint_gram_spectrum: Vec<f64>,
}

pub fn duality_check(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<DualityCheck> {
    let tau = tol.threshold(lattice.system_dim());
    let frame_spectrum = hermitian_eigenvalues(&frame_operator_matrix(g, lattice)?);
    let adjoint_gram_spectrum = hermitian_eigenvalues(&gramian_matrix(g, &lattice.adjoint())?);
    let frame = relative_min(&frame_spectrum) > tau;
    let adjoint_riesz = relative_min(&adjoint_gram_spectrum) > tau;
    Ok(DualityCheck {
        frame,
        adjoint_riesz,
        agree: frame == adjoint_riesz,
        frame_spectrum,
        adjoint_gram_spectrum,
    })
}

/// Which `l^p` norm of the sampled STFT to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormOrder {
    One,
    Two,
    Inf,
}

impl FromStr for NormOrder {
    type Err = GaborError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(NormOrder::One),
            "2" => Ok(NormOrder::Two),
            "inf" | "infinity" | "∞" => Ok(NormOrder::Inf),
            other => Err(GaborError::InvalidNorm(other.to_string())),
        }
    }
}

/// `V_phi f` on the full grid `Z_L x Z_L`, `phi` the unit periodized Gaussian.
pub fn sampled_stft(f: &[Complex64]) -> Result<Vec<Complex64>> {
    let model = FiniteModel::new(f.len())?;
    let phi = make_window(&WindowRecipe::PeriodizedGaussian, &model)?;
    let full = SeparableLattice::new(model, 1, 1)?;
    Ok(coefficient_map(&phi, &full, f)?.into_values())
}

/// `l^p` norm of the sampled STFT; the `M^p` proxy. For `p = 2` this is
/// `sqrt(L) ||f||_2`.
pub fn modulation_norm_proxy(f: &[Complex64], p: NormOrder) -> Result<f64> {
    let v = sampled_stft(f)?;
    Ok(match p {
        NormOrder::One => v.iter().map(|z| z.norm()).sum(),
        NormOrder::Two => v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        NormOrder::Inf => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
    })
}
