//! Windows, lattice-indexed sequences, and the four Gabor operators:
//! coefficient map `C`, synthesis map `D`, frame operator `S = DC` and
//! Gramian `G = CD`.
//!
//! `C` and `D` are applied matrix-free with FFTs; the explicit matrices are
//! built for spectral work at moderate `L`.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{GaborError, Result};
use crate::lattice::{tf_shift, FiniteModel, SeparableLattice};
use crate::linalg::{inner, norm2, singular_values, CMatrix};

/// Largest `L` for which explicit `L x L` matrices are built.
pub const MAX_EXPLICIT_LEN: usize = 4096;
/// Largest number of entries in any explicit operator matrix.
pub const MAX_EXPLICIT_ENTRIES: usize = 1 << 24;

/// A unit-norm analysis/synthesis window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Window {
    samples: Vec<Complex64>,
    label: String,
    original_norm: f64,
}

impl Window {
    /// Normalize `samples` to unit `l2` norm, recording the norm it had.
    /// Samples that are already unit-norm to within a few ulps are kept
    /// bit-for-bit.
    pub fn new(samples: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        let norm = norm2(&samples);
        if norm == 0.0 || !norm.is_finite() {
            return Err(GaborError::ZeroWindow);
        }
        let samples = if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            samples
        } else {
            samples.into_iter().map(|z| z / norm).collect()
        };
        Ok(Self {
            samples,
            label: label.into(),
            original_norm: norm,
        })
    }

    pub fn from_real(samples: &[f64], label: impl Into<String>) -> Result<Self> {
        Self::new(
            samples.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            label,
        )
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn original_norm(&self) -> f64 {
        self.original_norm
    }
}

/// A complex array indexed by the points of a separable lattice.
///
/// Serves both as a coefficient sequence `(c_lambda)` and as an element of
/// the twisted-convolution algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSequence {
    lattice: SeparableLattice,
    values: Vec<Complex64>,
}

pub type LatticeCoefficients = LatticeSequence;
pub type TwistedSequence = LatticeSequence;

impl LatticeSequence {
    pub fn new(lattice: SeparableLattice, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != lattice.cardinality() {
            return Err(GaborError::Shape {
                expected: lattice.cardinality(),
                actual: values.len(),
            });
        }
        Ok(Self { lattice, values })
    }

    pub fn zeros(lattice: SeparableLattice) -> Self {
        Self {
            lattice,
            values: vec![Complex64::new(0.0, 0.0); lattice.cardinality()],
        }
    }

    /// The algebra unit: 1 at the origin, 0 elsewhere.
    pub fn delta(lattice: SeparableLattice) -> Self {
        Self::point_mass(lattice, 0, Complex64::new(1.0, 0.0))
    }

    pub fn point_mass(lattice: SeparableLattice, index: usize, weight: Complex64) -> Self {
        let mut s = Self::zeros(lattice);
        s.values[index] = weight;
        s
    }

    pub fn from_fn(lattice: SeparableLattice, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let values = (0..lattice.cardinality())
            .map(|i| {
                let (k, l) = lattice.grid_position(i);
                f(k, l)
            })
            .collect();
        Self { lattice, values }
    }

    pub fn lattice(&self) -> &SeparableLattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.values[self.lattice.flat_index(k, l)]
    }

    pub fn norm1(&self) -> f64 {
        crate::linalg::norm1(&self.values)
    }

    pub fn norm2(&self) -> f64 {
        norm2(&self.values)
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn check_window(model: &FiniteModel, g: &Window) -> Result<()> {
    model.check_len(g.len())
}

fn check_explicit(rows: usize, cols: usize, len: usize) -> Result<()> {
    if len > MAX_EXPLICIT_LEN || rows.saturating_mul(cols) > MAX_EXPLICIT_ENTRIES {
        return Err(GaborError::MatrixTooLarge { rows, cols });
    }
    Ok(())
}

/// `(Cf)(lambda) = <f, pi(lambda) g>` for every lattice point.
pub fn coefficient_map(
    g: &Window,
    lattice: &SeparableLattice,
    f: &[Complex64],
) -> Result<LatticeCoefficients> {
    let model = lattice.model();
    check_window(model, g)?;
    model.check_len(f.len())?;
    let n = model.len();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let (a, b) = (lattice.time_step(), lattice.freq_step());
    let gs = g.samples();
    let mut values = Vec::with_capacity(lattice.cardinality());
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..lattice.time_count() {
        let shift = k * a;
        for (t, slot) in buf.iter_mut().enumerate() {
            *slot = f[t] * gs[(t + n - shift) % n].conj();
        }
        fft.process(&mut buf);
        values.extend((0..lattice.freq_count()).map(|l| buf[l * b]));
    }
    LatticeSequence::new(*lattice, values)
}

/// `Dc = sum_lambda c_lambda pi(lambda) g`.
pub fn synthesis_map(
    g: &Window,
    lattice: &SeparableLattice,
    c: &LatticeCoefficients,
) -> Result<Vec<Complex64>> {
    let model = lattice.model();
    check_window(model, g)?;
    if c.lattice() != lattice {
        return Err(GaborError::LatticeMismatch);
    }
    let n = model.len();
    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    let (a, b) = (lattice.time_step(), lattice.freq_step());
    let gs = g.samples();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; n];
    let mut buf = vec![zero; n];
    for k in 0..lattice.time_count() {
        buf.iter_mut().for_each(|z| *z = zero);
        let mut any = false;
        for l in 0..lattice.freq_count() {
            let v = c.get(k, l);
            if v != zero {
                any = true;
            }
            buf[l * b] += v;
        }
        if !any {
            continue;
        }
        ifft.process(&mut buf);
        let shift = k * a;
        for (t, o) in out.iter_mut().enumerate() {
            *o += buf[t] * gs[(t + n - shift) % n];
        }
    }
    Ok(out)
}

/// `S f = D C f` without forming `S`.
pub fn frame_operator_apply(
    g: &Window,
    lattice: &SeparableLattice,
    f: &[Complex64],
) -> Result<Vec<Complex64>> {
    let c = coefficient_map(g, lattice, f)?;
    synthesis_map(g, lattice, &c)
}

/// `L x n` matrix whose columns are the atoms `pi(lambda) g`.
pub fn synthesis_matrix(g: &Window, lattice: &SeparableLattice) -> Result<CMatrix> {
    let model = lattice.model();
    check_window(model, g)?;
    let (rows, cols) = (model.len(), lattice.cardinality());
    check_explicit(rows, cols, rows)?;
    let atoms: Vec<Vec<Complex64>> = (0..cols)
        .into_par_iter()
        .map(|i| tf_shift(model, lattice.point(i), g.samples()).expect("length checked"))
        .collect();
    Ok(CMatrix::from_fn(rows, cols, |t, i| atoms[i][t]))
}

/// `n x L` matrix of `C`; the conjugate transpose of [`synthesis_matrix`].
pub fn coefficient_matrix(g: &Window, lattice: &SeparableLattice) -> Result<CMatrix> {
    Ok(synthesis_matrix(g, lattice)?.adjoint())
}

pub fn frame_operator_matrix(g: &Window, lattice: &SeparableLattice) -> Result<CMatrix> {
    let d = synthesis_matrix(g, lattice)?;
    Ok(&d * d.adjoint())
}

/// `G[lambda, lambda'] = <pi(lambda') g, pi(lambda) g>`.
pub fn gramian_matrix(g: &Window, lattice: &SeparableLattice) -> Result<CMatrix> {
    let d = synthesis_matrix(g, lattice)?;
    Ok(d.adjoint() * &d)
}

/// `sum_j S_{g_j, Lambda}`.
pub fn multiwindow_frame_operator(
    windows: &[Window],
    lattice: &SeparableLattice,
) -> Result<CMatrix> {
    let (first, rest) = windows.split_first().ok_or(GaborError::EmptyWindowList)?;
    let mut s = frame_operator_matrix(first, lattice)?;
    for g in rest {
        s += frame_operator_matrix(g, lattice)?;
    }
    Ok(s)
}

/// `a_lambda = <g, pi(lambda) g>` over the lattice.
pub fn ambiguity_sequence(g: &Window, lattice: &SeparableLattice) -> Result<LatticeSequence> {
    coefficient_map(g, lattice, g.samples())
}

/// Measured operator norms of `C`, `D`, `S` and `G` for one system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorNorms {
    pub coefficient: f64,
    pub synthesis: f64,
    pub frame: f64,
    pub gramian: f64,
    /// `sum_lambda |<g, pi(lambda) g>|`.
    pub ambiguity_l1: f64,
}

pub fn operator_norms(g: &Window, lattice: &SeparableLattice) -> Result<OperatorNorms> {
    let d = synthesis_matrix(g, lattice)?;
    let c = d.adjoint();
    let s = &d * &c;
    let gm = &c * &d;
    let top = |m: &CMatrix| singular_values(m).first().copied().unwrap_or(0.0);
    Ok(OperatorNorms {
        coefficient: top(&c),
        synthesis: top(&d),
        frame: top(&s),
        gramian: top(&gm),
        ambiguity_l1: ambiguity_sequence(g, lattice)?.norm1(),
    })
}

/// `<C f, c>` in `l2` of the lattice.
pub fn sequence_inner(a: &LatticeSequence, b: &LatticeSequence) -> Complex64 {
    inner(a.values(), b.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteModel;
    use crate::linalg::{hermitian_eigenvalues, max_abs_diff};

    fn delta(n: usize, at: usize) -> Window {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[at] = Complex64::new(1.0, 0.0);
        Window::new(v, "delta").unwrap()
    }

    fn lattice(n: usize, a: usize, b: usize) -> SeparableLattice {
        SeparableLattice::new(FiniteModel::new(n).unwrap(), a, b).unwrap()
    }

    #[test]
    fn window_normalizes_and_records() {
        let w = Window::from_real(&[3.0, 4.0], "x").unwrap();
        assert_eq!(w.original_norm(), 5.0);
        assert!((norm2(w.samples()) - 1.0).abs() < 1e-15);
        assert_eq!(
            Window::from_real(&[0.0, 0.0], "z"),
            Err(GaborError::ZeroWindow)
        );
    }

    #[test]
    fn delta_coefficients_on_full_lattice() {
        let lat = lattice(6, 1, 1);
        let g = delta(6, 0);
        let c = coefficient_map(&g, &lat, g.samples()).unwrap();
        for k in 0..6 {
            for l in 0..6 {
                let expect = if k == 0 { 1.0 } else { 0.0 };
                assert!((c.get(k, l) - Complex64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_signal_gives_zero_coefficients() {
        let lat = lattice(8, 2, 2);
        let g = delta(8, 3);
        let c = coefficient_map(&g, &lat, &[Complex64::new(0.0, 0.0); 8]).unwrap();
        assert!(c.values().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn synthesis_of_unit_returns_window() {
        let lat = lattice(8, 2, 4);
        let g = Window::from_real(&[1.0, 2.0, 0.5, 0.0, -1.0, 0.0, 0.25, 3.0], "w").unwrap();
        let out = synthesis_map(&g, &lat, &LatticeSequence::delta(lat)).unwrap();
        for (x, y) in out.iter().zip(g.samples()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn shape_errors() {
        let lat = lattice(8, 2, 2);
        let g = delta(8, 0);
        assert!(matches!(
            coefficient_map(&g, &lat, &[Complex64::new(0.0, 0.0); 7]),
            Err(GaborError::Shape { .. })
        ));
        assert!(LatticeSequence::new(lat, vec![Complex64::new(0.0, 0.0); 3]).is_err());
        let other = lattice(8, 4, 2);
        assert_eq!(
            synthesis_map(&g, &lat, &LatticeSequence::delta(other)),
            Err(GaborError::LatticeMismatch)
        );
    }

    #[test]
    fn full_lattice_frame_operator_is_scaled_identity() {
        let n = 6;
        let lat = lattice(n, 1, 1);
        let g = Window::from_real(&[0.3, -1.0, 2.0, 0.1, 0.0, 0.7], "w").unwrap();
        let s = frame_operator_matrix(&g, &lat).unwrap();
        // Brute force: sum of rank-one projections onto every atom.
        let mut brute = CMatrix::zeros(n, n);
        for p in lat.points() {
            let atom = tf_shift(lat.model(), p, g.samples()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    brute[(i, j)] += atom[i] * atom[j].conj();
                }
            }
        }
        assert!(max_abs_diff(&s, &brute) < 1e-13);
        let scaled_id = CMatrix::identity(n, n) * Complex64::new(n as f64, 0.0);
        assert!(max_abs_diff(&s, &scaled_id) < 1e-13);
    }

    #[test]
    fn delta_translates_are_orthonormal() {
        let n = 8;
        let lat = lattice(n, 1, n);
        let g = delta(n, 0);
        let id = CMatrix::identity(n, n);
        assert!(max_abs_diff(&frame_operator_matrix(&g, &lat).unwrap(), &id) < 1e-15);
        assert!(max_abs_diff(&gramian_matrix(&g, &lat).unwrap(), &id) < 1e-15);
    }

    #[test]
    fn multiwindow_cases() {
        let n = 8;
        let lat = lattice(n, 2, n);
        let s = multiwindow_frame_operator(&[delta(n, 0), delta(n, 1)], &lat).unwrap();
        assert!(max_abs_diff(&s, &CMatrix::identity(n, n)) < 1e-15);

        let g = Window::from_real(&[1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5], "w").unwrap();
        let lat = lattice(n, 2, 2);
        let single = frame_operator_matrix(&g, &lat).unwrap();
        assert_eq!(
            multiwindow_frame_operator(std::slice::from_ref(&g), &lat).unwrap(),
            single
        );
        let double = multiwindow_frame_operator(&[g.clone(), g], &lat).unwrap();
        assert!(max_abs_diff(&double, &(single * Complex64::new(2.0, 0.0))) < 1e-14);
        assert_eq!(
            multiwindow_frame_operator(&[], &lat),
            Err(GaborError::EmptyWindowList)
        );
    }

    #[test]
    fn frame_operator_is_hermitian_psd() {
        let lat = lattice(12, 3, 2);
        let g = Window::from_real(
            &[
                0.1, 0.9, -0.4, 0.3, 0.0, 1.2, 0.5, -0.2, 0.7, 0.0, 0.05, 0.3,
            ],
            "w",
        )
        .unwrap();
        let s = frame_operator_matrix(&g, &lat).unwrap();
        assert!(max_abs_diff(&s, &s.adjoint()) < 1e-14);
        assert!(hermitian_eigenvalues(&s)[0] >= -1e-12);
        let gm = gramian_matrix(&g, &lat).unwrap();
        for i in 0..gm.nrows() {
            assert!((gm[(i, i)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn explicit_matrix_guard() {
        let big = FiniteModel::new(MAX_EXPLICIT_LEN * 2).unwrap();
        let lat = SeparableLattice::new(big, 1, 1).unwrap();
        let g = Window::new(vec![Complex64::new(1.0, 0.0); big.len()], "flat").unwrap();
        assert!(matches!(
            synthesis_matrix(&g, &lat),
            Err(GaborError::MatrixTooLarge { .. })
        ));
    }
}
