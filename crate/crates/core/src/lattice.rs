//! Cyclic time-frequency plane `Z_L x Z_L`, time-frequency shifts and
//! separable lattices.
//!
//! The shift convention is `pi(x, xi) = M_xi T_x`, i.e.
//! `(pi(x, xi) f)(t) = exp(2 pi i xi t / L) f(t - x)`. With this ordering
//!
//! ```text
//! pi(lambda) pi(mu) = exp(-2 pi i lambda.x mu.xi / L) pi(lambda + mu)
//! ```
//!
//! and every other phase in the crate is derived from this identity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{GaborError, Result};
use crate::linalg::CMatrix;

/// The ambient signal space `C^L` over the cyclic group `Z_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteModel {
    len: usize,
}

// Lengths are at least 2, so there is no empty model.
#[allow(clippy::len_without_is_empty)]
impl FiniteModel {
    pub fn new(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(GaborError::InvalidLength(len));
        }
        Ok(Self { len })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Reduce an arbitrary integer to a residue in `[0, L)`.
    #[inline]
    pub fn reduce(&self, value: i64) -> usize {
        value.rem_euclid(self.len as i64) as usize
    }

    /// `exp(2 pi i e / L)`, with `e` reduced mod `L` before evaluation.
    #[inline]
    pub fn root(&self, exponent: i64) -> Complex64 {
        let e = self.reduce(exponent);
        root_of_unity(e, self.len)
    }

    /// `(x * y) mod L` without overflow for any `L` that fits in memory.
    #[inline]
    pub fn mul_mod(&self, x: usize, y: usize) -> usize {
        ((x as u128 * y as u128) % self.len as u128) as usize
    }

    pub(crate) fn check_len(&self, actual: usize) -> Result<()> {
        if actual != self.len {
            return Err(GaborError::Shape {
                expected: self.len,
                actual,
            });
        }
        Ok(())
    }
}

/// `exp(2 pi i e / n)` for `0 <= e < n`, evaluated through the smallest
/// equivalent angle so that conjugate pairs come out exactly conjugate.
pub(crate) fn root_of_unity(e: usize, n: usize) -> Complex64 {
    let e = e % n;
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * e > n {
        return root_of_unity(n - e, n).conj();
    }
    if 4 * e == n {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * e == n {
        return Complex64::new(-1.0, 0.0);
    }
    let theta = 2.0 * PI * e as f64 / n as f64;
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// A point `(x, xi)` of the time-frequency plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: usize,
    pub xi: usize,
}

impl PhasePoint {
    pub fn new(model: &FiniteModel, x: i64, xi: i64) -> Self {
        Self {
            x: model.reduce(x),
            xi: model.reduce(xi),
        }
    }

    pub const ORIGIN: PhasePoint = PhasePoint { x: 0, xi: 0 };

    pub fn add(self, other: PhasePoint, model: &FiniteModel) -> PhasePoint {
        PhasePoint {
            x: (self.x + other.x) % model.len(),
            xi: (self.xi + other.xi) % model.len(),
        }
    }

    pub fn neg(self, model: &FiniteModel) -> PhasePoint {
        PhasePoint {
            x: (model.len() - self.x) % model.len(),
            xi: (model.len() - self.xi) % model.len(),
        }
    }
}

/// Apply `pi(z) = M_xi T_x` to `f`.
pub fn tf_shift(model: &FiniteModel, z: PhasePoint, f: &[Complex64]) -> Result<Vec<Complex64>> {
    model.check_len(f.len())?;
    let n = model.len();
    Ok((0..n)
        .map(|t| {
            let src = (t + n - z.x % n) % n;
            model.root(model.mul_mod(z.xi, t) as i64) * f[src]
        })
        .collect())
}

/// Phase and sum such that `pi(lambda) pi(mu) = phase * pi(lambda + mu)`.
pub fn compose_shifts(
    model: &FiniteModel,
    lambda: PhasePoint,
    mu: PhasePoint,
) -> (Complex64, PhasePoint) {
    let phase = model.root(-(model.mul_mod(lambda.x, mu.xi) as i64));
    (phase, lambda.add(mu, model))
}

/// Explicit `L x L` matrix of `pi(z)`.
pub fn tf_shift_matrix(model: &FiniteModel, z: PhasePoint) -> CMatrix {
    let n = model.len();
    let mut m = CMatrix::zeros(n, n);
    for t in 0..n {
        let src = (t + n - z.x % n) % n;
        m[(t, src)] = model.root(model.mul_mod(z.xi, t) as i64);
    }
    m
}

/// The separable lattice `aZ_L x bZ_L` with `a | L` and `b | L`.
///
/// Points are enumerated on a `(L/a) x (L/b)` grid; grid position `(k, l)`
/// is the phase point `(k a, l b)` and has flat index `k * (L/b) + l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeparableLattice {
    model: FiniteModel,
    a: usize,
    b: usize,
}

#[allow(clippy::len_without_is_empty)]
impl SeparableLattice {
    pub fn new(model: FiniteModel, a: usize, b: usize) -> Result<Self> {
        let len = model.len();
        if a == 0 || !len.is_multiple_of(a) {
            return Err(GaborError::NotADivisor {
                field: "a",
                value: a,
                length: len,
            });
        }
        if b == 0 || !len.is_multiple_of(b) {
            return Err(GaborError::NotADivisor {
                field: "b",
                value: b,
                length: len,
            });
        }
        Ok(Self { model, a, b })
    }

    pub fn model(&self) -> &FiniteModel {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.model.len()
    }

    pub fn time_step(&self) -> usize {
        self.a
    }

    pub fn freq_step(&self) -> usize {
        self.b
    }

    /// Number of distinct time positions, `L/a`.
    pub fn time_count(&self) -> usize {
        self.model.len() / self.a
    }

    /// Number of distinct frequency positions, `L/b`.
    pub fn freq_count(&self) -> usize {
        self.model.len() / self.b
    }

    /// `n = L^2 / (ab)`.
    pub fn cardinality(&self) -> usize {
        self.time_count() * self.freq_count()
    }

    /// `s(Lambda) = ab / L`.
    pub fn covolume(&self) -> f64 {
        (self.a * self.b) as f64 / self.model.len() as f64
    }

    /// `L / (ab)`.
    pub fn redundancy(&self) -> f64 {
        self.model.len() as f64 / (self.a * self.b) as f64
    }

    #[inline]
    pub fn flat_index(&self, k: usize, l: usize) -> usize {
        (k % self.time_count()) * self.freq_count() + (l % self.freq_count())
    }

    #[inline]
    pub fn grid_position(&self, index: usize) -> (usize, usize) {
        (index / self.freq_count(), index % self.freq_count())
    }

    #[inline]
    pub fn point(&self, index: usize) -> PhasePoint {
        let (k, l) = self.grid_position(index);
        PhasePoint {
            x: k * self.a,
            xi: l * self.b,
        }
    }

    /// All lattice points in flat-index order.
    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        (0..self.cardinality()).map(move |i| self.point(i))
    }

    pub fn index_of(&self, p: PhasePoint) -> Option<usize> {
        let n = self.model.len();
        let (x, xi) = (p.x % n, p.xi % n);
        if x % self.a != 0 || xi % self.b != 0 {
            return None;
        }
        Some(self.flat_index(x / self.a, xi / self.b))
    }

    pub fn contains(&self, p: PhasePoint) -> bool {
        self.index_of(p).is_some()
    }

    /// Flat index of `p - q` for two lattice indices.
    #[inline]
    pub fn index_difference(&self, p: usize, q: usize) -> usize {
        let (k1, l1) = self.grid_position(p);
        let (k2, l2) = self.grid_position(q);
        let (tk, fl) = (self.time_count(), self.freq_count());
        self.flat_index((k1 + tk - k2) % tk, (l1 + fl - l2) % fl)
    }

    /// Flat index of `p + q`.
    #[inline]
    pub fn index_sum(&self, p: usize, q: usize) -> usize {
        let (k1, l1) = self.grid_position(p);
        let (k2, l2) = self.grid_position(q);
        self.flat_index(k1 + k2, l1 + l2)
    }

    /// Flat index of `-p`.
    #[inline]
    pub fn index_neg(&self, p: usize) -> usize {
        let (k, l) = self.grid_position(p);
        let (tk, fl) = (self.time_count(), self.freq_count());
        self.flat_index((tk - k) % tk, (fl - l) % fl)
    }

    /// The adjoint lattice `(L/b)Z_L x (L/a)Z_L`.
    pub fn adjoint(&self) -> SeparableLattice {
        let n = self.model.len();
        SeparableLattice {
            model: self.model,
            a: n / self.b,
            b: n / self.a,
        }
    }

    /// `max(n, n°, L)`: the dimension entering the shared rank tolerance for
    /// any computation on this lattice or its adjoint.
    pub fn system_dim(&self) -> usize {
        let n = self.model.len();
        self.cardinality().max((self.a * self.b).max(n))
    }

    /// True when all shifts of this lattice commute with one another,
    /// i.e. every composition phase `exp(-2 pi i x xi' / L)` is trivial.
    pub fn is_commutative(&self) -> bool {
        self.model.mul_mod(self.a, self.b) == 0
    }
}

/// Free-function form of [`SeparableLattice::adjoint`].
pub fn adjoint_lattice(lattice: &SeparableLattice) -> SeparableLattice {
    lattice.adjoint()
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}
