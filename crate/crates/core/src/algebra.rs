//! The finite twisted-convolution algebra over a separable lattice.
//!
//! The product is fixed by requiring `pi(a) pi(b) = pi(a # b)` under the
//! `pi(x, xi) = M_xi T_x` ordering, which gives
//!
//! ```text
//! (a # b)(nu) = sum_lambda a(lambda) b(nu - lambda) exp(-2 pi i lambda.x (nu - lambda).xi / L)
//! ```
//!
//! Involution: `a*(mu) = conj(a(-mu)) exp(-2 pi i mu.x mu.xi / L)`, so that
//! `pi(a*) = pi(a)^H`.

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::lattice::SeparableLattice;
use crate::linalg::{null_space, singular_values, CMatrix, CVector, Tolerance};
use crate::ops::{synthesis_map, synthesis_matrix, LatticeSequence, TwistedSequence, Window};

/// Phase `exp(-2 pi i lambda.x mu.xi / L)` for two lattice indices.
#[inline]
fn cocycle(lattice: &SeparableLattice, lambda: usize, mu: usize) -> Complex64 {
    let model = lattice.model();
    let p = lattice.point(lambda);
    let q = lattice.point(mu);
    model.root(-(model.mul_mod(p.x, q.xi) as i64))
}

pub fn twisted_convolve(a: &TwistedSequence, b: &TwistedSequence) -> Result<TwistedSequence> {
    if a.lattice() != b.lattice() {
        return Err(GaborError::LatticeMismatch);
    }
    let lat = *a.lattice();
    let n = lat.cardinality();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; n];
    for (lam, &av) in a.values().iter().enumerate() {
        if av == zero {
            continue;
        }
        for (rest, &bv) in b.values().iter().enumerate() {
            if bv == zero {
                continue;
            }
            let nu = lat.index_sum(lam, rest);
            out[nu] += av * bv * cocycle(&lat, lam, rest);
        }
    }
    LatticeSequence::new(lat, out)
}

/// `pi(c) = sum_lambda c_lambda pi(lambda)` as an `L x L` matrix.
pub fn represent(c: &TwistedSequence) -> CMatrix {
    let lat = c.lattice();
    let model = lat.model();
    let n = model.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &w) in c.values().iter().enumerate() {
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let p = lat.point(i);
        for t in 0..n {
            let src = (t + n - p.x) % n;
            m[(t, src)] += w * model.root(model.mul_mod(p.xi, t) as i64);
        }
    }
    m
}

/// Algebra involution; `represent(&adjoint_sequence(a)) == represent(a)^H`.
pub fn adjoint_sequence(a: &TwistedSequence) -> TwistedSequence {
    let lat = *a.lattice();
    let model = *lat.model();
    let values = (0..lat.cardinality())
        .map(|mu| {
            let p = lat.point(mu);
            let phase = model.root(-(model.mul_mod(p.x, p.xi) as i64));
            a.values()[lat.index_neg(mu)].conj() * phase
        })
        .collect();
    LatticeSequence::new(lat, values).expect("same lattice")
}

/// Matrix of `c -> c # a` on the `n`-dimensional sequence space.
pub fn right_multiplication_matrix(a: &TwistedSequence) -> CMatrix {
    let lat = *a.lattice();
    let n = lat.cardinality();
    let mut m = CMatrix::zeros(n, n);
    // (c # a)(nu) = sum_mu c(mu) a(nu - mu) phase(mu, nu - mu)
    for mu in 0..n {
        for (rest, &av) in a.values().iter().enumerate() {
            let nu = lat.index_sum(mu, rest);
            m[(nu, mu)] += av * cocycle(&lat, mu, rest);
        }
    }
    m
}

/// Matrix of `c -> a # c`.
pub fn left_multiplication_matrix(a: &TwistedSequence) -> CMatrix {
    let lat = *a.lattice();
    let n = lat.cardinality();
    let mut m = CMatrix::zeros(n, n);
    for (lam, &av) in a.values().iter().enumerate() {
        for mu in 0..n {
            let nu = lat.index_sum(lam, mu);
            m[(nu, mu)] += av * cocycle(&lat, lam, mu);
        }
    }
    m
}

/// Janssen coefficients `a_mu = s(Lambda)^-1 <g, pi(mu) g>` on the adjoint
/// lattice; `represent` of the result is the frame operator `S_{g, Lambda}`.
pub fn janssen_coefficients(g: &Window, lattice: &SeparableLattice) -> Result<TwistedSequence> {
    let adj = lattice.adjoint();
    let scale = 1.0 / lattice.covolume();
    let mut a = crate::ops::ambiguity_sequence(g, &adj)?;
    a.values_mut().iter_mut().for_each(|z| *z *= scale);
    Ok(a)
}

/// Inverse in the twisted-convolution algebra: `b` with `b # a = delta`,
/// solved on the sequence space. Fails when the right-multiplication
/// operator has `sigma_min <= tau * sigma_max`, with
/// `tau = scale * max(n, n°, L) * eps`.
pub fn twisted_invert(a: &TwistedSequence, tol: &Tolerance) -> Result<TwistedSequence> {
    let lat = *a.lattice();
    let n = lat.cardinality();
    let m = right_multiplication_matrix(a);
    let sv = singular_values(&m);
    let smax = sv.first().copied().unwrap_or(0.0);
    let smin = sv.last().copied().unwrap_or(0.0);
    let tau = tol.threshold(lat.system_dim());
    if smax == 0.0 || smin <= tau * smax {
        return Err(GaborError::SingularAlgebra {
            sigma_min: smin,
            tolerance: tau * smax,
        });
    }
    let mut rhs = CVector::zeros(n);
    rhs[0] = Complex64::new(1.0, 0.0);
    let sol = m.lu().solve(&rhs).ok_or(GaborError::SingularAlgebra {
        sigma_min: smin,
        tolerance: tau * smax,
    })?;
    LatticeSequence::new(lat, sol.as_slice().to_vec())
}

/// Orthonormal basis of `ker D_{g, lattice}`; pass the adjoint lattice to
/// obtain the kernel that decides the frame property of `G(g, Lambda)`.
pub fn kernel_basis(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<Vec<TwistedSequence>> {
    let d = synthesis_matrix(g, lattice)?;
    let tau = tol.threshold(lattice.system_dim());
    null_space(&d, tau)
        .into_iter()
        .map(|v| LatticeSequence::new(*lattice, v))
        .collect()
}

/// Orthogonal projection of `c` onto the span of an orthonormal basis.
pub fn project_onto(basis: &[TwistedSequence], c: &TwistedSequence) -> TwistedSequence {
    let mut out = LatticeSequence::zeros(*c.lattice());
    for e in basis {
        let coef = crate::linalg::inner(c.values(), e.values());
        for (o, v) in out.values_mut().iter_mut().zip(e.values()) {
            *o += coef * v;
        }
    }
    out
}

/// The character `e(k, l) = exp(2 pi i (p k / T + q l / F))` on the lattice grid.
pub fn character(lattice: &SeparableLattice, p: usize, q: usize) -> TwistedSequence {
    let (tc, fc) = (lattice.time_count(), lattice.freq_count());
    LatticeSequence::from_fn(*lattice, |k, l| {
        crate::lattice::root_of_unity((p * k) % tc, tc)
            * crate::lattice::root_of_unity((q * l) % fc, fc)
    })
}

/// Result of the commutative index computation.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutativeIndex {
    pub index: usize,
    /// Grid frequencies `(p, q)` of the characters found in the kernel.
    pub characters: Vec<(usize, usize)>,
}

/// Number of characters lying in `ker D_{g, lattice}`. Requires all shifts
/// of `lattice` to commute; the kernel is then translation-invariant and
/// the count is zero exactly when the kernel is trivial.
pub fn index_commutative(
    g: &Window,
    lattice: &SeparableLattice,
    tol: &Tolerance,
) -> Result<CommutativeIndex> {
    if !lattice.is_commutative() {
        let model = lattice.model();
        let deviation = (model
            .root(-(model.mul_mod(lattice.time_step(), lattice.freq_step()) as i64))
            - Complex64::new(1.0, 0.0))
        .norm();
        return Err(GaborError::NonCommutative { deviation });
    }
    let smax = singular_values(&synthesis_matrix(g, lattice)?)
        .first()
        .copied()
        .unwrap_or(0.0);
    let tau = tol.threshold(lattice.system_dim());
    let mut characters = Vec::new();
    for p in 0..lattice.time_count() {
        for q in 0..lattice.freq_count() {
            let e = character(lattice, p, q);
            let de = synthesis_map(g, lattice, &e)?;
            let ratio = crate::linalg::norm2(&de) / (e.norm2() * smax);
            if smax == 0.0 || ratio * ratio <= tau {
                characters.push((p, q));
            }
        }
    }
    Ok(CommutativeIndex {
        index: characters.len(),
        characters,
    })
}
