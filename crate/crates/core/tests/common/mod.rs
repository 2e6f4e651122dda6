#![allow(dead_code)]

use gabor_core::ops::LatticeSequence;
use gabor_core::{FiniteModel, SeparableLattice, Window};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn unit_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let v = random_vec(rng, len);
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_window(rng: &mut ChaCha8Rng, len: usize) -> Window {
    Window::new(random_vec(rng, len), "random").unwrap()
}

pub fn random_sequence(rng: &mut ChaCha8Rng, lattice: SeparableLattice) -> LatticeSequence {
    let v = random_vec(rng, lattice.cardinality());
    LatticeSequence::new(lattice, v).unwrap()
}

pub fn lattice(len: usize, a: usize, b: usize) -> SeparableLattice {
    SeparableLattice::new(FiniteModel::new(len).unwrap(), a, b).unwrap()
}

pub fn dist(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(p, q)| (p - q).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn frob(m: &gabor_core::linalg::CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
