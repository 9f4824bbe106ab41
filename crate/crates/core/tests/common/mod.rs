#![allow(dead_code)]

use densimat::grid::UniformGrid1D;
use densimat::schrodinger::WaveFunction1D;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random smooth, localized wavefunction: a Gaussian envelope times a low-order
/// complex polynomial and a random carrier.
pub fn random_smooth_psi(grid: UniformGrid1D, seed: u64) -> WaveFunction1D {
    let mut r = rng(seed);
    let center: f64 = r.gen_range(-1.5..1.5);
    let width: f64 = r.gen_range(0.6..1.0);
    let k: f64 = r.gen_range(-2.0..2.0);
    let coeffs: Vec<Complex64> = (0..4).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    WaveFunction1D::from_fn(grid, 1.0, 1.0, |x| {
        let u = x - center;
        let poly: Complex64 = coeffs.iter().enumerate().map(|(m, c)| c * u.powi(m as i32) * 0.6f64.powi(m as i32)).sum();
        poly * (-(u * u) / (2.0 * width * width)).exp() * Complex64::from_polar(1.0, k * x)
    })
    .unwrap()
    .normalized()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
