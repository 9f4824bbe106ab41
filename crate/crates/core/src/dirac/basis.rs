//! Standard (Dirac) representation of the Clifford algebra.

use std::sync::OnceLock;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

pub type Mat4 = Matrix4<Complex64>;
pub type Spinor = Vector4<Complex64>;

const O: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct DiracBasis {
    pub beta: Mat4,
    pub alpha: [Mat4; 3],
    /// `γ⁰ = β`, `γ^k = β α_k`.
    pub gamma: [Mat4; 4],
    /// `Σ_k = diag(σ_k, σ_k)`.
    pub sigma: [Mat4; 3],
    pub gamma2: Mat4,
}

pub fn pauli() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(O, ONE, ONE, O),
        Matrix2::new(O, -I, I, O),
        Matrix2::new(ONE, O, O, -ONE),
    ]
}

fn blocks(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>, c: &Matrix2<Complex64>, d: &Matrix2<Complex64>) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

fn build() -> DiracBasis {
    let id = Matrix2::<Complex64>::identity();
    let z = Matrix2::<Complex64>::zeros();
    let s = pauli();
    let beta = blocks(&id, &z, &z, &(-id));
    let alpha = [0, 1, 2].map(|k| blocks(&z, &s[k], &s[k], &z));
    let gamma = [beta, beta * alpha[0], beta * alpha[1], beta * alpha[2]];
    let sigma = [0, 1, 2].map(|k| blocks(&s[k], &z, &z, &s[k]));
    DiracBasis { beta, alpha, gamma, sigma, gamma2: gamma[2] }
}

pub fn dirac_basis() -> &'static DiracBasis {
    static BASIS: OnceLock<DiracBasis> = OnceLock::new();
    BASIS.get_or_init(build)
}

/// Largest entry modulus, the matrix norm used throughout.
pub fn max_entry(m: &Mat4) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `Σ_k a_k α_k`.
pub fn alpha_dot(a: [f64; 3]) -> Mat4 {
    let b = dirac_basis();
    b.alpha[0] * Complex64::from(a[0]) + b.alpha[1] * Complex64::from(a[1]) + b.alpha[2] * Complex64::from(a[2])
}

/// `exp(−i t (a·α + b β))` in closed form; the exponent squares to `(|a|² + b²) I`.
pub fn mode_exp(a: [f64; 3], b: f64, t: f64) -> Mat4 {
    let lam = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + b * b).sqrt();
    if lam == 0.0 {
        return Mat4::identity();
    }
    let gen = alpha_dot(a) + dirac_basis().beta * Complex64::from(b);
    let (s, c) = (lam * t).sin_cos();
    Mat4::identity() * Complex64::from(c) - gen * Complex64::new(0.0, s / lam)
}
