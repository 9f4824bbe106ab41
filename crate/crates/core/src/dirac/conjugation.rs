//! Charge conjugation `φ'(x, y) = +γ² φᵀ(y, x) γ²`.
//!
//! The lift of `γ²ψ*` is `−γ² φᵀ(y, x) γ²`; the extra sign is what flips the charge.

use super::basis::{dirac_basis, Mat4, Spinor};
use super::field::{FieldKind, MatrixField, SpinorField};
use super::observables::SliceData;

pub fn conjugate_matrix(m: &Mat4) -> Mat4 {
    let g2 = dirac_basis().gamma2;
    g2 * m.transpose() * g2
}

/// For x_D-independent fields the argument swap is trivial.
pub fn charge_conjugate(field: &MatrixField) -> MatrixField {
    let mut out = field.map(conjugate_matrix);
    if let FieldKind::Rest(k) = field.kind() {
        out = MatrixField::new(out.lattice().clone(), out.samples().to_vec(), out.mass(), FieldKind::Rest(k.conjugate())).expect("same lattice");
    }
    out
}

/// The swap `x ↔ y` reverses `x_D`, so slice gradients change sign.
pub fn charge_conjugate_slice(slice: &SliceData) -> SliceData {
    SliceData {
        lattice: slice.lattice.clone(),
        mass: slice.mass,
        value: slice.value.iter().map(conjugate_matrix).collect(),
        d_grad: [0, 1, 2].map(|k| slice.d_grad[k].iter().map(|m| -conjugate_matrix(m)).collect()),
    }
}

/// Spinor charge conjugation `ψ' = γ² ψ*`.
pub fn conjugate_spinor(psi: &SpinorField) -> SpinorField {
    let g2 = dirac_basis().gamma2;
    let s: Vec<Spinor> = psi.samples().iter().map(|v| g2 * v.conjugate()).collect();
    SpinorField::new(psi.lattice().clone(), s).expect("same lattice")
}
