//! Continuous Lorentz transformations in the spinor and tensor
//! representations, plus the covariance check tying the two together.

use nalgebra::Matrix4;
use thiserror::Error;

use crate::algebra::{c, ComplexScalar, Mat2, Mat4, PAULI, TENSOR_INDEX_PAIRS, ZERO};
use crate::decompose::{decompose_pair, Spinor4, TensorSet};

/// Failure modes of transformation constructors.
#[derive(Debug, Error)]
pub enum LorentzError {
    #[error("axis must be a unit 3-vector, got norm {norm}")]
    NonUnitAxis { norm: f64 },
}

/// One proper orthochronous transformation in all representations used here.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzElement {
    /// Unit-determinant 2×2 action on undotted 2-spinors.
    pub sl2c: Mat2,
    /// Induced real 4×4 action Λ^a_b on vector indices.
    pub induced: Matrix4<f64>,
    /// Block-diagonal diag(S, (S†)⁻¹) action on 4-spinors.
    pub spinor4_rep: Mat4,
}

/// Inverse of a unit-determinant 2×2 matrix (its adjugate).
fn adjugate(m: &Mat2) -> Mat2 {
    Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

impl LorentzElement {
    /// Derives the vector and 4-spinor representations from an SL(2, C) matrix.
    pub fn from_sl2c(s: Mat2) -> Self {
        let p = &*PAULI;
        let s_dag = s.adjoint();
        let mut induced = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                let m = p.sigma_up[b] * s_dag * p.sigma_up[a] * s;
                let tr = m[(0, 0)] + m[(1, 1)];
                induced[(a, b)] = 0.5 * tr.re;
            }
        }
        let sdag_inv = adjugate(&s).adjoint();
        let mut spinor4_rep = Mat4::zeros();
        spinor4_rep.fixed_view_mut::<2, 2>(0, 0).copy_from(&s);
        spinor4_rep.fixed_view_mut::<2, 2>(2, 2).copy_from(&sdag_inv);
        Self {
            sl2c: s,
            induced,
            spinor4_rep,
        }
    }

    pub fn identity() -> Self {
        Self::from_sl2c(Mat2::identity())
    }

    /// Group composition: the element acting as `self` after `first`.
    pub fn after(&self, first: &LorentzElement) -> Self {
        Self::from_sl2c(self.sl2c * first.sl2c)
    }
}

fn check_unit_axis(axis: [f64; 3]) -> Result<(), LorentzError> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(LorentzError::NonUnitAxis { norm });
    }
    Ok(())
}

/// axis·σ for a real 3-vector.
fn axis_dot_sigma(axis: [f64; 3]) -> Mat2 {
    let p = &*PAULI;
    p.sigma_up[1] * c(axis[0], 0.0) + p.sigma_up[2] * c(axis[1], 0.0) + p.sigma_up[3] * c(axis[2], 0.0)
}

/// Boost along a unit axis: S = cosh(χ/2)·I + sinh(χ/2)·axis·σ.
pub fn element_from_boost(axis: [f64; 3], rapidity: f64) -> Result<LorentzElement, LorentzError> {
    check_unit_axis(axis)?;
    let half = rapidity / 2.0;
    let s = Mat2::identity() * c(half.cosh(), 0.0) + axis_dot_sigma(axis) * c(half.sinh(), 0.0);
    Ok(LorentzElement::from_sl2c(s))
}

/// Rotation about a unit axis: S = cos(θ/2)·I − i·sin(θ/2)·axis·σ.
pub fn element_from_rotation(axis: [f64; 3], angle: f64) -> Result<LorentzElement, LorentzError> {
    check_unit_axis(axis)?;
    let half = angle / 2.0;
    let s = Mat2::identity() * c(half.cos(), 0.0) + axis_dot_sigma(axis) * c(0.0, -half.sin());
    Ok(LorentzElement::from_sl2c(s))
}

/// Applies the 4-spinor representation.
pub fn transform_spinor(g: &LorentzElement, phi: &Spinor4) -> Spinor4 {
    let v = phi.components();
    let mut out = [ZERO; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i] += g.spinor4_rep[(i, j)] * v[j];
        }
    }
    Spinor4::from_components(out)
}

fn apply_induced(g: &LorentzElement, v: &[ComplexScalar; 4]) -> [ComplexScalar; 4] {
    let mut out = [ZERO; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a] += v[b] * c(g.induced[(a, b)], 0.0);
        }
    }
    out
}

/// Transforms each tensor component in its own representation: scalar and
/// pseudoscalar unchanged, vectors by Λ, the antisymmetric tensor by Λ⊗Λ.
pub fn transform_tensorset(g: &LorentzElement, t: &TensorSet) -> TensorSet {
    let mut full = [[ZERO; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO;
            for m in 0..4 {
                for n in 0..4 {
                    let coeff = g.induced[(a, m)] * g.induced[(b, n)];
                    if coeff != 0.0 {
                        acc += t.tensor_component(m, n) * c(coeff, 0.0);
                    }
                }
            }
            full[a][b] = acc;
        }
    }
    let mut tensor = [ZERO; 6];
    for (slot, &(a, b)) in TENSOR_INDEX_PAIRS.iter().enumerate() {
        tensor[slot] = full[a][b];
    }
    TensorSet {
        scalar: t.scalar,
        pseudoscalar: t.pseudoscalar,
        vector: apply_induced(g, &t.vector),
        pseudovector: apply_induced(g, &t.pseudovector),
        tensor,
    }
}

/// Largest component mismatch between decomposing the transformed pair and
/// transforming the decomposition.
pub fn covariance_residual(g: &LorentzElement, phi: &Spinor4, psi: &Spinor4) -> f64 {
    let direct = decompose_pair(&transform_spinor(g, phi), &transform_spinor(g, psi));
    let pushed = transform_tensorset(g, &decompose_pair(phi, psi));
    (direct - pushed).max_abs()
}

/// Largest entry of ΛηΛᵀ − η (zero for a genuine Lorentz matrix).
#[cfg(test)]
fn metric_defect(g: &LorentzElement) -> f64 {
    let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0));
    let lhs = g.induced * eta * g.induced.transpose();
    (lhs - eta).iter().map(|x| x.abs()).fold(0.0, f64::max)
}
