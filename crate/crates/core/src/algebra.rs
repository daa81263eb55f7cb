//! Algebraic conventions shared by every other module: Pauli matrices, spinor
//! metric, Lorentz generators, Minkowski metric, and the Levi-Civita symbol.

use std::sync::LazyLock;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

/// Complex field amplitude stored as a double-precision `(re, im)` pair.
pub type ComplexScalar = Complex64;

/// 2×2 complex matrix (spinor-block operators).
pub type Mat2 = Matrix2<ComplexScalar>;

/// 4×4 complex matrix (bispinors, gamma matrices, spinor representations).
pub type Mat4 = Matrix4<ComplexScalar>;

/// Minkowski metric diagonal, signature (+,−,−,−).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Storage order of the six independent antisymmetric tensor components.
pub const TENSOR_INDEX_PAIRS: [(usize, usize); 6] =
    [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

pub(crate) fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

pub(crate) const ZERO: ComplexScalar = ComplexScalar::new(0.0, 0.0);
pub(crate) const ONE: ComplexScalar = ComplexScalar::new(1.0, 0.0);
pub(crate) const I: ComplexScalar = ComplexScalar::new(0.0, 1.0);

/// Pauli matrices with both index positions plus the antisymmetric spinor metric.
#[derive(Debug, Clone)]
pub struct PauliBasis {
    /// σ^a = (I, +σ^j).
    pub sigma_up: [Mat2; 4],
    /// σ_a = σ̄^a = (I, −σ^j).
    pub sigma_down: [Mat2; 4],
    /// ε = +iσ² = [[0, 1], [−1, 0]], the undotted spinor metric.
    pub eps: Mat2,
    /// ε⁻¹ = [[0, −1], [1, 0]].
    pub eps_inv: Mat2,
    /// ε̇, the dotted spinor metric (numerically equal to ε).
    pub eps_dot: Mat2,
    /// ε̇⁻¹.
    pub eps_dot_inv: Mat2,
}

/// Builds the Pauli basis; `eps * eps_inv = I` and the Clifford relation hold exactly.
pub fn build_pauli_basis() -> PauliBasis {
    let id = Mat2::identity();
    let s1 = Mat2::new(ZERO, ONE, ONE, ZERO);
    let s2 = Mat2::new(ZERO, -I, I, ZERO);
    let s3 = Mat2::new(ONE, ZERO, ZERO, -ONE);
    let eps = Mat2::new(ZERO, ONE, -ONE, ZERO);
    let eps_inv = Mat2::new(ZERO, -ONE, ONE, ZERO);
    PauliBasis {
        sigma_up: [id, s1, s2, s3],
        sigma_down: [id, -s1, -s2, -s3],
        eps,
        eps_inv,
        eps_dot: eps,
        eps_dot_inv: eps_inv,
    }
}

/// Lorentz generators on the two 2-spinor blocks, indexed by [`TENSOR_INDEX_PAIRS`].
#[derive(Debug, Clone)]
pub struct SigmaGenerators {
    /// Σ^{kl} = ¼(σ̄^k σ^l − σ̄^l σ^k), acting on undotted spinors; self-dual.
    pub sigma_kl: [Mat2; 6],
    /// Σ̄^{kl} = ¼(σ^k σ̄^l − σ^l σ̄^k), acting on dotted spinors; anti-self-dual.
    pub sigma_bar_kl: [Mat2; 6],
}

impl SigmaGenerators {
    /// Σ^{kl} for arbitrary index order (antisymmetric; zero on the diagonal).
    pub fn sigma(&self, k: usize, l: usize) -> Mat2 {
        antisymmetric_lookup(&self.sigma_kl, k, l)
    }

    /// Σ̄^{kl} for arbitrary index order (antisymmetric; zero on the diagonal).
    pub fn sigma_bar(&self, k: usize, l: usize) -> Mat2 {
        antisymmetric_lookup(&self.sigma_bar_kl, k, l)
    }
}

fn antisymmetric_lookup(store: &[Mat2; 6], k: usize, l: usize) -> Mat2 {
    assert!(k < 4 && l < 4, "tensor indices must lie in 0..4");
    for (slot, &(a, b)) in TENSOR_INDEX_PAIRS.iter().enumerate() {
        if (a, b) == (k, l) {
            return store[slot];
        }
        if (a, b) == (l, k) {
            return -store[slot];
        }
    }
    Mat2::zeros()
}

/// Builds both generator families from the Pauli basis.
pub fn build_sigma_generators() -> SigmaGenerators {
    let p = build_pauli_basis();
    let quarter = c(0.25, 0.0);
    let mut sigma_kl = [Mat2::zeros(); 6];
    let mut sigma_bar_kl = [Mat2::zeros(); 6];
    for (slot, &(k, l)) in TENSOR_INDEX_PAIRS.iter().enumerate() {
        sigma_kl[slot] =
            (p.sigma_down[k] * p.sigma_up[l] - p.sigma_down[l] * p.sigma_up[k]) * quarter;
        sigma_bar_kl[slot] =
            (p.sigma_up[k] * p.sigma_down[l] - p.sigma_up[l] * p.sigma_down[k]) * quarter;
    }
    SigmaGenerators {
        sigma_kl,
        sigma_bar_kl,
    }
}

pub(crate) static PAULI: LazyLock<PauliBasis> = LazyLock::new(build_pauli_basis);
pub(crate) static SIGMA: LazyLock<SigmaGenerators> = LazyLock::new(build_sigma_generators);

/// Minkowski inner product v^0 w^0 − v^1 w^1 − v^2 w^2 − v^3 w^3.
pub fn minkowski_contract(v: &[ComplexScalar; 4], w: &[ComplexScalar; 4]) -> ComplexScalar {
    (0..4).map(|a| c(ETA[a], 0.0) * v[a] * w[a]).sum()
}

/// Totally antisymmetric symbol with ε^{0123} = +1; zero on repeated indices.
pub fn levi_civita(k: usize, l: usize, m: usize, n: usize) -> i32 {
    let mut p = [k, l, m, n];
    for &i in &p {
        assert!(i < 4, "Levi-Civita indices must lie in 0..4");
    }
    if p[0] == p[1] || p[0] == p[2] || p[0] == p[3] || p[1] == p[2] || p[1] == p[3] || p[2] == p[3]
    {
        return 0;
    }
    let mut sign = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if p[j] > p[j + 1] {
                p.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

#[cfg(test)]
pub(crate) fn max_abs_mat2(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn max_abs_mat4(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_metric_inverses_are_exact() {
        let p = build_pauli_basis();
        assert_eq!(p.eps * p.eps_inv, Mat2::identity());
        assert_eq!(p.eps_dot * p.eps_dot_inv, Mat2::identity());
        assert_eq!(p.sigma_up[0], Mat2::identity());
        assert_eq!(p.eps, Mat2::new(ZERO, ONE, -ONE, ZERO));
    }

    #[test]
    fn clifford_relation_holds_for_all_index_pairs() {
        let p = build_pauli_basis();
        for a in 0..4 {
            for b in 0..4 {
                let lhs = p.sigma_up[a] * p.sigma_down[b] + p.sigma_up[b] * p.sigma_down[a];
                let expect = if a == b {
                    Mat2::identity() * c(2.0 * ETA[a], 0.0)
                } else {
                    Mat2::zeros()
                };
                assert!(max_abs_mat2(&(lhs - expect)) < 1e-14, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn generators_are_self_dual_and_anti_self_dual() {
        let g = build_sigma_generators();
        for &(k, l) in &TENSOR_INDEX_PAIRS {
            let mut dual_s = Mat2::zeros();
            let mut dual_sb = Mat2::zeros();
            for m in 0..4 {
                for n in 0..4 {
                    let e = levi_civita(k, l, m, n);
                    if e == 0 {
                        continue;
                    }
                    let w = c(0.0, 0.5 * e as f64 * ETA[m] * ETA[n]);
                    dual_s += g.sigma(m, n) * w;
                    dual_sb += g.sigma_bar(m, n) * w;
                }
            }
            assert!(max_abs_mat2(&(dual_s - g.sigma(k, l))) < 1e-14, "({k},{l})");
            assert!(
                max_abs_mat2(&(dual_sb + g.sigma_bar(k, l))) < 1e-14,
                "({k},{l})"
            );
        }
    }

    #[test]
    fn generators_are_antisymmetric_in_their_indices() {
        let g = build_sigma_generators();
        for k in 0..4 {
            for l in 0..4 {
                assert!(max_abs_mat2(&(g.sigma(k, l) + g.sigma(l, k))) == 0.0);
                assert!(max_abs_mat2(&(g.sigma_bar(k, l) + g.sigma_bar(l, k))) == 0.0);
            }
        }
    }

    #[test]
    fn minkowski_contract_examples() {
        let e0 = [ONE, ZERO, ZERO, ZERO];
        let e1 = [ZERO, ONE, ZERO, ZERO];
        assert_eq!(minkowski_contract(&e0, &e0), ONE);
        assert_eq!(minkowski_contract(&e1, &e1), -ONE);
        let v = [ONE, ONE, ZERO, ZERO];
        let w = [ONE, -ONE, ZERO, ZERO];
        assert_eq!(minkowski_contract(&v, &w), c(2.0, 0.0));
    }

    #[test]
    fn levi_civita_normalization_and_antisymmetry() {
        assert_eq!(levi_civita(0, 1, 2, 3), 1);
        assert_eq!(levi_civita(1, 0, 2, 3), -1);
        assert_eq!(levi_civita(0, 0, 2, 3), 0);
        let perms = [
            [0usize, 1, 2, 3],
            [0, 1, 3, 2],
            [0, 2, 1, 3],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
            [0, 3, 2, 1],
        ];
        for base in perms {
            for i in 0..4 {
                for j in i + 1..4 {
                    let mut swapped = base;
                    swapped.swap(i, j);
                    assert_eq!(
                        levi_civita(base[0], base[1], base[2], base[3]),
                        -levi_civita(swapped[0], swapped[1], swapped[2], swapped[3])
                    );
                }
            }
        }
    }
}
