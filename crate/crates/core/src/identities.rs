//! Quantitative residual checks for the algebraic identities that hold on
//! every single-pair decomposition and generically fail on two-pair sums.

use serde::Serialize;

use crate::algebra::{c, minkowski_contract, ComplexScalar, ZERO};
use crate::decompose::{isotropic_pair, Spinor4, TensorSet};

/// Verdict tolerance at unit component scale.
pub const IDENTITY_BASE_TOL: f64 = 1e-12;

/// Pass/fail outcome of a residual check against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

/// Named residual magnitudes for one identity, with a scale-aware verdict.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub residuals: Vec<(String, f64)>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl IdentityReport {
    fn from_entries(name: &str, entries: Vec<(String, ComplexScalar)>, tolerance: f64) -> Self {
        let residuals: Vec<(String, f64)> = entries
            .into_iter()
            .map(|(label, z)| (label, z.norm()))
            .collect();
        let max_residual = residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max);
        let verdict = if max_residual < tolerance {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Self {
            name: name.to_string(),
            residuals,
            max_residual,
            tolerance,
            verdict,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Tolerance for residuals that are quadratic in the tensor components.
fn quadratic_tolerance(scale: f64) -> f64 {
    (IDENTITY_BASE_TOL * scale * scale).max(f64::MIN_POSITIVE)
}

/// Ψ^{ab}Ψ_b (or Ψ̃_b) for each free index a, with the second index lowered.
fn tensor_contract(t: &TensorSet, lowered: &[ComplexScalar; 4]) -> [ComplexScalar; 4] {
    let mut out = [ZERO; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a] += t.tensor_component(a, b) * lowered[b];
        }
    }
    out
}

/// Residual of the vector/pseudovector orthogonality Ψ^a Ψ̃_a = 0.
pub fn residual_orthogonality(t: &TensorSet) -> IdentityReport {
    let value = minkowski_contract(&t.vector, &t.pseudovector);
    IdentityReport::from_entries(
        "orthogonality",
        vec![("vector_dot_pseudovector".to_string(), value)],
        quadratic_tolerance(t.max_abs()),
    )
}

/// Residuals of Ψ^{ab}Ψ_b + Ψ̃Ψ̃^a = 0 and Ψ^{ab}Ψ̃_b − Ψ̃Ψ^a = 0 for each a.
pub fn residual_fierz(t: &TensorSet) -> IdentityReport {
    let tv = tensor_contract(t, &t.vector_lowered());
    let tp = tensor_contract(t, &t.pseudovector_lowered());
    let mut entries = Vec::with_capacity(8);
    for a in 0..4 {
        entries.push((
            format!("tensor_vector[{a}]"),
            tv[a] + t.pseudoscalar * t.pseudovector[a],
        ));
    }
    for a in 0..4 {
        entries.push((
            format!("tensor_pseudovector[{a}]"),
            tp[a] - t.pseudoscalar * t.vector[a],
        ));
    }
    IdentityReport::from_entries("fierz", entries, quadratic_tolerance(t.max_abs()))
}

/// Residuals of the two-parameter-family ansatz
/// Ψ^{ab}Ψ_b = αΨ̃Ψ̃^a + ρΨΨ^a and Ψ^{ab}Ψ̃_b = βΨ̃Ψ^a + σΨΨ̃^a.
pub fn residual_quad_ansatz(
    t: &TensorSet,
    alpha: ComplexScalar,
    beta: ComplexScalar,
    rho: ComplexScalar,
    sigma: ComplexScalar,
) -> IdentityReport {
    let tv = tensor_contract(t, &t.vector_lowered());
    let tp = tensor_contract(t, &t.pseudovector_lowered());
    let mut entries = Vec::with_capacity(8);
    for a in 0..4 {
        entries.push((
            format!("tensor_vector[{a}]"),
            tv[a] - alpha * t.pseudoscalar * t.pseudovector[a] - rho * t.scalar * t.vector[a],
        ));
    }
    for a in 0..4 {
        entries.push((
            format!("tensor_pseudovector[{a}]"),
            tp[a] - beta * t.pseudoscalar * t.vector[a] - sigma * t.scalar * t.pseudovector[a],
        ));
    }
    IdentityReport::from_entries("quad_ansatz", entries, quadratic_tolerance(t.max_abs()))
}

/// Residuals of s·s = 0, t·t = 0, and s·t = (μν/2)(AD−BC)² for a tensor set
/// decomposed from the blockwise-scaled pair (φ, (μA, μB, νC, νD)).
pub fn residual_isotropy(
    t: &TensorSet,
    mu: ComplexScalar,
    nu: ComplexScalar,
    phi: &Spinor4,
) -> IdentityReport {
    let iso = isotropic_pair(t);
    let target = mu * nu * c(0.5, 0.0) * (phi.a * phi.d - phi.b * phi.c).powi(2);
    let entries = vec![
        ("s_dot_s".to_string(), iso.s_dot_s()),
        ("t_dot_t".to_string(), iso.t_dot_t()),
        ("s_dot_t_minus_target".to_string(), iso.s_dot_t() - target),
    ];
    let scale = t
        .max_abs()
        .max(phi.max_abs().powi(2) * mu.norm().max(nu.norm()));
    IdentityReport::from_entries("isotropy", entries, quadratic_tolerance(scale))
}

/// Best-fit ansatz coefficients over a sample of tensor sets, with the
/// root-mean-square residual left after the fit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadAnsatzFit {
    #[serde(serialize_with = "ser_complex")]
    pub alpha: ComplexScalar,
    #[serde(serialize_with = "ser_complex")]
    pub beta: ComplexScalar,
    #[serde(serialize_with = "ser_complex")]
    pub rho: ComplexScalar,
    #[serde(serialize_with = "ser_complex")]
    pub sigma: ComplexScalar,
    pub rms_residual: f64,
}

fn ser_complex<S: serde::Serializer>(z: &ComplexScalar, s: S) -> Result<S::Ok, S::Error> {
    [z.re + 0.0, z.im + 0.0].serialize(s)
}

/// Solves the 2-unknown complex least squares Σ‖y − x₁u − x₂v‖² by normal equations.
fn lsq2(rows: &[(ComplexScalar, ComplexScalar, ComplexScalar)]) -> (ComplexScalar, ComplexScalar) {
    let mut g11 = ZERO;
    let mut g12 = ZERO;
    let mut g22 = ZERO;
    let mut b1 = ZERO;
    let mut b2 = ZERO;
    for &(x1, x2, y) in rows {
        g11 += x1.conj() * x1;
        g12 += x1.conj() * x2;
        g22 += x2.conj() * x2;
        b1 += x1.conj() * y;
        b2 += x2.conj() * y;
    }
    let det = g11 * g22 - g12 * g12.conj();
    if det.norm() < 1e-300 {
        return (ZERO, ZERO);
    }
    let u = (g22 * b1 - g12 * b2) / det;
    let v = (g11 * b2 - g12.conj() * b1) / det;
    (u, v)
}

/// Fits (α, β, ρ, σ) by least squares over the given tensor sets.
///
/// On single-pair decompositions the fit recovers (−1, +1, 0, 0) with a
/// negligible residual; on generic two-pair sums no coefficient choice works
/// and `rms_residual` stays well above zero.
pub fn fit_quad_ansatz(samples: &[TensorSet]) -> QuadAnsatzFit {
    let mut rows1 = Vec::with_capacity(samples.len() * 4);
    let mut rows2 = Vec::with_capacity(samples.len() * 4);
    for t in samples {
        let tv = tensor_contract(t, &t.vector_lowered());
        let tp = tensor_contract(t, &t.pseudovector_lowered());
        for a in 0..4 {
            rows1.push((
                t.pseudoscalar * t.pseudovector[a],
                t.scalar * t.vector[a],
                tv[a],
            ));
            rows2.push((
                t.pseudoscalar * t.vector[a],
                t.scalar * t.pseudovector[a],
                tp[a],
            ));
        }
    }
    let (alpha, rho) = lsq2(&rows1);
    let (beta, sigma) = lsq2(&rows2);
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for &(x1, x2, y) in &rows1 {
        sum_sq += (y - alpha * x1 - rho * x2).norm_sqr();
        count += 1;
    }
    for &(x1, x2, y) in &rows2 {
        sum_sq += (y - beta * x1 - sigma * x2).norm_sqr();
        count += 1;
    }
    let rms_residual = if count == 0 {
        0.0
    } else {
        (sum_sq / count as f64).sqrt()
    };
    QuadAnsatzFit {
        alpha,
        beta,
        rho,
        sigma,
        rms_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose_pair, decompose_quad};
    use crate::sampling::{random_spinor, rng_from_seed};

    #[test]
    fn orthogonality_holds_on_random_pairs_and_zero() {
        let mut rng = rng_from_seed(21);
        for _ in 0..200 {
            let t = decompose_pair(&random_spinor(&mut rng), &random_spinor(&mut rng));
            let report = residual_orthogonality(&t);
            assert!(report.holds(), "max residual {}", report.max_residual);
        }
        assert!(residual_orthogonality(&TensorSet::zero()).holds());
        assert_eq!(residual_orthogonality(&TensorSet::zero()).max_residual, 0.0);
    }

    #[test]
    fn orthogonality_generically_fails_on_quads() {
        let mut rng = rng_from_seed(22);
        let mut failures = 0;
        for _ in 0..100 {
            let t = decompose_quad(
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
            );
            if residual_orthogonality(&t).max_residual > 1e-3 {
                failures += 1;
            }
        }
        assert!(failures >= 99, "only {failures}/100 quads broke orthogonality");
    }

    #[test]
    fn fierz_holds_on_random_pairs_across_scales() {
        let mut rng = rng_from_seed(23);
        for scale in [1.0, 1e3, 1e-3] {
            for _ in 0..100 {
                let phi = random_spinor(&mut rng).scaled(c(scale, 0.0));
                let psi = random_spinor(&mut rng).scaled(c(scale, 0.0));
                let report = residual_fierz(&decompose_pair(&phi, &psi));
                assert!(
                    report.holds(),
                    "scale {scale}: max residual {} vs tolerance {}",
                    report.max_residual,
                    report.tolerance
                );
            }
        }
    }

    #[test]
    fn fierz_fails_on_perturbed_pair() {
        let mut rng = rng_from_seed(24);
        let mut t = decompose_pair(&random_spinor(&mut rng), &random_spinor(&mut rng));
        t.tensor[0] += c(0.1, 0.0);
        assert_eq!(residual_fierz(&t).verdict, Verdict::Fails);
    }

    #[test]
    fn fierz_fails_on_generic_quads() {
        let mut rng = rng_from_seed(25);
        let mut broken = 0;
        for _ in 0..100 {
            let t = decompose_quad(
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
            );
            if residual_fierz(&t).max_residual > 1e-3 {
                broken += 1;
            }
        }
        assert!(broken >= 99, "only {broken}/100 quads broke the identity");
    }

    #[test]
    fn quad_ansatz_at_reference_coefficients_matches_fierz_exactly() {
        let mut rng = rng_from_seed(26);
        for _ in 0..50 {
            let t = decompose_quad(
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
                &random_spinor(&mut rng),
            );
            let ansatz = residual_quad_ansatz(&t, c(-1.0, 0.0), c(1.0, 0.0), ZERO, ZERO);
            let fierz = residual_fierz(&t);
            assert_eq!(ansatz.residuals, fierz.residuals);
        }
        let zero = residual_quad_ansatz(&TensorSet::zero(), c(2.0, 1.0), ZERO, c(0.5, 0.0), ZERO);
        assert_eq!(zero.max_residual, 0.0);
        assert!(zero.holds());
    }

    #[test]
    fn isotropy_reference_example_holds() {
        let phi = Spinor4::from_reals(1.0, 2.0, 3.0, 4.0);
        let (mu, nu) = (c(2.0, 0.0), c(3.0, 0.0));
        let psi = Spinor4::new(mu * phi.a, mu * phi.b, nu * phi.c, nu * phi.d);
        let report = residual_isotropy(&decompose_pair(&phi, &psi), mu, nu, &phi);
        assert!(report.holds(), "max residual {}", report.max_residual);
        assert_eq!(report.residuals.len(), 3);
    }

    #[test]
    fn isotropy_cross_term_vanishes_when_block_determinant_does() {
        let phi = Spinor4::from_reals(1.0, 1.0, 1.0, 1.0);
        let (mu, nu) = (c(2.0, 1.0), c(-0.5, 0.5));
        let psi = Spinor4::new(mu * phi.a, mu * phi.b, nu * phi.c, nu * phi.d);
        let t = decompose_pair(&phi, &psi);
        let report = residual_isotropy(&t, mu, nu, &phi);
        assert!(report.holds());
        assert!(isotropic_pair(&t).s_dot_t().norm() < 1e-12);
    }

    #[test]
    fn isotropy_with_zero_mu_kills_s_entirely() {
        let phi = Spinor4::from_reals(1.0, -2.0, 0.5, 3.0);
        let nu = c(1.5, -0.5);
        let psi = Spinor4::new(ZERO, ZERO, nu * phi.c, nu * phi.d);
        let t = decompose_pair(&phi, &psi);
        let iso = isotropic_pair(&t);
        for j in 0..3 {
            assert!(iso.s[j].norm() < 1e-15);
        }
        assert!(residual_isotropy(&t, ZERO, nu, &phi).holds());
    }

    #[test]
    fn ansatz_fit_recovers_reference_coefficients_on_pairs() {
        let mut rng = rng_from_seed(27);
        let samples: Vec<TensorSet> = (0..100)
            .map(|_| decompose_pair(&random_spinor(&mut rng), &random_spinor(&mut rng)))
            .collect();
        let fit = fit_quad_ansatz(&samples);
        assert!((fit.alpha - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((fit.beta - c(1.0, 0.0)).norm() < 1e-10);
        assert!(fit.rho.norm() < 1e-10);
        assert!(fit.sigma.norm() < 1e-10);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn ansatz_fit_floor_stays_high_on_quads() {
        let mut rng = rng_from_seed(28);
        let samples: Vec<TensorSet> = (0..100)
            .map(|_| {
                decompose_quad(
                    &random_spinor(&mut rng),
                    &random_spinor(&mut rng),
                    &random_spinor(&mut rng),
                    &random_spinor(&mut rng),
                )
            })
            .collect();
        let fit = fit_quad_ansatz(&samples);
        assert!(
            fit.rms_residual > 1e-3,
            "fit floor {} unexpectedly low",
            fit.rms_residual
        );
        assert_eq!(fit_quad_ansatz(&[]).rms_residual, 0.0);
    }

    #[test]
    fn report_serializes_with_all_fields() {
        let report = residual_orthogonality(&TensorSet::zero());
        let json = serde_json::to_string(&report).unwrap();
        for key in ["name", "residuals", "max_residual", "tolerance", "verdict"] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        assert!(json.contains("\"verdict\":\"holds\""));
    }
}
