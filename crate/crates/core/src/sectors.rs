//! Degenerate-case analysis for single spinor pairs and the four boson-sector
//! constraint systems on two-pair (quad) configurations, with residual
//! evaluation, classification, and a constructive solver.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{c, ComplexScalar, ZERO};
use crate::decompose::{decompose_pair, decompose_quad, isotropic_pair, Spinor4, TensorSet};
use crate::sampling::{random_complex, rng_from_seed};

/// Failure modes of the constructive operations.
#[derive(Debug, Error)]
pub enum SectorError {
    #[error("solver stalled; best residual {best_residual}")]
    SolverStalled { best_residual: f64 },
    #[error("degenerate construction: {reason}")]
    DegenerateBuild { reason: String },
}

/// The four single-boson sectors a quad can realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectorLabel {
    Scalar,
    Pseudoscalar,
    Vector,
    Pseudovector,
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SectorLabel::Scalar => "scalar",
            SectorLabel::Pseudoscalar => "pseudoscalar",
            SectorLabel::Vector => "vector",
            SectorLabel::Pseudovector => "pseudovector",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for SectorLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scalar" => Ok(SectorLabel::Scalar),
            "pseudoscalar" => Ok(SectorLabel::Pseudoscalar),
            "vector" => Ok(SectorLabel::Vector),
            "pseudovector" => Ok(SectorLabel::Pseudovector),
            other => Err(format!(
                "unknown sector {other:?}; expected scalar, pseudoscalar, vector, or pseudovector"
            )),
        }
    }
}

/// One of the five component groups of a [`TensorSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentGroup {
    Scalar,
    Pseudoscalar,
    Vector,
    Pseudovector,
    Tensor,
}

/// Largest component magnitude within one group.
pub fn group_max_abs(t: &TensorSet, group: ComponentGroup) -> f64 {
    let max_of = |v: &[ComplexScalar]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    match group {
        ComponentGroup::Scalar => t.scalar.norm(),
        ComponentGroup::Pseudoscalar => t.pseudoscalar.norm(),
        ComponentGroup::Vector => max_of(&t.vector),
        ComponentGroup::Pseudovector => max_of(&t.pseudovector),
        ComponentGroup::Tensor => max_of(&t.tensor),
    }
}

/// Which component groups a sector forces to zero, which it leaves free, and
/// how many bilinear constraints realize it.
#[derive(Debug, Clone, Serialize)]
pub struct SectorSpec {
    pub label: SectorLabel,
    pub zero_components: Vec<ComponentGroup>,
    pub free_components: Vec<ComponentGroup>,
    pub constraint_count: usize,
}

/// The defining spec of each sector.
pub fn sector_spec(label: SectorLabel) -> SectorSpec {
    use ComponentGroup as G;
    let (zero_components, free_components, constraint_count) = match label {
        SectorLabel::Scalar => (
            vec![G::Pseudoscalar, G::Pseudovector, G::Tensor],
            vec![G::Scalar, G::Vector],
            11,
        ),
        SectorLabel::Pseudoscalar => (
            vec![G::Scalar, G::Vector, G::Tensor],
            vec![G::Pseudoscalar, G::Pseudovector],
            11,
        ),
        SectorLabel::Vector => (
            vec![G::Scalar, G::Pseudoscalar, G::Pseudovector],
            vec![G::Vector, G::Tensor],
            6,
        ),
        SectorLabel::Pseudovector => (
            vec![G::Scalar, G::Pseudoscalar, G::Vector],
            vec![G::Pseudovector, G::Tensor],
            6,
        ),
    };
    SectorSpec {
        label,
        zero_components,
        free_components,
        constraint_count,
    }
}

/// One bilinear monomial coeff·x_i·x_j over the stacked quad components.
type BilinearTerm = (f64, usize, usize);

// Slot layout of the stacked unknown vector:
// [A, B, C, D, M, N, K, L, A', B', C', D', M', N', K', L'].
const A: usize = 0;
const B: usize = 1;
const CC: usize = 2;
const D: usize = 3;
const M: usize = 4;
const N: usize = 5;
const K: usize = 6;
const L: usize = 7;

/// Extends each unprimed bilinear combination by its primed twin.
fn with_primes(base: &[(f64, usize, usize)]) -> Vec<BilinearTerm> {
    let mut out = Vec::with_capacity(base.len() * 2);
    for &(co, i, j) in base {
        out.push((co, i, j));
        out.push((co, i + 8, j + 8));
    }
    out
}

/// The bilinear constraint list of a sector, in the reported residual order.
pub(crate) fn sector_constraints(label: SectorLabel) -> Vec<Vec<BilinearTerm>> {
    let bm_an: &[(f64, usize, usize)] = &[(1.0, B, M), (-1.0, A, N)];
    let cl_dk: &[(f64, usize, usize)] = &[(1.0, CC, L), (-1.0, D, K)];
    let al_dm_minus: &[(f64, usize, usize)] = &[(1.0, A, L), (-1.0, D, M)];
    let al_dm_plus: &[(f64, usize, usize)] = &[(1.0, A, L), (1.0, D, M)];
    let bk_cn_minus: &[(f64, usize, usize)] = &[(1.0, B, K), (-1.0, CC, N)];
    let bk_cn_plus: &[(f64, usize, usize)] = &[(1.0, B, K), (1.0, CC, N)];
    let ak_cm_minus: &[(f64, usize, usize)] = &[(1.0, A, K), (-1.0, CC, M)];
    let ak_cm_plus: &[(f64, usize, usize)] = &[(1.0, A, K), (1.0, CC, M)];
    let bl_dn_minus: &[(f64, usize, usize)] = &[(1.0, B, L), (-1.0, D, N)];
    let bl_dn_plus: &[(f64, usize, usize)] = &[(1.0, B, L), (1.0, D, N)];
    let am_bn_minus: &[(f64, usize, usize)] = &[(1.0, A, M), (-1.0, B, N)];
    let am_bn_plus: &[(f64, usize, usize)] = &[(1.0, A, M), (1.0, B, N)];
    let ck_dl_minus: &[(f64, usize, usize)] = &[(1.0, CC, K), (-1.0, D, L)];
    let ck_dl_plus: &[(f64, usize, usize)] = &[(1.0, CC, K), (1.0, D, L)];
    let an_bm_plus: &[(f64, usize, usize)] = &[(1.0, A, N), (1.0, B, M)];
    let cl_dk_plus: &[(f64, usize, usize)] = &[(1.0, CC, L), (1.0, D, K)];
    let bm_an_minus_cl_dk: &[(f64, usize, usize)] = &[
        (1.0, B, M),
        (-1.0, A, N),
        (-1.0, CC, L),
        (1.0, D, K),
    ];
    let bm_an_plus_cl_dk: &[(f64, usize, usize)] = &[
        (1.0, B, M),
        (-1.0, A, N),
        (1.0, CC, L),
        (-1.0, D, K),
    ];
    let tensor_block = [
        am_bn_minus,
        ck_dl_minus,
        am_bn_plus,
        ck_dl_plus,
        an_bm_plus,
        cl_dk_plus,
    ];

    let bases: Vec<&[(f64, usize, usize)]> = match label {
        SectorLabel::Scalar => {
            let mut v = vec![
                bm_an_minus_cl_dk,
                al_dm_minus,
                bk_cn_minus,
                ak_cm_minus,
                bl_dn_minus,
            ];
            v.extend(tensor_block);
            v
        }
        SectorLabel::Pseudoscalar => {
            let mut v = vec![
                bm_an_plus_cl_dk,
                al_dm_plus,
                bk_cn_plus,
                ak_cm_plus,
                bl_dn_plus,
            ];
            v.extend(tensor_block);
            v
        }
        SectorLabel::Vector => vec![
            bm_an,
            cl_dk,
            al_dm_minus,
            bk_cn_minus,
            ak_cm_minus,
            bl_dn_minus,
        ],
        SectorLabel::Pseudovector => vec![
            bm_an,
            cl_dk,
            al_dm_plus,
            bk_cn_plus,
            ak_cm_plus,
            bl_dn_plus,
        ],
    };
    bases.into_iter().map(with_primes).collect()
}

fn stack_quad(
    phi: &Spinor4,
    psi: &Spinor4,
    phi_p: &Spinor4,
    psi_p: &Spinor4,
) -> [ComplexScalar; 16] {
    let mut x = [ZERO; 16];
    x[..4].copy_from_slice(&phi.components());
    x[4..8].copy_from_slice(&psi.components());
    x[8..12].copy_from_slice(&phi_p.components());
    x[12..].copy_from_slice(&psi_p.components());
    x
}

fn unstack_quad(x: &[ComplexScalar]) -> [Spinor4; 4] {
    let grab = |o: usize| Spinor4::new(x[o], x[o + 1], x[o + 2], x[o + 3]);
    [grab(0), grab(4), grab(8), grab(12)]
}

fn eval_constraint(terms: &[BilinearTerm], x: &[ComplexScalar]) -> ComplexScalar {
    terms
        .iter()
        .map(|&(co, i, j)| x[i] * x[j] * c(co, 0.0))
        .sum()
}

/// The sector's constraint residuals for a quad, in the fixed reported order.
pub fn sector_residuals(
    phi: &Spinor4,
    psi: &Spinor4,
    phi_p: &Spinor4,
    psi_p: &Spinor4,
    sector: &SectorSpec,
) -> Vec<ComplexScalar> {
    let x = stack_quad(phi, psi, phi_p, psi_p);
    sector_constraints(sector.label)
        .iter()
        .map(|terms| eval_constraint(terms, &x))
        .collect()
}

/// Finds the sector whose zero groups vanish (≤ tol·scale²) while its free
/// groups stay structurally nonzero (> 1e-6·scale²); `None` when no sector fits.
pub fn sector_classify(
    phi: &Spinor4,
    psi: &Spinor4,
    phi_p: &Spinor4,
    psi_p: &Spinor4,
    tol: f64,
) -> Option<SectorLabel> {
    let scale = [phi, psi, phi_p, psi_p]
        .iter()
        .map(|s| s.max_abs())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let zero_thresh = tol * scale * scale;
    let free_thresh = 1e-6 * scale * scale;
    let t = decompose_quad(phi, psi, phi_p, psi_p);
    for label in [
        SectorLabel::Scalar,
        SectorLabel::Pseudoscalar,
        SectorLabel::Vector,
        SectorLabel::Pseudovector,
    ] {
        let spec = sector_spec(label);
        let zeros_ok = spec
            .zero_components
            .iter()
            .all(|&g| group_max_abs(&t, g) <= zero_thresh);
        let free_ok = spec
            .free_components
            .iter()
            .all(|&g| group_max_abs(&t, g) > free_thresh);
        if zeros_ok && free_ok {
            return Some(label);
        }
    }
    None
}

/// A bilinear equation Σ coeff·x_i·x_j + constant = 0 for the solver; the
/// sector constraints have zero constant, anchors a nonzero one.
type SolverEquation = (Vec<BilinearTerm>, ComplexScalar);

/// One extra equation pinning a free component to a nonzero value, so the
/// solver cannot settle on the trivial variety Φ′⊗Ψ′ = −Φ⊗Ψ where every
/// bilinear constraint vanishes along with all 16 components.
fn anchor_equation(label: SectorLabel) -> SolverEquation {
    use crate::algebra::I;
    let (base, constant): (&[(f64, usize, usize)], ComplexScalar) = match label {
        // scalar = (i/4)·Σ pinned to 1/4  ⟺  Σ + i = 0
        SectorLabel::Scalar => (
            &[(1.0, B, M), (-1.0, A, N), (1.0, CC, L), (-1.0, D, K)],
            I,
        ),
        // pseudoscalar = −(1/4)·Σ pinned to 1/4  ⟺  Σ + 1 = 0
        SectorLabel::Pseudoscalar => (
            &[(1.0, B, M), (-1.0, A, N), (-1.0, CC, L), (1.0, D, K)],
            c(1.0, 0.0),
        ),
        // vector[0] = (1/4)·Σ pinned to 1/4  ⟺  Σ − 1 = 0
        SectorLabel::Vector => (
            &[(1.0, A, L), (-1.0, B, K), (1.0, D, M), (-1.0, CC, N)],
            c(-1.0, 0.0),
        ),
        // pseudovector[0] = −(i/4)·Σ pinned to 1/4  ⟺  Σ − i = 0
        SectorLabel::Pseudovector => (
            &[(1.0, A, L), (-1.0, B, K), (-1.0, D, M), (1.0, CC, N)],
            -I,
        ),
    };
    (with_primes(base), constant)
}

fn residual_vector(equations: &[SolverEquation], x: &[ComplexScalar]) -> DVector<ComplexScalar> {
    DVector::from_iterator(
        equations.len(),
        equations
            .iter()
            .map(|(terms, constant)| eval_constraint(terms, x) + constant),
    )
}

fn residual_inf(r: &DVector<ComplexScalar>) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn jacobian(equations: &[SolverEquation], x: &[ComplexScalar]) -> DMatrix<ComplexScalar> {
    let mut m = DMatrix::zeros(equations.len(), 16);
    for (row, (terms, _)) in equations.iter().enumerate() {
        for &(co, i, j) in terms {
            m[(row, i)] += x[j] * c(co, 0.0);
            m[(row, j)] += x[i] * c(co, 0.0);
        }
    }
    m
}

/// Damped Gauss–Newton on the holomorphic bilinear system; returns the final
/// max residual magnitude.
fn refine(constraints: &[SolverEquation], x: &mut Vec<ComplexScalar>) -> f64 {
    let mut r = residual_vector(constraints, x);
    let mut norm_sq = r.norm_squared();
    let mut lambda = 1e-3;
    for _ in 0..120 {
        if residual_inf(&r) < 1e-14 {
            break;
        }
        let j = jacobian(constraints, x);
        let jh = j.adjoint();
        let normal = &jh * &j;
        let gradient = &jh * &r;
        let mut stepped = false;
        while lambda < 1e9 {
            let damped = &normal + DMatrix::identity(16, 16) * c(lambda, 0.0);
            if let Some(delta) = damped.lu().solve(&gradient) {
                let trial: Vec<ComplexScalar> =
                    x.iter().zip(delta.iter()).map(|(xi, d)| xi - d).collect();
                let r_trial = residual_vector(constraints, &trial);
                let trial_norm_sq = r_trial.norm_squared();
                if trial_norm_sq < norm_sq {
                    *x = trial;
                    r = r_trial;
                    norm_sq = trial_norm_sq;
                    lambda = (lambda / 3.0).max(1e-14);
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !stepped {
            break;
        }
    }
    residual_inf(&r)
}

/// Solves the sector's bilinear system from a seeded random start and returns
/// a normalized quad with verified residuals and nonzero free groups.
pub fn sector_build(label: SectorLabel, seed: u64) -> Result<[Spinor4; 4], SectorError> {
    let mut equations: Vec<SolverEquation> = sector_constraints(label)
        .into_iter()
        .map(|terms| (terms, ZERO))
        .collect();
    equations.push(anchor_equation(label));
    let spec = sector_spec(label);
    let mut rng = rng_from_seed(seed);
    let mut best_residual = f64::INFINITY;
    for _attempt in 0..8 {
        let mut x: Vec<ComplexScalar> = (0..16).map(|_| random_complex(&mut rng)).collect();
        refine(&equations, &mut x);
        let gamma = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if gamma == 0.0 {
            continue;
        }
        let normalized: Vec<ComplexScalar> = x.iter().map(|z| z / c(gamma, 0.0)).collect();
        let quad = unstack_quad(&normalized);
        let residual = sector_residuals(&quad[0], &quad[1], &quad[2], &quad[3], &spec)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        best_residual = best_residual.min(residual);
        if residual >= 1e-10 {
            continue;
        }
        let t = decompose_quad(&quad[0], &quad[1], &quad[2], &quad[3]);
        let free_ok = spec
            .free_components
            .iter()
            .all(|&g| group_max_abs(&t, g) > 1e-3);
        if free_ok {
            return Ok(quad);
        }
    }
    Err(SectorError::SolverStalled { best_residual })
}

/// The degenerate single-pair configurations distinguished by the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCaseLabel {
    VectorsZeroBranch1,
    VectorsZeroBranch2,
    TensorZeroBranch1,
    TensorZeroBranch2,
    ScalarPseudoscalarZero,
    PseudovectorZero,
    VectorZero,
    PsiNonzeroTildeZero,
    PsiZeroTildeNonzero,
    Generic,
}

impl std::fmt::Display for PairCaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            PairCaseLabel::VectorsZeroBranch1 => "vectors_zero_branch1",
            PairCaseLabel::VectorsZeroBranch2 => "vectors_zero_branch2",
            PairCaseLabel::TensorZeroBranch1 => "tensor_zero_branch1",
            PairCaseLabel::TensorZeroBranch2 => "tensor_zero_branch2",
            PairCaseLabel::ScalarPseudoscalarZero => "scalar_pseudoscalar_zero",
            PairCaseLabel::PseudovectorZero => "pseudovector_zero",
            PairCaseLabel::VectorZero => "vector_zero",
            PairCaseLabel::PsiNonzeroTildeZero => "psi_nonzero_tilde_zero",
            PairCaseLabel::PsiZeroTildeNonzero => "psi_zero_tilde_nonzero",
            PairCaseLabel::Generic => "generic",
        };
        f.write_str(name)
    }
}

/// Per-group magnitudes used by the pair-case patterns.
struct PairProfile {
    sc: f64,
    psc: f64,
    vec: f64,
    pvec: f64,
    ten: f64,
    s: f64,
    t: f64,
    /// max |Ψ̃^a − iΨ^a| — zero on the first tensor-zero branch.
    diff_minus: f64,
    /// max |Ψ̃^a + iΨ^a| — zero on the second tensor-zero branch.
    diff_plus: f64,
}

fn pair_profile(tset: &TensorSet) -> PairProfile {
    let iso = isotropic_pair(tset);
    let max_of = |v: &[ComplexScalar]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut diff_minus = 0.0f64;
    let mut diff_plus = 0.0f64;
    for a in 0..4 {
        diff_minus = diff_minus.max((tset.pseudovector[a] - crate::algebra::I * tset.vector[a]).norm());
        diff_plus = diff_plus.max((tset.pseudovector[a] + crate::algebra::I * tset.vector[a]).norm());
    }
    PairProfile {
        sc: tset.scalar.norm(),
        psc: tset.pseudoscalar.norm(),
        vec: max_of(&tset.vector),
        pvec: max_of(&tset.pseudovector),
        ten: max_of(&tset.tensor),
        s: max_of(&iso.s),
        t: max_of(&iso.t),
        diff_minus,
        diff_plus,
    }
}

/// Classifies a spinor pair into its most restrictive vanishing pattern.
///
/// Patterns are tested most-constrained first; a group counts as zero below
/// tol·scale² and as structurally nonzero above 1e-6·scale².
pub fn pair_case_classify(phi: &Spinor4, psi: &Spinor4, tol: f64) -> PairCaseLabel {
    let scale = phi.max_abs().max(psi.max_abs());
    if scale == 0.0 {
        return PairCaseLabel::Generic;
    }
    let zt = tol * scale * scale;
    let ft = 1e-6 * scale * scale;
    let p = pair_profile(&decompose_pair(phi, psi));

    if p.vec <= zt && p.pvec <= zt && p.s <= zt && p.t > ft {
        return PairCaseLabel::VectorsZeroBranch1;
    }
    if p.vec <= zt && p.pvec <= zt && p.t <= zt && p.s > ft {
        return PairCaseLabel::VectorsZeroBranch2;
    }
    if p.ten <= zt && p.sc <= zt && p.psc <= zt && p.diff_minus <= zt && p.vec > ft {
        return PairCaseLabel::TensorZeroBranch1;
    }
    if p.ten <= zt && p.sc <= zt && p.psc <= zt && p.diff_plus <= zt && p.vec > ft {
        return PairCaseLabel::TensorZeroBranch2;
    }
    if p.sc <= zt && p.psc <= zt && p.vec > ft && p.pvec > ft {
        return PairCaseLabel::ScalarPseudoscalarZero;
    }
    if p.pvec <= zt && p.vec > ft {
        return PairCaseLabel::PseudovectorZero;
    }
    if p.vec <= zt && p.pvec > ft {
        return PairCaseLabel::VectorZero;
    }
    if p.psc <= zt && p.sc > ft {
        return PairCaseLabel::PsiNonzeroTildeZero;
    }
    if p.sc <= zt && p.psc > ft {
        return PairCaseLabel::PsiZeroTildeNonzero;
    }
    PairCaseLabel::Generic
}

/// Inputs for [`pair_case_build`]: a base spinor and the proportionality
/// constants the requested case consumes.
#[derive(Debug, Clone, Copy)]
pub struct PairCaseParams {
    pub base: Spinor4,
    pub mu: ComplexScalar,
    pub nu: ComplexScalar,
}

fn degenerate(reason: &str) -> SectorError {
    SectorError::DegenerateBuild {
        reason: reason.to_string(),
    }
}

/// Constructs a spinor pair realizing the requested case from a base spinor
/// and constants, then verifies the case's defining zero pattern.
pub fn pair_case_build(
    case: PairCaseLabel,
    params: &PairCaseParams,
) -> Result<(Spinor4, Spinor4), SectorError> {
    let b = params.base;
    let (mu, nu) = (params.mu, params.nu);
    let upper_sq = b.a.norm_sqr() + b.b.norm_sqr();
    let lower_sq = b.c.norm_sqr() + b.d.norm_sqr();

    let (phi, psi) = match case {
        PairCaseLabel::ScalarPseudoscalarZero => {
            (b, Spinor4::new(mu * b.a, mu * b.b, nu * b.c, nu * b.d))
        }
        PairCaseLabel::PseudovectorZero => (b, b.scaled(mu)),
        PairCaseLabel::VectorZero => {
            (b, Spinor4::new(mu * b.a, mu * b.b, -mu * b.c, -mu * b.d))
        }
        PairCaseLabel::VectorsZeroBranch1 => (
            Spinor4::new(ZERO, ZERO, b.c, b.d),
            Spinor4::new(ZERO, ZERO, mu, nu),
        ),
        PairCaseLabel::VectorsZeroBranch2 => (
            Spinor4::new(b.a, b.b, ZERO, ZERO),
            Spinor4::new(mu, nu, ZERO, ZERO),
        ),
        PairCaseLabel::TensorZeroBranch1 => (
            Spinor4::new(ZERO, ZERO, b.c, b.d),
            Spinor4::new(mu, nu, ZERO, ZERO),
        ),
        PairCaseLabel::TensorZeroBranch2 => (
            Spinor4::new(b.a, b.b, ZERO, ZERO),
            Spinor4::new(ZERO, ZERO, mu, nu),
        ),
        PairCaseLabel::PsiNonzeroTildeZero => {
            if upper_sq == 0.0 || lower_sq == 0.0 {
                return Err(degenerate(
                    "both 2-spinor blocks of the base must be nonzero",
                ));
            }
            let psi = Spinor4::new(
                mu * b.b.conj() / c(upper_sq, 0.0),
                -mu * b.a.conj() / c(upper_sq, 0.0),
                -mu * b.d.conj() / c(lower_sq, 0.0),
                mu * b.c.conj() / c(lower_sq, 0.0),
            );
            (b, psi)
        }
        PairCaseLabel::PsiZeroTildeNonzero => {
            if upper_sq == 0.0 || lower_sq == 0.0 {
                return Err(degenerate(
                    "both 2-spinor blocks of the base must be nonzero",
                ));
            }
            let psi = Spinor4::new(
                mu * b.b.conj() / c(upper_sq, 0.0),
                -mu * b.a.conj() / c(upper_sq, 0.0),
                mu * b.d.conj() / c(lower_sq, 0.0),
                -mu * b.c.conj() / c(lower_sq, 0.0),
            );
            (b, psi)
        }
        PairCaseLabel::Generic => {
            return Err(degenerate("the generic case has no defining constraint"))
        }
    };

    verify_case_pattern(case, &phi, &psi)?;
    Ok((phi, psi))
}

/// Checks the defining zero groups (to rounding) and the defining nonzero
/// requirement of a constructed case pair.
fn verify_case_pattern(
    case: PairCaseLabel,
    phi: &Spinor4,
    psi: &Spinor4,
) -> Result<(), SectorError> {
    let scale = phi.max_abs().max(psi.max_abs());
    if scale == 0.0 {
        return Err(degenerate("constructed pair is identically zero"));
    }
    let zt = 1e-12 * scale * scale;
    let p = pair_profile(&decompose_pair(phi, psi));
    let (zeros, required): (Vec<(&str, f64)>, (&str, f64)) = match case {
        PairCaseLabel::ScalarPseudoscalarZero => (
            vec![("scalar", p.sc), ("pseudoscalar", p.psc)],
            ("any component", p.vec.max(p.pvec).max(p.ten)),
        ),
        PairCaseLabel::PseudovectorZero => (
            vec![("pseudovector", p.pvec)],
            ("any component", p.sc.max(p.vec).max(p.ten)),
        ),
        PairCaseLabel::VectorZero => (
            vec![("vector", p.vec), ("scalar", p.sc), ("pseudoscalar", p.psc)],
            ("pseudovector", p.pvec),
        ),
        PairCaseLabel::VectorsZeroBranch1 => (
            vec![("vector", p.vec), ("pseudovector", p.pvec), ("s", p.s)],
            ("t", p.t),
        ),
        PairCaseLabel::VectorsZeroBranch2 => (
            vec![("vector", p.vec), ("pseudovector", p.pvec), ("t", p.t)],
            ("s", p.s),
        ),
        PairCaseLabel::TensorZeroBranch1 => (
            vec![
                ("tensor", p.ten),
                ("scalar", p.sc),
                ("pseudoscalar", p.psc),
                ("pseudovector - i*vector", p.diff_minus),
            ],
            ("vector", p.vec),
        ),
        PairCaseLabel::TensorZeroBranch2 => (
            vec![
                ("tensor", p.ten),
                ("scalar", p.sc),
                ("pseudoscalar", p.psc),
                ("pseudovector + i*vector", p.diff_plus),
            ],
            ("vector", p.vec),
        ),
        PairCaseLabel::PsiNonzeroTildeZero => {
            (vec![("pseudoscalar", p.psc)], ("scalar", p.sc))
        }
        PairCaseLabel::PsiZeroTildeNonzero => {
            (vec![("scalar", p.sc)], ("pseudoscalar", p.psc))
        }
        PairCaseLabel::Generic => (vec![], ("", 1.0)),
    };
    for (name, value) in zeros {
        if value > zt {
            return Err(degenerate(&format!(
                "{name} group fails to vanish (|{name}| = {value:.3e})"
            )));
        }
    }
    let (req_name, req_value) = required;
    if req_value <= zt {
        return Err(degenerate(&format!(
            "required nonzero group {req_name} vanished"
        )));
    }
    Ok(())
}
