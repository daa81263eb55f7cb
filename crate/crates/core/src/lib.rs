//! Dirac–Kähler correspondence between 4-spinor pairs and 16-component tensor
//! multiplets.
//!
//! The crate decomposes spinor outer products into a scalar, a pseudoscalar, a
//! vector, a pseudovector, and an antisymmetric tensor; verifies the nonlinear
//! identities that hold on such products; classifies and constructs degenerate
//! spinor-pair configurations and single-boson sectors; checks Lorentz
//! covariance of the whole map; and evaluates plane-wave field equations in
//! both linear and spinor-eliminated nonlinear form.

// Loop variables here are Lorentz indices contracted across several arrays at
// once, so indexed loops read closer to the tensor notation than iterators.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod decompose;
pub mod dynamics;
pub mod identities;
pub mod lorentz;
pub mod sampling;
pub mod sectors;

pub use algebra::{
    build_pauli_basis, build_sigma_generators, levi_civita, minkowski_contract, ComplexScalar,
    Mat2, Mat4, PauliBasis, SigmaGenerators, ETA, TENSOR_INDEX_PAIRS,
};
pub use decompose::{
    decompose_bispinor, decompose_pair, decompose_quad, isotropic_pair, outer_product,
    reconstruct_bispinor, Bispinor, IsotropicPair, Spinor4, TensorSet,
};
pub use dynamics::{
    dirac_plane_wave, gamma_matrices, linear_system_residual, linear_system_residual_with_mass,
    nonlinear_system_residual, onshell_energy, rewrite_envelope_defect, DynamicsError,
    EquationGroupReport, FieldEquationReport, PlaneWaveField, DYNAMICS_BASE_TOL,
};
pub use identities::{
    fit_quad_ansatz, residual_fierz, residual_isotropy, residual_orthogonality,
    residual_quad_ansatz, IdentityReport, QuadAnsatzFit, Verdict, IDENTITY_BASE_TOL,
};
pub use lorentz::{
    covariance_residual, element_from_boost, element_from_rotation, transform_spinor,
    transform_tensorset, LorentzElement, LorentzError,
};
pub use sampling::{random_complex, random_real, random_spinor, random_unit_axis, rng_from_seed};
pub use sectors::{
    group_max_abs, pair_case_build, pair_case_classify, sector_build, sector_classify,
    sector_residuals, sector_spec, ComponentGroup, PairCaseLabel, PairCaseParams, SectorError,
    SectorLabel, SectorSpec,
};
