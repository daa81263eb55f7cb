//! Maps between 4-spinors, 4×4 bispinors, and the 16-component tensor multiplet:
//! outer products, closed-formula and trace-based decompositions, and the
//! inverse reconstruction.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{
    c, max_abs_mat4, ComplexScalar, Mat2, Mat4, ETA, I, PAULI, SIGMA, TENSOR_INDEX_PAIRS, ZERO,
};

/// One 4-spinor: an undotted 2-spinor block (a, b) over a dotted block (c, d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4 {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c: ComplexScalar,
    pub d: ComplexScalar,
}

impl Spinor4 {
    pub fn new(a: ComplexScalar, b: ComplexScalar, c: ComplexScalar, d: ComplexScalar) -> Self {
        Self { a, b, c, d }
    }

    /// Spinor with the given real components (convenience for fixtures).
    pub fn from_reals(a: f64, b: f64, c_: f64, d: f64) -> Self {
        Self::new(c(a, 0.0), c(b, 0.0), c(c_, 0.0), c(d, 0.0))
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn components(&self) -> [ComplexScalar; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_components(v: [ComplexScalar; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// Componentwise scaling.
    pub fn scaled(&self, factor: ComplexScalar) -> Self {
        Self::new(
            self.a * factor,
            self.b * factor,
            self.c * factor,
            self.d * factor,
        )
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm over the four complex components.
    pub fn norm(&self) -> f64 {
        self.components()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl std::ops::Add for Spinor4 {
    type Output = Spinor4;
    fn add(self, rhs: Spinor4) -> Spinor4 {
        Spinor4::new(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

/// Real/imaginary pair with −0.0 normalized to 0.0 for stable JSON text.
fn json_pair(z: ComplexScalar) -> [f64; 2] {
    [z.re + 0.0, z.im + 0.0]
}

impl Serialize for Spinor4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr: [[f64; 2]; 4] = self.components().map(json_pair);
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spinor4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr: [[f64; 2]; 4] = Deserialize::deserialize(d)?;
        Ok(Spinor4::from_components(repr.map(|p| c(p[0], p[1]))))
    }
}

/// 4×4 complex bispinor with 2×2 blocks (ξ top-left, Δ top-right, W bottom-left, η bottom-right).
#[derive(Debug, Clone, PartialEq)]
pub struct Bispinor {
    pub u: Mat4,
}

impl Bispinor {
    pub fn zero() -> Self {
        Self { u: Mat4::zeros() }
    }

    pub fn from_blocks(xi: Mat2, delta: Mat2, w: Mat2, eta: Mat2) -> Self {
        let mut u = Mat4::zeros();
        u.fixed_view_mut::<2, 2>(0, 0).copy_from(&xi);
        u.fixed_view_mut::<2, 2>(0, 2).copy_from(&delta);
        u.fixed_view_mut::<2, 2>(2, 0).copy_from(&w);
        u.fixed_view_mut::<2, 2>(2, 2).copy_from(&eta);
        Self { u }
    }

    pub fn xi(&self) -> Mat2 {
        self.u.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn delta(&self) -> Mat2 {
        self.u.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn w(&self) -> Mat2 {
        self.u.fixed_view::<2, 2>(2, 0).into_owned()
    }

    pub fn eta(&self) -> Mat2 {
        self.u.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        max_abs_mat4(&self.u)
    }

    /// Largest magnitude over all 2×2 minors; zero (to rounding) iff rank ≤ 1.
    pub fn max_minor_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for r0 in 0..4 {
            for r1 in r0 + 1..4 {
                for c0 in 0..4 {
                    for c1 in c0 + 1..4 {
                        let m = self.u[(r0, c0)] * self.u[(r1, c1)]
                            - self.u[(r0, c1)] * self.u[(r1, c0)];
                        worst = worst.max(m.norm());
                    }
                }
            }
        }
        worst
    }
}

/// The 16 tensor components of a Dirac–Kähler field.
///
/// The antisymmetric tensor stores the independent components in the order
/// (01, 02, 03, 23, 31, 12); see [`TENSOR_INDEX_PAIRS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorSet {
    pub scalar: ComplexScalar,
    pub pseudoscalar: ComplexScalar,
    pub vector: [ComplexScalar; 4],
    pub pseudovector: [ComplexScalar; 4],
    pub tensor: [ComplexScalar; 6],
}

impl TensorSet {
    pub fn zero() -> Self {
        Self {
            scalar: ZERO,
            pseudoscalar: ZERO,
            vector: [ZERO; 4],
            pseudovector: [ZERO; 4],
            tensor: [ZERO; 6],
        }
    }

    /// Antisymmetric access Ψ^{ab} = −Ψ^{ba}, zero on the diagonal.
    pub fn tensor_component(&self, a: usize, b: usize) -> ComplexScalar {
        assert!(a < 4 && b < 4, "tensor indices must lie in 0..4");
        for (slot, &(k, l)) in TENSOR_INDEX_PAIRS.iter().enumerate() {
            if (k, l) == (a, b) {
                return self.tensor[slot];
            }
            if (k, l) == (b, a) {
                return -self.tensor[slot];
            }
        }
        ZERO
    }

    /// Index-lowered vector Ψ_a = η_aa Ψ^a.
    pub fn vector_lowered(&self) -> [ComplexScalar; 4] {
        lower4(&self.vector)
    }

    /// Index-lowered pseudovector Ψ̃_a = η_aa Ψ̃^a.
    pub fn pseudovector_lowered(&self) -> [ComplexScalar; 4] {
        lower4(&self.pseudovector)
    }

    /// Fully lowered tensor component Ψ_{ab} = η_aa η_bb Ψ^{ab}.
    pub fn tensor_component_lowered(&self, a: usize, b: usize) -> ComplexScalar {
        self.tensor_component(a, b) * c(ETA[a] * ETA[b], 0.0)
    }

    /// All 16 components in the fixed order (scalar, pseudoscalar, vector, pseudovector, tensor).
    pub fn flatten(&self) -> [ComplexScalar; 16] {
        let mut out = [ZERO; 16];
        out[0] = self.scalar;
        out[1] = self.pseudoscalar;
        out[2..6].copy_from_slice(&self.vector);
        out[6..10].copy_from_slice(&self.pseudovector);
        out[10..16].copy_from_slice(&self.tensor);
        out
    }

    pub fn from_flat(v: [ComplexScalar; 16]) -> Self {
        let mut vector = [ZERO; 4];
        let mut pseudovector = [ZERO; 4];
        let mut tensor = [ZERO; 6];
        vector.copy_from_slice(&v[2..6]);
        pseudovector.copy_from_slice(&v[6..10]);
        tensor.copy_from_slice(&v[10..16]);
        Self {
            scalar: v[0],
            pseudoscalar: v[1],
            vector,
            pseudovector,
            tensor,
        }
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.flatten().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Componentwise scaling.
    pub fn scaled(&self, factor: ComplexScalar) -> Self {
        Self::from_flat(self.flatten().map(|z| z * factor))
    }
}

impl std::ops::Add for TensorSet {
    type Output = TensorSet;
    fn add(self, rhs: TensorSet) -> TensorSet {
        let a = self.flatten();
        let b = rhs.flatten();
        let mut out = [ZERO; 16];
        for i in 0..16 {
            out[i] = a[i] + b[i];
        }
        TensorSet::from_flat(out)
    }
}

impl std::ops::Sub for TensorSet {
    type Output = TensorSet;
    fn sub(self, rhs: TensorSet) -> TensorSet {
        self + rhs.scaled(c(-1.0, 0.0))
    }
}

#[derive(Serialize, Deserialize)]
struct TensorSetRepr {
    scalar: [f64; 2],
    pseudoscalar: [f64; 2],
    vector: [[f64; 2]; 4],
    pseudovector: [[f64; 2]; 4],
    tensor: [[f64; 2]; 6],
}

impl Serialize for TensorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TensorSetRepr {
            scalar: json_pair(self.scalar),
            pseudoscalar: json_pair(self.pseudoscalar),
            vector: self.vector.map(json_pair),
            pseudovector: self.pseudovector.map(json_pair),
            tensor: self.tensor.map(json_pair),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TensorSetRepr::deserialize(d)?;
        let z = |p: [f64; 2]| c(p[0], p[1]);
        Ok(TensorSet {
            scalar: z(repr.scalar),
            pseudoscalar: z(repr.pseudoscalar),
            vector: repr.vector.map(z),
            pseudovector: repr.pseudovector.map(z),
            tensor: repr.tensor.map(z),
        })
    }
}

/// The two complex 3-vectors built from the self-dual and anti-self-dual tensor halves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicPair {
    /// s_j = Ψ^{0j} + iΨ^{dual(j)} with duals (23, 31, 12).
    pub s: [ComplexScalar; 3],
    /// t_j = Ψ^{0j} − iΨ^{dual(j)}.
    pub t: [ComplexScalar; 3],
}

impl IsotropicPair {
    /// Complex Euclidean 3-dot s·s.
    pub fn s_dot_s(&self) -> ComplexScalar {
        self.s.iter().map(|z| z * z).sum()
    }

    /// Complex Euclidean 3-dot t·t.
    pub fn t_dot_t(&self) -> ComplexScalar {
        self.t.iter().map(|z| z * z).sum()
    }

    /// Complex Euclidean 3-dot s·t.
    pub fn s_dot_t(&self) -> ComplexScalar {
        (0..3).map(|j| self.s[j] * self.t[j]).sum()
    }
}

pub(crate) fn lower4(v: &[ComplexScalar; 4]) -> [ComplexScalar; 4] {
    [v[0], -v[1], -v[2], -v[3]]
}

/// Outer product U = Φ ⊗ Ψ, u[i][j] = Φ_i Ψ_j (always rank ≤ 1).
pub fn outer_product(phi: &Spinor4, psi: &Spinor4) -> Bispinor {
    let p = phi.components();
    let q = psi.components();
    let mut u = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            u[(i, j)] = p[i] * q[j];
        }
    }
    Bispinor { u }
}

/// Decomposes a spinor pair by the closed component formulas (independent of the trace route).
pub fn decompose_pair(phi: &Spinor4, psi: &Spinor4) -> TensorSet {
    let (a, b, cc, d) = (phi.a, phi.b, phi.c, phi.d);
    let (m, n, k, l) = (psi.a, psi.b, psi.c, psi.d);
    let quarter = c(0.25, 0.0);
    let quarter_i = c(0.0, 0.25);

    let scalar = quarter_i * (b * m - a * n + cc * l - d * k);
    let pseudoscalar = -quarter * (b * m - a * n - cc * l + d * k);

    let vector = [
        quarter * (a * l - b * k + d * m - cc * n),
        -quarter * (a * k - b * l + cc * m - d * n),
        -quarter_i * (a * k + b * l + cc * m + d * n),
        quarter * (b * k + a * l + d * m + cc * n),
    ];
    let pseudovector = [
        -quarter_i * (a * l - b * k - d * m + cc * n),
        quarter_i * (a * k - b * l - cc * m + d * n),
        -quarter * (a * k + b * l - cc * m - d * n),
        -quarter_i * (b * k + a * l - d * m - cc * n),
    ];
    let tensor = [
        quarter_i * (a * m - b * n + cc * k - d * l),
        -quarter * (a * m + b * n + cc * k + d * l),
        -quarter_i * (a * n + b * m + cc * l + d * k),
        quarter * (a * m - b * n - cc * k + d * l),
        quarter_i * (a * m + b * n - cc * k - d * l),
        -quarter * (a * n + b * m - cc * l - d * k),
    ];

    TensorSet {
        scalar,
        pseudoscalar,
        vector,
        pseudovector,
        tensor,
    }
}

fn trace(m: &Mat2) -> ComplexScalar {
    m[(0, 0)] + m[(1, 1)]
}

/// Extracts the 16 tensor components of an arbitrary 4×4 bispinor by block traces.
pub fn decompose_bispinor(u: &Bispinor) -> TensorSet {
    let p = &*PAULI;
    let g = &*SIGMA;
    let xi = u.xi();
    let delta = u.delta();
    let w = u.w();
    let eta = u.eta();
    let half = c(0.5, 0.0);

    let u1 = half * trace(&(p.eps * xi));
    let u2 = half * trace(&(p.eps_dot_inv * eta));
    let scalar = c(0.0, 0.5) * (u1 + u2);
    let pseudoscalar = half * (u2 - u1);

    let mut vector = [ZERO; 4];
    let mut pseudovector = [ZERO; 4];
    for l in 0..4 {
        let v_plus = half * trace(&(p.eps_dot_inv * p.sigma_up[l] * delta));
        let v_minus = half * trace(&(p.eps * p.sigma_down[l] * w));
        vector[l] = half * (v_plus + v_minus);
        pseudovector[l] = (v_plus - v_minus) / (c(0.0, 2.0));
    }

    let mut tensor = [ZERO; 6];
    for (slot, &(k, l)) in TENSOR_INDEX_PAIRS.iter().enumerate() {
        let s_half = trace(&(p.eps * g.sigma(k, l) * xi));
        let a_half = trace(&(p.eps_dot_inv * g.sigma_bar(k, l) * eta));
        tensor[slot] = c(0.0, 0.5) * (s_half + a_half);
    }

    TensorSet {
        scalar,
        pseudoscalar,
        vector,
        pseudovector,
        tensor,
    }
}

/// Rebuilds the unique bispinor with the given tensor components (inverse of
/// [`decompose_bispinor`]).
pub fn reconstruct_bispinor(t: &TensorSet) -> Bispinor {
    let p = &*PAULI;
    let g = &*SIGMA;

    let mut sig_sum = Mat2::zeros();
    let mut sigbar_sum = Mat2::zeros();
    for m in 0..4 {
        for n in 0..4 {
            let tl = t.tensor_component_lowered(m, n);
            if tl != ZERO {
                sig_sum += g.sigma(m, n) * tl;
                sigbar_sum += g.sigma_bar(m, n) * tl;
            }
        }
    }

    let xi = (Mat2::identity() * (-I * t.scalar - t.pseudoscalar) + sig_sum * I) * p.eps_inv;
    let eta = (Mat2::identity() * (-I * t.scalar + t.pseudoscalar) + sigbar_sum * I) * p.eps_dot;

    let vl = t.vector_lowered();
    let pl = t.pseudovector_lowered();
    let mut delta = Mat2::zeros();
    let mut w = Mat2::zeros();
    for m in 0..4 {
        delta += p.sigma_down[m] * (vl[m] + I * pl[m]);
        w += p.sigma_up[m] * (vl[m] - I * pl[m]);
    }
    delta *= p.eps_dot;
    w *= p.eps_inv;

    Bispinor::from_blocks(xi, delta, w, eta)
}

/// Decomposes the two-pair sum U = Φ⊗Ψ + Φ′⊗Ψ′ through the trace route.
///
/// Equality with the componentwise sum of the two pair decompositions is a
/// cross-check property, not the implementation.
pub fn decompose_quad(
    phi: &Spinor4,
    psi: &Spinor4,
    phi_p: &Spinor4,
    psi_p: &Spinor4,
) -> TensorSet {
    let u = Bispinor {
        u: outer_product(phi, psi).u + outer_product(phi_p, psi_p).u,
    };
    decompose_bispinor(&u)
}

/// Builds the self-dual/anti-self-dual 3-vectors s and t from the tensor part.
pub fn isotropic_pair(t: &TensorSet) -> IsotropicPair {
    let [t01, t02, t03, t23, t31, t12] = t.tensor;
    IsotropicPair {
        s: [t01 + I * t23, t02 + I * t31, t03 + I * t12],
        t: [t01 - I * t23, t02 - I * t31, t03 - I * t12],
    }
}
