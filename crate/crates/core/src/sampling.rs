//! Deterministic sample generation for tests and the verification harness.

use rand::RngExt;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{c, ComplexScalar};
use crate::decompose::Spinor4;

/// Stream cipher RNG fixed by a 64-bit seed; identical seeds replay identical samples.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex number with real and imaginary parts uniform on [−1, 1].
pub fn random_complex(rng: &mut ChaCha8Rng) -> ComplexScalar {
    c(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Spinor with all four components drawn by [`random_complex`].
pub fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor4 {
    Spinor4::new(
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
    )
}

/// Uniform real sample in [lo, hi].
pub fn random_real(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

/// Uniformly oriented unit 3-vector (rejection-sampled from the unit box).
pub fn random_unit_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 0.1 && norm <= 1.0 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_replay_equal_spinors() {
        let a = random_spinor(&mut rng_from_seed(42));
        let b = random_spinor(&mut rng_from_seed(42));
        assert_eq!(a, b);
        let c_ = random_spinor(&mut rng_from_seed(43));
        assert_ne!(a, c_);
    }

    #[test]
    fn components_stay_in_unit_box() {
        let mut rng = rng_from_seed(7);
        for _ in 0..200 {
            let z = random_complex(&mut rng);
            assert!(z.re.abs() <= 1.0 && z.im.abs() <= 1.0);
        }
    }
}
