//! Seeded random parameter draws for the verification checks.
//!
//! Field variables are drawn from the disk |z| <= 0.9, rejecting draws for
//! which any radicand `1 - rho^k z^2` comes within 1e-3 of the negative real
//! axis. Inside that disk every radicand stays in the right half-plane, so
//! the principal-branch identities between differently grouped radicals hold
//! and none of the checked identities can fail from a branch flip alone; the
//! rejection guards plugin tables whose radicands may stray further.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{DaParams, PsParams};
use crate::numerics::RootOfUnity;

/// The crate-wide deterministic generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stable per-task seed: hashes the tag into the master seed so independent
/// checks draw independent streams while staying reproducible.
pub fn derive_seed(master: u64, tag: &str) -> u64 {
    let mut h = master ^ 0x9e37_79b9_7f4a_7c15;
    for &b in tag.as_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    // splitmix64 finalizer
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

/// Distance from `z` to the ray (-inf, 0] on the real axis.
pub fn distance_to_negative_real_axis(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

/// Uniform draw from the disk of the given radius.
pub fn sample_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..(2.0 * std::f64::consts::PI));
    Complex64::from_polar(r, theta)
}

/// Branch-safe field draw: |z| <= 0.9 with every radicand `1 - rho^k z^2`
/// at least 1e-3 away from the negative real axis.
pub fn sample_field(rng: &mut ChaCha8Rng, rho: &RootOfUnity) -> Complex64 {
    loop {
        let z = sample_disk(rng, 0.9);
        let safe = (0..rho.order().saturating_sub(1))
            .all(|k| distance_to_negative_real_axis(1.0 - rho.pow(k) * z * z) >= 1e-3);
        if safe {
            return z;
        }
    }
}

/// Rapidity draw: real and imaginary parts uniform in [-1, 1].
pub fn sample_rapidity(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Full parameter set for an L x L lattice of the N-state family.
pub fn sample_da_params(rng: &mut ChaCha8Rng, l: usize, rho: &RootOfUnity) -> DaParams {
    DaParams {
        u: (0..l).map(|_| sample_rapidity(rng)).collect(),
        v: (0..l).map(|_| sample_rapidity(rng)).collect(),
        alpha: (0..l).map(|_| sample_field(rng, rho)).collect(),
        beta: (0..l).map(|_| sample_field(rng, rho)).collect(),
    }
}

/// Rapidities for the graded family.
pub fn sample_ps_params(rng: &mut ChaCha8Rng, l: usize) -> PsParams {
    PsParams {
        u: (0..l).map(|_| sample_rapidity(rng)).collect(),
        v: (0..l).map(|_| sample_rapidity(rng)).collect(),
    }
}

/// Crossing parameter with |sinh(eta)| kept above 1e-3.
pub fn sample_eta(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let eta = Complex64::new(rng.random_range(0.5..=1.5), rng.random_range(-0.5..=0.5));
        if eta.sinh().norm() > 1e-3 {
            return eta;
        }
    }
}
