//! Deterministic seeding utilities.
//!
//! Every stochastic quantity in this crate is drawn from a stream keyed by
//! (global seed, counter) so that sample `i` of a run is reproducible in
//! isolation and generation order never matters.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 64-bit finalizer from SplitMix64.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for item `index` under `global` seed.
///
/// The two inputs are mixed asymmetrically so that (g, i) and (i, g)
/// collide no more often than random 64-bit values.
#[inline]
pub fn sub_seed(global: u64, index: u64) -> u64 {
    mix64(global ^ mix64(index).rotate_left(17))
}

/// Fixed-algorithm RNG used everywhere; ChaCha8 keeps the stream identical
/// across platforms and crate updates.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal draws for a given seed, in a fixed order.
pub fn standard_normals(seed: u64, n: usize) -> Vec<f64> {
    use rand::Rng;
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| rng.sample(rand_distr::StandardNormal)).collect()
}
