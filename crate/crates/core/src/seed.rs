//! Deterministic seed derivation.
//!
//! Every stochastic operation in the crate takes an explicit seed; Monte
//! Carlo code derives per-trial, per-purpose child seeds from a master
//! seed so that trials are independent streams yet the whole run is a
//! pure function of the master seed.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 step; a solid 64-bit mixer with full avalanche.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `(master, purpose, index)`.
///
/// `purpose` keeps streams for different uses of the same trial apart
/// (e.g. scene draw vs. noise draw).
pub fn child_seed(master: u64, purpose: u64, index: u64) -> u64 {
    let mut s = master;
    let a = splitmix64(&mut s);
    let mut t = a ^ purpose.wrapping_mul(0xa076_1d64_78bd_642f);
    let b = splitmix64(&mut t);
    let mut u = b ^ index.wrapping_mul(0xe703_7ed1_a0b4_28db);
    splitmix64(&mut u)
}

/// Stream purposes used by the evaluation harness.
pub mod purpose {
    pub const SCENE: u64 = 1;
    pub const NOISE: u64 = 2;
    pub const CLUTTER: u64 = 3;
    pub const KAPPA: u64 = 4;
}

/// The RNG used everywhere; explicit so results are stable across
/// platforms and crate versions.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn child_seeds_differ_across_purpose_and_index() {
        let a = child_seed(7, purpose::SCENE, 0);
        let b = child_seed(7, purpose::NOISE, 0);
        let c = child_seed(7, purpose::SCENE, 1);
        let d = child_seed(8, purpose::SCENE, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn derivation_is_stable() {
        assert_eq!(child_seed(1, 1, 1), child_seed(1, 1, 1));
    }
}
