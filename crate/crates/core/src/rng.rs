//! Seeded randomness.
//!
//! Every random choice in the crate draws from [`SplitMix64`]
//! (increment `0x9E37_79B9_7F4A_7C15`, mixing multipliers
//! `0xBF58_476D_1CE4_E5B9` and `0x94D0_49BB_1331_11EB`), so a seed fully
//! determines the output on every platform.

use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Derive an independent stream from a base seed and a stream tag.
pub fn derived(seed: u64, stream: u64) -> SplitMix64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    SplitMix64::seed_from_u64(z ^ (z >> 31))
}
