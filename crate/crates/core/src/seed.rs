//! Deterministic sub-seed derivation; every random draw flows from one root seed.

/// Mixes `(seed, stream, index)` into an independent-looking 64-bit seed.
pub fn derive(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed
        ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ index.wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub const THICK: u64 = 1;
pub const ROUND_THIN: u64 = 2;
pub const PRESERVER_ROOTS: u64 = 3;
pub const ROUND_PRESERVER: u64 = 4;
pub const TAU: u64 = 5;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ() {
        assert_ne!(derive(0, THICK, 0), derive(0, ROUND_THIN, 0));
        assert_ne!(derive(0, THICK, 0), derive(0, THICK, 1));
        assert_eq!(derive(9, TAU, 3), derive(9, TAU, 3));
    }
}
