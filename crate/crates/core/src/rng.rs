//! Counter-based random numbers for cascade thresholds.
//!
//! Thresholds come from Philox4x32-10 (Salmon et al., "Parallel random
//! numbers: as easy as 1, 2, 3"). The 128-bit counter holds
//! `(vertex, repetition)` and the 64-bit key holds the stream key, so the
//! threshold of vertex `v` in repetition `r` is a pure function of
//! `(key, r, v)`. No generator state is carried between draws, which is what
//! makes common-random-number comparisons and parallel evaluation exact.

const PHILOX_M0: u32 = 0xD251_1F53;
const PHILOX_M1: u32 = 0xCD9E_8D57;
const PHILOX_W0: u32 = 0x9E37_79B9;
const PHILOX_W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// One Philox4x32 block with 10 rounds.
pub fn philox4x32_10(counter: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(PHILOX_W0);
            k[1] = k[1].wrapping_add(PHILOX_W1);
        }
        let (hi0, lo0) = mulhilo(PHILOX_M0, c[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

/// SplitMix64 finalizer, used to derive stream keys.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in the open interval (0, 1) for `(key, rep, vertex)`.
#[inline]
pub fn uniform_open(key: u64, rep: u64, vertex: u64) -> f64 {
    let out = philox4x32_10(
        [vertex as u32, (vertex >> 32) as u32, rep as u32, (rep >> 32) as u32],
        [key as u32, (key >> 32) as u32],
    );
    let bits = (u64::from(out[0]) << 32 | u64::from(out[1])) >> 11;
    (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
