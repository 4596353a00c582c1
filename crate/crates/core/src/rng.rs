// SPDX-License-Identifier: Apache-2.0

//! Deterministic random streams.
//!
//! Every random quantity is drawn from a ChaCha8 stream keyed by the caller's
//! seed and selected by a [`Purpose`] tag, so the draws for labels, edges,
//! subsampling and permutations never share state. Within a stream, pairs are
//! always visited in the fixed order `i < j`, row by row.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream selector. The discriminant is the ChaCha stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Labels = 1,
    ParentEdges = 2,
    RetainFirst = 3,
    RetainSecond = 4,
    Permutation = 5,
    EdgeClasses = 6,
    HoldoutPartition = 7,
    PowerStart = 8,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Opens the stream for `purpose` under `seed`.
pub fn stream(seed: u64, purpose: Purpose) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(purpose as u64);
    rng
}

/// Mixes `(base, a, b)` into a child seed.
///
/// Used for per-stage seeds inside a trial and per-(cell, trial) seeds in
/// sweeps.
pub fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut state = base ^ 0x5851_f42d_4c95_7f2d;
    let x = splitmix64(&mut state);
    let mut state = x ^ a.wrapping_mul(0xd6e8_feb8_6659_fd93);
    let y = splitmix64(&mut state);
    let mut state = y ^ b.wrapping_mul(0xa076_1d64_78bd_642f);
    splitmix64(&mut state)
}
