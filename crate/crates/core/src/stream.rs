//! Reproducible randomness keyed by `(seed, stream_id, trial)`.
//!
//! Generator: ChaCha8. The 256-bit key is four SplitMix64 outputs of `seed`,
//! the ChaCha stream (nonce) is `stream_id`, and trial `i` starts at word
//! position `i · 2^16`. Every trial therefore owns a disjoint block of the
//! keystream and its draws do not depend on how trials are scheduled across
//! threads. ChaCha output is defined bit-for-bit, so sequences are identical on
//! every platform. Floats are built from raw `u64` words here rather than
//! through `rand` distributions, whose value stability is not guaranteed.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const WORDS_PER_TRIAL_LOG2: u32 = 16;
const SEQUENTIAL_DOMAIN: u64 = 0x5EC0_5E0E_D0A1_C4A1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from(seed: u64) -> [u8; 32] {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Generator for trial `trial` of this stream.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(key_from(self.seed));
        rng.set_stream(self.stream_id);
        rng.set_word_pos(u128::from(trial) << WORDS_PER_TRIAL_LOG2);
        rng
    }

    /// A single long generator for bulk sampling (KS checks and the like).
    /// It is keyed apart from the per-trial generators.
    pub fn sequential(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(key_from(self.seed ^ SEQUENTIAL_DOMAIN));
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Uniform on [0, 1) with 53 random bits.
#[inline]
pub fn uniform01<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform on the open interval (0, 1).
#[inline]
pub fn uniform_open01<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
