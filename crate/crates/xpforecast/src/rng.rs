//! Counter-based random streams.
//!
//! Draw `i` of node `j` gets its own generator keyed by `(seed, i, hash(j))`,
//! so sampling is bit-identical no matter how draws are split across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a over the node id; stable across platforms and runs.
pub fn node_hash(id: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in id.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Generator for a single (seed, draw, node) cell.
pub fn stream(seed: u64, draw: u64, node: u64) -> ChaCha8Rng {
    let mut state = seed
        ^ draw.wrapping_mul(0xbf58476d1ce4e5b9)
        ^ node.wrapping_mul(0x94d049bb133111eb);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Derives an independent engine seed for release `index` of a project run.
pub fn release_seed(seed: u64, index: usize) -> u64 {
    let mut state = seed ^ (index as u64).wrapping_mul(0xd1342543de82ef95);
    splitmix64(&mut state)
}
