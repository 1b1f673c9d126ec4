//! Seeded random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for a top-level seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `shard` derived from `seed`, for deterministic parallel sampling.
pub fn shard(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Split `n` draws into shards of at most `chunk`; returns (shard index, count) pairs.
pub fn shard_plan(n: usize, chunk: usize) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut left = n;
    let mut i = 0u64;
    while left > 0 {
        let c = left.min(chunk);
        out.push((i, c));
        left -= c;
        i += 1;
    }
    out
}
