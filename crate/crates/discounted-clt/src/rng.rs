//! Reproducible random streams.
//!
//! Sampling is keyed by `(seed, stream index)` on ChaCha12, a counter-based
//! generator with 2^64 independent streams per seed. Bulk work is split
//! into fixed-size blocks, one stream per block, so results are
//! bit-identical regardless of how many worker threads execute the blocks.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

/// Samples (or trajectories) per stream block. Part of the determinism
/// contract: changing it changes which stream produces which draw.
pub const BLOCK_LEN: usize = 16_384;

/// Generator for stream `stream` of seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Fills a vector of length `n` by running `fill_block(rng, block_out)` on
/// consecutive blocks of `BLOCK_LEN`, each on its own stream. Blocks run in
/// parallel; output is concatenated in block order, so the result does not
/// depend on the worker count.
pub fn blocked_samples<F>(seed: u64, n: usize, fill_block: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha12Rng, &mut [f64]) + Sync,
{
    let n_blocks = n.div_ceil(BLOCK_LEN);
    let blocks: Vec<Vec<f64>> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let len = BLOCK_LEN.min(n - b * BLOCK_LEN);
            let mut out = vec![0.0; len];
            let mut rng = stream_rng(seed, b as u64);
            fill_block(&mut rng, &mut out);
            out
        })
        .collect();
    let mut all = Vec::with_capacity(n);
    for block in blocks {
        all.extend_from_slice(&block);
    }
    all
}
