//! Monte Carlo best-of-n sampler used as an oracle for the exact PMF.
//!
//! # Reproducibility
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`). Samples are produced
//! in fixed chunks of [`CHUNK_SIZE`] draws; chunk `k` uses the generator
//! seeded with `seed_from_u64(seed)` and switched to stream `k`. Chunks are
//! independent, so they may run on any number of workers and the merged
//! result never depends on the partitioning.
//!
//! One best-of-n draw consumes one `f64` from the stream: the maximum of `n`
//! i.i.d. uniforms has the law of `U^(1/n)`, so with `U` uniform on `[0, 1)`
//! the selected outcome is the first `y` (in reward order) with
//! `ln(U) / n < ln F(y)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bon::{bon_pmf, check_n};
use crate::error::{Error, Result};
use crate::policy::BasePolicy;

/// Draws per independently seeded chunk.
pub const CHUNK_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub n: u64,
    pub num_samples: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    pub empirical_probs: Vec<f64>,
    pub tv_distance: f64,
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Index of the best-of-n outcome for one uniform `u` in `[0, 1)`.
#[inline]
fn select(ln_upper: &[f64], n: f64, u: f64) -> usize {
    let w = u.ln() / n;
    ln_upper.partition_point(|&l| l <= w)
}

fn for_each_chunk<T, F>(num_samples: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let chunks = num_samples.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK_SIZE.min(num_samples - k * CHUNK_SIZE);
            f(&mut chunk_rng(seed, k), len)
        })
        .collect()
}

fn check_args(n: u64, num_samples: u64) -> Result<()> {
    check_n(n)?;
    if num_samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    Ok(())
}

/// Histogram of `num_samples` best-of-n draws and its TV distance to the
/// exact PMF.
pub fn sample_best_of_n(p: &BasePolicy, n: u64, num_samples: u64, seed: u64) -> Result<McReport> {
    check_args(n, num_samples)?;
    let ln_upper = p.cdf().ln_upper();
    let nf = n as f64;
    let l = p.len();
    let partial = for_each_chunk(num_samples, seed, |rng, len| {
        let mut counts = vec![0u64; l];
        for _ in 0..len {
            counts[select(ln_upper, nf, rng.random::<f64>())] += 1;
        }
        counts
    });
    let mut counts = vec![0u64; l];
    for chunk in partial {
        for (c, k) in counts.iter_mut().zip(chunk) {
            *c += k;
        }
    }
    let empirical_probs: Vec<f64> =
        counts.iter().map(|&c| c as f64 / num_samples as f64).collect();
    let exact = bon_pmf(p, n)?;
    let tv_distance = 0.5
        * empirical_probs
            .iter()
            .zip(&exact.probs)
            .map(|(e, q)| (e - q).abs())
            .sum::<f64>();
    Ok(McReport { n, num_samples, seed, counts, empirical_probs, tv_distance })
}

/// Base probability `p(y)` of each sampled best-of-n outcome, in draw order.
pub fn epsilon_n_samples(p: &BasePolicy, n: u64, num_samples: u64, seed: u64) -> Result<Vec<f64>> {
    check_args(n, num_samples)?;
    let ln_upper = p.cdf().ln_upper();
    let probs = p.probs();
    let nf = n as f64;
    let chunks = for_each_chunk(num_samples, seed, |rng, len| {
        (0..len)
            .map(|_| probs[select(ln_upper, nf, rng.random::<f64>())])
            .collect::<Vec<f64>>()
    });
    Ok(chunks.into_iter().flatten().collect())
}
