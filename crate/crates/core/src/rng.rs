//! Reproducible random streams.
//!
//! A [`RngStream`] names a ChaCha8 key: `(seed, stream)` are packed into the
//! 256-bit key and batch `b` of a parallel job reads ChaCha stream `b`.
//! Batches have a fixed size, so results never depend on how rayon schedules
//! them or on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Samples per parallel batch.
pub const BATCH_SIZE: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl Default for RngStream {
    fn default() -> Self {
        RngStream::new(DEFAULT_SEED, 0)
    }
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    /// A different stream under the same seed.
    pub fn with_stream(self, stream: u64) -> Self {
        RngStream { stream, ..self }
    }

    /// Generator for sequential use.
    pub fn rng(&self) -> ChaCha8Rng {
        self.substream(0)
    }

    /// Generator for batch `index` of a parallel job.
    pub fn substream(&self, index: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        key[16..].copy_from_slice(b"bip-surplus-rng\0");
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        rng
    }
}

/// Runs `work(rng, count)` on consecutive batches covering `samples` draws
/// and returns the per-batch results in batch order.
pub fn par_batches<A, F>(stream: RngStream, samples: usize, work: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> A + Sync,
{
    let batches = samples.div_ceil(BATCH_SIZE);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = BATCH_SIZE.min(samples - b * BATCH_SIZE);
            let mut rng = stream.substream(b as u64);
            work(&mut rng, count)
        })
        .collect()
}

/// `samples` independent draws of `draw`, in a thread-count independent order.
pub fn par_samples<T, F>(stream: RngStream, samples: usize, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    par_batches(stream, samples, |rng, count| {
        (0..count).map(|_| draw(rng)).collect::<Vec<T>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn identical_streams_repeat() {
        let a: Vec<u64> = (0..8).map(|_| RngStream::new(7, 3).rng().random()).collect();
        let b: Vec<u64> = (0..8).map(|_| RngStream::new(7, 3).rng().random()).collect();
        assert_eq!(a, b);
        let c: u64 = RngStream::new(7, 4).rng().random();
        assert_ne!(a[0], c);
    }

    #[test]
    fn independent_of_thread_count() {
        let stream = RngStream::new(11, 0);
        let draw = |rng: &mut ChaCha8Rng| rng.random::<u32>();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| par_samples(stream, 5000, draw));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| par_samples(stream, 5000, draw));
        assert_eq!(one.len(), 5000);
        assert_eq!(one, four);
    }
}
