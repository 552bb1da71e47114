use std::num::NonZeroUsize;
use std::ops::Range;

use thinbasis_core::verify::{ChunkRunner, Sequential};

/// Spreads chunks over scoped worker threads in contiguous groups, so the
/// concatenated output keeps chunk order.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    jobs: NonZeroUsize,
}

impl Threaded {
    pub fn new(jobs: NonZeroUsize) -> Self {
        Self { jobs }
    }

    pub fn jobs(&self) -> usize {
        self.jobs.get()
    }
}

impl ChunkRunner for Threaded {
    fn run(&self, chunks: &[Range<usize>], job: &(dyn Fn(Range<usize>) -> Vec<u64> + Sync)) -> Vec<Vec<u64>> {
        let jobs = self.jobs.get();
        if jobs == 1 || chunks.len() <= 1 {
            return Sequential.run(chunks, job);
        }
        let per = chunks.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let workers: Vec<_> = chunks
                .chunks(per)
                .map(|group| s.spawn(move || group.iter().cloned().map(job).collect::<Vec<_>>()))
                .collect();
            workers
                .into_iter()
                .flat_map(|w| w.join().expect("coverage worker panicked"))
                .collect()
        })
    }
}
