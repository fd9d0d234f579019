//! Thread-count–independent parallel drivers.
//!
//! Work is cut into fixed chunks before it reaches rayon, each chunk draws
//! from its own substreams, and results are merged by integer addition or
//! in chunk order. The thread count only changes wall time.

use rayon::prelude::*;

use fairflip_core::simulate::{self, SimulationReport, Tally, TrialConfig};
use fairflip_core::{CoinBias, ProtocolKind, Result};

/// Trials per rayon work item.
pub const TRIAL_CHUNK: u64 = 4096;
/// Bit blocks computed per parallel wave in [`seeded_bits`].
pub const BLOCK_WAVE: u64 = 32;

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => job(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(job),
    }
}

/// Parallel [`simulate::run_protocol_trials`]; identical output.
pub fn run_protocol_trials(config: &TrialConfig, threads: Option<usize>) -> Result<SimulationReport> {
    config.validate()?;
    let chunks = config.trials.div_ceil(TRIAL_CHUNK);
    let tally = with_pool(threads, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * TRIAL_CHUNK;
                config.run_range(start..(start + TRIAL_CHUNK).min(config.trials))
            })
            .reduce(Tally::default, Tally::merge)
    });
    Ok(config.report(tally))
}

/// Parallel [`simulate::seeded_bits`]; identical output.
pub fn seeded_bits(
    protocol: ProtocolKind,
    b: CoinBias,
    seed: u64,
    count: usize,
    threads: Option<usize>,
) -> Result<Vec<u8>> {
    simulate::ensure_productive(protocol, b)?;
    with_pool(threads, || {
        let mut bits = Vec::with_capacity(count);
        let mut next_block = 0;
        while bits.len() < count {
            let wave: Vec<Vec<u8>> = (next_block..next_block + BLOCK_WAVE)
                .into_par_iter()
                .map(|block| simulate::seeded_block_bits(protocol, b, seed, block))
                .collect();
            next_block += BLOCK_WAVE;
            for block in wave {
                bits.extend(block);
                if bits.len() >= count {
                    break;
                }
            }
        }
        bits.truncate(count);
        Ok(bits)
    })
}
