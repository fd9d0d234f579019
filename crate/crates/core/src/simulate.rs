//! Seeded Monte Carlo.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`): the key is expanded from
//! the 64-bit seed by `SeedableRng::seed_from_u64`, and each trial, bit
//! block or player gets its own 64-bit ChaCha stream id. A uniform draw is
//! `(next_u64 >> 11) · 2⁻⁵³`; a toss is heads iff the draw is `< p`, and a
//! die face is the first face whose cumulative mass exceeds the draw.
//!
//! Trial aggregation only adds integers, so splitting trials across any
//! number of workers and merging [`Tally`] values in any order gives the
//! same report.

use core::ops::Range;

use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::extractor::{Decider, DecisionOutcome, Player, Step, Toss, TossDriver};
use crate::stats::{normal_interval, wilson_interval};
use crate::{exact, CoinBias, Distribution, Error, ProtocolKind, Result};

pub const DEFAULT_MAX_TOSSES: u64 = 1_000_000;
pub const DEFAULT_Z: f64 = 3.0;
/// Tosses per block in [`seeded_block_bits`].
pub const BIT_BLOCK_TOSSES: usize = 1 << 16;

/// One reproducible random stream, identified by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct SeededSource {
    rng: ChaCha8Rng,
}

impl SeededSource {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { rng }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn toss(&mut self, b: CoinBias) -> Toss {
        Toss::from_bit(self.unit() < b.p())
    }

    /// 0-based face index, by cumulative scan in face order.
    pub fn face(&mut self, d: &Distribution) -> usize {
        let u = self.unit();
        let mut acc = 0.0;
        let mut last_live = 0;
        for (i, &p) in d.probs().iter().enumerate() {
            if p > 0.0 {
                acc += p;
                last_live = i;
                if u < acc {
                    return i;
                }
            }
        }
        // the sum fell short of 1 by rounding
        last_live
    }
}

/// Plays one game on stream `(seed, trial)`. `None` if `max_tosses` run out.
pub fn run_trial(
    protocol: ProtocolKind,
    b: CoinBias,
    seed: u64,
    trial: u64,
    max_tosses: u64,
) -> Option<DecisionOutcome> {
    let mut source = SeededSource::new(seed, trial);
    let mut driver = TossDriver::new(protocol);
    for _ in 0..max_tosses {
        if let Step::Decided(outcome) = driver.feed(source.toss(b)) {
            return Some(outcome);
        }
    }
    None
}

/// Mergeable trial counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub trials: u64,
    pub p1_wins: u64,
    pub p2_wins: u64,
    pub undecided: u64,
    pub decided_tosses: u64,
    pub decided_tosses_sq: u128,
    pub max_tosses_observed: u64,
}

impl Tally {
    pub fn record(&mut self, outcome: Option<DecisionOutcome>) {
        self.trials += 1;
        match outcome {
            None => self.undecided += 1,
            Some(o) => {
                match o.winner {
                    Player::One => self.p1_wins += 1,
                    Player::Two => self.p2_wins += 1,
                }
                self.decided_tosses += o.tosses_consumed;
                self.decided_tosses_sq += u128::from(o.tosses_consumed) * u128::from(o.tosses_consumed);
                self.max_tosses_observed = self.max_tosses_observed.max(o.tosses_consumed);
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.p1_wins += other.p1_wins;
        self.p2_wins += other.p2_wins;
        self.undecided += other.undecided;
        self.decided_tosses += other.decided_tosses;
        self.decided_tosses_sq += other.decided_tosses_sq;
        self.max_tosses_observed = self.max_tosses_observed.max(other.max_tosses_observed);
        self
    }

    pub fn decided(&self) -> u64 {
        self.p1_wins + self.p2_wins
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntervalKind {
    #[default]
    Normal,
    Wilson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialConfig {
    pub protocol: ProtocolKind,
    pub bias: CoinBias,
    pub trials: u64,
    pub seed: u64,
    pub max_tosses: u64,
    pub z: f64,
    pub interval: IntervalKind,
}

impl TrialConfig {
    pub fn new(protocol: ProtocolKind, bias: CoinBias, trials: u64, seed: u64) -> Self {
        Self {
            protocol,
            bias,
            trials,
            seed,
            max_tosses: DEFAULT_MAX_TOSSES,
            z: DEFAULT_Z,
            interval: IntervalKind::Normal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1"));
        }
        if self.max_tosses < 4 {
            return Err(Error::InvalidArgument("max tosses per trial must be at least 4"));
        }
        if !(self.z.is_finite() && self.z > 0.0) {
            return Err(Error::InvalidArgument("z must be positive"));
        }
        Ok(())
    }

    /// Runs the trials with indices in `range`.
    pub fn run_range(&self, range: Range<u64>) -> Tally {
        let mut tally = Tally::default();
        for trial in range {
            tally.record(run_trial(self.protocol, self.bias, self.seed, trial, self.max_tosses));
        }
        tally
    }

    pub fn report(&self, tally: Tally) -> SimulationReport {
        SimulationReport::from_tally(tally, self.z, self.interval)
    }
}

/// Aggregated trial results.
///
/// Rates and means are over decided trials; with no decided trial the rate
/// is 0 with interval `[0, 1]` and the mean is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationReport {
    pub trials: u64,
    pub p1_wins: u64,
    pub p2_wins: u64,
    pub undecided: u64,
    pub p1_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_tosses: f64,
    pub tosses_std_error: f64,
    /// Trials stopped by the toss cap.
    pub max_tosses_hit: u64,
    pub max_tosses_observed: u64,
}

impl SimulationReport {
    pub fn from_tally(t: Tally, z: f64, interval: IntervalKind) -> Self {
        let decided = t.decided();
        let (p1_rate, ci_low, ci_high, mean_tosses, tosses_std_error) = if decided == 0 {
            (0.0, 0.0, 1.0, 0.0, 0.0)
        } else {
            let n = decided as f64;
            let rate = t.p1_wins as f64 / n;
            let (lo, hi) = match interval {
                IntervalKind::Normal => normal_interval(t.p1_wins, decided, z),
                IntervalKind::Wilson => wilson_interval(t.p1_wins, decided, z),
            };
            let mean = t.decided_tosses as f64 / n;
            let var = if decided > 1 {
                let sq = t.decided_tosses_sq as f64;
                ((sq - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            (rate, lo.min(rate), hi.max(rate), mean, libm::sqrt(var / n))
        };
        Self {
            trials: t.trials,
            p1_wins: t.p1_wins,
            p2_wins: t.p2_wins,
            undecided: t.undecided,
            p1_rate,
            ci_low,
            ci_high,
            mean_tosses,
            tosses_std_error,
            max_tosses_hit: t.undecided,
            max_tosses_observed: t.max_tosses_observed,
        }
    }
}

/// Single-threaded trial run; the `fairflip` crate has a parallel one with
/// identical output.
pub fn run_protocol_trials(config: &TrialConfig) -> Result<SimulationReport> {
    config.validate()?;
    Ok(config.report(config.run_range(0..config.trials)))
}

/// Bits from block `block` of the seeded toss stream: the block's
/// [`BIT_BLOCK_TOSSES`] tosses come from stream `(seed, block)` and games do
/// not continue across blocks.
pub fn seeded_block_bits(protocol: ProtocolKind, b: CoinBias, seed: u64, block: u64) -> Vec<u8> {
    let mut source = SeededSource::new(seed, block);
    let mut driver = TossDriver::new(protocol);
    (0..BIT_BLOCK_TOSSES)
        .filter_map(|_| match driver.feed(source.toss(b)) {
            Step::Decided(outcome) => Some(outcome.winner.bit()),
            Step::Pending => None,
        })
        .collect()
}

/// The first `count` bits of the seeded block sequence.
pub fn seeded_bits(protocol: ProtocolKind, b: CoinBias, seed: u64, count: usize) -> Result<Vec<u8>> {
    ensure_productive(protocol, b)?;
    let mut bits = Vec::with_capacity(count);
    let mut block = 0;
    while bits.len() < count {
        bits.extend(seeded_block_bits(protocol, b, seed, block));
        block += 1;
    }
    bits.truncate(count);
    Ok(bits)
}

/// Errors when `protocol` can never finish a game at this bias.
pub fn ensure_productive(protocol: ProtocolKind, b: CoinBias) -> Result<()> {
    exact::expected_tosses(protocol, b).map(|_| ())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiceOutcome {
    TripleWins,
    DoublesWins,
    Draw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiceGameResult {
    pub rounds: u64,
    pub triple_points: u64,
    pub doubles_points: u64,
    pub outcome: DiceOutcome,
}

/// Stream ids of the two players in [`run_dice_game`].
pub const TRIPLE_STREAM: u64 = 0;
pub const DOUBLES_STREAM: u64 = 1;

/// Triple player throws three times per round and scores on three equal
/// faces; the doubles player throws four times and scores on `A = B` and
/// `C = D`. Each player draws from an own stream.
pub fn run_dice_game(d: &Distribution, rounds: u64, seed: u64) -> Result<DiceGameResult> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be at least 1"));
    }
    let mut triple = SeededSource::new(seed, TRIPLE_STREAM);
    let mut doubles = SeededSource::new(seed, DOUBLES_STREAM);
    let (mut triple_points, mut doubles_points) = (0, 0);
    for _ in 0..rounds {
        let (a, b, c) = (triple.face(d), triple.face(d), triple.face(d));
        if a == b && b == c {
            triple_points += 1;
        }
        let (a, b, c, e) = (doubles.face(d), doubles.face(d), doubles.face(d), doubles.face(d));
        if a == b && c == e {
            doubles_points += 1;
        }
    }
    let outcome = match triple_points.cmp(&doubles_points) {
        core::cmp::Ordering::Greater => DiceOutcome::TripleWins,
        core::cmp::Ordering::Less => DiceOutcome::DoublesWins,
        core::cmp::Ordering::Equal => DiceOutcome::Draw,
    };
    Ok(DiceGameResult {
        rounds,
        triple_points,
        doubles_points,
        outcome,
    })
}
