//! Fairness tests for bit counts.

use crate::{Error, Result};

/// Smallest sample either test accepts.
pub const MIN_SAMPLES: u64 = 100;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BitCounts {
    pub zeros: u64,
    pub ones: u64,
}

impl BitCounts {
    pub fn new(zeros: u64, ones: u64) -> Self {
        Self { zeros, ones }
    }

    /// Counts a slice of 0/1 bits; anything non-zero counts as a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let ones = bits.iter().filter(|&&b| b != 0).count() as u64;
        Self {
            zeros: bits.len() as u64 - ones,
            ones,
        }
    }

    pub fn total(&self) -> u64 {
        self.zeros + self.ones
    }

    fn require(&self) -> Result<f64> {
        let total = self.total();
        if total < MIN_SAMPLES {
            return Err(Error::InsufficientData {
                have: total,
                need: MIN_SAMPLES,
            });
        }
        Ok(total as f64)
    }
}

/// Significance levels with tabulated chi-square (df = 1) critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Significance {
    #[default]
    P05,
    P01,
    P001,
}

impl Significance {
    pub fn alpha(self) -> f64 {
        match self {
            Significance::P05 => 0.05,
            Significance::P01 => 0.01,
            Significance::P001 => 0.001,
        }
    }

    pub fn critical_value(self) -> f64 {
        match self {
            Significance::P05 => 3.841,
            Significance::P01 => 6.635,
            Significance::P001 => 10.828,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub reject: bool,
}

/// Pearson goodness-of-fit of the counts against a fair bit, df = 1.
pub fn chi_square_uniform(counts: BitCounts, level: Significance) -> Result<ChiSquare> {
    let total = counts.require()?;
    let expected = total / 2.0;
    let statistic = [counts.zeros, counts.ones]
        .iter()
        .map(|&observed| {
            let diff = observed as f64 - expected;
            diff * diff / expected
        })
        .sum::<f64>();
    Ok(ChiSquare {
        statistic,
        reject: statistic > level.critical_value(),
    })
}

/// `z = (ones/total − p0) / sqrt(p0(1 − p0)/total)`.
pub fn proportion_z(counts: BitCounts, p0: f64) -> Result<f64> {
    let total = counts.require()?;
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::InvalidArgument("p0 must lie strictly between 0 and 1"));
    }
    let rate = counts.ones as f64 / total;
    Ok((rate - p0) / libm::sqrt(p0 * (1.0 - p0) / total))
}

/// Normal-approximation interval `rate ± z·sqrt(rate(1 − rate)/n)`, clamped
/// to `[0, 1]`.
pub fn normal_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let rate = successes as f64 / nf;
    let half = z * libm::sqrt(rate * (1.0 - rate) / nf);
    ((rate - half).max(0.0), (rate + half).min(1.0))
}

pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let rate = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (rate + z2 / (2.0 * nf)) / denom;
    let half = z * libm::sqrt(rate * (1.0 - rate) / nf + z2 / (4.0 * nf * nf)) / denom;
    // at rate 0 or 1 rounding can leave the bound a hair inside
    ((centre - half).max(0.0).min(rate), (centre + half).min(1.0).max(rate))
}
