//! Face distributions and coin biases.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Absolute tolerance on the sum of a distribution and on equality of
/// entries when testing uniformity.
pub const TOLERANCE: f64 = 1e-12;

/// Probability vector over the faces `1..=n` of a die, `n >= 2`.
///
/// Face `i` (1-based in prose) is stored at index `i - 1`. The constructor
/// never renormalizes; use [`Distribution::normalize`] for that.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_entries(&probs)?;
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > TOLERANCE {
            return Err(Error::BadSum(sum));
        }
        Ok(Self { probs })
    }

    /// Divides every entry by the total. Fails on negative or non-finite
    /// entries and on an all-zero vector.
    pub fn normalize(mut weights: Vec<f64>) -> Result<Self> {
        check_entries(&weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::BadSum(sum));
        }
        for w in &mut weights {
            *w /= sum;
        }
        Self::new(weights)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewFaces(n));
        }
        Self::new(alloc::vec![1.0 / n as f64; n])
    }

    /// All mass on `face` (0-based index).
    pub fn point_mass(n: usize, face: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewFaces(n));
        }
        if face >= n {
            return Err(Error::InvalidArgument("point-mass face out of range"));
        }
        let mut probs = alloc::vec![0.0; n];
        probs[face] = 1.0;
        Self::new(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn faces(&self) -> usize {
        self.probs.len()
    }

    /// 0-based indices of faces with positive probability.
    pub fn support(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_point_mass(&self) -> bool {
        self.probs.iter().any(|&p| (p - 1.0).abs() <= TOLERANCE)
    }

    /// True when every face in the support carries the same mass, within
    /// [`TOLERANCE`]. A point mass is uniform on its one-face support.
    pub fn is_uniform_on_support(&self) -> bool {
        let (lo, hi) = self
            .probs
            .iter()
            .filter(|&&p| p > 0.0)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
                (lo.min(p), hi.max(p))
            });
        hi - lo <= TOLERANCE
    }
}

fn check_entries(probs: &[f64]) -> Result<()> {
    if probs.len() < 2 {
        return Err(Error::TooFewFaces(probs.len()));
    }
    for (face, &value) in probs.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidProbability { face, value });
        }
    }
    Ok(())
}

/// Probability `p` that a coin lands heads.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CoinBias(f64);

impl CoinBias {
    pub const FAIR: CoinBias = CoinBias(0.5);

    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BiasOutOfRange(p));
        }
        Ok(Self(p))
    }

    pub fn p(self) -> f64 {
        self.0
    }

    /// `p ∈ {0, 1}`: the coin always shows the same side.
    pub fn is_degenerate(self) -> bool {
        self.0 == 0.0 || self.0 == 1.0
    }

    /// `p − p²`, the probability of one specific mixed pair (HT or TH).
    pub fn mixed_pair(self) -> f64 {
        self.0 - self.0 * self.0
    }

    /// Two-face distribution `(p, 1 − p)`: heads first, tails second.
    pub fn to_distribution(self) -> Distribution {
        Distribution {
            probs: alloc::vec![self.0, 1.0 - self.0],
        }
    }
}

impl TryFrom<f64> for CoinBias {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}
