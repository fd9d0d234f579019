//! Closed-form probabilities and expectations.
//!
//! Dice quantities are built from the power sums `Σ pᵢᵏ`; coin quantities
//! are polynomials or rationals in `p`. All arithmetic is `f64`.

use crate::{CoinBias, Distribution, Error, ProtocolKind, Result};

fn power_sum(d: &Distribution, k: u32) -> f64 {
    d.probs().iter().map(|&p| (1..k).fold(p, |acc, _| acc * p)).sum()
}

/// Probability that two pairs of throws both match: `(Σ pᵢ²)²`.
pub fn pr_two_doubles(d: &Distribution) -> f64 {
    let s = power_sum(d, 2);
    s * s
}

/// Probability that three throws agree: `Σ pᵢ³`.
pub fn pr_triple(d: &Distribution) -> f64 {
    power_sum(d, 3)
}

/// Probability that two throws agree: `Σ pᵢ²`.
pub fn pr_match(d: &Distribution) -> f64 {
    power_sum(d, 2)
}

/// `Pr{C = B | B ≠ A} = Σ pᵢ²(1 − pᵢ) / Σ pᵢ(1 − pᵢ)`.
///
/// A point mass never produces `B ≠ A`, so the conditioning is undefined.
pub fn pr_match_given_mismatch(d: &Distribution) -> Result<f64> {
    let (num, den) = d
        .probs()
        .iter()
        .fold((0.0, 0.0), |(num, den), &p| (num + p * p * (1.0 - p), den + p * (1.0 - p)));
    if den <= 0.0 || d.is_point_mass() {
        return Err(Error::DegenerateConditioning);
    }
    Ok(num / den)
}

/// Advantage of the triple over two doubles for a coin,
/// `d(p) = −4p⁴ + 8p³ − 5p² + p`.
pub fn triple_advantage(b: CoinBias) -> f64 {
    let p = b.p();
    p * (1.0 + p * (-5.0 + p * (8.0 - 4.0 * p)))
}

/// Maximizers of [`triple_advantage`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantagePeak {
    pub p_low: f64,
    pub p_high: f64,
    pub value: f64,
}

/// `d'(p) = −(2p − 1)(8p² − 8p + 1)`, so the interior maxima sit at the roots
/// of `8p² − 8p + 1`: `1/2 ∓ 1/(2√2)`, where `d = 1/16`.
pub fn argmax_triple_advantage() -> AdvantagePeak {
    let half_width = core::f64::consts::FRAC_1_SQRT_2 / 2.0;
    AdvantagePeak {
        p_low: 0.5 - half_width,
        p_high: 0.5 + half_width,
        value: 0.0625,
    }
}

fn require_non_degenerate(protocol: ProtocolKind, b: CoinBias) -> Result<f64> {
    if b.is_degenerate() {
        return Err(Error::NonTermination { protocol, p: b.p() });
    }
    Ok(b.mixed_pair())
}

/// Expected number of tosses until `protocol` decides.
///
/// For [`ProtocolKind::SoundVonNeumann`] the base-setting toss is left out
/// (see [`ProtocolKind::has_initial_toss`]); every other figure counts all
/// tosses. With `q = p − p²`:
///
/// | protocol         | expected tosses            |
/// |------------------|----------------------------|
/// | `VonNeumann`     | `1/q`                      |
/// | `SingleSound`    | `2`                        |
/// | `SoundVonNeumann`| `2p/(1−p) + 2(1−p)/p`      |
/// | `FourTossNaive`  | `1/(−2p⁴ + 4p³ − 3p² + p)` |
/// | `Blind`          | `1/q + 1`                  |
/// | `FirstWhistle`   | `1/q`                      |
///
/// The sound-based von Neumann game keeps its base through every
/// non-deciding turn, so from base H a turn decides only when its second
/// toss is T (probability `1 − p`). It is therefore slower than von
/// Neumann's method except at `p = 1/2`. Deciding at the first whistle of
/// any parity costs one toss less than the blind game, the same as von
/// Neumann's method.
pub fn expected_tosses(protocol: ProtocolKind, b: CoinBias) -> Result<f64> {
    if protocol == ProtocolKind::SingleSound {
        return Ok(2.0);
    }
    let q = require_non_degenerate(protocol, b)?;
    let p = b.p();
    Ok(match protocol {
        ProtocolKind::VonNeumann | ProtocolKind::FirstWhistle => 1.0 / q,
        ProtocolKind::SoundVonNeumann => 2.0 * p / (1.0 - p) + 2.0 * (1.0 - p) / p,
        ProtocolKind::FourTossNaive => 1.0 / (p * (1.0 + p * (-3.0 + p * (4.0 - 2.0 * p)))),
        ProtocolKind::Blind => 1.0 / q + 1.0,
        ProtocolKind::SingleSound => unreachable!(),
    })
}

/// Player 1's winning probability.
///
/// The three biased protocols all reduce to "two tosses agree", giving
/// `p² + (1 − p)² = 2p² − 2p + 1`; the fair ones give 1/2.
pub fn flawed_win_probability(protocol: ProtocolKind, b: CoinBias) -> Result<f64> {
    let p = b.p();
    match protocol {
        ProtocolKind::SingleSound => Ok(2.0 * p * p - 2.0 * p + 1.0),
        ProtocolKind::SoundVonNeumann | ProtocolKind::FirstWhistle => {
            require_non_degenerate(protocol, b)?;
            Ok(2.0 * p * p - 2.0 * p + 1.0)
        }
        ProtocolKind::VonNeumann | ProtocolKind::FourTossNaive | ProtocolKind::Blind => {
            require_non_degenerate(protocol, b)?;
            Ok(0.5)
        }
    }
}

/// Per-protocol figures for a coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolFigures {
    pub protocol: ProtocolKind,
    pub expected_tosses: f64,
    pub p1_win: f64,
}

/// Every closed-form quantity for one distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactReport {
    pub pr_triple: f64,
    pub pr_two_doubles: f64,
    pub advantage: f64,
    pub pr_match: f64,
    /// `None` for a point mass.
    pub pr_match_given_mismatch: Option<f64>,
    /// Filled for coin inputs with `0 < p < 1`.
    pub protocols: Option<[ProtocolFigures; 6]>,
}

impl ExactReport {
    pub fn for_distribution(d: &Distribution) -> Self {
        let pr_triple = pr_triple(d);
        let pr_two_doubles = pr_two_doubles(d);
        Self {
            pr_triple,
            pr_two_doubles,
            advantage: pr_triple - pr_two_doubles,
            pr_match: pr_match(d),
            pr_match_given_mismatch: pr_match_given_mismatch(d).ok(),
            protocols: None,
        }
    }

    pub fn for_coin(b: CoinBias) -> Self {
        let mut report = Self::for_distribution(&b.to_distribution());
        if !b.is_degenerate() {
            report.protocols = Some(ProtocolKind::ALL.map(|protocol| ProtocolFigures {
                protocol,
                expected_tosses: expected_tosses(protocol, b).expect("non-degenerate"),
                p1_win: flawed_win_probability(protocol, b).expect("non-degenerate"),
            }));
        }
        report
    }
}
