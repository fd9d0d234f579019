//! `--dist p1,p2,…` parsing.
//!
//! Decimal text rarely sums to 1 within the core's 1e-12, so entries only
//! need to sum to 1 within [`TEXT_TOLERANCE`]; they are then divided by
//! their sum and the applied correction is reported.

use fairflip_core::{Distribution, Error};

pub const TEXT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDistribution {
    pub raw: Vec<f64>,
    pub distribution: Distribution,
    /// `sum(raw) − 1`.
    pub correction: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistError {
    #[error("entry {index} ({text:?}) is not a number")]
    NotANumber { index: usize, text: String },
    #[error("entries sum to {0}, which is not within 1e-9 of 1")]
    BadSum(f64),
    #[error(transparent)]
    Invalid(#[from] Error),
}

pub fn parse_distribution(text: &str) -> Result<ParsedDistribution, DistError> {
    let raw = text
        .split(',')
        .enumerate()
        .map(|(index, part)| {
            let part = part.trim();
            part.parse::<f64>().map_err(|_| DistError::NotANumber {
                index,
                text: part.to_owned(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sum: f64 = raw.iter().sum();
    if raw.len() < 2 {
        return Err(Error::TooFewFaces(raw.len()).into());
    }
    if let Some((face, &value)) = raw.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidProbability { face, value }.into());
    }
    if (sum - 1.0).abs() > TEXT_TOLERANCE {
        return Err(DistError::BadSum(sum));
    }
    let distribution = Distribution::normalize(raw.clone())?;
    Ok(ParsedDistribution {
        raw,
        distribution,
        correction: sum - 1.0,
    })
}
