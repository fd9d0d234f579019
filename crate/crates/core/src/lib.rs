//! Exact probabilities, clap/whistle decision protocols and seeded Monte
//! Carlo for biased coins and dice.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs or a single-owner state machine; the `fairflip`
//! crate layers parallel drivers, text formats and the CLI on top.
//!
//! Module map:
//!
//! - [`distribution`]: validated face distributions and coin biases.
//! - [`exact`]: closed forms for the dice games and the protocol outcomes.
//! - [`oracle`]: brute-force enumeration and absorbing-chain solves used as
//!   independent ground truth for [`exact`].
//! - [`extractor`]: toss-to-sound transduction and the decision protocols.
//! - [`simulate`]: ChaCha8 substreams, protocol trials and the dice game.
//! - [`stats`]: chi-square and proportion tests on bit counts.

#![no_std]

extern crate alloc;

pub mod distribution;
mod error;
pub mod exact;
pub mod extractor;
pub mod oracle;
pub mod protocol;
pub mod simulate;
pub mod stats;

pub use distribution::{CoinBias, Distribution};
pub use error::{Error, Result};
pub use protocol::{InputKind, ProtocolKind};
