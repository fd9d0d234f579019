//! IO, text formats, parallel drivers and the command-line front end for
//! [`fairflip_core`].

pub mod cli;
pub mod dist;
pub mod output;
pub mod parallel;
pub mod text;

pub use fairflip_core as core;
