use crate::protocol::ProtocolKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a distribution needs at least two faces, got {0}")]
    TooFewFaces(usize),
    #[error("probability of face {face} is {value}; must be finite and non-negative")]
    InvalidProbability { face: usize, value: f64 },
    #[error("probabilities sum to {0}, expected 1")]
    BadSum(f64),
    #[error("coin bias {0} is outside [0, 1]")]
    BiasOutOfRange(f64),
    #[error("conditioning event has probability zero")]
    DegenerateConditioning,
    #[error("{protocol} never terminates with p = {p}")]
    NonTermination { protocol: ProtocolKind, p: f64 },
    #[error("enumeration would visit {0} tuples, more than the cap")]
    Capacity(u128),
    #[error("toss stream is empty")]
    EmptyStream,
    #[error("stream ended before a decision was reached")]
    IncompleteStream,
    #[error("{protocol} reads {expected} input")]
    InputKindMismatch {
        protocol: ProtocolKind,
        expected: crate::protocol::InputKind,
    },
    #[error("need at least {need} samples, got {have}")]
    InsufficientData { have: u64, need: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
