//! Toss-to-sound transduction and the decision protocols as streaming
//! state machines.
//!
//! A game is a stream of tosses `t₁, t₂, …`. After every toss but the first,
//! the referee claps if it matches the previous toss and whistles
//! otherwise, so sound `i` (1-based) follows toss `i + 1`. Every machine
//! except [`VonNeumann`] consumes sounds only.
//!
//! Machines are fed one event at a time and answer [`Step::Pending`] until
//! they reach a [`DecisionOutcome`]. The `decide_*` helpers run one game over
//! a finite stream; [`extract_bits`] plays games back to back.

mod extract;
mod machines;
mod sound;

pub use extract::{extract_bits, BitExtractor, Input, TossDriver};
pub use machines::{
    decide_blind, decide_first_whistle, decide_four_toss_naive, decide_single_sound,
    decide_sound_von_neumann, decide_von_neumann, AnySoundMachine, Blind, Decider, FirstWhistle,
    FourTossNaive, SingleSound, SoundVonNeumann, VonNeumann,
};
pub use sound::{transduce, SoundEvent, Toss, Transducer};

/// Game winner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    /// Extracted bit: player 1 is `1`, player 2 is `0`.
    pub fn bit(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 0,
        }
    }
}

/// Result of one finished game. Counts start at the game's first toss, so
/// `tosses_consumed == sounds_consumed + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub winner: Player,
    pub tosses_consumed: u64,
    pub sounds_consumed: u64,
}

impl DecisionOutcome {
    fn from_sounds(winner: Player, sounds_consumed: u64) -> Self {
        Self {
            winner,
            tosses_consumed: sounds_consumed + 1,
            sounds_consumed,
        }
    }
}

/// Answer to feeding one event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Pending,
    Decided(DecisionOutcome),
}
