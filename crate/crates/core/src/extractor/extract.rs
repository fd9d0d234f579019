use alloc::vec::Vec;

use super::machines::{AnySoundMachine, Decider, VonNeumann};
use super::{SoundEvent, Step, Toss, Transducer};
use crate::protocol::InputKind;
use crate::{Error, ProtocolKind, Result};

/// Any protocol fed with raw tosses. Sound protocols hear the referee's
/// sounds; after each decision the referee forgets its base, so the next
/// game's first toss is silent.
#[derive(Debug, Clone)]
pub enum TossDriver {
    VonNeumann(VonNeumann),
    Sounds {
        referee: Transducer,
        machine: AnySoundMachine,
    },
}

impl TossDriver {
    pub fn new(protocol: ProtocolKind) -> Self {
        match AnySoundMachine::new(protocol) {
            None => Self::VonNeumann(VonNeumann::default()),
            Some(machine) => Self::Sounds {
                referee: Transducer::new(),
                machine,
            },
        }
    }
}

impl Decider for TossDriver {
    type Event = Toss;

    fn feed(&mut self, toss: Toss) -> Step {
        match self {
            Self::VonNeumann(m) => m.feed(toss),
            Self::Sounds { referee, machine } => {
                let Some(sound) = referee.push(toss) else {
                    return Step::Pending;
                };
                let step = machine.feed(sound);
                if let Step::Decided(_) = step {
                    referee.reset();
                }
                step
            }
        }
    }

    fn reset(&mut self) {
        match self {
            Self::VonNeumann(m) => m.reset(),
            Self::Sounds { referee, machine } => {
                referee.reset();
                machine.reset();
            }
        }
    }
}

/// Back-to-back games over one continuous sound stream.
///
/// Each game starts at the toss after the previous game's decisive toss, so
/// the single sound bridging two games carries no information for either and
/// is skipped.
#[derive(Debug, Clone)]
pub struct BitExtractor {
    machine: AnySoundMachine,
    skip_next: bool,
}

impl BitExtractor {
    /// `None` for [`ProtocolKind::VonNeumann`].
    pub fn new(protocol: ProtocolKind) -> Option<Self> {
        AnySoundMachine::new(protocol).map(|machine| Self {
            machine,
            skip_next: false,
        })
    }

    pub fn push(&mut self, sound: SoundEvent) -> Option<u8> {
        if core::mem::take(&mut self.skip_next) {
            return None;
        }
        match self.machine.feed(sound) {
            Step::Pending => None,
            Step::Decided(outcome) => {
                self.skip_next = true;
                Some(outcome.winner.bit())
            }
        }
    }
}

/// Input handed to [`extract_bits`].
#[derive(Debug, Clone, Copy)]
pub enum Input<'a> {
    Tosses(&'a [Toss]),
    Sounds(&'a [SoundEvent]),
}

/// One bit per completed game, player 1 → `1`. A trailing unfinished
/// game is dropped.
///
/// Sound protocols accept raw tosses too and transduce them; von Neumann
/// needs tosses.
pub fn extract_bits(protocol: ProtocolKind, input: Input<'_>) -> Result<Vec<u8>> {
    match input {
        Input::Tosses(tosses) => {
            let mut driver = TossDriver::new(protocol);
            Ok(tosses
                .iter()
                .filter_map(|&t| match driver.feed(t) {
                    Step::Decided(outcome) => Some(outcome.winner.bit()),
                    Step::Pending => None,
                })
                .collect())
        }
        Input::Sounds(sounds) => {
            let mut extractor = BitExtractor::new(protocol).ok_or(Error::InputKindMismatch {
                protocol,
                expected: InputKind::Tosses,
            })?;
            Ok(sounds.iter().filter_map(|&s| extractor.push(s)).collect())
        }
    }
}
