use super::{DecisionOutcome, Player, SoundEvent, Step, Toss};
use crate::{Error, ProtocolKind, Result};

use SoundEvent::{Clap, Whistle};

/// A protocol as an online state machine.
///
/// After returning [`Step::Decided`] a machine is back in its initial
/// state, and the next event it sees belongs to a new game.
pub trait Decider {
    type Event: Copy;

    fn feed(&mut self, event: Self::Event) -> Step;

    fn reset(&mut self);
}

fn run<M: Decider>(mut machine: M, events: impl IntoIterator<Item = M::Event>) -> Result<DecisionOutcome> {
    for event in events {
        if let Step::Decided(outcome) = machine.feed(event) {
            return Ok(outcome);
        }
    }
    Err(Error::IncompleteStream)
}

/// Von Neumann on raw tosses, in pairs: HT → player 1, TH → player 2.
#[derive(Debug, Clone, Default)]
pub struct VonNeumann {
    tosses: u64,
    first: Option<Toss>,
}

impl Decider for VonNeumann {
    type Event = Toss;

    fn feed(&mut self, toss: Toss) -> Step {
        self.tosses += 1;
        let Some(first) = self.first.take() else {
            self.first = Some(toss);
            return Step::Pending;
        };
        let winner = match (first, toss) {
            (Toss::Heads, Toss::Tails) => Player::One,
            (Toss::Tails, Toss::Heads) => Player::Two,
            _ => return Step::Pending,
        };
        let tosses = self.tosses;
        self.reset();
        Step::Decided(DecisionOutcome {
            winner,
            tosses_consumed: tosses,
            sounds_consumed: tosses - 1,
        })
    }

    fn reset(&mut self) {
        *self = Self::default();
    }
}

/// The first sound decides: clap → player 1, whistle → player 2.
#[derive(Debug, Clone, Default)]
pub struct SingleSound;

impl Decider for SingleSound {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        let winner = match sound {
            Clap => Player::One,
            Whistle => Player::Two,
        };
        Step::Decided(DecisionOutcome::from_sounds(winner, 1))
    }

    fn reset(&mut self) {}
}

/// Sounds in pairs after the base toss: Cl-Wh → player 1, Wh-Cl → player 2.
#[derive(Debug, Clone, Default)]
pub struct SoundVonNeumann {
    sounds: u64,
    first: Option<SoundEvent>,
}

impl Decider for SoundVonNeumann {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        self.sounds += 1;
        let Some(first) = self.first.take() else {
            self.first = Some(sound);
            return Step::Pending;
        };
        let winner = match (first, sound) {
            (Clap, Whistle) => Player::One,
            (Whistle, Clap) => Player::Two,
            _ => return Step::Pending,
        };
        let sounds = self.sounds;
        self.reset();
        Step::Decided(DecisionOutcome::from_sounds(winner, sounds))
    }

    fn reset(&mut self) {
        *self = Self::default();
    }
}

/// Groups of four fresh tosses. `X` is the sound after the group's 2nd toss
/// and `Y` the one after its 4th; both compare tosses inside the group, so
/// the sound bridging two groups is ignored. Cl-Wh → player 1, Wh-Cl →
/// player 2, anything else starts a new group.
#[derive(Debug, Clone, Default)]
pub struct FourTossNaive {
    sounds: u64,
    x: Option<SoundEvent>,
}

impl Decider for FourTossNaive {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        self.sounds += 1;
        // sound i follows toss i + 1; position of that toss inside its group
        let position = self.sounds % 4 + 1;
        match position {
            2 => self.x = Some(sound),
            4 => {
                let winner = match (self.x.take(), sound) {
                    (Some(Clap), Whistle) => Player::One,
                    (Some(Whistle), Clap) => Player::Two,
                    _ => return Step::Pending,
                };
                let sounds = self.sounds;
                self.reset();
                return Step::Decided(DecisionOutcome::from_sounds(winner, sounds));
            }
            _ => {}
        }
        Step::Pending
    }

    fn reset(&mut self) {
        *self = Self::default();
    }
}

/// The concealed-coin protocol. Only sounds after even-numbered tosses are
/// heard until one of them is a whistle; the very next sound then decides:
/// whistle → player 1, clap → player 2. Always ends on an odd toss.
#[derive(Debug, Clone, Default)]
pub struct Blind {
    sounds: u64,
    armed: bool,
}

impl Decider for Blind {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        self.sounds += 1;
        if self.armed {
            let winner = match sound {
                Whistle => Player::One,
                Clap => Player::Two,
            };
            let sounds = self.sounds;
            self.reset();
            return Step::Decided(DecisionOutcome::from_sounds(winner, sounds));
        }
        // sound i follows toss i + 1, which is even iff i is odd
        let even_parity = self.sounds % 2 == 1;
        if even_parity && sound == Whistle {
            self.armed = true;
        }
        Step::Pending
    }

    fn reset(&mut self) {
        *self = Self::default();
    }
}

/// Like [`Blind`] but armed by the first whistle of either parity. Biased.
#[derive(Debug, Clone, Default)]
pub struct FirstWhistle {
    sounds: u64,
    armed: bool,
}

impl Decider for FirstWhistle {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        self.sounds += 1;
        if self.armed {
            let winner = match sound {
                Whistle => Player::One,
                Clap => Player::Two,
            };
            let sounds = self.sounds;
            self.reset();
            return Step::Decided(DecisionOutcome::from_sounds(winner, sounds));
        }
        self.armed = sound == Whistle;
        Step::Pending
    }

    fn reset(&mut self) {
        *self = Self::default();
    }
}

/// Any sound-driven protocol behind one type.
#[derive(Debug, Clone)]
pub enum AnySoundMachine {
    SingleSound(SingleSound),
    SoundVonNeumann(SoundVonNeumann),
    FourTossNaive(FourTossNaive),
    Blind(Blind),
    FirstWhistle(FirstWhistle),
}

impl AnySoundMachine {
    /// `None` for [`ProtocolKind::VonNeumann`], which needs raw tosses.
    pub fn new(protocol: ProtocolKind) -> Option<Self> {
        Some(match protocol {
            ProtocolKind::VonNeumann => return None,
            ProtocolKind::SingleSound => Self::SingleSound(SingleSound),
            ProtocolKind::SoundVonNeumann => Self::SoundVonNeumann(SoundVonNeumann::default()),
            ProtocolKind::FourTossNaive => Self::FourTossNaive(FourTossNaive::default()),
            ProtocolKind::Blind => Self::Blind(Blind::default()),
            ProtocolKind::FirstWhistle => Self::FirstWhistle(FirstWhistle::default()),
        })
    }
}

impl Decider for AnySoundMachine {
    type Event = SoundEvent;

    fn feed(&mut self, sound: SoundEvent) -> Step {
        match self {
            Self::SingleSound(m) => m.feed(sound),
            Self::SoundVonNeumann(m) => m.feed(sound),
            Self::FourTossNaive(m) => m.feed(sound),
            Self::Blind(m) => m.feed(sound),
            Self::FirstWhistle(m) => m.feed(sound),
        }
    }

    fn reset(&mut self) {
        match self {
            Self::SingleSound(m) => m.reset(),
            Self::SoundVonNeumann(m) => m.reset(),
            Self::FourTossNaive(m) => m.reset(),
            Self::Blind(m) => m.reset(),
            Self::FirstWhistle(m) => m.reset(),
        }
    }
}

pub fn decide_von_neumann(tosses: impl IntoIterator<Item = Toss>) -> Result<DecisionOutcome> {
    run(VonNeumann::default(), tosses)
}

pub fn decide_single_sound(sounds: impl IntoIterator<Item = SoundEvent>) -> Result<DecisionOutcome> {
    run(SingleSound, sounds)
}

pub fn decide_sound_von_neumann(sounds: impl IntoIterator<Item = SoundEvent>) -> Result<DecisionOutcome> {
    run(SoundVonNeumann::default(), sounds)
}

pub fn decide_four_toss_naive(sounds: impl IntoIterator<Item = SoundEvent>) -> Result<DecisionOutcome> {
    run(FourTossNaive::default(), sounds)
}

pub fn decide_blind(sounds: impl IntoIterator<Item = SoundEvent>) -> Result<DecisionOutcome> {
    run(Blind::default(), sounds)
}

pub fn decide_first_whistle(sounds: impl IntoIterator<Item = SoundEvent>) -> Result<DecisionOutcome> {
    run(FirstWhistle::default(), sounds)
}
