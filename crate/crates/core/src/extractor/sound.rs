use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toss {
    Tails,
    Heads,
}

impl Toss {
    /// Tails maps to 0, heads to 1.
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Toss::Heads
        } else {
            Toss::Tails
        }
    }

    pub fn is_heads(self) -> bool {
        self == Toss::Heads
    }

    pub fn flipped(self) -> Self {
        match self {
            Toss::Heads => Toss::Tails,
            Toss::Tails => Toss::Heads,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundEvent {
    Clap,
    Whistle,
}

impl SoundEvent {
    pub fn between(previous: Toss, current: Toss) -> Self {
        if previous == current {
            SoundEvent::Clap
        } else {
            SoundEvent::Whistle
        }
    }
}

/// Online referee: remembers the base result and emits a sound for every
/// toss after the first.
#[derive(Debug, Clone, Copy, Default)]
pub struct Transducer {
    base: Option<Toss>,
}

impl Transducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, toss: Toss) -> Option<SoundEvent> {
        let sound = self.base.map(|base| SoundEvent::between(base, toss));
        self.base = Some(toss);
        sound
    }

    pub fn reset(&mut self) {
        self.base = None;
    }
}

/// Sounds for a whole toss sequence; one shorter than the input.
pub fn transduce(tosses: &[Toss]) -> Result<Vec<SoundEvent>> {
    if tosses.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(tosses
        .windows(2)
        .map(|w| SoundEvent::between(w[0], w[1]))
        .collect())
}
