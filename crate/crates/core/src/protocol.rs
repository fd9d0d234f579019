//! The closed set of decision protocols.

use core::fmt;
use core::str::FromStr;

/// Which decision protocol is being played.
///
/// `VonNeumann` reads raw tosses; every other protocol only hears the
/// clap/whistle sound produced after each toss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    /// HT wins for player 1, TH for player 2, HH/TT retries.
    VonNeumann,
    /// One sound after the initial toss: clap for player 1, whistle for 2.
    SingleSound,
    /// Von Neumann on sounds: Cl-Wh for player 1, Wh-Cl for player 2.
    SoundVonNeumann,
    /// Sounds after the 2nd and 4th toss of fresh four-toss groups.
    FourTossNaive,
    /// First whistle at an even toss arms one deciding sound.
    Blind,
    /// First whistle at any toss arms one deciding sound.
    FirstWhistle,
}

/// What a protocol's state machine consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Tosses,
    Sounds,
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputKind::Tosses => "toss",
            InputKind::Sounds => "sound",
        })
    }
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 6] = [
        ProtocolKind::VonNeumann,
        ProtocolKind::SingleSound,
        ProtocolKind::SoundVonNeumann,
        ProtocolKind::FourTossNaive,
        ProtocolKind::Blind,
        ProtocolKind::FirstWhistle,
    ];

    /// Command-line tag.
    pub fn tag(self) -> &'static str {
        match self {
            ProtocolKind::VonNeumann => "vn",
            ProtocolKind::SingleSound => "single-sound",
            ProtocolKind::SoundVonNeumann => "sound-vn",
            ProtocolKind::FourTossNaive => "four-toss",
            ProtocolKind::Blind => "blind",
            ProtocolKind::FirstWhistle => "first-whistle",
        }
    }

    pub fn input_kind(self) -> InputKind {
        match self {
            ProtocolKind::VonNeumann => InputKind::Tosses,
            _ => InputKind::Sounds,
        }
    }

    /// Whether expected-toss figures for this protocol leave out the
    /// base-setting toss. Only `SoundVonNeumann` is quoted that way.
    pub fn has_initial_toss(self) -> bool {
        matches!(self, ProtocolKind::SoundVonNeumann)
    }

    /// Whether player 1 wins with probability 1/2 for every `0 < p < 1`.
    pub fn is_fair(self) -> bool {
        matches!(
            self,
            ProtocolKind::VonNeumann | ProtocolKind::FourTossNaive | ProtocolKind::Blind
        )
    }

    /// Tosses that make up one retry unit.
    pub fn turn_length(self) -> usize {
        match self {
            ProtocolKind::FourTossNaive => 4,
            ProtocolKind::FirstWhistle => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownProtocol;

impl fmt::Display for UnknownProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown protocol tag")
    }
}

impl FromStr for ProtocolKind {
    type Err = UnknownProtocol;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        const ALIASES: [(&str, ProtocolKind); 5] = [
            ("von-neumann", ProtocolKind::VonNeumann),
            ("single", ProtocolKind::SingleSound),
            ("sound-von-neumann", ProtocolKind::SoundVonNeumann),
            ("four-toss-naive", ProtocolKind::FourTossNaive),
            ("fw", ProtocolKind::FirstWhistle),
        ];
        let s = s.trim();
        ProtocolKind::ALL
            .iter()
            .map(|&k| (k.tag(), k))
            .chain(ALIASES)
            .find(|(tag, _)| tag.eq_ignore_ascii_case(s))
            .map(|(_, k)| k)
            .ok_or(UnknownProtocol)
    }
}
