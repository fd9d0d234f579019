//! Plain-text stream formats: tosses as `H`/`T`, sounds as `C`/`W`, bits as
//! `0`/`1`. Input is case-insensitive and ignores spaces, tabs and line
//! breaks; output is uppercase with a trailing newline.

use fairflip_core::extractor::{SoundEvent, Toss};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("illegal {what} character {found:?} at byte offset {offset}")]
pub struct TextError {
    pub what: &'static str,
    pub found: char,
    pub offset: usize,
}

fn parse_symbols<T>(
    input: &str,
    what: &'static str,
    symbol: impl Fn(char) -> Option<T>,
) -> Result<Vec<T>, TextError> {
    input
        .char_indices()
        .filter(|(_, c)| !matches!(c, ' ' | '\t' | '\n' | '\r'))
        .map(|(offset, c)| {
            symbol(c.to_ascii_uppercase()).ok_or(TextError {
                what,
                found: c,
                offset,
            })
        })
        .collect()
}

pub fn parse_tosses(input: &str) -> Result<Vec<Toss>, TextError> {
    parse_symbols(input, "toss", |c| match c {
        'H' => Some(Toss::Heads),
        'T' => Some(Toss::Tails),
        _ => None,
    })
}

pub fn parse_sounds(input: &str) -> Result<Vec<SoundEvent>, TextError> {
    parse_symbols(input, "sound", |c| match c {
        'C' => Some(SoundEvent::Clap),
        'W' => Some(SoundEvent::Whistle),
        _ => None,
    })
}

pub fn format_tosses(tosses: &[Toss]) -> String {
    tosses
        .iter()
        .map(|t| if t.is_heads() { 'H' } else { 'T' })
        .collect()
}

pub fn format_sounds(sounds: &[SoundEvent]) -> String {
    sounds
        .iter()
        .map(|s| match s {
            SoundEvent::Clap => 'C',
            SoundEvent::Whistle => 'W',
        })
        .collect()
}

pub fn format_bits(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}
