//! Classical bit references.
//!
//! Classical bits are plain string identifiers. Two shapes exist:
//!
//! * measurement bits: any name, written by a `MEASURE_Z` gate;
//! * indicator-block outputs, which are zero-cost classical logic and are
//!   self-describing so that a circuit file fully determines them:
//!   - `ind@T:<word>#k`: the 3-bit Z-check syndrome of `<word>` read at the
//!     start of timestep `T`, decoded, and compared with position `k`;
//!     `ind@T:<w1>|<w2>#k` is the AND of the two single-word indicators.
//!   - `par@T:<w1>|<w2>#k`: the zero-purification indicator; each word yields
//!     a single-flip plus logical-parity correction vector, and bit `k` is the
//!     AND of the two vectors' bit `k`.
//!
//! A word is seven sites `r.c` separated by commas, in code-qubit order.
//! A control reference may be prefixed with `!` to negate it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::circuit::Site;
use crate::steane;

pub type Word = [Site; steane::N];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalParseError {
    #[error("empty classical bit identifier")]
    Empty,
    #[error("malformed indicator reference `{0}`")]
    Malformed(String),
    #[error("indicator bit index {0} out of range 0..7")]
    BitIndex(u32),
    #[error("indicator word must list exactly 7 sites, got {0}")]
    WordLength(usize),
    #[error("indicator reads 1 or 2 words, got {0}")]
    WordCount(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndicatorKind {
    /// Bit-flip indicator: decode the syndrome to a single position.
    Decode,
    /// Purification indicator: single position plus logical parity.
    Purify,
}

/// A zero-cost indicator evaluation: which words, when, and which output bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndicatorTap {
    pub kind: IndicatorKind,
    pub timestep: usize,
    pub words: Vec<Word>,
    pub bit: u8,
}

impl IndicatorTap {
    /// Identifier of the whole 7-bit indicator output (the tap without `#k`).
    pub fn block_id(&self) -> String {
        let mut s = String::new();
        write_block(&mut s, self.kind, self.timestep, &self.words);
        s
    }
}

fn write_block(out: &mut String, kind: IndicatorKind, timestep: usize, words: &[Word]) {
    use core::fmt::Write;
    let prefix = match kind {
        IndicatorKind::Decode => "ind",
        IndicatorKind::Purify => "par",
    };
    let _ = write!(out, "{prefix}@{timestep}:");
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push('|');
        }
        for (j, s) in w.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}.{}", s.row, s.col);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BitSource {
    Named(String),
    Indicator(IndicatorTap),
}

/// One entry of a gate's `classical_controls`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlRef {
    pub negated: bool,
    pub source: BitSource,
}

impl ControlRef {
    pub fn named(name: &str) -> Self {
        Self { negated: false, source: BitSource::Named(name.to_string()) }
    }

    pub fn indicator(kind: IndicatorKind, timestep: usize, words: &[Word], bit: u8) -> Self {
        Self {
            negated: false,
            source: BitSource::Indicator(IndicatorTap { kind, timestep, words: words.to_vec(), bit }),
        }
    }

    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    /// Name of the underlying bit as it must appear in `classical_bits`.
    pub fn bit_name(&self) -> String {
        match &self.source {
            BitSource::Named(n) => n.clone(),
            BitSource::Indicator(tap) => {
                let mut s = tap.block_id();
                s.push('#');
                s.push_str(&tap.bit.to_string());
                s
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, ClassicalParseError> {
        let (negated, body) = match text.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if body.is_empty() {
            return Err(ClassicalParseError::Empty);
        }
        let kind = if body.starts_with("ind@") {
            IndicatorKind::Decode
        } else if body.starts_with("par@") {
            IndicatorKind::Purify
        } else {
            return Ok(Self { negated, source: BitSource::Named(body.to_string()) });
        };
        let bad = || ClassicalParseError::Malformed(text.to_string());
        let rest = &body[4..];
        let (t, rest) = rest.split_once(':').ok_or_else(bad)?;
        let timestep: usize = t.parse().map_err(|_| bad())?;
        let (words_txt, bit_txt) = rest.rsplit_once('#').ok_or_else(bad)?;
        let bit: u32 = bit_txt.parse().map_err(|_| bad())?;
        if bit >= steane::N as u32 {
            return Err(ClassicalParseError::BitIndex(bit));
        }
        let mut words = Vec::new();
        for w in words_txt.split('|') {
            let sites = w
                .split(',')
                .map(|s| {
                    let (r, c) = s.split_once('.').ok_or_else(bad)?;
                    Ok(Site::new(r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?))
                })
                .collect::<Result<Vec<Site>, ClassicalParseError>>()?;
            let word: Word = sites.as_slice().try_into().map_err(|_| ClassicalParseError::WordLength(sites.len()))?;
            words.push(word);
        }
        let expected_ok = match kind {
            IndicatorKind::Decode => (1..=2).contains(&words.len()),
            IndicatorKind::Purify => words.len() == 2,
        };
        if !expected_ok {
            return Err(ClassicalParseError::WordCount(words.len()));
        }
        Ok(Self { negated, source: BitSource::Indicator(IndicatorTap { kind, timestep, words, bit: bit as u8 }) })
    }
}

impl fmt::Display for ControlRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        f.write_str(&self.bit_name())
    }
}
