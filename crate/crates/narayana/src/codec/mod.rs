//! The Narayana universal code and its packed stream format, plus Fibonacci
//! and Elias-gamma baselines.
//!
//! A Narayana codeword is the indicator bit string of the canonical J-series
//! decomposition followed by one extra 1, so every codeword ends in the pair
//! "11" and contains no earlier adjacent ones. That terminal pair is what
//! delimits codewords inside a packed stream.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequences;
use crate::zeckendorf;

mod bits;
pub mod elias_gamma;
pub mod fibonacci;

pub use bits::{BitBuffer, BitCursor};

/// One variable-length codeword, bit 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    bits: Vec<bool>,
}

impl Codeword {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Codeword { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MalformedCodeword {
                    reason: format!("unexpected character {other:?} in codeword"),
                }),
            })
            .collect::<Result<Vec<bool>>>()
            .map(Codeword::from_bits)
    }
}

/// Structural check shared by the terminated codes: at least two bits, the
/// final two bits set, and no adjacent pair of ones anywhere earlier.
fn validate_terminated(bits: &[bool]) -> Result<()> {
    if bits.len() < 2 {
        return Err(Error::MalformedCodeword {
            reason: format!(
                "codeword of {} bits cannot carry a terminal pair",
                bits.len()
            ),
        });
    }
    if !(bits[bits.len() - 1] && bits[bits.len() - 2]) {
        return Err(Error::MalformedCodeword {
            reason: "codeword does not end in two 1 bits".into(),
        });
    }
    for i in 0..bits.len() - 2 {
        if bits[i] && bits[i + 1] {
            return Err(Error::MalformedCodeword {
                reason: format!("adjacent 1 bits at {i} before the terminal pair"),
            });
        }
    }
    Ok(())
}

/// Encode a positive integer as a Narayana codeword.
pub fn encode(n: u64) -> Result<Codeword> {
    let decomposition = zeckendorf::decompose(n)?;
    let d = decomposition.largest_index();
    let mut bits = vec![false; d + 2];
    for &i in decomposition.indices() {
        bits[i] = true;
    }
    bits[d + 1] = true;
    Ok(Codeword::from_bits(bits))
}

/// Decode one Narayana codeword back to its integer.
pub fn decode(cw: &Codeword) -> Result<u64> {
    let bits = cw.as_slice();
    validate_terminated(bits)?;
    let d = bits.len() - 2;
    let sum: i128 = sequences::with_j_terms(d + 1, |terms| {
        bits[..=d]
            .iter()
            .zip(terms)
            .filter(|(&bit, _)| bit)
            .map(|(_, &term)| term)
            .sum()
    })?;
    u64::try_from(sum).map_err(|_| Error::CapacityExceeded { index: d })
}

/// Bit length of the codeword for `n` without materializing it.
pub fn codeword_length(n: u64) -> Result<u32> {
    Ok(sequences::largest_j_index_leq(n)? as u32 + 2)
}

/// Concatenate the codewords of `values` with no separators. The packed byte
/// form is zero-padded to a byte boundary; zeros can never fake a delimiter.
pub fn encode_stream(values: &[u64]) -> Result<BitBuffer> {
    let mut buffer = BitBuffer::new();
    for &v in values {
        buffer.extend_bits(encode(v)?.iter());
    }
    Ok(buffer)
}

/// Smallest i > from such that bits i-1 and i are both set.
fn find_terminal(buffer: &BitBuffer, from: usize) -> Option<usize> {
    let mut prev = buffer.get(from)?;
    let mut i = from + 1;
    while let Some(bit) = buffer.get(i) {
        if prev && bit {
            return Some(i);
        }
        prev = bit;
        i += 1;
    }
    None
}

fn slice_codeword(buffer: &BitBuffer, start: usize, end: usize) -> Codeword {
    let bits = (start..=end)
        .map(|i| buffer.get(i).expect("slice within bit length"))
        .collect();
    Codeword::from_bits(bits)
}

/// Strict stream decode: every codeword must parse and the residue after the
/// last delimiter must be pure padding (all zero, shorter than a byte).
pub fn decode_stream(buffer: &BitBuffer) -> Result<Vec<u64>> {
    let mut values = Vec::new();
    let mut pos = 0;
    while let Some(end) = find_terminal(buffer, pos) {
        values.push(decode(&slice_codeword(buffer, pos, end))?);
        pos = end + 1;
    }
    let residue = buffer.bit_length() - pos;
    if let Some(set) = (pos..buffer.bit_length()).find(|&i| buffer.get(i) == Some(true)) {
        return Err(Error::TrailingGarbage { bit_position: set });
    }
    if residue >= 8 {
        return Err(Error::TrailingGarbage { bit_position: pos });
    }
    Ok(values)
}

/// Outcome of a resynchronizing decode over a possibly damaged stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LenientDecode {
    pub values: Vec<u64>,
    /// Bit ranges that could not be decoded and were skipped.
    pub skipped: Vec<Range<usize>>,
}

/// Lenient stream decode: slice at every delimiter, keep whatever decodes,
/// and record the bit ranges that did not. Never fails; damage is bounded by
/// the next intact delimiter.
pub fn decode_stream_lenient(buffer: &BitBuffer) -> LenientDecode {
    let mut values = Vec::new();
    let mut skipped = Vec::new();
    let mut pos = 0;
    while let Some(end) = find_terminal(buffer, pos) {
        match decode(&slice_codeword(buffer, pos, end)) {
            Ok(v) => values.push(v),
            Err(_) => skipped.push(pos..end + 1),
        }
        pos = end + 1;
    }
    if (pos..buffer.bit_length()).any(|i| buffer.get(i) == Some(true)) {
        skipped.push(pos..buffer.bit_length());
    }
    LenientDecode { values, skipped }
}
