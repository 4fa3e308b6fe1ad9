//! Classical Fibonacci universal code over the distinct terms 1, 2, 3, 5, 8,
//! ... Selected indices are at least 2 apart, and a trailing 1 forms the
//! delimiting "11" pair just as in the Narayana code.

use crate::error::{Error, Result};
use crate::sequences;

use super::{find_terminal, slice_codeword, validate_terminated, BitBuffer, Codeword};

/// Encode a positive integer as a Fibonacci codeword.
pub fn encode(n: u64) -> Result<Codeword> {
    assert!(n >= 1, "n must be positive");
    sequences::with_fibonacci_terms_spanning(n, |terms| {
        let mut remainder = n as i128;
        let mut upper = terms.len();
        let mut indices = Vec::new();
        while remainder > 0 {
            let d = terms[..upper].partition_point(|&t| t <= remainder) - 1;
            indices.push(d);
            remainder -= terms[d];
            upper = d;
        }
        let top = indices[0];
        let mut bits = vec![false; top + 2];
        for i in indices {
            bits[i] = true;
        }
        bits[top + 1] = true;
        Codeword::from_bits(bits)
    })
}

/// Decode one Fibonacci codeword.
pub fn decode(cw: &Codeword) -> Result<u64> {
    let bits = cw.as_slice();
    validate_terminated(bits)?;
    let d = bits.len() - 2;
    let sum: i128 = sequences::with_fibonacci_terms(d + 1, |terms| {
        bits[..=d]
            .iter()
            .zip(terms)
            .filter(|(&bit, _)| bit)
            .map(|(_, &term)| term)
            .sum()
    })?;
    u64::try_from(sum).map_err(|_| Error::CapacityExceeded { index: d })
}

/// Bit length of the Fibonacci codeword for `n`.
pub fn codeword_length(n: u64) -> Result<u32> {
    assert!(n >= 1, "n must be positive");
    sequences::with_fibonacci_terms_spanning(n, |terms| {
        terms.partition_point(|&t| t <= n as i128) as u32 + 1
    })
}

/// Concatenated Fibonacci codewords, delimited by their terminal pairs.
pub fn encode_stream(values: &[u64]) -> Result<BitBuffer> {
    let mut buffer = BitBuffer::new();
    for &v in values {
        buffer.extend_bits(encode(v)?.iter());
    }
    Ok(buffer)
}

/// Strict stream decode; the residue must be pure padding.
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
