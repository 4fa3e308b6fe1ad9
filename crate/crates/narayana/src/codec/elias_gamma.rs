//! Standard Elias gamma code: floor(log2 n) zeros, then the binary form of n
//! most significant bit first. The leading 1 of the binary part doubles as
//! the unary terminator, which keeps the code prefix-free.

use crate::error::{Error, Result};

use super::{BitBuffer, BitCursor, Codeword};

/// Encode a positive integer as a gamma codeword.
pub fn encode(n: u64) -> Codeword {
    assert!(n >= 1, "n must be positive");
    let width = 64 - n.leading_zeros();
    let mut bits = Vec::with_capacity(2 * width as usize - 1);
    bits.resize(width as usize - 1, false);
    for shift in (0..width).rev() {
        bits.push(n >> shift & 1 == 1);
    }
    Codeword::from_bits(bits)
}

/// Decode one gamma codeword; the bits must form exactly one codeword.
pub fn decode(cw: &Codeword) -> Result<u64> {
    let mut cursor_bits = cw.iter();
    let zeros = cursor_bits.by_ref().take_while(|&b| !b).count();
    let payload: Vec<bool> = cursor_bits.collect();
    if zeros + 1 + payload.len() != cw.len() || payload.len() != zeros {
        return Err(Error::MalformedCodeword {
            reason: format!(
                "gamma codeword of {} bits does not match its {zeros}-zero header",
                cw.len()
            ),
        });
    }
    value_from_payload(zeros, &payload)
}

/// Read one gamma codeword from a stream position.
pub fn read(cursor: &mut BitCursor<'_>) -> Result<u64> {
    let mut zeros = 0usize;
    loop {
        match cursor.read() {
            Some(false) => zeros += 1,
            Some(true) => break,
            None => {
                return Err(Error::MalformedCodeword {
                    reason: "stream ended inside a gamma header".into(),
                })
            }
        }
    }
    let mut payload = Vec::with_capacity(zeros);
    for _ in 0..zeros {
        payload.push(cursor.read().ok_or_else(|| Error::MalformedCodeword {
            reason: "stream ended inside a gamma payload".into(),
        })?);
    }
    value_from_payload(zeros, &payload)
}

fn value_from_payload(zeros: usize, payload: &[bool]) -> Result<u64> {
    if zeros > 63 {
        return Err(Error::CapacityExceeded { index: zeros });
    }
    let mut value: u64 = 1;
    for &bit in payload {
        value = value << 1 | bit as u64;
    }
    Ok(value)
}

/// Bit length of the gamma codeword for `n`: 2*floor(log2 n) + 1.
pub fn codeword_length(n: u64) -> u32 {
    assert!(n >= 1, "n must be positive");
    2 * n.ilog2() + 1
}

/// Concatenated gamma codewords. Gamma has no delimiter, so the exact bit
/// length must travel with the buffer; byte padding would be ambiguous.
pub fn encode_stream(values: &[u64]) -> BitBuffer {
    let mut buffer = BitBuffer::new();
    for &v in values {
        buffer.extend_bits(encode(v).iter());
    }
    buffer
}

/// Decode gamma codewords until the buffer is exhausted.
pub fn decode_stream(buffer: &BitBuffer) -> Result<Vec<u64>> {
    let mut cursor = buffer.cursor();
    let mut values = Vec::new();
    while cursor.remaining() > 0 {
        values.push(read(&mut cursor)?);
    }
    Ok(values)
}
