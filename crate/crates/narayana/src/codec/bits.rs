//! Packed bit storage for codeword streams. Bit i of a stream lives in byte
//! i/8, most significant bit first, and any bits past `bit_length` in the
//! final byte are zero.

/// Append-only packed bit buffer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitBuffer {
    bytes: Vec<u8>,
    bit_length: usize,
}

impl BitBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wrap raw bytes; every bit of every byte counts as content.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let bit_length = bytes.len() * 8;
        BitBuffer { bytes, bit_length }
    }

    pub fn bit_length(&self) -> usize {
        self.bit_length
    }

    pub fn is_empty(&self) -> bool {
        self.bit_length == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.bit_length.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let i = self.bit_length;
            self.bytes[i / 8] |= 1 << (7 - i % 8);
        }
        self.bit_length += 1;
    }

    pub fn extend_bits(&mut self, bits: impl IntoIterator<Item = bool>) {
        for bit in bits {
            self.push(bit);
        }
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        if i >= self.bit_length {
            return None;
        }
        Some(self.bytes[i / 8] & (1 << (7 - i % 8)) != 0)
    }

    /// Invert one bit in place. Used by the damage experiments.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.bit_length, "bit {i} out of range");
        self.bytes[i / 8] ^= 1 << (7 - i % 8);
    }

    /// The packed bytes, zero-padded to the byte boundary.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn cursor(&self) -> BitCursor<'_> {
        BitCursor {
            buffer: self,
            position: 0,
        }
    }
}

impl FromIterator<bool> for BitBuffer {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut buf = BitBuffer::new();
        buf.extend_bits(iter);
        buf
    }
}

/// A read position into a `BitBuffer`.
#[derive(Debug, Clone)]
pub struct BitCursor<'a> {
    buffer: &'a BitBuffer,
    position: usize,
}

impl BitCursor<'_> {
    pub fn position(&self) -> usize {
        self.position
    }

    pub fn remaining(&self) -> usize {
        self.buffer.bit_length() - self.position
    }

    pub fn read(&mut self) -> Option<bool> {
        let bit = self.buffer.get(self.position)?;
        self.position += 1;
        Some(bit)
    }

    pub fn seek(&mut self, position: usize) {
        assert!(position <= self.buffer.bit_length(), "seek past end");
        self.position = position;
    }
}
