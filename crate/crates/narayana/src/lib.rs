//! Universal integer codes built on the Narayana sequence 1, 1, 1, 2, 3, 4,
//! 6, 9, 13, 19, 28, ... (each term is the previous term plus the term three
//! back).
//!
//! Every positive integer has a unique decomposition into J-series terms
//! (the sequence shifted by two) whose selected indices are at least three
//! apart. Writing those indices as indicator bits and appending a single 1
//! yields a self-delimiting, prefix-free codeword ending in the pair "11"
//! that appears nowhere else. Concatenated codewords therefore decode
//! without separators, and a damaged stream re-synchronizes at the next
//! intact pair.
//!
//! The crate is organized around that pipeline:
//!
//! - [`sequences`]: lazily cached recurrence tables (Narayana, J series,
//!   general and variant seedings, Fibonacci) and the ratio limit, the real
//!   positive root of L^3 - L^2 - 1 = 0.
//! - [`zeckendorf`]: the greedy canonical decomposition and an exhaustive
//!   search oracle for uniqueness and representability questions.
//! - [`codec`]: Narayana encode/decode for single values and packed byte
//!   streams, plus Fibonacci and Elias-gamma baselines.
//! - [`analysis`]: the codeword-length histogram (complete length classes
//!   recover the Narayana sequence), the bits-versus-n curve, variant
//!   coverage surveys, codec benchmarks, and resynchronization experiments.

pub mod analysis;
pub mod codec;
pub mod error;
pub mod sequences;
pub mod zeckendorf;

pub use codec::{
    codeword_length, decode, decode_stream, decode_stream_lenient, encode, encode_stream,
    BitBuffer, BitCursor, Codeword, LenientDecode,
};
pub use error::{Error, Result};
pub use sequences::{
    consecutive_ratios, narayana_ratio_limit, RatioSample, SequenceKind, SequenceTable,
};
pub use zeckendorf::{
    all_decompositions, decompose, recompose, representable, Decomposition,
    RepresentabilityConstraint, SearchOptions,
};
