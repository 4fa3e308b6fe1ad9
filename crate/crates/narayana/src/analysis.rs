//! Quantitative analysis of the code: the length histogram law, the
//! bits-versus-n curve, representability coverage of variant sequences,
//! cross-codec benchmarking, and bit-damage resynchronization experiments.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution as Sampler;
use serde::Serialize;

use crate::codec::{self, elias_gamma, fibonacci, BitBuffer};
use crate::error::{Error, Result};
use crate::sequences::{self, SequenceTable};
use crate::zeckendorf::{self, RepresentabilityConstraint, SearchOptions};

/// One codeword-length class: how many integers in scope encode to `length`
/// bits, and whether every integer of that length is in scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LengthClass {
    pub length: u32,
    pub count: u64,
    pub complete: bool,
}

/// Codeword length distribution over `1..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthHistogram {
    max_n: u64,
    classes: Vec<LengthClass>,
}

impl LengthHistogram {
    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// Classes in ascending length order. Only lengths that occur are listed.
    pub fn classes(&self) -> &[LengthClass] {
        &self.classes
    }

    pub fn count(&self, length: u32) -> u64 {
        self.classes
            .iter()
            .find(|c| c.length == length)
            .map_or(0, |c| c.count)
    }

    pub fn total(&self) -> u64 {
        self.classes.iter().map(|c| c.count).sum()
    }
}

/// Count codeword lengths for every n in `1..=max_n`. For each complete
/// class the count lands back on the Narayana sequence itself: a class of
/// length m holds exactly N(m-2) integers.
pub fn length_histogram(max_n: u64) -> Result<LengthHistogram> {
    assert!(max_n >= 1, "max_n must be positive");
    sequences::with_j_terms_spanning(max_n, |terms| {
        let mut counts: Vec<u64> = Vec::new();
        for n in 1..=max_n {
            let d = terms.partition_point(|&t| t <= n as i128) - 1;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        let classes = counts
            .iter()
            .enumerate()
            .map(|(d, &count)| LengthClass {
                length: d as u32 + 2,
                count,
                complete: terms[d + 1] - 1 <= max_n as i128,
            })
            .collect();
        LengthHistogram { max_n, classes }
    })
}

/// One step of the bits-versus-n curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    pub n: u64,
    pub bits: u32,
}

/// Codeword length for every n in `1..=max_n`. The curve is a monotone step
/// function whose jumps sit exactly on the J-series terms.
pub fn length_curve(max_n: u64) -> Result<Vec<CurvePoint>> {
    assert!(max_n >= 1, "max_n must be positive");
    sequences::with_j_terms_spanning(max_n, |terms| {
        (1..=max_n)
            .map(|n| {
                let d = terms.partition_point(|&t| t <= n as i128) - 1;
                CurvePoint {
                    n,
                    bits: d as u32 + 2,
                }
            })
            .collect()
    })
}

/// Representability survey of one variant sequence against the claims
/// reported for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub variant_a: i64,
    pub constraint: RepresentabilityConstraint,
    pub max_n: u64,
    /// Values with no representation under the constraint, ascending.
    pub unrepresentable: Vec<u64>,
    /// Values whose search exceeded the node budget; status unknown.
    pub indeterminate: Vec<u64>,
    /// Values the literature lists as unrepresentable for this variant,
    /// restricted to the surveyed range.
    pub claimed_unrepresentable: Vec<u64>,
    /// Claims the search contradicts by finding a representation.
    pub contradicted_claims: Vec<u64>,
    /// Values found unrepresentable that no claim mentions.
    pub unclaimed_unrepresentable: Vec<u64>,
}

/// Unrepresentability claims reported in the literature for the variant
/// sequences seeded a = -1, -2, -3. Recorded for comparison, never asserted
/// as ground truth; the exhaustive search is the arbiter.
pub fn claimed_unrepresentable(a: i64) -> &'static [u64] {
    match a {
        -1 => &[3, 15],
        -2 => &[2],
        -3 => &[2, 13, 19],
        _ => &[],
    }
}

/// Exhaustively test every n in `1..=max_n` for representability over the
/// variant sequence seeded `a`, and diff the outcome against the recorded
/// claims in both directions.
pub fn variant_coverage(
    a: i64,
    max_n: u64,
    constraint: RepresentabilityConstraint,
) -> Result<CoverageReport> {
    assert!(
        (1..=10_000).contains(&max_n),
        "coverage search is exhaustive; keep max_n at desk scale"
    );
    let table = SequenceTable::variant(a);
    let options = SearchOptions::default();
    let mut unrepresentable = Vec::new();
    let mut indeterminate = Vec::new();
    for n in 1..=max_n {
        match zeckendorf::representable(n, &table, constraint, &options) {
            Ok(true) => {}
            Ok(false) => unrepresentable.push(n),
            Err(Error::SearchBudgetExceeded { .. }) => indeterminate.push(n),
            Err(e) => return Err(e),
        }
    }
    let claimed: Vec<u64> = claimed_unrepresentable(a)
        .iter()
        .copied()
        .filter(|&c| c <= max_n)
        .collect();
    let contradicted_claims = claimed
        .iter()
        .copied()
        .filter(|c| !unrepresentable.contains(c) && !indeterminate.contains(c))
        .collect();
    let unclaimed_unrepresentable = unrepresentable
        .iter()
        .copied()
        .filter(|n| !claimed.contains(n))
        .collect();
    Ok(CoverageReport {
        variant_a: a,
        constraint,
        max_n,
        unrepresentable,
        indeterminate,
        claimed_unrepresentable: claimed,
        contradicted_claims,
        unclaimed_unrepresentable,
    })
}

/// The codecs the benchmark can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodecId {
    Narayana,
    Fibonacci,
    EliasGamma,
}

impl CodecId {
    pub const ALL: [CodecId; 3] = [CodecId::Narayana, CodecId::Fibonacci, CodecId::EliasGamma];

    pub fn name(self) -> &'static str {
        match self {
            CodecId::Narayana => "narayana",
            CodecId::Fibonacci => "fibonacci",
            CodecId::EliasGamma => "elias-gamma",
        }
    }

    pub fn codeword_length(self, n: u64) -> Result<u32> {
        match self {
            CodecId::Narayana => codec::codeword_length(n),
            CodecId::Fibonacci => fibonacci::codeword_length(n),
            CodecId::EliasGamma => Ok(elias_gamma::codeword_length(n)),
        }
    }
}

impl fmt::Display for CodecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodecId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "narayana" => Ok(CodecId::Narayana),
            "fibonacci" => Ok(CodecId::Fibonacci),
            "elias-gamma" => Ok(CodecId::EliasGamma),
            other => Err(format!(
                "unknown codec {other:?}; expected narayana, fibonacci, or elias-gamma"
            )),
        }
    }
}

/// Source distribution for benchmark samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// Uniform over `1..=max`.
    Uniform { max: u64 },
    /// Zipf over `1..=max` with the given exponent.
    Zipf { exponent: f64, max: u64 },
    /// Shifted geometric over `1..`: n has probability (1-p)^(n-1) * p.
    Geometric { p: f64 },
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform { max } => write!(f, "uniform:{max}"),
            Distribution::Zipf { exponent, max } => write!(f, "zipf:{exponent}:{max}"),
            Distribution::Geometric { p } => write!(f, "geometric:{p}"),
        }
    }
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse_u64 = |v: &str| {
            v.parse::<u64>()
                .map_err(|e| format!("bad integer {v:?} in distribution spec: {e}"))
        };
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| format!("bad number {v:?} in distribution spec: {e}"))
        };
        match parts.as_slice() {
            ["uniform", max] => {
                let max = parse_u64(max)?;
                if max < 1 {
                    return Err("uniform upper bound must be at least 1".into());
                }
                Ok(Distribution::Uniform { max })
            }
            ["zipf", exponent, max] => {
                let exponent = parse_f64(exponent)?;
                let max = parse_u64(max)?;
                if !(exponent.is_finite() && exponent > 0.0) {
                    return Err("zipf exponent must be positive and finite".into());
                }
                if max < 1 {
                    return Err("zipf upper bound must be at least 1".into());
                }
                Ok(Distribution::Zipf { exponent, max })
            }
            ["geometric", p] => {
                let p = parse_f64(p)?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err("geometric p must be in (0, 1]".into());
                }
                Ok(Distribution::Geometric { p })
            }
            _ => Err(format!(
                "unknown distribution {s:?}; expected uniform:K, zipf:S:K, or geometric:P"
            )),
        }
    }
}

/// How many values to draw for a benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleCount {
    /// Enumerate the whole support once. Only defined for uniform
    /// distributions, where it yields exact averages.
    Exhaustive,
    Count(u64),
}

/// Draw the benchmark sample. Deterministic for a given seed.
pub fn draw_samples(
    distribution: &Distribution,
    count: SampleCount,
    seed: u64,
) -> Result<Vec<u64>> {
    match count {
        SampleCount::Exhaustive => match distribution {
            Distribution::Uniform { max } => Ok((1..=*max).collect()),
            _ => panic!("exhaustive sampling is only defined for uniform distributions"),
        },
        SampleCount::Count(count) => {
            assert!(count >= 1, "sample count must be positive");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut samples = Vec::with_capacity(count as usize);
            match distribution {
                Distribution::Uniform { max } => {
                    for _ in 0..count {
                        samples.push(rng.random_range(1..=*max));
                    }
                }
                Distribution::Zipf { exponent, max } => {
                    let zipf = rand_distr::Zipf::new(*max as f64, *exponent)
                        .expect("parameters validated at construction");
                    for _ in 0..count {
                        samples.push(zipf.sample(&mut rng) as u64);
                    }
                }
                Distribution::Geometric { p } => {
                    let geometric = rand_distr::Geometric::new(*p)
                        .expect("parameters validated at construction");
                    for _ in 0..count {
                        let failures = geometric.sample(&mut rng);
                        let value = failures
                            .checked_add(1)
                            .ok_or(Error::CapacityExceeded { index: 0 })?;
                        samples.push(value);
                    }
                }
            }
            Ok(samples)
        }
    }
}

/// Bits spent by one codec on one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub codec: CodecId,
    pub distribution: String,
    pub samples: u64,
    pub total_bits: u64,
    pub mean_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
}

/// Measure mean bits per value for each codec on one shared sample drawn
/// from `distribution`. Reports measurements; asserts nothing about which
/// codec should win.
pub fn compare_codes(
    distribution: &Distribution,
    count: SampleCount,
    seed: u64,
    codecs: &[CodecId],
) -> Result<BenchReport> {
    let sample = draw_samples(distribution, count, seed)?;
    let mut records = Vec::with_capacity(codecs.len());
    for &codec_id in codecs {
        let mut total_bits: u64 = 0;
        for &value in &sample {
            total_bits += codec_id.codeword_length(value)? as u64;
        }
        records.push(BenchRecord {
            codec: codec_id,
            distribution: distribution.to_string(),
            samples: sample.len() as u64,
            total_bits,
            mean_bits: total_bits as f64 / sample.len() as f64,
        });
    }
    Ok(BenchReport { records })
}

/// Outcome of flipping one bit in a packed stream and re-decoding leniently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResyncTrial {
    pub flip_position: usize,
    /// Symbols lost or altered before decoding realigned: the edit distance
    /// between original and decoded sequences, so an inserted spurious
    /// symbol counts the same as a destroyed one.
    pub symbols_lost: usize,
    /// Index into the original sequence where decoding realigned.
    pub resync_symbol: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResyncReport {
    pub trial_count: usize,
    pub trials: Vec<ResyncTrial>,
    pub mean_symbols_lost: f64,
    pub max_symbols_lost: usize,
}

/// Minimum number of substitutions, insertions, and deletions turning `a`
/// into `b`. Run on trimmed damage windows, which a single bit flip keeps
/// tiny.
fn edit_distance(a: &[u64], b: &[u64]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let substitute = diagonal + usize::from(x != y);
            diagonal = row[j + 1];
            row[j + 1] = substitute.min(row[j] + 1).min(diagonal + 1);
        }
    }
    row[b.len()]
}

fn evaluate_damage(values: &[u64], damaged: &BitBuffer, flip_position: usize) -> ResyncTrial {
    let decoded = codec::decode_stream_lenient(damaged).values;
    let prefix = values
        .iter()
        .zip(&decoded)
        .take_while(|(a, b)| a == b)
        .count();
    let tail_room = values.len().min(decoded.len()) - prefix;
    let suffix = values
        .iter()
        .rev()
        .zip(decoded.iter().rev())
        .take(tail_room)
        .take_while(|(a, b)| a == b)
        .count();
    let original_window = &values[prefix..values.len() - suffix];
    let decoded_window = &decoded[prefix..decoded.len() - suffix];
    ResyncTrial {
        flip_position,
        symbols_lost: edit_distance(original_window, decoded_window),
        resync_symbol: values.len() - suffix,
    }
}

/// Flip one bit of the byte-padded stream for `values` and measure how much
/// of the sequence a lenient re-decode loses before realigning.
pub fn resync_trial(values: &[u64], flip_position: usize) -> Result<ResyncTrial> {
    let stream = codec::encode_stream(values)?;
    let mut damaged = BitBuffer::from_bytes(stream.as_bytes().to_vec());
    assert!(
        flip_position < damaged.bit_length(),
        "flip position must land inside the stream"
    );
    damaged.flip(flip_position);
    Ok(evaluate_damage(values, &damaged, flip_position))
}

/// Seeded Monte-Carlo over random flip positions on one stream.
pub fn resync_experiment(values: &[u64], trial_count: usize, seed: u64) -> Result<ResyncReport> {
    assert!(trial_count >= 1, "need at least one trial");
    let stream = codec::encode_stream(values)?;
    let clean = BitBuffer::from_bytes(stream.as_bytes().to_vec());
    assert!(!clean.is_empty(), "cannot damage an empty stream");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = Vec::with_capacity(trial_count);
    for _ in 0..trial_count {
        let position = rng.random_range(0..clean.bit_length());
        let mut damaged = clean.clone();
        damaged.flip(position);
        trials.push(evaluate_damage(values, &damaged, position));
    }
    let total_lost: usize = trials.iter().map(|t| t.symbols_lost).sum();
    let max_symbols_lost = trials.iter().map(|t| t.symbols_lost).max().unwrap_or(0);
    Ok(ResyncReport {
        trial_count,
        mean_symbols_lost: total_lost as f64 / trial_count as f64,
        max_symbols_lost,
        trials,
    })
}
