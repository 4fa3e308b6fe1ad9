//! `nuc` — command-line front end for the Narayana universal code.
//!
//! Subcommands: `encode`, `decode`, `stats`, `ratio`, `variants`, `bench`.
//! Text integers travel one per line; packed streams use the `.nuc` byte
//! format (codewords concatenated bit 0 first, MSB-first within each byte,
//! zero-padded to a byte boundary).
//!
//! Exit codes: 0 success, 2 input parse error, 3 capacity or search budget
//! exhausted, 4 malformed stream.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use narayana::analysis::{
    compare_codes, length_curve, length_histogram, variant_coverage, BenchReport, CodecId,
    CoverageReport, Distribution, SampleCount,
};
use narayana::sequences::{consecutive_ratios, narayana_ratio_limit};
use narayana::{
    decode_stream, decode_stream_lenient, encode_stream, BitBuffer, Error,
    RepresentabilityConstraint,
};

#[derive(Parser)]
#[command(
    name = "nuc",
    version,
    about = "Narayana universal code: encode, decode, and analyze integer streams"
)]
struct Cli {
    /// Read input from a file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Encode decimal integers (one per line) into a packed .nuc stream.
    Encode,
    /// Decode a packed .nuc stream back into decimal integers.
    Decode {
        /// Resynchronize at the next delimiter on errors instead of failing;
        /// skipped bit ranges are reported on standard error.
        #[arg(long)]
        lenient: bool,
    },
    /// Emit the bits-versus-n curve and the codeword-length histogram.
    Stats {
        #[arg(long, default_value_t = 1000)]
        max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Emit consecutive Narayana term ratios and the cubic-root limit.
    Ratio {
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Survey which integers a variant sequence can represent.
    Variants {
        /// Variant seed; the sequence starts a, 3-a, 1-a.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 30)]
        max: u64,
        /// Minimum index gap: 1 = any subset, 2 = no adjacent, 3 = canonical.
        #[arg(long, default_value_t = 3)]
        gap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Measure mean bits per value for each codec on a common sample.
    Bench {
        /// Distribution spec: uniform:K, zipf:S:K, or geometric:P.
        #[arg(long)]
        dist: String,
        /// Sample count, or "all" to enumerate a uniform support once.
        #[arg(long)]
        samples: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated list of codecs to measure.
        #[arg(long, default_value = "narayana,fibonacci,elias-gamma")]
        codecs: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum CliError {
    Parse(String),
    Capacity(String),
    Malformed(String),
    Internal(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Malformed(_) => 4,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m)
            | CliError::Capacity(m)
            | CliError::Malformed(m)
            | CliError::Internal(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapacityExceeded { .. } | Error::SearchBudgetExceeded { .. } => {
                CliError::Capacity(e.to_string())
            }
            Error::MalformedCodeword { .. } | Error::TrailingGarbage { .. } => {
                CliError::Malformed(e.to_string())
            }
            Error::NonConvergence { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input_bytes(input: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match input {
        Some(path) => Ok(fs::read(path)?),
        None => {
            let mut bytes = Vec::new();
            io::stdin().read_to_end(&mut bytes)?;
            Ok(bytes)
        }
    }
}

fn read_input_text(input: &Option<PathBuf>) -> Result<String, CliError> {
    let bytes = read_input_bytes(input)?;
    String::from_utf8(bytes).map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))
}

fn open_output(output: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match output {
        Some(path) => Ok(Box::new(fs::File::create(path)?)),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn parse_integer_lines(text: &str) -> Result<Vec<u64>, CliError> {
    let mut values = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let value: u64 = trimmed
            .parse()
            .map_err(|e| CliError::Parse(format!("line {}: {trimmed:?}: {e}", number + 1)))?;
        if value == 0 {
            return Err(CliError::Parse(format!(
                "line {}: 0 is not encodable; values must be >= 1",
                number + 1
            )));
        }
        values.push(value);
    }
    Ok(values)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode => cmd_encode(&cli.input, &cli.output),
        Command::Decode { lenient } => cmd_decode(&cli.input, &cli.output, lenient),
        Command::Stats { max, format } => cmd_stats(&cli.output, max, format),
        Command::Ratio { terms, format } => cmd_ratio(&cli.output, terms, format),
        Command::Variants {
            a,
            max,
            gap,
            format,
        } => cmd_variants(&cli.output, a, max, gap, format),
        Command::Bench {
            dist,
            samples,
            seed,
            codecs,
            format,
        } => cmd_bench(&cli.output, &dist, &samples, seed, &codecs, format),
    }
}

fn cmd_encode(input: &Option<PathBuf>, output: &Option<PathBuf>) -> Result<(), CliError> {
    let values = parse_integer_lines(&read_input_text(input)?)?;
    let stream = encode_stream(&values)?;
    let mut out = open_output(output)?;
    out.write_all(stream.as_bytes())?;
    out.flush()?;
    let count = values.len();
    let total_bits = stream.bit_length();
    let mean = if count == 0 {
        0.0
    } else {
        total_bits as f64 / count as f64
    };
    eprintln!("encoded {count} values into {total_bits} bits ({mean:.3} bits/value)");
    Ok(())
}

fn cmd_decode(
    input: &Option<PathBuf>,
    output: &Option<PathBuf>,
    lenient: bool,
) -> Result<(), CliError> {
    let buffer = BitBuffer::from_bytes(read_input_bytes(input)?);
    let values = if lenient {
        let result = decode_stream_lenient(&buffer);
        for range in &result.skipped {
            eprintln!("skipped undecodable bits {}..{}", range.start, range.end);
        }
        result.values
    } else {
        decode_stream(&buffer)?
    };
    let mut out = open_output(output)?;
    for v in &values {
        writeln!(out, "{v}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_stats(output: &Option<PathBuf>, max: u64, format: Format) -> Result<(), CliError> {
    if max < 1 {
        return Err(CliError::Parse("--max must be at least 1".into()));
    }
    let curve = length_curve(max)?;
    let histogram = length_histogram(max)?;
    let mut out = open_output(output)?;
    match format {
        Format::Csv => {
            writeln!(out, "n,bits")?;
            for point in &curve {
                writeln!(out, "{},{}", point.n, point.bits)?;
            }
            writeln!(out)?;
            writeln!(out, "length,count,complete")?;
            for class in histogram.classes() {
                writeln!(out, "{},{},{}", class.length, class.count, class.complete)?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "max_n": max,
                "curve": curve,
                "histogram": histogram.classes(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_ratio(output: &Option<PathBuf>, terms: usize, format: Format) -> Result<(), CliError> {
    if terms < 2 {
        return Err(CliError::Parse("--terms must be at least 2".into()));
    }
    let samples = consecutive_ratios(terms)?;
    let limit = narayana_ratio_limit(1e-14)?;
    let mut out = open_output(output)?;
    match format {
        Format::Csv => {
            writeln!(out, "k,ratio")?;
            for sample in &samples {
                writeln!(out, "{},{:.16}", sample.k, sample.ratio)?;
            }
            writeln!(out, "limit,{limit:.16}")?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "samples": samples,
                "limit": limit,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_variants(
    output: &Option<PathBuf>,
    a: i64,
    max: u64,
    gap: usize,
    format: Format,
) -> Result<(), CliError> {
    if !(-5..=5).contains(&a) {
        return Err(CliError::Parse("--a must lie in -5..=5".into()));
    }
    if !(1..=10_000).contains(&max) {
        return Err(CliError::Parse("--max must lie in 1..=10000".into()));
    }
    let constraint = RepresentabilityConstraint::from_min_gap(gap)
        .ok_or_else(|| CliError::Parse("--gap must be 1, 2, or 3".into()))?;
    let report = variant_coverage(a, max, constraint)?;
    emit_coverage(output, &report, format)?;
    summarize_coverage(&report);
    if !report.indeterminate.is_empty() {
        return Err(CliError::Capacity(format!(
            "{} values exhausted the search budget",
            report.indeterminate.len()
        )));
    }
    Ok(())
}

fn emit_coverage(
    output: &Option<PathBuf>,
    report: &CoverageReport,
    format: Format,
) -> Result<(), CliError> {
    let mut out = open_output(output)?;
    match format {
        Format::Csv => {
            writeln!(out, "n")?;
            for n in &report.unrepresentable {
                writeln!(out, "{n}")?;
            }
        }
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(report).expect("serializable")
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn summarize_coverage(report: &CoverageReport) {
    eprintln!(
        "variant a={}: {} of {} values unrepresentable (gap >= {})",
        report.variant_a,
        report.unrepresentable.len(),
        report.max_n,
        report.constraint.min_index_gap()
    );
    if !report.claimed_unrepresentable.is_empty() {
        eprintln!(
            "claimed unrepresentable: {:?}; contradicted: {:?}; unclaimed findings: {:?}",
            report.claimed_unrepresentable,
            report.contradicted_claims,
            report.unclaimed_unrepresentable
        );
    }
    if !report.indeterminate.is_empty() {
        eprintln!(
            "indeterminate (budget exhausted): {:?}",
            report.indeterminate
        );
    }
}

fn cmd_bench(
    output: &Option<PathBuf>,
    dist: &str,
    samples: &str,
    seed: u64,
    codecs: &str,
    format: Format,
) -> Result<(), CliError> {
    let distribution: Distribution = dist.parse().map_err(CliError::Parse)?;
    let count = if samples == "all" {
        if !matches!(distribution, Distribution::Uniform { .. }) {
            return Err(CliError::Parse(
                "--samples all requires a uniform distribution".into(),
            ));
        }
        SampleCount::Exhaustive
    } else {
        let parsed: u64 = samples
            .parse()
            .map_err(|e| CliError::Parse(format!("--samples {samples:?}: {e}")))?;
        if parsed == 0 {
            return Err(CliError::Parse("--samples must be at least 1".into()));
        }
        SampleCount::Count(parsed)
    };
    let codec_ids = codecs
        .split(',')
        .map(|name| name.trim().parse::<CodecId>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Parse)?;
    if codec_ids.is_empty() {
        return Err(CliError::Parse(
            "--codecs must name at least one codec".into(),
        ));
    }
    let report = compare_codes(&distribution, count, seed, &codec_ids)?;
    emit_bench(output, &report, format)?;
    Ok(())
}

fn emit_bench(
    output: &Option<PathBuf>,
    report: &BenchReport,
    format: Format,
) -> Result<(), CliError> {
    let mut out = open_output(output)?;
    match format {
        Format::Csv => {
            writeln!(out, "codec,distribution,samples,total_bits,mean_bits")?;
            for record in &report.records {
                writeln!(
                    out,
                    "{},{},{},{},{:.6}",
                    record.codec,
                    record.distribution,
                    record.samples,
                    record.total_bits,
                    record.mean_bits
                )?;
            }
        }
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(report).expect("serializable")
            )?;
        }
    }
    out.flush()?;
    Ok(())
}
