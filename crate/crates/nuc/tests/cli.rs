//! End-to-end tests of the `nuc` binary: byte-exact stream format, text
//! round trips, report emission, determinism, and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn nuc(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nuc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn nuc");
    child
        .stdin
        .as_mut()
        .expect("piped stdin")
        .write_all(stdin)
        .expect("write stdin");
    child.wait_with_output().expect("collect output")
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn encode_packs_the_documented_bytes() {
    let out = nuc(&["encode"], b"1\n2\n");
    assert!(out.status.success(), "{}", stderr_text(&out));
    assert_eq!(out.stdout, vec![0xD8]);
    assert!(stderr_text(&out).contains("encoded 2 values into 5 bits"));

    let out = nuc(&["encode"], b"10\n");
    assert_eq!(out.stdout, vec![0x86]);
}

#[test]
fn encode_ignores_blank_lines_and_whitespace() {
    let out = nuc(&["encode"], b"\n  1\n\n2  \n");
    assert!(out.status.success());
    assert_eq!(out.stdout, vec![0xD8]);
}

#[test]
fn encode_of_nothing_is_an_empty_file() {
    let out = nuc(&["encode"], b"");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(stderr_text(&out).contains("encoded 0 values"));
}

#[test]
fn decode_inverts_the_documented_bytes() {
    let out = nuc(&["decode"], &[0xD8]);
    assert!(out.status.success());
    assert_eq!(stdout_text(&out), "1\n2\n");

    let out = nuc(&["decode"], &[0x86]);
    assert_eq!(stdout_text(&out), "10\n");

    let out = nuc(&["decode"], &[]);
    assert!(out.status.success());
    assert_eq!(stdout_text(&out), "");
}

#[test]
fn encode_decode_pipeline_is_the_identity() {
    let values: Vec<u64> = (1..=400).map(|i| (i * i) % 90_001 + 1).collect();
    let text: String = values.iter().map(|v| format!("{v}\n")).collect();
    let encoded = nuc(&["encode"], text.as_bytes());
    assert!(encoded.status.success());
    let decoded = nuc(&["decode"], &encoded.stdout);
    assert!(decoded.status.success());
    assert_eq!(stdout_text(&decoded), text);
}

#[test]
fn files_work_like_standard_streams() {
    let dir = tempfile::tempdir().expect("tempdir");
    let input = dir.path().join("values.txt");
    let packed = dir.path().join("values.nuc");
    let roundtrip = dir.path().join("roundtrip.txt");
    std::fs::write(&input, "5\n9\n14\n").unwrap();

    let out = nuc(
        &[
            "encode",
            "--input",
            input.to_str().unwrap(),
            "--output",
            packed.to_str().unwrap(),
        ],
        b"",
    );
    assert!(out.status.success(), "{}", stderr_text(&out));

    let out = nuc(
        &[
            "decode",
            "--input",
            packed.to_str().unwrap(),
            "--output",
            roundtrip.to_str().unwrap(),
        ],
        b"",
    );
    assert!(out.status.success(), "{}", stderr_text(&out));
    assert_eq!(std::fs::read_to_string(&roundtrip).unwrap(), "5\n9\n14\n");
}

#[test]
fn parse_failures_exit_two_with_a_line_number() {
    let out = nuc(&["encode"], b"3\nabc\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("line 2"));

    let out = nuc(&["encode"], b"0\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_streams_exit_four_in_strict_mode() {
    // A valid [1, 2] byte followed by trailing garbage.
    let out = nuc(&["decode"], &[0xD8, 0x01]);
    assert_eq!(out.status.code(), Some(4));

    // A truncated codeword with no delimiter at all.
    let out = nuc(&["decode"], &[0xA0]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn lenient_decode_recovers_and_reports_skips() {
    let out = nuc(&["decode", "--lenient"], &[0xD8, 0x01]);
    assert!(out.status.success());
    assert_eq!(stdout_text(&out), "1\n2\n");
    assert!(stderr_text(&out).contains("skipped undecodable bits"));
}

#[test]
fn stats_curve_matches_the_codeword_table() {
    let out = nuc(&["stats", "--max", "15"], b"");
    assert!(out.status.success());
    let text = stdout_text(&out);
    let sections: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(sections.len(), 2, "curve and histogram sections");
    let mut curve = sections[0].lines();
    assert_eq!(curve.next(), Some("n,bits"));
    let bits: Vec<u32> = curve
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(bits, vec![2, 3, 4, 5, 5, 6, 6, 6, 7, 7, 7, 7, 8, 8, 8]);
    let histogram: Vec<&str> = sections[1].lines().collect();
    assert_eq!(histogram[0], "length,count,complete");
    assert!(histogram.contains(&"7,4,true"), "{histogram:?}");
    assert!(histogram.contains(&"8,3,false"), "{histogram:?}");
}

#[test]
fn stats_of_one_is_a_single_record() {
    let out = nuc(&["stats", "--max", "1"], b"");
    let text = stdout_text(&out);
    assert!(text.starts_with("n,bits\n1,2\n"));
}

#[test]
fn stats_json_carries_both_reports() {
    let out = nuc(&["stats", "--max", "20", "--format", "json"], b"");
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_text(&out)).unwrap();
    assert_eq!(doc["max_n"], 20);
    assert_eq!(doc["curve"].as_array().unwrap().len(), 20);
    assert_eq!(doc["curve"][0]["bits"], 2);
    assert!(!doc["histogram"].as_array().unwrap().is_empty());
}

#[test]
fn ratio_seed_samples_and_limit() {
    let out = nuc(&["ratio", "--terms", "5"], b"");
    assert!(out.status.success());
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,ratio"));
    assert_eq!(lines.next(), Some("1,1.0000000000000000"));
    assert_eq!(lines.next(), Some("2,1.0000000000000000"));
    assert_eq!(lines.next(), Some("3,2.0000000000000000"));
    assert_eq!(lines.next(), Some("4,1.5000000000000000"));
    let limit = lines.next().unwrap();
    assert!(limit.starts_with("limit,1.46557123187676"), "{limit}");
}

#[test]
fn ratio_converges_and_is_deterministic() {
    let a = nuc(&["ratio", "--terms", "100"], b"");
    let b = nuc(&["ratio", "--terms", "100"], b"");
    assert_eq!(a.stdout, b.stdout, "ratio output must be reproducible");
    let text = stdout_text(&a);
    let last_sample = text
        .lines()
        .find(|l| l.starts_with("99,"))
        .expect("sample at k=99");
    let value: f64 = last_sample.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 1.4655712318767669).abs() < 1e-6);
}

#[test]
fn variants_reports_claims_and_discrepancies() {
    let out = nuc(&["variants", "--a", "-2", "--max", "30", "--gap", "3"], b"");
    assert!(out.status.success());
    let body = stdout_text(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("n"));
    assert!(body.lines().any(|l| l == "2"));

    let out = nuc(
        &[
            "variants", "--a", "-3", "--max", "30", "--gap", "3", "--format", "json",
        ],
        b"",
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_text(&out)).unwrap();
    let unrepresentable: Vec<u64> = doc["unrepresentable"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert!(unrepresentable.contains(&2));
    assert!(unrepresentable.contains(&13));

    let out = nuc(
        &[
            "variants", "--a", "-1", "--max", "30", "--gap", "3", "--format", "json",
        ],
        b"",
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_text(&out)).unwrap();
    assert_eq!(doc["contradicted_claims"], serde_json::json!([15]));
}

#[test]
fn bench_uniform_fifteen_reports_the_exact_mean() {
    let out = nuc(&["bench", "--dist", "uniform:15", "--samples", "all"], b"");
    assert!(out.status.success());
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("codec,distribution,samples,total_bits,mean_bits")
    );
    let narayana = lines.next().unwrap();
    assert_eq!(narayana, "narayana,uniform:15,15,89,5.933333");
    assert_eq!(text.lines().count(), 4, "header plus three codecs");
}

#[test]
fn bench_is_byte_identical_for_a_seed() {
    let args = [
        "bench",
        "--dist",
        "zipf:1.2:100000",
        "--samples",
        "5000",
        "--seed",
        "99",
    ];
    let a = nuc(&args, b"");
    let b = nuc(&args, b"");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_rejects_bad_specs() {
    let out = nuc(&["bench", "--dist", "cauchy:1", "--samples", "10"], b"");
    assert_eq!(out.status.code(), Some(2));

    let out = nuc(
        &["bench", "--dist", "zipf:1.2:100", "--samples", "all"],
        b"",
    );
    assert_eq!(out.status.code(), Some(2));

    let out = nuc(
        &[
            "bench",
            "--dist",
            "uniform:10",
            "--samples",
            "10",
            "--codecs",
            "narayana,huffman",
        ],
        b"",
    );
    assert_eq!(out.status.code(), Some(2));
}
