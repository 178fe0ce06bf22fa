use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cozmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cozmo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TRIVIUM_SET1_V0: &str = "38EB86FF730D7A9CAF8DF13A4420540DBB7B651464C87501552041C249F29A64\
                               D2FBF515610921EBE06C8F92CECF7F8098FF20CCCC6A62B97BE8EF7454FC80F9";

#[test]
fn gen_trivium_reference_vector() {
    let out = cozmo(&[
        "gen",
        "--cipher",
        "trivium",
        "--key",
        "80000000000000000000",
        "--iv",
        "00000000000000000000",
        "--key-layout",
        "reversed",
        "--bit-order",
        "lsb",
        "--format",
        "hex",
        "-n",
        "512",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), TRIVIUM_SET1_V0);
}

#[test]
fn gen_a51_standard_burst() {
    let out = cozmo(&[
        "gen",
        "--cipher",
        "a51-standard",
        "--key",
        "1223456789ABCDEF",
        "--key-layout",
        "lsb",
        "--frame",
        "0x134",
        "-n",
        "114",
        "--format",
        "ascii",
    ]);
    assert!(out.status.success());
    let bits = stdout(&out);
    assert_eq!(bits.len(), 114);
    // first 64 bits of the A-to-B burst 534EAA582FE8151A
    assert_eq!(&bits[..16], "0101001101001110");
}

#[test]
fn gen_ascii_file_has_exactly_n_characters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ks.txt");
    let out = cozmo(&[
        "gen",
        "--cipher",
        "cozmo",
        "--key",
        "00112233445566778899",
        "--iv",
        "99887766554433221100",
        "-n",
        "1000000",
        "--format",
        "ascii",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.len(), 1_000_000);
    assert!(text.bytes().all(|b| b == b'0' || b == b'1'));
}

#[test]
fn gen_zero_bits_writes_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.bin");
    let out = cozmo(&[
        "gen",
        "--cipher",
        "a51-raw",
        "--key",
        "0123456789ABCDEF",
        "-n",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), Vec::<u8>::new());
}

#[test]
fn gen_seed_is_deterministic() {
    let args = [
        "gen", "--cipher", "trivium", "--seed", "42", "-n", "256", "--format", "hex",
    ];
    let a = cozmo(&args);
    let b = cozmo(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(
        a.stdout,
        cozmo(&["gen", "--cipher", "trivium", "--seed", "43", "-n", "256", "--format", "hex"])
            .stdout
    );
}

#[test]
fn key_file_matches_key_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("key.hex");
    fs::write(&path, "0123456789ABCDEF0123\n").unwrap();
    let from_file = cozmo(&[
        "gen",
        "--cipher",
        "trivium",
        "--key-file",
        path.to_str().unwrap(),
        "-n",
        "128",
        "--format",
        "hex",
    ]);
    let from_flag = cozmo(&[
        "gen",
        "--cipher",
        "trivium",
        "--key",
        "0123456789ABCDEF0123",
        "-n",
        "128",
        "--format",
        "hex",
    ]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flag.stdout);
}

#[test]
fn usage_errors_exit_2() {
    // wrong key length for the cipher
    assert_eq!(
        cozmo(&["gen", "--cipher", "trivium", "--key", "0123", "-n", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "a51-raw",
            "--key",
            "00112233445566778899",
            "-n",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
    // IV for A5/1, frame for trivium, missing key, bad hex
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "a51-raw",
            "--key",
            "0123456789ABCDEF",
            "--iv",
            "00",
            "-n",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "trivium",
            "--key",
            "00112233445566778899",
            "--frame",
            "1",
            "-n",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&["gen", "--cipher", "cozmo", "-n", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "cozmo",
            "--key",
            "0011223344556677889G",
            "-n",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
    // frame wider than 22 bits, hex output of a partial byte, unknown cipher
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "a51-standard",
            "--key",
            "0123456789ABCDEF",
            "--frame",
            "0x400000",
            "-n",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&[
            "gen",
            "--cipher",
            "a51-raw",
            "--key",
            "0123456789ABCDEF",
            "-n",
            "7",
            "--format",
            "hex"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        cozmo(&["gen", "--cipher", "rc4", "--key", "00", "-n", "8"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.bin");
    let unwritable = dir.path().join("no/such/dir/out.bin");
    let out = cozmo(&[
        "crypt",
        "--cipher",
        "trivium",
        "--key",
        "00112233445566778899",
        "--in",
        missing.to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = cozmo(&[
        "gen",
        "--cipher",
        "trivium",
        "--key",
        "00112233445566778899",
        "-n",
        "8",
        "--out",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        cozmo(&["test", "--input", missing.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

fn crypt(cipher: &str, key: &str, input: &Path, output: &Path) {
    let out = cozmo(&[
        "crypt",
        "--cipher",
        cipher,
        "--key",
        key,
        "--in",
        input.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn crypt_twice_restores_input() {
    let dir = tempfile::tempdir().unwrap();
    let (plain, ct, back) = (
        dir.path().join("p"),
        dir.path().join("c"),
        dir.path().join("b"),
    );
    let data: Vec<u8> = (0..5000u32).map(|i| (i * 7 + 3) as u8).collect();
    fs::write(&plain, &data).unwrap();
    for (cipher, key) in [
        ("trivium", "00112233445566778899"),
        ("cozmo", "00112233445566778899"),
        ("a51-raw", "0123456789ABCDEF"),
    ] {
        crypt(cipher, key, &plain, &ct);
        crypt(cipher, key, &ct, &back);
        assert_eq!(fs::read(&back).unwrap(), data, "{cipher}");
    }
}

#[test]
fn crypt_of_zeros_is_the_keystream_and_empty_stays_empty() {
    let dir = tempfile::tempdir().unwrap();
    let (zeros, out, empty, empty_out) = (
        dir.path().join("z"),
        dir.path().join("o"),
        dir.path().join("e"),
        dir.path().join("eo"),
    );
    fs::write(&zeros, [0u8; 32]).unwrap();
    fs::write(&empty, []).unwrap();
    crypt("trivium", "00112233445566778899", &zeros, &out);
    let ks = cozmo(&[
        "gen",
        "--cipher",
        "trivium",
        "--key",
        "00112233445566778899",
        "-n",
        "256",
    ]);
    assert_eq!(fs::read(&out).unwrap(), ks.stdout);
    crypt("trivium", "00112233445566778899", &empty, &empty_out);
    assert!(fs::read(&empty_out).unwrap().is_empty());
}

const ROW_ORDER: [&str; 7] = [
    "frequency",
    "cumulative_sums",
    "approximate_entropy",
    "linear_complexity",
    "serial",
    "longest_run_of_ones",
    "runs",
];

#[test]
fn test_json_report_follows_schema() {
    let out = cozmo(&[
        "test",
        "--cipher",
        "trivium",
        "--seed",
        "5",
        "-n",
        "200000",
        "--m-serial",
        "8",
        "--m-apen",
        "6",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();

    let schema: Value = serde_json::from_str(
        &fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../docs/report.schema.json"
        ))
        .unwrap(),
    )
    .unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(report.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    let row_required = schema["properties"]["tests"]["items"]["required"]
        .as_array()
        .unwrap();
    let rows = report["tests"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for (row, expected) in rows.iter().zip(ROW_ORDER) {
        for key in row_required {
            assert!(
                row.get(key.as_str().unwrap()).is_some(),
                "row missing {key}"
            );
        }
        assert_eq!(row["test"], expected);
        let arity = if matches!(expected, "cumulative_sums" | "serial") {
            2
        } else {
            1
        };
        assert_eq!(row["pvalues"].as_array().unwrap().len(), arity);
        assert_eq!(row["verdict"], "pass");
    }
    assert_eq!(report["input"]["bits"], 200_000);
    assert_eq!(report["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(report["overall"], "pass");
}

#[test]
fn test_constant_input_fails_frequency() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    fs::write(&path, "0".repeat(100_000)).unwrap();
    let out = cozmo(&[
        "test",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "ascii",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("Statistical Test"));
    let frequency = text.lines().find(|l| l.starts_with("Frequency")).unwrap();
    assert!(frequency.ends_with("Failure"));
    let runs = text.lines().find(|l| l.starts_with("Runs")).unwrap();
    assert!(runs.ends_with("Not applicable"));
}

#[test]
fn test_text_table_layout() {
    let out = cozmo(&[
        "test",
        "--cipher",
        "trivium",
        "--key",
        "00112233445566778899",
        "-n",
        "1000000",
    ]);
    // a good generator still fails some test at alpha = 0.01 now and then
    assert!(matches!(out.status.code(), Some(0 | 1)));
    let text = stdout(&out);
    let names: Vec<&str> = text
        .lines()
        .skip(1)
        .take(7)
        .map(|l| l.split("  ").next().unwrap().trim())
        .collect();
    assert_eq!(
        names,
        [
            "Frequency",
            "Cumulative Sums",
            "Approximate Entropy",
            "Linear Complexity",
            "Serial",
            "Longest Run of Ones",
            "Runs"
        ]
    );
    assert!(text.contains("P1-") && text.contains("P2-"));
}

#[test]
fn test_raw_and_hex_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, hex) = (dir.path().join("ks.bin"), dir.path().join("ks.hex"));
    for (path, format) in [(&raw, "raw"), (&hex, "hex")] {
        let out = cozmo(&[
            "gen",
            "--cipher",
            "trivium",
            "--key",
            "00112233445566778899",
            "-n",
            "80000",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = cozmo(&[
        "test",
        "--input",
        raw.to_str().unwrap(),
        "--json",
        "--m-serial",
        "8",
        "--m-apen",
        "6",
    ]);
    let b = cozmo(&[
        "test",
        "--input",
        hex.to_str().unwrap(),
        "--format",
        "hex",
        "--json",
        "--m-serial",
        "8",
        "--m-apen",
        "6",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_lists_every_check() {
    let out = cozmo(&[
        "verify",
        "--states",
        "2",
        "--steps",
        "10000",
        "--bm-length",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "trivium matrix form",
        "majority truth table",
        "berlekamp-massey vs exhaustive search",
    ] {
        assert!(
            text.lines()
                .any(|l| l.starts_with("[PASS]") && l.contains(name)),
            "{name}"
        );
    }
    assert!(text.contains("3/3 checks passed"));
}
