//! `cozmo`: keystream generation, XOR encryption, the randomness battery
//! and the built-in cross-checks.
//!
//! Exit codes: 0 success (all applicable tests passed), 1 battery or
//! verify failure, 2 usage error, 3 I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use cozmo_core::a51::{A51Key, A51State};
use cozmo_core::cozmo::CozmoState;
use cozmo_core::sts::{run_battery, BatteryConfig};
use cozmo_core::trivium::{TriviumIv, TriviumKey, TriviumState};
use cozmo_core::verify::{run_all, VerifyConfig};
use cozmo_core::{BitOrder, BitSequence, KeyLayout};

#[derive(Parser, Debug)]
#[command(
    name = "cozmo",
    version,
    about = "Trivium, A5/1 and COZMO keystreams with a randomness test battery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write keystream bits.
    Gen(GenArgs),
    /// XOR a file with the keystream; running it twice restores the input.
    Crypt(CryptArgs),
    /// Run the seven-test battery on a file or a generated keystream.
    Test(TestArgs),
    /// Run the built-in cross-validation checks.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Cipher {
    Trivium,
    A51Raw,
    A51Standard,
    Cozmo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Packed bytes, last byte zero padded.
    Raw,
    /// One '0' or '1' character per bit.
    Ascii,
    /// Hex digits of the packed bytes; needs a whole number of bytes.
    Hex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LayoutArg {
    Msb,
    Lsb,
    Reversed,
}

impl From<LayoutArg> for KeyLayout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Msb => KeyLayout::Msb,
            LayoutArg::Lsb => KeyLayout::Lsb,
            LayoutArg::Reversed => KeyLayout::Reversed,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Msb,
    Lsb,
}

impl From<OrderArg> for BitOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Msb => BitOrder::MsbFirst,
            OrderArg::Lsb => BitOrder::LsbFirst,
        }
    }
}

#[derive(Args, Debug)]
struct CipherArgs {
    #[arg(long, value_enum)]
    cipher: Cipher,
    /// Key as hex: 20 digits for trivium and cozmo, 16 for the A5/1 modes.
    #[arg(long, conflicts_with_all = ["key_file", "seed"])]
    key: Option<String>,
    /// File holding the key as hex.
    #[arg(long, conflicts_with = "seed")]
    key_file: Option<PathBuf>,
    /// IV as 20 hex digits (trivium and cozmo; all zero when omitted).
    #[arg(long, conflicts_with_all = ["iv_file", "seed"])]
    iv: Option<String>,
    #[arg(long, conflicts_with = "seed")]
    iv_file: Option<PathBuf>,
    /// Frame number for a51-standard, decimal or 0x-prefixed hex.
    #[arg(long, value_parser = parse_frame)]
    frame: Option<u32>,
    /// How hex digits map to key and IV bits.
    #[arg(long, value_enum, default_value = "msb")]
    key_layout: LayoutArg,
    /// Draw key and IV from a ChaCha20 generator seeded with this value.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    cipher: CipherArgs,
    /// Number of keystream bits.
    #[arg(short = 'n', long = "bits")]
    n: usize,
    #[arg(long, value_enum, default_value = "raw")]
    format: Format,
    /// Bit order inside packed bytes.
    #[arg(long, value_enum, default_value = "msb")]
    bit_order: OrderArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CryptArgs {
    #[command(flatten)]
    cipher: CipherArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Order in which each byte consumes keystream bits.
    #[arg(long, value_enum, default_value = "msb")]
    bit_order: OrderArg,
}

#[derive(Args, Debug)]
struct TestArgs {
    /// Bit file to test. Without it a keystream is generated from --cipher.
    #[arg(long, conflicts_with = "cipher")]
    input: Option<PathBuf>,
    /// Encoding of --input.
    #[arg(long, value_enum, default_value = "raw")]
    format: Format,
    #[arg(long, value_enum, default_value = "msb")]
    bit_order: OrderArg,
    #[arg(long, value_enum)]
    cipher: Option<Cipher>,
    #[arg(long)]
    key: Option<String>,
    #[arg(long)]
    key_file: Option<PathBuf>,
    #[arg(long)]
    iv: Option<String>,
    #[arg(long)]
    iv_file: Option<PathBuf>,
    #[arg(long, value_parser = parse_frame)]
    frame: Option<u32>,
    #[arg(long, value_enum, default_value = "msb")]
    key_layout: LayoutArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Bits to generate from --cipher.
    #[arg(short = 'n', long = "bits", default_value_t = 1_000_000)]
    n: usize,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[arg(long, default_value_t = 16)]
    m_serial: usize,
    #[arg(long, default_value_t = 10)]
    m_apen: usize,
    #[arg(long, default_value_t = 500)]
    m_lincomp: usize,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random Trivium loads for the matrix check.
    #[arg(long, default_value_t = 100)]
    states: usize,
    /// Steps per load for the matrix check.
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Sequence length for the exhaustive Berlekamp–Massey check.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=16))]
    bm_length: u8,
}

fn parse_frame(s: &str) -> Result<u32, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid frame number {s:?}: {e}"))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<cozmo_core::Error> for CliError {
    fn from(e: cozmo_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// A ready-to-run keystream generator.
enum Generator {
    Trivium(TriviumState),
    A51(A51State),
    Cozmo(CozmoState),
}

impl Generator {
    fn next_bit(&mut self) -> bool {
        match self {
            Generator::Trivium(s) => s.clock(),
            Generator::A51(s) => s.clock(),
            Generator::Cozmo(s) => s.step(),
        }
    }

    fn bits(&mut self, n: usize) -> BitSequence {
        (0..n).map(|_| self.next_bit()).collect()
    }
}

struct KeySource<'a> {
    cipher: Cipher,
    key: Option<&'a str>,
    key_file: Option<&'a Path>,
    iv: Option<&'a str>,
    iv_file: Option<&'a Path>,
    frame: Option<u32>,
    layout: KeyLayout,
    seed: Option<u64>,
}

impl<'a> From<&'a CipherArgs> for KeySource<'a> {
    fn from(a: &'a CipherArgs) -> Self {
        KeySource {
            cipher: a.cipher,
            key: a.key.as_deref(),
            key_file: a.key_file.as_deref(),
            iv: a.iv.as_deref(),
            iv_file: a.iv_file.as_deref(),
            frame: a.frame,
            layout: a.key_layout.into(),
            seed: a.seed,
        }
    }
}

fn read_hex_file(path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(text.trim().to_owned())
}

fn text_or_file(text: Option<&str>, file: Option<&Path>) -> CliResult<Option<String>> {
    match (text, file) {
        (Some(t), _) => Ok(Some(t.to_owned())),
        (None, Some(p)) => read_hex_file(p).map(Some),
        (None, None) => Ok(None),
    }
}

impl KeySource<'_> {
    fn build(&self) -> CliResult<Generator> {
        let is_a51 = matches!(self.cipher, Cipher::A51Raw | Cipher::A51Standard);
        if self.frame.is_some() && self.cipher != Cipher::A51Standard {
            return Err(CliError::Usage(
                "--frame applies only to a51-standard".into(),
            ));
        }
        if is_a51 && (self.iv.is_some() || self.iv_file.is_some()) {
            return Err(CliError::Usage("the A5/1 modes take no IV".into()));
        }
        let key = text_or_file(self.key, self.key_file)?;
        let iv = text_or_file(self.iv, self.iv_file)?;
        let mut rng = self.seed.map(ChaCha20Rng::seed_from_u64);
        if key.is_none() && rng.is_none() {
            return Err(CliError::Usage(
                "a key is required: --key, --key-file or --seed".into(),
            ));
        }
        let mut random_bits = |n: usize| -> Vec<bool> {
            let rng = rng.as_mut().expect("seeded");
            (0..n).map(|_| rng.random()).collect()
        };

        if is_a51 {
            let key = match key {
                Some(k) => A51Key::from_hex_layout(&k, self.layout)?,
                None => A51Key::from_bits(&random_bits(64))?,
            };
            let state = match self.cipher {
                Cipher::A51Raw => A51State::load_raw(&key),
                _ => A51State::load_standard(&key, self.frame.unwrap_or(0))?,
            };
            return Ok(Generator::A51(state));
        }

        let key = match key {
            Some(k) => TriviumKey::from_hex_layout(&k, self.layout)?,
            None => TriviumKey::from_bits(&random_bits(80))?,
        };
        let iv = match iv {
            Some(v) => TriviumIv::from_hex_layout(&v, self.layout)?,
            None if self.seed.is_some() => TriviumIv::from_bits(&random_bits(80))?,
            None => TriviumIv::from_bits(&[false; 80])?,
        };
        Ok(match self.cipher {
            Cipher::Trivium => {
                let mut s = TriviumState::load(&key, &iv);
                s.warmup()?;
                Generator::Trivium(s)
            }
            _ => Generator::Cozmo(CozmoState::init(&key, &iv)),
        })
    }
}

fn encode(bits: &BitSequence, format: Format, order: BitOrder) -> CliResult<Vec<u8>> {
    Ok(match format {
        Format::Raw => bits.to_bytes(order),
        Format::Ascii => bits.to_ascii().into_bytes(),
        Format::Hex => {
            if !bits.len().is_multiple_of(8) {
                return Err(CliError::Usage(format!(
                    "hex output needs a multiple of 8 bits, got {}",
                    bits.len()
                )));
            }
            let hex =
                BitSequence::from_bytes(&bits.to_bytes(order), BitOrder::MsbFirst).to_hex()?;
            hex.into_bytes()
        }
    })
}

fn decode(data: &[u8], format: Format, order: BitOrder) -> CliResult<BitSequence> {
    let text = || {
        std::str::from_utf8(data)
            .map_err(|_| CliError::Usage("input is not valid UTF-8 text".into()))
    };
    Ok(match format {
        Format::Raw => BitSequence::from_bytes(data, order),
        Format::Ascii => BitSequence::from_ascii(text()?)?,
        Format::Hex => {
            let digits: String = text()?.chars().filter(|c| !c.is_whitespace()).collect();
            let msb = BitSequence::from_hex(&digits)?;
            BitSequence::from_bytes(&msb.to_bytes(BitOrder::MsbFirst), order)
        }
    })
}

fn write_output(out: Option<&Path>, data: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, data).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(data)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn cmd_gen(args: &GenArgs) -> CliResult<u8> {
    let mut generator = KeySource::from(&args.cipher).build()?;
    let bits = generator.bits(args.n);
    let data = encode(&bits, args.format, args.bit_order.into())?;
    write_output(args.out.as_deref(), &data)?;
    Ok(0)
}

fn cmd_crypt(args: &CryptArgs) -> CliResult<u8> {
    let mut generator = KeySource::from(&args.cipher).build()?;
    let mut data = fs::read(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let keystream = generator
        .bits(data.len() * 8)
        .to_bytes(args.bit_order.into());
    for (byte, k) in data.iter_mut().zip(keystream) {
        *byte ^= k;
    }
    write_output(Some(&args.out), &data)?;
    Ok(0)
}

fn cmd_test(args: &TestArgs) -> CliResult<u8> {
    let order: BitOrder = args.bit_order.into();
    let seq = match (&args.input, args.cipher) {
        (Some(path), _) => {
            let data = if path.as_os_str() == "-" {
                let mut buf = Vec::new();
                io::stdin()
                    .read_to_end(&mut buf)
                    .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
                buf
            } else {
                fs::read(path).map_err(|e| CliError::io(path, e))?
            };
            decode(&data, args.format, order)?
        }
        (None, Some(cipher)) => {
            let source = KeySource {
                cipher,
                key: args.key.as_deref(),
                key_file: args.key_file.as_deref(),
                iv: args.iv.as_deref(),
                iv_file: args.iv_file.as_deref(),
                frame: args.frame,
                layout: args.key_layout.into(),
                seed: args.seed,
            };
            source.build()?.bits(args.n)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give --input PATH or --cipher with a key".into(),
            ));
        }
    };
    let config = BatteryConfig {
        alpha: args.alpha,
        sequence_length: seq.len(),
        serial_block_len: args.m_serial,
        apen_block_len: args.m_apen,
        lincomp_block_size: args.m_lincomp,
    };
    let report = run_battery(&seq, &config).map_err(|e| CliError::Usage(e.to_string()))?;
    let rendered = if args.json {
        report.to_json() + "\n"
    } else {
        report.to_text_table()
    };
    write_output(None, rendered.as_bytes())?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<u8> {
    let config = VerifyConfig {
        seed: args.seed,
        matrix_states: args.states,
        matrix_steps: args.steps,
        bm_length: args.bm_length as usize,
    };
    let checks = run_all(&config);
    let mut out = String::new();
    for check in &checks {
        out.push_str(&format!("{check}\n"));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    write_output(None, out.as_bytes())?;
    Ok(if passed == checks.len() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Crypt(a) => cmd_crypt(a),
        Command::Test(a) => cmd_test(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Io(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}
