//! `rcdup`: command-line access to the reverse-complement duplication
//! toolkit. Every run echoes its resolved configuration (including RNG
//! seeds) into the output header, so identical invocations produce
//! byte-identical output.
//!
//! Exit codes: 0 on success (a negative finding like "not expressive" or a
//! failed certification is still a successful run), 1 on domain errors,
//! 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rcdup::capacity::{
    count_descendants_by_length, derive_irreducible_witness, enumerate_irreducible,
};
use rcdup::dup::DEFAULT_ENUMERATION_CAP;
use rcdup::ecc::{
    certify_deduplication_code, certify_duplication_code, BetaMap, BinaryComponentCode,
    CertificationReport, CodeSpec,
};
use rcdup::expressiveness::{classify_expressive, derive_with_suffix_budgeted, DEFAULT_STEP_BUDGET};
use rcdup::freq::FrequencyVector;
use rcdup::stochastic::{entropy_upper_bound, simulate, PositionMode, SimConfig, RNG_ALGORITHM};
use rcdup::{Alphabet, Derivation, Rational64, Word};

#[derive(Parser)]
#[command(
    name = "rcdup",
    version,
    about = "Reverse-complement string-duplication toolkit"
)]
struct Cli {
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Thread cap for parallel loops (default: RCDUP_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expressiveness classification and suffix derivations
    Express {
        #[command(subcommand)]
        command: ExpressCommand,
    },
    /// Binary k=2 irreducible words, witnesses and growth counting
    Capacity {
        #[command(subcommand)]
        command: CapacityCommand,
    },
    /// Run the uniform random duplication process, emitting CSV statistics
    Simulate(SimulateArgs),
    /// Entropy upper bound of an admissible frequency vector
    EntropyBound(EntropyArgs),
    /// Duplication-correcting codes: certify, decode, build, redundancy
    Ecc {
        #[command(subcommand)]
        command: EccCommand,
    },
}

#[derive(Args)]
struct AlphabetArgs {
    /// Alphabet size with the default complement pairing 2i <-> 2i+1
    #[arg(long, default_value_t = 2, conflicts_with = "alphabet")]
    q: usize,

    /// Path to an alphabet config JSON {"q": int, "complement": [int, ...]}
    #[arg(long)]
    alphabet: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExpressCommand {
    /// Classify full expressiveness of a seed word
    Check {
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        k: usize,
        #[arg(long = "seed-word")]
        seed_word: String,
    },
    /// Derive a word whose suffix is the given target, as replayable JSON
    Derive {
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        k: usize,
        #[arg(long = "seed-word")]
        seed_word: String,
        #[arg(long)]
        target: String,
        /// Maximum number of duplication events to emit
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum CapacityCommand {
    /// CSV growth table of the binary k=2 system seeded at 00
    Growth {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Cap on the number of distinct words per level
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Derivation embedding an irreducible word near the seed 00
    Witness {
        /// The irreducible binary word
        #[arg(long)]
        u: String,
    },
    /// List all binary k=2 irreducible words of one length
    Irr {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cyclic,
    Linear,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    seed: u64,
    /// Recording schedule: "log10", "all", or comma-separated step indices
    #[arg(long, default_value = "log10")]
    record: String,
    /// Position sampling: cyclic (default) or linear windows only
    #[arg(long, value_enum, default_value_t = ModeArg::Cyclic)]
    mode: ModeArg,
}

#[derive(Args)]
struct EntropyArgs {
    /// Frequencies over all factors of one length, in lexicographic order;
    /// decimals or rationals like 1/3, comma-separated
    #[arg(long)]
    freqs: String,
    #[arg(long, default_value_t = 2)]
    q: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertModeArg {
    Dup,
    Dedup,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum EccCommand {
    /// Certify duplication- or deduplication-correction of a code file
    Certify {
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Code file: one word per line in the standard text format
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum)]
        mode: CertModeArg,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Decode a received word carrying one duplication
    Decode {
        /// Code spec JSON path
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Build a certified binary burst-insertion-correcting component code
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Redundancy in bits of a code spec
    Redundancy {
        #[arg(long)]
        spec: PathBuf,
    },
}

// --- JSON wire formats ---

#[derive(Serialize, Deserialize)]
struct EventJson {
    i: usize,
}

#[derive(Serialize, Deserialize)]
struct DerivationJson {
    seed: String,
    k: usize,
    events: Vec<EventJson>,
}

impl DerivationJson {
    fn from_derivation(alphabet: &Alphabet, derivation: &Derivation) -> Self {
        DerivationJson {
            seed: alphabet.format_word(&derivation.seed),
            k: derivation.k,
            events: derivation
                .positions
                .iter()
                .map(|&i| EventJson { i })
                .collect(),
        }
    }
}

#[derive(Deserialize)]
struct AlphabetConfigJson {
    q: usize,
    complement: Option<Vec<u8>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ComponentJson {
    Vt { a: usize },
    Brute { codewords: Vec<String> },
}

#[derive(Deserialize)]
struct CodeSpecJson {
    q: usize,
    n: usize,
    k: usize,
    component: ComponentJson,
    beta: Option<Vec<u8>>,
    complement: Option<Vec<u8>>,
}

// --- error plumbing: domain errors exit 1 ---

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<rcdup::Error> for CliError {
    fn from(e: rcdup::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(format!("invalid JSON: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn load_alphabet(args: &AlphabetArgs) -> CliResult<Alphabet> {
    match &args.alphabet {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let config: AlphabetConfigJson = serde_json::from_str(&text)?;
            alphabet_from_config(config.q, config.complement)
        }
        None => Ok(Alphabet::with_default_complement(args.q)?),
    }
}

fn alphabet_from_config(q: usize, complement: Option<Vec<u8>>) -> CliResult<Alphabet> {
    match complement {
        Some(table) => {
            if table.len() != q {
                return Err(CliError(format!(
                    "complement table has {} entries, expected q={q}",
                    table.len()
                )));
            }
            Ok(Alphabet::with_complement(table)?)
        }
        None => Ok(Alphabet::with_default_complement(q)?),
    }
}

fn load_code_spec(path: &PathBuf) -> CliResult<(CodeSpec, String)> {
    let text = fs::read_to_string(path)?;
    let json: CodeSpecJson = serde_json::from_str(&text)?;
    let alphabet = alphabet_from_config(json.q, json.complement)?;
    let binary = Alphabet::binary();
    let component = match json.component {
        ComponentJson::Vt { a } => BinaryComponentCode::vt(json.n, a),
        ComponentJson::Brute { codewords } => {
            let words = codewords
                .iter()
                .map(|s| binary.parse_word(s))
                .collect::<rcdup::Result<Vec<_>>>()?;
            BinaryComponentCode::from_burst_list(json.n, json.k, words)?
        }
    };
    let beta = match json.beta {
        Some(table) => BetaMap::from_table(&alphabet, table)?,
        None => BetaMap::default_for(&alphabet)?,
    };
    let descr = format!(
        "q={} n={} k={} component={}",
        json.q,
        json.n,
        json.k,
        component.kind_name()
    );
    Ok((
        CodeSpec::new(alphabet, json.n, json.k, component, beta)?,
        descr,
    ))
}

fn parse_ratio(text: &str) -> CliResult<Rational64> {
    let trimmed = text.trim();
    if let Some((numer, denom)) = trimmed.split_once('/') {
        let numer: i64 = numer
            .trim()
            .parse()
            .map_err(|_| CliError(format!("invalid rational {trimmed:?}")))?;
        let denom: i64 = denom
            .trim()
            .parse()
            .map_err(|_| CliError(format!("invalid rational {trimmed:?}")))?;
        if denom == 0 {
            return Err(CliError(format!("zero denominator in {trimmed:?}")));
        }
        return Ok(Rational64::new(numer, denom));
    }
    let (integer, fraction) = match trimmed.split_once('.') {
        Some((i, f)) => (i, f),
        None => (trimmed, ""),
    };
    if fraction.len() > 15 {
        return Err(CliError(format!("too many decimal digits in {trimmed:?}")));
    }
    let int_part: i64 = if integer.is_empty() {
        0
    } else {
        integer
            .parse()
            .map_err(|_| CliError(format!("invalid number {trimmed:?}")))?
    };
    let scale = 10i64.pow(fraction.len() as u32);
    let frac_part: i64 = if fraction.is_empty() {
        0
    } else {
        fraction
            .parse()
            .map_err(|_| CliError(format!("invalid number {trimmed:?}")))?
    };
    Ok(Rational64::new(int_part * scale + frac_part, scale))
}

/// 10-significant-digit decimal rendering of an exact rational.
fn sig10(value: Rational64) -> String {
    let float = *value.numer() as f64 / *value.denom() as f64;
    format!("{float:.9e}")
}

fn parse_schedule(spec: &str, steps: usize) -> CliResult<Vec<usize>> {
    match spec {
        "log10" => {
            let mut schedule = vec![0, steps];
            let mut p = 1usize;
            while p <= steps {
                schedule.push(p);
                match p.checked_mul(10) {
                    Some(next) => p = next,
                    None => break,
                }
            }
            Ok(schedule)
        }
        "all" => Ok((0..=steps).collect()),
        list => list
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError(format!("invalid schedule entry {part:?}")))
            })
            .collect(),
    }
}

struct Output {
    target: Option<PathBuf>,
    buffer: Vec<u8>,
}

impl Output {
    fn new(target: Option<PathBuf>) -> Self {
        Output {
            target,
            buffer: Vec::new(),
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.buffer.extend_from_slice(text.as_ref().as_bytes());
        self.buffer.push(b'\n');
    }

    fn finish(self) -> CliResult<()> {
        match self.target {
            Some(path) => fs::write(path, self.buffer)?,
            None => std::io::stdout().write_all(&self.buffer)?,
        }
        Ok(())
    }
}

fn json_config(pairs: &[(&str, serde_json::Value)]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (key, value) in pairs {
        map.insert((*key).to_string(), value.clone());
    }
    serde_json::Value::Object(map)
}

fn run(cli: Cli, out: &mut Output) -> CliResult<()> {
    match cli.command {
        Command::Express { command } => run_express(command, out),
        Command::Capacity { command } => run_capacity(command, out),
        Command::Simulate(args) => run_simulate(args, out),
        Command::EntropyBound(args) => run_entropy(args, out),
        Command::Ecc { command } => run_ecc(command, out),
    }
}

fn run_express(command: ExpressCommand, out: &mut Output) -> CliResult<()> {
    match command {
        ExpressCommand::Check {
            alphabet,
            k,
            seed_word,
        } => {
            let alphabet = load_alphabet(&alphabet)?;
            let seed = alphabet.parse_word(&seed_word)?;
            let verdict = classify_expressive(&alphabet, k, &seed)?;
            out.line(format!(
                "# rcdup express check q={} k={k} seed-word={}",
                alphabet.q(),
                alphabet.format_word(&seed)
            ));
            out.line(if verdict.expressive {
                "fully expressive"
            } else {
                "not fully expressive"
            });
            out.line(format!("rule: {}", verdict.rule.as_str()));
            let show = |set: &std::collections::BTreeSet<u8>| {
                let parts: Vec<String> = set.iter().map(|s| s.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            };
            out.line(format!("delta(seed): {}", show(&verdict.seed_sets.delta)));
            out.line(format!(
                "delta(complement): {}",
                show(&verdict.complement_seed_sets.delta)
            ));
            Ok(())
        }
        ExpressCommand::Derive {
            alphabet,
            k,
            seed_word,
            target,
            budget,
        } => {
            let alphabet = load_alphabet(&alphabet)?;
            let seed = alphabet.parse_word(&seed_word)?;
            let target = alphabet.parse_word(&target)?;
            let derivation = derive_with_suffix_budgeted(&alphabet, &seed, k, &target, budget)?;
            let result = derivation.replay(&alphabet)?;
            let document = serde_json::json!({
                "config": json_config(&[
                    ("command", "express derive".into()),
                    ("q", alphabet.q().into()),
                    ("k", k.into()),
                    ("seed-word", alphabet.format_word(&seed).into()),
                    ("target", alphabet.format_word(&target).into()),
                    ("budget", budget.into()),
                ]),
                "derivation": serde_json::to_value(DerivationJson::from_derivation(&alphabet, &derivation))?,
                "result": alphabet.format_word(&result),
            });
            out.line(serde_json::to_string_pretty(&document)?);
            Ok(())
        }
    }
}

fn run_capacity(command: CapacityCommand, out: &mut Output) -> CliResult<()> {
    let binary = Alphabet::binary();
    match command {
        CapacityCommand::Growth { n_max, cap } => {
            let table = count_descendants_by_length(n_max, cap)?;
            out.line(format!(
                "# rcdup capacity growth n-max={n_max} cap={cap} columns=n,count,rate"
            ));
            for row in &table.rows {
                out.line(format!("{},{},{:.6}", row.n, row.count, row.rate));
            }
            if let Some(n) = table.truncated_at {
                out.line(format!("# truncated: level n={n} exceeded the cap"));
            }
            Ok(())
        }
        CapacityCommand::Witness { u } => {
            let word = binary.parse_word(&u)?;
            let witness = derive_irreducible_witness(&word)?;
            let document = serde_json::json!({
                "config": json_config(&[
                    ("command", "capacity witness".into()),
                    ("u", binary.format_word(&word).into()),
                ]),
                "family": witness.family.as_str(),
                "max_overhead": witness.family.overhead_bound(),
                "word": binary.format_word(&witness.word),
                "derivation": serde_json::to_value(DerivationJson::from_derivation(&binary, &witness.derivation))?,
            });
            out.line(serde_json::to_string_pretty(&document)?);
            Ok(())
        }
        CapacityCommand::Irr { n } => {
            let words = enumerate_irreducible(n);
            out.line(format!("# rcdup capacity irr n={n} count={}", words.len()));
            for word in words {
                out.line(binary.format_word(&word));
            }
            Ok(())
        }
    }
}

fn run_simulate(args: SimulateArgs, out: &mut Output) -> CliResult<()> {
    let schedule = parse_schedule(&args.record, args.steps)?;
    let mode = match args.mode {
        ModeArg::Cyclic => PositionMode::Cyclic,
        ModeArg::Linear => PositionMode::Linear,
    };
    let config = SimConfig {
        steps: args.steps,
        seed: args.seed,
        schedule,
        mode,
    };
    let trajectory = simulate(&config);
    out.line(format!(
        "# rcdup simulate steps={} seed={} mode={} record={} rng={} columns=n,fr00,fr01,fr10,fr11,fr1_deriv",
        args.steps,
        args.seed,
        mode.as_str(),
        args.record,
        RNG_ALGORITHM
    ));
    for record in &trajectory.records {
        let pair = &record.pair_frequencies;
        out.line(format!(
            "{},{},{},{},{},{}",
            record.step,
            sig10(pair.entry(&[0, 0])),
            sig10(pair.entry(&[0, 1])),
            sig10(pair.entry(&[1, 0])),
            sig10(pair.entry(&[1, 1])),
            sig10(record.derivative_one_frequency()),
        ));
    }
    Ok(())
}

fn run_entropy(args: EntropyArgs, out: &mut Output) -> CliResult<()> {
    let entries = args
        .freqs
        .split(',')
        .map(parse_ratio)
        .collect::<CliResult<Vec<_>>>()?;
    let q = args.q;
    let mut factor_len = 0usize;
    let mut size = 1usize;
    while size < entries.len() {
        size *= q;
        factor_len += 1;
    }
    if size != entries.len() || factor_len == 0 {
        return Err(CliError(format!(
            "{} frequencies do not fill q^l for q={q}",
            entries.len()
        )));
    }
    let vector = FrequencyVector::new(q, factor_len, entries)?;
    let bound = entropy_upper_bound(&vector)?;
    out.line(format!(
        "# rcdup entropy-bound q={q} l={factor_len} freqs={}",
        args.freqs
    ));
    out.line(format!("{bound}"));
    Ok(())
}

fn read_code_file(alphabet: &Alphabet, path: &PathBuf) -> CliResult<Vec<Word>> {
    let text = fs::read_to_string(path)?;
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        words.push(alphabet.parse_word(line)?);
    }
    Ok(words)
}

fn emit_certification(
    out: &mut Output,
    alphabet: &Alphabet,
    header: String,
    report: &CertificationReport,
    format: FormatArg,
) -> CliResult<()> {
    match format {
        FormatArg::Plain => {
            out.line(header);
            out.line(format!(
                "property={} k={} t={} result={}",
                report.property.as_str(),
                report.k,
                report.t,
                report.result
            ));
            if let Some(ce) = &report.counterexample {
                out.line(format!(
                    "counterexample: c1={} c2={} common={}",
                    alphabet.format_word(&ce.c1),
                    alphabet.format_word(&ce.c2),
                    alphabet.format_word(&ce.common)
                ));
            }
        }
        FormatArg::Json => {
            let document = serde_json::json!({
                "config": header.trim_start_matches("# ").to_string(),
                "property": report.property.as_str(),
                "k": report.k,
                "t": report.t,
                "result": report.result,
                "counterexample": report.counterexample.as_ref().map(|ce| {
                    serde_json::json!({
                        "c1": alphabet.format_word(&ce.c1),
                        "c2": alphabet.format_word(&ce.c2),
                        "common": alphabet.format_word(&ce.common),
                    })
                }),
            });
            out.line(serde_json::to_string_pretty(&document)?);
        }
    }
    Ok(())
}

fn run_ecc(command: EccCommand, out: &mut Output) -> CliResult<()> {
    match command {
        EccCommand::Certify {
            alphabet,
            code,
            k,
            t,
            mode,
            cap,
            format,
        } => {
            let alphabet = load_alphabet(&alphabet)?;
            let words = read_code_file(&alphabet, &code)?;
            let (mode_name, report) = match mode {
                CertModeArg::Dup => (
                    "dup",
                    certify_duplication_code(&alphabet, &words, k, t, cap)?,
                ),
                CertModeArg::Dedup => (
                    "dedup",
                    certify_deduplication_code(&alphabet, &words, k, t, cap)?,
                ),
            };
            let header = format!(
                "# rcdup ecc certify q={} code={} words={} k={k} t={t} mode={mode_name} cap={cap}",
                alphabet.q(),
                code.display(),
                words.len()
            );
            emit_certification(out, &alphabet, header, &report, format)
        }
        EccCommand::Decode { spec, word, format } => {
            let (code_spec, descr) = load_code_spec(&spec)?;
            let received = code_spec.alphabet().parse_word(&word)?;
            let decoded = code_spec.decode_duplication(&received)?;
            let formatted = code_spec.alphabet().format_word(&decoded);
            match format {
                FormatArg::Plain => {
                    out.line(format!(
                        "# rcdup ecc decode spec={} {descr} word={word}",
                        spec.display()
                    ));
                    out.line(formatted);
                }
                FormatArg::Json => {
                    let document = serde_json::json!({
                        "config": format!("spec={} {descr} word={word}", spec.display()),
                        "decoded": formatted,
                    });
                    out.line(serde_json::to_string_pretty(&document)?);
                }
            }
            Ok(())
        }
        EccCommand::Build { n, k } => {
            let component = BinaryComponentCode::brute_burst(n, k)?;
            let codewords = component.enumerate()?;
            let binary = Alphabet::binary();
            out.line(format!(
                "# rcdup ecc build n={n} k={k} kind=brute-burst size={}",
                codewords.len()
            ));
            for word in codewords {
                out.line(binary.format_word(&word));
            }
            Ok(())
        }
        EccCommand::Redundancy { spec } => {
            let (code_spec, descr) = load_code_spec(&spec)?;
            let bits = code_spec.redundancy_bits()?;
            out.line(format!(
                "# rcdup ecc redundancy spec={} {descr} size={}",
                spec.display(),
                code_spec.size()?
            ));
            out.line(format!("{bits}"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("RCDUP_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(threads) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let mut out = Output::new(cli.output.clone());
    match run(cli, &mut out).and_then(|()| out.finish()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rcdup: {e}");
            ExitCode::FAILURE
        }
    }
}
