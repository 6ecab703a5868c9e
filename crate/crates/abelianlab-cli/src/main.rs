//! Command-line front end: word generation, complexity series, regularity
//! guessing, identity verification and conjecture exploration.
//!
//! Exit codes: 0 success, 2 usage error, 3 regularity not detected
//! (basis did not close), 4 verification failure, 5 factor enumeration did
//! not stabilize.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use abelianlab::catalog;
use abelianlab::complexity::{series_bundle_with, ComplexitySeries, Statistic};
use abelianlab::error::Error;
use abelianlab::kernel::{guess_relations, to_linear_representation, GuessConfig};
use abelianlab::verify::{self, VerificationReport};
use abelianlab::words::{
    format_letters, parse_letters, Alphabet, FactorConfig, Morphism, Word,
};

#[derive(Parser)]
#[command(
    name = "abelianlab",
    about = "Abelian and l-abelian complexity of morphic words, with 2-regularity detection",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a catalog or user-defined word.
    Word(WordArgs),
    /// Compute a complexity series of a word.
    Complexity(ComplexityArgs),
    /// Guess and verify kernel relations of a sequence.
    Guess(GuessArgs),
    /// Run a verification suite and report pass/fail per claim.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WordSpec {
    /// Catalog word: tm, pd, tm2, pd2 or pd3.
    #[arg(long)]
    id: Option<String>,
    /// Literal word (digit string, or comma-separated integers).
    #[arg(long)]
    literal: Option<String>,
    /// Morphism rules such as "0->01;1->10" iterated from --seed.
    #[arg(long)]
    morphism: Option<String>,
    /// Seed letter for --morphism (must be prolongable).
    #[arg(long, default_value_t = 0)]
    seed: u32,
    /// Apply a letter-to-letter coding after generation.
    #[arg(long)]
    coding: Option<String>,
    /// Apply a block coding of this width after generation.
    #[arg(long)]
    block: Option<usize>,
}

impl WordSpec {
    fn build(&self) -> Result<Arc<Word>, Error> {
        let mut word = match (&self.id, &self.literal, &self.morphism) {
            (Some(id), None, None) => catalog::word(id)?,
            (None, Some(text), None) => {
                let letters = parse_letters(text)?;
                let size = letters.iter().copied().max().unwrap_or(0) + 1;
                Word::literal(Alphabet::new(size), letters)?
            }
            (None, None, Some(rules)) => {
                Word::fixed_point(&Morphism::parse(rules)?, self.seed)?
            }
            _ => {
                return Err(Error::BadInput(
                    "give exactly one of --id, --literal or --morphism".into(),
                ))
            }
        };
        if let Some(rules) = &self.coding {
            word = word.coded(&Morphism::parse(rules)?)?;
        }
        if let Some(width) = self.block {
            word = word.blocks(width)?;
        }
        Ok(word)
    }
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    spec: WordSpec,
    /// Prefix length to print.
    #[arg(long)]
    len: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct ComplexityArgs {
    #[command(flatten)]
    spec: WordSpec,
    /// l-abelian complexity of this order (1 = abelian).
    #[arg(long, conflicts_with = "stat")]
    level: Option<u32>,
    /// Statistic name: pinf, max, min, delta, jmax or jmin.
    #[arg(long)]
    stat: Option<String>,
    /// Letters the count statistic totals over, e.g. "1,2".
    #[arg(long)]
    letters: Option<String>,
    /// Largest length n; the series covers 0..=n.
    #[arg(long)]
    max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

impl ComplexityArgs {
    fn statistic(&self) -> Result<Statistic, Error> {
        if let Some(order) = self.level {
            if order == 0 {
                return Err(Error::BadInput("level must be at least 1".into()));
            }
            return Ok(Statistic::abelian(order));
        }
        let name = self.stat.as_deref().ok_or_else(|| {
            Error::BadInput("give either --level or --stat".into())
        })?;
        let full = match &self.letters {
            Some(letters) => format!("{name}{}", letters.replace(',', "")),
            None => name.to_string(),
        };
        catalog::parse_statistic(&full)
    }
}

#[derive(Args)]
struct GuessArgs {
    /// Sequence id: A, const1, or `<stat>-<word>` such as p2-tm, delta0-pd2.
    #[arg(long)]
    series: String,
    /// Base of the kernel.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Truncation length used by the elimination.
    #[arg(long = "T", default_value_t = 512)]
    truncation: usize,
    /// Verification horizon for the guessed relations.
    #[arg(long = "N", default_value_t = 1 << 14)]
    horizon: u64,
    /// Largest basis size before giving up.
    #[arg(long, default_value_t = 64)]
    rank_cap: usize,
    /// What to print: the relation set, the linear representation or both.
    #[arg(long, value_enum, default_value_t = Emit::Relations)]
    emit: Emit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Relations,
    Representation,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: a, reflection, pd, tm, cross or conjecture.
    #[arg(long)]
    suite: String,
    /// Range bound for the suite.
    #[arg(long, default_value_t = 512)]
    max: usize,
    /// Number of random instances for the reflection suite.
    #[arg(long, default_value_t = 100)]
    fuzz: usize,
    /// Seed for the reflection suite.
    #[arg(long, default_value_t = 0xabe1)]
    seed: u64,
    /// Base word for the conjecture suite.
    #[arg(long, default_value = "pd")]
    id: String,
    /// Block width for the conjecture suite.
    #[arg(long, default_value_t = 3)]
    block: usize,
    /// First level checked by the conjecture suite.
    #[arg(long, default_value_t = 4)]
    min_level: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn factor_config() -> FactorConfig {
    let mut cfg = FactorConfig::default();
    if let Ok(cap) = std::env::var("ABELIANLAB_MAX_PREFIX") {
        if let Ok(cap) = cap.parse::<usize>() {
            cfg.max_prefix = cap;
        }
    }
    cfg
}

/// Prints to stdout, exiting quietly when the reader has gone away
/// (Rust masks SIGPIPE, so a closed pipe surfaces as a write error).
fn print_out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let done = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
    if let Err(e) = done {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
    }
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::BadInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print_out(text);
            Ok(())
        }
    }
}

fn run_word(args: &WordArgs) -> Result<(), Error> {
    let word = args.spec.build()?;
    let prefix = word.prefix(args.len)?;
    print_out(&format!("{}\n", format_letters(prefix.letters(), word.alphabet())));
    Ok(())
}

fn run_complexity(args: &ComplexityArgs) -> Result<(), Error> {
    let word = args.spec.build()?;
    let stat = args.statistic()?;
    let series =
        series_bundle_with(&word, std::slice::from_ref(&stat), args.max, &factor_config())?
            .pop()
            .unwrap();
    let text = match args.format {
        Format::Csv => series.to_csv(),
        Format::Json => {
            let mut t = series.to_json();
            t.push('\n');
            t
        }
        Format::Text => render_series_text(&series),
    };
    emit(&text, &args.out)
}

fn render_series_text(series: &ComplexitySeries) -> String {
    let mut out = format!("# {} {}\n", series.word, series.kind.label());
    for (n, v) in series.points() {
        out.push_str(&format!("{n}\t{v}\n"));
    }
    out
}

fn run_guess(args: &GuessArgs) -> Result<(), Error> {
    let oracle = catalog::sequence_with(&args.series, &factor_config())?;
    let config = GuessConfig {
        truncation: args.truncation,
        horizon: args.horizon,
        rank_cap: args.rank_cap,
    };
    let relations = guess_relations(&oracle, args.k, &config)?;
    match args.emit {
        Emit::Relations => print_out(&format!("{}\n", relations.to_json())),
        Emit::Representation => {
            print_out(&format!("{}\n", to_linear_representation(&relations)?.to_json()))
        }
        Emit::Both => {
            print_out(&format!("{}\n", relations.to_json()));
            print_out(&format!("{}\n", to_linear_representation(&relations)?.to_json()));
        }
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<Vec<VerificationReport>, Error> {
    match args.suite.as_str() {
        "a" | "a007302" => Ok(vec![verify::verify_a_relations(args.max as u64)]),
        "reflection" => Ok(vec![verify::verify_reflection_fuzz(
            args.fuzz,
            args.max as u64,
            args.seed,
        )]),
        "pd" => verify::verify_pd_suite(args.max),
        "tm" => verify::verify_tm_suite(args.max),
        "cross" => Ok(vec![verify::verify_cross_identity(args.max)?]),
        "conjecture" => {
            let base = catalog::word(&args.id)?;
            Ok(vec![verify::conjecture_blocks(
                &base,
                args.block,
                args.min_level,
                args.max,
            )?])
        }
        other => Err(Error::BadInput(format!(
            "unknown suite `{other}` (expected a, reflection, pd, tm, cross or conjecture)"
        ))),
    }
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::NotClosed { .. } => 3,
        Error::VerificationFailed { .. } => 4,
        Error::NotStabilized { .. } => 5,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<u8, Error> = match &cli.command {
        Command::Word(args) => run_word(args).map(|_| 0),
        Command::Complexity(args) => run_complexity(args).map(|_| 0),
        Command::Guess(args) => run_guess(args).map(|_| 0),
        Command::Verify(args) => match run_verify(args) {
            Ok(reports) => {
                match args.format {
                    Format::Json => print_out(&format!("{}\n", verify::render_json(&reports))),
                    _ => print_out(&verify::render_text(&reports)),
                }
                // Conjectured relations are reported, never enforced.
                let failed = reports.iter().any(|r| !r.passed() && !r.empirical_only);
                Ok(if failed { 4 } else { 0 })
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
