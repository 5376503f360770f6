//! `palwords`: build, analyze and count automata for words with constrained
//! palindromic factors.
//!
//! Data goes to stdout, summaries to stderr. Exit codes: 0 success, 1 a
//! check failed, 2 usage or input error, 3 a budget was exhausted.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use palwords::analyze::{analyze, witness_morphisms};
use palwords::automaton::{export, import, import_grail, Dfa, Format};
use palwords::construct::{build_direct_with, BuildOptions, ConstraintSpec, EmptyWord, Family, DEFAULT_STATE_BUDGET};
use palwords::error::Error;
use palwords::oracle::{brute_count_with, OracleOptions, DEFAULT_WORD_BUDGET};
use palwords::par::Execution;
use palwords::recur::{
    asymptotic_fit, describe, dominant_root, lda, matrix_min_poly_with, minimal_recurrence, sequence, transfer_matrix,
    MinPolyOptions,
};
use palwords::reproduce::{is_known_discrepancy, run, summarize, Group, ReproduceOptions};
use palwords::verify::check_stabilization;
use palwords::words::Word;
use serde_json::json;

const BUDGET_ENV: &str = "PALWORDS_BUDGET";

#[derive(Parser)]
#[command(
    name = "palwords",
    version,
    about = "Automata for words with constrained palindromic factors"
)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the automaton for a constraint.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Write the explored automaton instead of the minimized one.
        #[arg(long)]
        unminimized: bool,
        /// Cap on explored search states.
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Minimize an automaton file.
    Minimize {
        /// Grail or JSON automaton.
        automaton: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify the infinite words and find birecurrent witnesses.
    Analyze {
        #[command(flatten)]
        source: Source,
    },
    /// Number of accepted words of each length, one "n a(n)" line per length.
    Count {
        #[command(flatten)]
        source: Source,
        /// Last length printed.
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
    /// Minimal annihilator of the counting sequence.
    Annihilate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Method::Lda)]
        method: Method,
        /// Terms of the sequence used.
        #[arg(long, default_value_t = 400)]
        terms: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Dominant root and growth constants.
    Asymptotics {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 400)]
        terms: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Follow the state transformations of X_{n+1} = X_n s X_n^R.
    Verify {
        #[command(flatten)]
        source: Source,
        /// X_0.
        #[arg(long)]
        seed: String,
        /// s.
        #[arg(long)]
        infix: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Count (or list) words of one length by brute force.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        length: usize,
        /// Print the accepted words instead of the count.
        #[arg(long)]
        list: bool,
        /// Cap on words examined.
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
    /// Convert an automaton file to another format.
    Export {
        automaton: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the catalogue of quantitative checks.
    Reproduce {
        /// Topic groups to run (construction, distinct, length,
        /// parity-length, parity-count, stabilization, oracle, properties;
        /// or d, e, r, t). Repeatable; default all.
        #[arg(long = "section", value_parser = parse_group)]
        sections: Vec<Group>,
        /// Criteria 1 to 10 to run. Repeatable; default all.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=10))]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Convention for the T family.
        #[arg(long, value_enum, default_value_t = EmptyArg::NotCounted)]
        empty_word: EmptyArg,
        /// Print one JSON object per check instead of text.
        #[arg(long)]
        json: bool,
        /// Cap on words examined by the oracle checks.
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FamilyArg {
    /// At most `cap` distinct palindromes, ε included.
    D,
    /// No palindrome longer than `cap`.
    E,
    /// Even palindromes at most `cap` long, odd ones at most `odd-cap`.
    R,
    /// At most `cap` even and `odd-cap` odd palindromes.
    T,
    /// Palindromes restricted to the set in `--allowed`.
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmptyArg {
    Counted,
    NotCounted,
}

impl From<EmptyArg> for EmptyWord {
    fn from(e: EmptyArg) -> EmptyWord {
        match e {
            EmptyArg::Counted => EmptyWord::Counted,
            EmptyArg::NotCounted => EmptyWord::NotCounted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Reduce the matrix minimal polynomial against the terms.
    Lda,
    /// Solve for the shortest recurrence from the terms alone.
    Terms,
    /// Run both and fail if they disagree.
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Grail,
    Json,
    Dot,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Grail => Format::Grail,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        }
    }
}

#[derive(Args, Clone)]
struct SpecArgs {
    #[arg(long, short = 'k', default_value_t = 2)]
    alphabet: usize,
    #[arg(long, value_enum, ignore_case = true)]
    family: Option<FamilyArg>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    odd_cap: Option<usize>,
    /// Allowed palindromes, separated by whitespace or commas; ε is always
    /// included.
    #[arg(long)]
    allowed: Option<PathBuf>,
    /// Whether ε counts as an even palindrome in the T family.
    #[arg(long, value_enum, default_value_t = EmptyArg::Counted)]
    empty_word: EmptyArg,
}

/// An automaton file, or a constraint to build one from.
#[derive(Args, Clone)]
struct Source {
    /// Grail or JSON automaton; otherwise the constraint flags are used.
    #[arg(long, conflicts_with_all = ["family", "allowed"])]
    automaton: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Grail)]
    format: FormatArg,
    /// Output file; stdout when absent.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Capacity(String),
    Check(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Capacity(_) => Failure::Capacity(e.to_string()),
            Error::Input(_)
            | Error::Parse { .. }
            | Error::SymbolOutOfRange { .. }
            | Error::Nondeterministic { .. }
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            Error::Contract(_) | Error::Inconclusive(_) => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Other(e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn spec_of(a: &SpecArgs) -> Outcome<ConstraintSpec> {
    let family = a
        .family
        .ok_or_else(|| Failure::Usage("give --family (or --automaton where accepted)".into()))?;
    let cap = || a.cap.ok_or_else(|| Failure::Usage("this family needs --cap".into()));
    let odd = || {
        a.odd_cap
            .ok_or_else(|| Failure::Usage("this family needs --odd-cap".into()))
    };
    let family = match family {
        FamilyArg::D => Family::MaxDistinct(cap()?),
        FamilyArg::E => Family::MaxLen(cap()?),
        FamilyArg::R => Family::MaxLenByParity {
            even: cap()?,
            odd: odd()?,
        },
        FamilyArg::T => Family::MaxCountByParity {
            even: cap()?,
            odd: odd()?,
            empty: a.empty_word.into(),
        },
        FamilyArg::S => {
            let path = a
                .allowed
                .as_ref()
                .ok_or_else(|| Failure::Usage("family S needs --allowed".into()))?;
            Family::AllowedSet(read_allowed(path, a.alphabet)?)
        }
    };
    Ok(ConstraintSpec::new(a.alphabet, family)?)
}

fn read_allowed(path: &Path, k: usize) -> Outcome<BTreeSet<Word>> {
    let text = fs::read_to_string(path)?;
    let mut set = BTreeSet::from([Word::empty(k)]);
    for tok in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        set.insert(Word::parse(tok, k)?);
    }
    Ok(set)
}

fn read_automaton(path: &Path) -> Outcome<Dfa> {
    let text = fs::read_to_string(path)?;
    let d = if text.trim_start().starts_with('{') {
        import(&text, Format::Json)?
    } else {
        import_grail(&text, None)?
    };
    Ok(d)
}

fn build(spec: &ConstraintSpec, budget: usize) -> Outcome<palwords::construct::Built> {
    let t = Instant::now();
    let options = BuildOptions {
        state_budget: budget,
        ..Default::default()
    };
    let b = build_direct_with(spec, &options)?;
    eprintln!(
        "{spec}: {} states explored, {} after minimization, {:.2} s",
        b.explored_states(),
        b.minimal_states(),
        t.elapsed().as_secs_f64()
    );
    Ok(b)
}

/// The minimized automaton of a source.
fn load(source: &Source) -> Outcome<(Dfa, Option<ConstraintSpec>)> {
    match &source.automaton {
        Some(path) => Ok((read_automaton(path)?.minimize(), None)),
        None => {
            let spec = spec_of(&source.spec)?;
            let budget = budget_from_env::<usize>().unwrap_or(DEFAULT_STATE_BUDGET);
            Ok((build(&spec, budget)?.minimized, Some(spec)))
        }
    }
}

fn budget_from_env<T: std::str::FromStr>() -> Option<T> {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok())
}

fn write_out(out: &OutArgs, d: &Dfa) -> Outcome {
    let text = export(d, out.format.into());
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Outcome {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn execute(cli: Cli) -> Outcome {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Build {
            spec,
            out,
            unminimized,
            budget,
        } => {
            let spec = spec_of(&spec)?;
            let b = build(&spec, budget)?;
            write_out(&out, if unminimized { &b.unminimized } else { &b.minimized })
        }
        Command::Minimize { automaton, out } => {
            let d = read_automaton(&automaton)?;
            let m = d.minimize();
            eprintln!(
                "{} live states, {} after minimization",
                d.live_state_count(),
                m.live_state_count()
            );
            write_out(&out, &m)
        }
        Command::Export { automaton, out } => write_out(&out, &read_automaton(&automaton)?),
        Command::Analyze { source } => {
            let (d, spec) = load(&source)?;
            let report = analyze(&d);
            eprintln!("{} live states: {}", d.live_state_count(), report.classification.name());
            if let Some(b) = &report.birecurrent {
                eprintln!("state {} is birecurrent with cycles {} and {}", b.state, b.x0, b.x1);
            }
            if let palwords::analyze::Classification::FinitelyManyPeriodic(words) = &report.classification {
                eprintln!("{} ultimately periodic words", words.len());
                for w in words {
                    eprintln!("  {w}");
                }
            }
            let morphisms = report.birecurrent.as_ref().map(witness_morphisms).transpose()?;
            let words: Option<Vec<String>> = match &report.classification {
                palwords::analyze::Classification::FinitelyManyPeriodic(ws) => {
                    Some(ws.iter().map(|w| w.to_string()).collect())
                }
                _ => None,
            };
            print_json(&json!({
                "spec": spec.map(|s| s.to_string()),
                "states": d.live_state_count(),
                "classification": report.classification.name(),
                "word_count": words.as_ref().map(Vec::len),
                "words": words,
                "recurrent_states": report.recurrent_states,
                "birecurrent": report.birecurrent,
                "morphisms": morphisms,
                "longest_word": d.longest_accepted(),
            }))
        }
        Command::Count { source, terms } => {
            let (d, _) = load(&source)?;
            let a = sequence(&transfer_matrix(&d), terms);
            let mut out = io::stdout().lock();
            for (n, x) in a.iter().enumerate() {
                writeln!(out, "{n} {x}")?;
            }
            Ok(())
        }
        Command::Annihilate {
            source,
            method,
            terms,
            seed,
        } => {
            let (d, _) = load(&source)?;
            let cs = transfer_matrix(&d);
            let a = sequence(&cs, terms);
            let options = MinPolyOptions {
                seed,
                execution,
                ..Default::default()
            };
            let via_lda = || -> Outcome<_> { Ok(lda(&matrix_min_poly_with(&cs, &options)?, &a)?) };
            let ann = match method {
                Method::Lda => via_lda()?,
                Method::Terms => minimal_recurrence(&a)?,
                Method::Both => {
                    let (x, y) = (via_lda()?, minimal_recurrence(&a)?);
                    if x != y {
                        return Err(Failure::Check(format!(
                            "the two methods disagree: {} (offset {}) and {} (offset {})",
                            x.poly, x.offset, y.poly, y.offset
                        )));
                    }
                    x
                }
            };
            eprintln!("{}", describe(&ann));
            print_json(&json!({
                "coefficients": ann.poly,
                "offset": ann.offset,
                "polynomial": ann.poly.to_string(),
                "recurrence": describe(&ann),
            }))
        }
        Command::Asymptotics { source, terms, seed } => {
            let (d, _) = load(&source)?;
            let cs = transfer_matrix(&d);
            let a = sequence(&cs, terms);
            let options = MinPolyOptions {
                seed,
                execution,
                ..Default::default()
            };
            let ann = lda(&matrix_min_poly_with(&cs, &options)?, &a)?;
            let Some(alpha) = dominant_root(&ann.poly)? else {
                eprintln!("the sequence is eventually zero");
                return print_json(&json!({ "alpha": null, "annihilator": ann.poly }));
            };
            let fit = asymptotic_fit(&a, &alpha)?;
            eprintln!(
                "a(n) ~ {:.8} · {:.12}^n ({:?}, {})",
                fit.c1,
                alpha.midpoint(),
                fit.mode,
                fit.method
            );
            print_json(&json!({
                "alpha": alpha,
                "annihilator": ann.poly,
                "fit": fit,
            }))
        }
        Command::Verify {
            source,
            seed,
            infix,
            nmax,
        } => {
            let (d, _) = load(&source)?;
            let k = d.alphabet_size();
            let report = check_stabilization(&d, &Word::parse(&seed, k)?, &Word::parse(&infix, k)?, nmax)?;
            eprintln!(
                "stabilized at {:?}, all accepted {}, reversal equal from 1 {}",
                report.stabilized_at, report.all_accepted, report.reversal_equal_from_one
            );
            print_json(&serde_json::to_value(&report)?)?;
            if report.all_accepted {
                Ok(())
            } else {
                Err(Failure::Check("some X_n is rejected".into()))
            }
        }
        Command::Oracle {
            spec,
            length,
            list,
            budget,
        } => {
            let spec = spec_of(&spec)?;
            let options = OracleOptions {
                budget,
                witness_cap: if list { usize::MAX } else { 0 },
                execution,
            };
            let r = brute_count_with(&spec, length, &options)?;
            eprintln!("{spec}: {} words of length {length}", r.count);
            if list {
                let mut out = io::stdout().lock();
                for w in &r.witnesses {
                    writeln!(out, "{w}")?;
                }
                Ok(())
            } else {
                print_json(&json!({ "spec": spec.to_string(), "n": length, "count": r.count }))
            }
        }
        Command::Reproduce {
            sections,
            criteria,
            seed,
            empty_word,
            json,
            budget,
        } => {
            let options = ReproduceOptions {
                groups: sections,
                criteria,
                seed,
                execution,
                empty_word: empty_word.into(),
                oracle_budget: budget,
            };
            let checks = run(&options);
            let mut out = io::stdout().lock();
            for c in &checks {
                if json {
                    writeln!(out, "{}", serde_json::to_string(c)?)?;
                } else {
                    let tag = match (c.pass, c.diagnostic) {
                        (true, _) => "PASS",
                        (false, true) => "NOTE",
                        (false, false) => "FAIL",
                    };
                    writeln!(
                        out,
                        "{tag} [{}] {}\n    expected {}\n    actual   {}",
                        c.criterion, c.id, c.expected, c.actual
                    )?;
                }
            }
            let mut failed = 0;
            for (criterion, title, pass, ids) in summarize(&checks) {
                eprintln!(
                    "criterion {criterion:>2} {}: {title}",
                    if pass { "PASS" } else { "FAIL" }
                );
                for id in ids {
                    failed += 1;
                    let note = if is_known_discrepancy(&id) {
                        " (documented discrepancy)"
                    } else {
                        ""
                    };
                    eprintln!("    {id}{note}");
                }
            }
            if checks.is_empty() {
                return Err(Failure::Usage("no check matches the selection".into()));
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} of {} checks failed", checks.len())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Check(m) => (1, m),
                Failure::Other(m) => (1, m),
                Failure::Usage(m) => (2, m),
                Failure::Capacity(m) => (3, m),
            };
            eprintln!("palwords: {msg}");
            ExitCode::from(code)
        }
    }
}
