//! Command-line front end. [`run`] is what the binary calls; it never exits
//! the process itself, which keeps it testable.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::covers::{guarded_decomposition, pgcov_cover};
use crate::error::{Error, Result};
use crate::lang::Dfa;
use crate::membership::{class_notation, decide, pair_relation, Basis, Input, Level, Report};
use crate::monoid::{stable_sequence, syntactic_preorder, transition_monoid, MonoidDump};
use crate::pairs::PairDump;

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_CONDITIONAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hierarchy-one", version, about = "Membership in level one of group-based concatenation hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Alphabet, e.g. `ab` or `a,b`. Required for patterns.
    #[arg(long)]
    alphabet: Option<String>,
    /// Write the JSON result to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Cap on automaton states and monoid elements.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct Class {
    /// st, mod, amt, gr or group:<file>
    #[arg(long, default_value = "st")]
    basis: String,
    /// pol or bpol
    #[arg(long, default_value = "bpol")]
    level: String,
    /// Use the well-suited extension G⁺ of the basis.
    #[arg(long)]
    plus: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal DFA, syntactic monoid, order and stable sequence of a language.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Pattern, or path to a DFA JSON file.
        input: String,
    },
    /// Decide membership of a language in a class.
    Decide {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        class: Class,
        /// Print the violation witness of a non-member verdict.
        #[arg(long)]
        witness: bool,
        input: String,
    },
    /// Dump the pair relation of a language's syntactic morphism.
    Pairs {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "st")]
        basis: String,
        input: String,
    },
    /// Cover H by languages L a₁ L ⋯ aₙ L, for a group language L containing ε.
    Cover {
        #[command(flatten)]
        common: Common,
        /// The group language L (pattern or DFA file).
        #[arg(long = "with")]
        group: String,
        /// Directory receiving one DFA file per cover entry.
        #[arg(long, default_value = "cover-out")]
        out_dir: PathBuf,
        /// Maximum number of base words.
        #[arg(long)]
        max_bases: Option<usize>,
        /// The covered language H.
        input: String,
    },
    /// Guarded decomposition of a word for a language's syntactic morphism.
    Decompose {
        #[command(flatten)]
        common: Common,
        input: String,
        word: String,
    },
    /// Run a JSON manifest of decide cases against expected verdicts.
    Batch {
        manifest: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_MEMBER };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn budget(limit: Option<usize>) -> Budget {
    match limit {
        Some(n) => Budget::from_env().with_limit(n),
        None => Budget::from_env(),
    }
}

/// A pattern, or a DFA when `input` names an existing file.
fn load_input(input: &str, alphabet: Option<&str>, base_dir: Option<&Path>) -> Result<Input> {
    let path = match base_dir {
        Some(dir) => dir.join(input),
        None => PathBuf::from(input),
    };
    if path.is_file() {
        let dfa = Dfa::load(&path)?;
        if let Some(a) = alphabet {
            dfa.alphabet().ensure_same(&Alphabet::parse(a)?)?;
        }
        return Ok(Input::dfa(dfa, input));
    }
    let alphabet = alphabet.ok_or_else(|| Error::Unsupported("patterns need --alphabet".into()))?;
    Ok(Input::pattern(input, Alphabet::parse(alphabet)?))
}

fn input_alphabet(input: &Input) -> &Alphabet {
    match input {
        Input::Pattern { alphabet, .. } => alphabet,
        Input::Dfa { dfa, .. } => dfa.alphabet(),
    }
}

fn write_json(path: &Option<PathBuf>, value: &impl Serialize) -> Result<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

pub fn exit_code(report: &Report) -> i32 {
    match (report.member, report.conditional) {
        (true, _) => EXIT_MEMBER,
        (false, true) => EXIT_CONDITIONAL,
        (false, false) => EXIT_NON_MEMBER,
    }
}

#[derive(Serialize)]
struct AnalyzeDump {
    input: String,
    dfa: crate::lang::DfaFile,
    monoid: MonoidDump,
    threshold: usize,
    period: usize,
}

#[derive(Serialize)]
struct CoverDump {
    base_word: String,
    automaton_file: String,
}

#[derive(Serialize)]
struct DecomposeDump<'a> {
    blocks: &'a [String],
    links: &'a [usize],
    verified: bool,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::io("<stdout>", e);
    match command {
        Command::Analyze { common, input } => {
            let budget = budget(common.budget);
            let input = load_input(&input, common.alphabet.as_deref(), None)?;
            let dfa = input.compile(&budget)?;
            let m = transition_monoid(&dfa, &budget)?;
            let order = syntactic_preorder(&m);
            let stable = stable_sequence(&m);
            writeln!(out, "input: {}", input.describe()).map_err(io)?;
            writeln!(out, "minimal DFA: {} states; syntactic monoid: {} elements", dfa.state_count(), m.size())
                .map_err(io)?;
            for x in m.elements() {
                let w = m.witness(x);
                let mut tags = Vec::new();
                if m.is_accepting(x) {
                    tags.push("accepting");
                }
                if m.is_idempotent(x) {
                    tags.push("idempotent");
                }
                let above: Vec<String> = m.elements().filter(|&y| y != x && order.leq(x, y)).map(|y| y.to_string()).collect();
                writeln!(
                    out,
                    "  {x:>3}  {:<12} {:<22} ≤ {{{}}}",
                    if w.is_empty() { "ε".into() } else { w },
                    tags.join(","),
                    above.join(",")
                )
                .map_err(io)?;
            }
            writeln!(out, "E(S) = {:?}; T_i stabilizes at n0 = {}, period {}", m.idempotents_s(), stable.threshold, stable.period)
                .map_err(io)?;
            write_json(
                &common.json,
                &AnalyzeDump {
                    input: input.describe(),
                    dfa: dfa.to_file(),
                    monoid: m.dump(Some(&order)),
                    threshold: stable.threshold,
                    period: stable.period,
                },
            )?;
            Ok(EXIT_MEMBER)
        }
        Command::Decide {
            common,
            class,
            witness,
            input,
        } => {
            let budget = budget(common.budget);
            let input = load_input(&input, common.alphabet.as_deref(), None)?;
            let basis = Basis::parse(&class.basis, input_alphabet(&input))?;
            let report = decide(&input, &basis, Level::parse(&class.level)?, class.plus, &budget)?;
            writeln!(out, "{}: {}", report.input, report.summary()).map_err(io)?;
            writeln!(
                out,
                "  minimal DFA {} states, monoid {} elements, equation {}",
                report.dfa_states, report.monoid_size, report.equation
            )
            .map_err(io)?;
            if !report.certified {
                writeln!(out, "  pair relation not certified").map_err(io)?;
            }
            if let (true, Some(v)) = (witness, &report.witness) {
                let words: Vec<String> = v.words.iter().map(|(k, w)| format!("{k} = α({})", if w.is_empty() { "ε" } else { w })).collect();
                writeln!(out, "  witness: {}; lhs = {}, rhs = {}", words.join(", "), v.lhs, v.rhs).map_err(io)?;
            }
            write_json(&common.json, &report)?;
            Ok(exit_code(&report))
        }
        Command::Pairs { common, basis, input } => {
            let budget = budget(common.budget);
            let input = load_input(&input, common.alphabet.as_deref(), None)?;
            let basis = Basis::parse(&basis, input_alphabet(&input))?;
            let m = transition_monoid(&input.compile(&budget)?, &budget)?;
            let pairs = pair_relation(&m, &basis, &budget)?;
            writeln!(
                out,
                "{} pairs over {} elements ({}, {})",
                pairs.len(),
                m.size(),
                basis.tag(),
                if pairs.certified() { "certified" } else { "not certified" }
            )
            .map_err(io)?;
            for (s, t) in pairs.iter() {
                match pairs.witness(s, t) {
                    Some((u, v)) => writeln!(out, "  ({s}, {t})  u = {u:?}, v = {v:?}"),
                    None => writeln!(out, "  ({s}, {t})"),
                }
                .map_err(io)?;
            }
            let dump: PairDump = pairs.dump();
            write_json(&common.json, &dump)?;
            Ok(EXIT_MEMBER)
        }
        Command::Cover {
            common,
            group,
            out_dir,
            max_bases,
            input,
        } => {
            let mut budget = budget(common.budget);
            if let Some(n) = max_bases {
                budget.max_cover_bases = n;
            }
            let h = load_input(&input, common.alphabet.as_deref(), None)?.compile(&budget)?;
            let l = load_input(&group, common.alphabet.as_deref(), None)?.compile(&budget)?;
            let cover = pgcov_cover(&h, &l, &budget)?;
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
            let mut dump = Vec::new();
            for (i, entry) in cover.entries.iter().enumerate() {
                let path = out_dir.join(format!("entry-{i}.json"));
                std::fs::write(&path, entry.language.to_json()).map_err(|e| Error::io(&path, e))?;
                let base = if entry.base.is_empty() { "ε" } else { &entry.base };
                writeln!(out, "  {base:<12} {}", path.display()).map_err(io)?;
                dump.push(CoverDump {
                    base_word: entry.base.clone(),
                    automaton_file: path.display().to_string(),
                });
            }
            writeln!(
                out,
                "{} entries, {}",
                cover.entries.len(),
                if cover.certified { "certified" } else { "NOT certified" }
            )
            .map_err(io)?;
            write_json(&common.json, &dump)?;
            Ok(if cover.certified { EXIT_MEMBER } else { EXIT_ERROR })
        }
        Command::Decompose { common, input, word } => {
            let budget = budget(common.budget);
            let input = load_input(&input, common.alphabet.as_deref(), None)?;
            let m = transition_monoid(&input.compile(&budget)?, &budget)?;
            let d = guarded_decomposition(&m, &word)?;
            let verified = d.verify(&m, &word);
            writeln!(out, "blocks: {}", d.blocks.join(" | ")).map_err(io)?;
            writeln!(out, "links:  {:?}", d.links).map_err(io)?;
            writeln!(out, "verified: {verified}").map_err(io)?;
            write_json(
                &common.json,
                &DecomposeDump {
                    blocks: &d.blocks,
                    links: &d.links,
                    verified,
                },
            )?;
            Ok(if verified { EXIT_MEMBER } else { EXIT_ERROR })
        }
        Command::Batch {
            manifest,
            jobs,
            json,
            budget: limit,
        } => run_batch(&manifest, jobs, json.as_deref(), &budget(limit), out),
    }
}

/// Batch input: `{"cases":[{"input":..,"alphabet":..,"basis":..,"level":..,"plus":..,"expect":..}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    /// A pattern, or a DFA file path relative to the manifest.
    pub input: String,
    #[serde(default)]
    pub alphabet: Option<String>,
    pub basis: String,
    pub level: String,
    #[serde(default)]
    pub plus: bool,
    #[serde(default)]
    pub expect: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: Case,
    pub report: Option<Report>,
    pub error: Option<String>,
    /// `None` without an expectation.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub outcomes: Vec<CaseOutcome>,
}

fn run_case(case: &Case, dir: Option<&Path>, budget: &Budget) -> Result<Report> {
    let input = load_input(&case.input, case.alphabet.as_deref(), dir)?;
    let basis = Basis::parse(&case.basis, input_alphabet(&input))?;
    decide(&input, &basis, Level::parse(&case.level)?, case.plus, budget)
}

/// Runs every case (in parallel, reported in manifest order). Exit code 0
/// iff every case ran and met its expectation.
pub fn run_batch(
    manifest_path: &Path,
    jobs: Option<usize>,
    json: Option<&Path>,
    budget: &Budget,
    out: &mut dyn Write,
) -> Result<i32> {
    let text = std::fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
    let manifest: Manifest = serde_json::from_str(&text)?;
    let dir = manifest_path.parent();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<CaseOutcome> = pool.install(|| {
        manifest
            .cases
            .par_iter()
            .map(|case| {
                let result = run_case(case, dir, budget);
                let pass = match (&result, case.expect) {
                    (Ok(r), Some(expect)) => Some(r.member == expect && !r.conditional),
                    (Err(_), Some(_)) => Some(false),
                    _ => None,
                };
                let (report, error) = match result {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                CaseOutcome {
                    case: case.clone(),
                    report,
                    error,
                    pass,
                }
            })
            .collect()
    });

    let io = |e: std::io::Error| Error::io("<stdout>", e);
    writeln!(out, "{:>3}  {:<28} {:<16} {:<8} {:<8} result", "#", "input", "class", "expect", "got").map_err(io)?;
    for (i, o) in outcomes.iter().enumerate() {
        let plus = o.case.plus;
        let class = class_notation(&o.case.basis.to_uppercase(), Level::parse(&o.case.level).unwrap_or(Level::Bpol), plus);
        let expect = o.case.expect.map_or("-".into(), |e| e.to_string());
        let got = match (&o.report, &o.error) {
            (Some(r), _) if r.conditional => "cond".into(),
            (Some(r), _) => r.member.to_string(),
            _ => "error".into(),
        };
        let status = match (o.pass, &o.error) {
            (_, Some(e)) => format!("ERROR: {e}"),
            (Some(true), _) => "pass".into(),
            (Some(false), _) => "MISMATCH".into(),
            (None, _) => "-".into(),
        };
        writeln!(out, "{i:>3}  {:<28} {class:<16} {expect:<8} {got:<8} {status}", o.case.input).map_err(io)?;
    }
    let summary = BatchSummary {
        total: outcomes.len(),
        passed: outcomes.iter().filter(|o| o.pass == Some(true)).count(),
        failed: outcomes.iter().filter(|o| o.pass == Some(false) && o.error.is_none()).count(),
        errors: outcomes.iter().filter(|o| o.error.is_some()).count(),
        outcomes,
    };
    writeln!(
        out,
        "{} cases: {} passed, {} mismatched, {} errors",
        summary.total, summary.passed, summary.failed, summary.errors
    )
    .map_err(io)?;
    write_json(&json.map(Path::to_path_buf), &summary)?;
    Ok(if summary.failed == 0 && summary.errors == 0 {
        EXIT_MEMBER
    } else {
        EXIT_ERROR
    })
}
