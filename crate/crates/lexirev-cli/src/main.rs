//! Command line front end for the `lexirev` library.
//!
//! Sequence files hold one formula per line, most recent revision first.
//! `#` starts a comment, blank lines are skipped, and an optional
//! `@alphabet a b c` directive fixes the variable set and order; without it
//! the alphabet is the union of the variables appearing in the file. The
//! global `--chronological` flag reads (and only reads) files in the
//! opposite order, oldest revision first.
//!
//! Every command exits 0 on an affirmative verdict (equivalent, redundant),
//! 1 on a negative one, and 2 on any error. `--json` replaces the plain-text
//! report with a single JSON object carrying the verdict, the witness (if
//! any), the engine used, and the wall-clock time in milliseconds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use lexirev::encoder;
use lexirev::formula::{
    formula_to_clauses, parse_formula, to_cnf, Alphabet, Cnf, Model, Var, DEFAULT_VAR_CAP,
};
use lexirev::horn::{self, HornFormula};
use lexirev::redundancy::{self, Engine};
use lexirev::semantics::{Equivalence, RevisionSequence, Witness};
use lexirev::solver::{export_dimacs_named, import_dimacs, VarMap};

const EXIT_AFFIRMATIVE: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Environment variable overriding the model-enumeration cap.
const MAX_VARS_ENV: &str = "LEXIREV_MAX_VARS";

#[derive(Parser)]
#[command(
    name = "lexirev",
    version,
    about = "Equivalence and redundancy of revision sequences"
)]
struct Cli {
    /// Print the result as a JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Read sequence files oldest-first instead of most-recent-first.
    #[arg(long, global = true)]
    chronological: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two sequences order models identically.
    Equiv {
        /// Left sequence file.
        a: PathBuf,
        /// Right sequence file.
        b: PathBuf,
        /// Decision engine to use.
        #[arg(long, value_enum, default_value_t = EngineFlag::Auto)]
        engine: EngineFlag,
    },
    /// Decide whether one entry of a sequence can be dropped.
    Redundant {
        /// Sequence file.
        file: PathBuf,
        /// Position to test, 1 = most recent; defaults to the last entry.
        #[arg(long)]
        pos: Option<usize>,
    },
    /// Drop redundant entries until none remain and write the result.
    Minimize {
        /// Sequence file.
        file: PathBuf,
        /// Where to write the minimized sequence.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Export the order-difference encoding of two sequences as DIMACS CNF.
    Dimacs {
        /// Left sequence file.
        a: PathBuf,
        /// Right sequence file.
        b: PathBuf,
        /// Where to write the DIMACS file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a Horn sequence whose last entry is redundant exactly when the
    /// given CNF is unsatisfiable.
    GenHard {
        /// CNF input: a DIMACS file or a formula in the usual grammar.
        cnf: PathBuf,
        /// Where to write the generated sequence.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Polynomial redundancy test for a two-formula Horn sequence.
    HornCheck {
        /// Sequence file holding exactly two Horn formulas in clausal shape.
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineFlag {
    /// Reduce the order difference to satisfiability.
    Sat,
    /// Compare all model pairs by enumeration.
    Brute,
    /// Enumerate when the instance is small, otherwise use sat.
    Auto,
}

impl From<EngineFlag> for Engine {
    fn from(flag: EngineFlag) -> Engine {
        match flag {
            EngineFlag::Sat => Engine::Sat,
            EngineFlag::Brute => Engine::Bruteforce,
            EngineFlag::Auto => Engine::Auto,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let json = cli.json;
    let chrono = cli.chronological;
    match &cli.command {
        Command::Equiv { a, b, engine } => cmd_equiv(json, chrono, a, b, *engine),
        Command::Redundant { file, pos } => cmd_redundant(json, chrono, file, *pos),
        Command::Minimize { file, output } => cmd_minimize(json, chrono, file, output),
        Command::Dimacs { a, b, output } => cmd_dimacs(json, chrono, a, b, output),
        Command::GenHard { cnf, output } => cmd_gen_hard(json, cnf, output),
        Command::HornCheck { file } => cmd_horn_check(json, chrono, file),
    }
}

fn cmd_equiv(
    json: bool,
    chrono: bool,
    a: &Path,
    b: &Path,
    engine: EngineFlag,
) -> Result<u8, String> {
    let cap = enumeration_cap()?;
    let (s, r) = read_pair(a, b, chrono)?;
    let resolved = redundancy::resolve_engine(&s, &r, engine.into());
    let started = Instant::now();
    match redundancy::equivalent_with_cap(&s, &r, resolved, cap).map_err(|e| e.to_string())? {
        Equivalence::Equivalent => {
            emit_verdict(json, "EQUIVALENT", None, engine_name(resolved), started);
            Ok(EXIT_AFFIRMATIVE)
        }
        Equivalence::Differs(w) => {
            emit_verdict(
                json,
                "NOT EQUIVALENT",
                Some(&w),
                engine_name(resolved),
                started,
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_redundant(json: bool, chrono: bool, file: &Path, pos: Option<usize>) -> Result<u8, String> {
    let s = read_sequence(file, chrono)?;
    let pos = pos.unwrap_or(s.len());
    let started = Instant::now();
    match redundancy::is_redundant_at(&s, pos).map_err(|e| e.to_string())? {
        Equivalence::Equivalent => {
            emit_verdict(json, "REDUNDANT", None, "sat", started);
            Ok(EXIT_AFFIRMATIVE)
        }
        Equivalence::Differs(w) => {
            emit_verdict(json, "IRREDUNDANT", Some(&w), "sat", started);
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_minimize(json: bool, chrono: bool, file: &Path, output: &Path) -> Result<u8, String> {
    let s = read_sequence(file, chrono)?;
    let started = Instant::now();
    let report = redundancy::minimize(&s).map_err(|e| e.to_string())?;
    write_sequence(output, &report.minimized)?;
    if json {
        let payload = serde_json::json!({
            "verdict": "MINIMIZED",
            "witness": serde_json::Value::Null,
            "engine": "sat",
            "timing_ms": timing_ms(started),
            "kept": report.minimized.len(),
            "removed_positions": report.removed_positions,
            "checks": report.checks_performed,
            "output": output.display().to_string(),
        });
        println!("{payload}");
    } else {
        let removed = if report.removed_positions.is_empty() {
            "none".to_string()
        } else {
            let positions: Vec<String> = report
                .removed_positions
                .iter()
                .map(usize::to_string)
                .collect();
            positions.join(", ")
        };
        println!(
            "kept {} of {} formulas (removed positions: {removed}; {} checks)",
            report.minimized.len(),
            report.original.len(),
            report.checks_performed
        );
        println!("wrote {}", output.display());
    }
    Ok(EXIT_AFFIRMATIVE)
}

fn cmd_dimacs(json: bool, chrono: bool, a: &Path, b: &Path, output: &Path) -> Result<u8, String> {
    let (s, r) = read_pair(a, b, chrono)?;
    let started = Instant::now();
    let encoding = encoder::build_diff(&s, &r).map_err(|e| e.to_string())?;
    let cnf = to_cnf(&encoding.formula);
    let map = VarMap::from_cnf(&cnf);
    let body = export_dimacs_named(&cnf, &map).map_err(|e| e.to_string())?;
    let text = format!(
        "c order-difference encoding: unsatisfiable iff the two sequences are equivalent\n{body}\n"
    );
    fs::write(output, text).map_err(|e| format!("{}: {e}", output.display()))?;
    if json {
        let payload = serde_json::json!({
            "verdict": "ENCODED",
            "witness": serde_json::Value::Null,
            "engine": "sat",
            "timing_ms": timing_ms(started),
            "variables": map.len(),
            "clauses": cnf.len(),
            "output": output.display().to_string(),
        });
        println!("{payload}");
    } else {
        println!(
            "wrote {} ({} variables, {} clauses)",
            output.display(),
            map.len(),
            cnf.len()
        );
    }
    Ok(EXIT_AFFIRMATIVE)
}

fn cmd_gen_hard(json: bool, cnf_path: &Path, output: &Path) -> Result<u8, String> {
    let text = fs::read_to_string(cnf_path).map_err(|e| format!("{}: {e}", cnf_path.display()))?;
    let source = read_cnf(&text).map_err(|e| format!("{}: {e}", cnf_path.display()))?;
    let started = Instant::now();
    let instance = horn::build_hardness_instance(&source).map_err(|e| e.to_string())?;
    write_sequence(output, &instance.sequence)?;
    if json {
        let payload = serde_json::json!({
            "verdict": "GENERATED",
            "witness": serde_json::Value::Null,
            "engine": "horn",
            "timing_ms": timing_ms(started),
            "formulas": instance.sequence.len(),
            "variables": instance.sequence.alphabet().len(),
            "output": output.display().to_string(),
        });
        println!("{payload}");
    } else {
        println!(
            "wrote {} ({} formulas over {} variables)",
            output.display(),
            instance.sequence.len(),
            instance.sequence.alphabet().len()
        );
    }
    Ok(EXIT_AFFIRMATIVE)
}

fn cmd_horn_check(json: bool, chrono: bool, file: &Path) -> Result<u8, String> {
    let s = read_sequence(file, chrono)?;
    if s.len() != 2 {
        return Err(format!(
            "horn-check needs a sequence of exactly two formulas, {} has {}",
            file.display(),
            s.len()
        ));
    }
    let newer = HornFormula::from_formula(&s.formulas()[0]).map_err(|e| e.to_string())?;
    let older = HornFormula::from_formula(&s.formulas()[1]).map_err(|e| e.to_string())?;
    let started = Instant::now();
    if horn::redundant_two_horn(&newer, &older) {
        emit_verdict(json, "REDUNDANT", None, "horn", started);
        Ok(EXIT_AFFIRMATIVE)
    } else {
        emit_verdict(json, "IRREDUNDANT", None, "horn", started);
        Ok(EXIT_NEGATIVE)
    }
}

/// Reads both sequences and places them over the union of their alphabets.
fn read_pair(
    a: &Path,
    b: &Path,
    chrono: bool,
) -> Result<(RevisionSequence, RevisionSequence), String> {
    let s = read_sequence(a, chrono)?;
    let r = read_sequence(b, chrono)?;
    let shared = s.alphabet().union(r.alphabet());
    let s = s.with_alphabet(shared.clone()).map_err(|e| e.to_string())?;
    let r = r.with_alphabet(shared).map_err(|e| e.to_string())?;
    Ok((s, r))
}

fn read_sequence(path: &Path, chronological: bool) -> Result<RevisionSequence, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_sequence(&text, chronological).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_sequence(text: &str, chronological: bool) -> Result<RevisionSequence, String> {
    let mut formulas = Vec::new();
    let mut declared: Option<Vec<Var>> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('@') {
            let mut words = directive.split_whitespace();
            if words.next() != Some("alphabet") {
                return Err(format!("line {}: unknown directive `{line}`", index + 1));
            }
            if declared.is_some() {
                return Err(format!("line {}: repeated @alphabet directive", index + 1));
            }
            let vars = words
                .map(Var::new)
                .collect::<lexirev::Result<Vec<Var>>>()
                .map_err(|e| format!("line {}: {e}", index + 1))?;
            declared = Some(vars);
            continue;
        }
        let f = parse_formula(line).map_err(|e| format!("line {}: {e}", index + 1))?;
        formulas.push(f);
    }
    if chronological {
        formulas.reverse();
    }
    match declared {
        Some(vars) => {
            RevisionSequence::new(formulas, Alphabet::new(vars)).map_err(|e| e.to_string())
        }
        None => Ok(RevisionSequence::over_own_vars(formulas)),
    }
}

fn write_sequence(path: &Path, s: &RevisionSequence) -> Result<(), String> {
    let mut out = String::from("# one formula per line; line 1 is the most recent revision\n");
    if !s.alphabet().is_empty() {
        let names: Vec<&str> = s.alphabet().iter().map(Var::name).collect();
        out.push_str(&format!("@alphabet {}\n", names.join(" ")));
    }
    for f in s.formulas() {
        out.push_str(&format!("{f}\n"));
    }
    fs::write(path, out).map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses gen-hard input: DIMACS when a `p cnf` header is present, otherwise
/// one formula in the usual grammar that must already be in clausal shape.
fn read_cnf(text: &str) -> Result<Cnf, String> {
    let has_header = text.lines().any(|l| {
        let mut words = l.split_whitespace();
        words.next() == Some("p") && words.next() == Some("cnf")
    });
    if has_header {
        let (cnf, _) = import_dimacs(text).map_err(|e| e.to_string())?;
        return Ok(cnf);
    }
    let f = parse_formula(text).map_err(|e| e.to_string())?;
    formula_to_clauses(&f).map_err(|e| e.to_string())
}

fn enumeration_cap() -> Result<usize, String> {
    match std::env::var(MAX_VARS_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_VARS_ENV} must be a number of variables, got `{text}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_VAR_CAP),
        Err(e) => Err(format!("{MAX_VARS_ENV}: {e}")),
    }
}

fn engine_name(engine: Engine) -> &'static str {
    match engine {
        Engine::Sat => "sat",
        Engine::Bruteforce => "bruteforce",
        Engine::Auto => unreachable!("resolve_engine returns a concrete engine"),
    }
}

fn emit_verdict(
    json: bool,
    verdict: &str,
    witness: Option<&Witness>,
    engine: &str,
    started: Instant,
) {
    if json {
        let payload = serde_json::json!({
            "verdict": verdict,
            "witness": witness.map(witness_json),
            "engine": engine,
            "timing_ms": timing_ms(started),
        });
        println!("{payload}");
    } else {
        println!("{verdict}");
        if let Some(w) = witness {
            println!("witness i: {}", w.i);
            println!("witness j: {}", w.j);
        }
    }
}

fn witness_json(w: &Witness) -> serde_json::Value {
    serde_json::json!({ "i": model_json(&w.i), "j": model_json(&w.j) })
}

fn model_json(m: &Model) -> serde_json::Value {
    let entries: serde_json::Map<String, serde_json::Value> = m
        .iter()
        .map(|(v, b)| (v.name().to_string(), serde_json::Value::Bool(b)))
        .collect();
    serde_json::Value::Object(entries)
}

fn timing_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1000.0
}
