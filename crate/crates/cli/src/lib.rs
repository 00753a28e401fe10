//! Command-line front end: argument parsing, command execution, and the
//! serializable reports each command prints.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use abdsat::backdoor::{Backdoor, BaseClass};
use abdsat::enumerate::{enumerate_minimal, enumerate_solutions, relevance_witness, RelevanceMode};
use abdsat::horn::check_solution_horn;
use abdsat::instance::{
    oracle_is_solution, parse_instance, Instance, Solution, DEFAULT_ORACLE_HYPS, DEFAULT_ORACLE_VARS,
};
use abdsat::krom::{check_solution_krom, check_solution_krom_strict};
use abdsat::solv::{encode_solv, SolvOptions};
use abdsat::solver::{to_dimacs, Solver, SolverResult};
use abdsat::subset_min::{encode_subsetmin, MinOptions};
use abdsat::{EncodingStats, Error};

#[derive(Parser, Debug, Clone)]
#[command(name = "abdsat", version, about = "Propositional abduction through strong backdoors and SAT")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide whether the instance has a solution and print one.
    Solve(Common),
    /// List all solutions, or all subset-minimal ones.
    Enumerate(EnumerateArgs),
    /// Decide whether a given set of hypotheses is a solution.
    Check(CheckArgs),
    /// Find a smallest strong backdoor set.
    Detect(Common),
    /// Write the SAT encoding as DIMACS plus a role map.
    Encode(EncodeArgs),
    /// Decide whether a hypothesis occurs in some (minimal) solution.
    Relevance(RelevanceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Horn,
    Krom,
    Auto,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Instance file (`.json` for the JSON format, text otherwise).
    pub instance: PathBuf,
    /// Base class of the backdoor; `auto` takes the smaller detected one.
    #[arg(long, value_enum, default_value_t = ClassArg::Auto)]
    pub class: ClassArg,
    /// Comma-separated backdoor variables, verified before use.
    #[arg(long, value_delimiter = ',')]
    pub backdoor: Option<Vec<String>>,
    /// Largest backdoor size tried by detection.
    #[arg(long = "max-k", visible_alias = "detect", default_value_t = 8)]
    pub max_k: usize,
    /// External solver command; `{}` stands for the DIMACS file path.
    #[arg(long, conflicts_with = "builtin")]
    pub solver: Option<String>,
    /// Use the built-in DPLL solver (the default).
    #[arg(long)]
    pub builtin: bool,
    /// Use the encodings and checkers exactly as originally formulated.
    #[arg(long)]
    pub strict_paper: bool,
    /// Print a JSON report.
    #[arg(long)]
    pub json: bool,
    /// Re-check printed solutions by exhaustive enumeration.
    #[arg(long)]
    pub self_check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Only subset-minimal solutions.
    #[arg(long)]
    pub minimal: bool,
    /// Only solutions with at most this many hypotheses.
    #[arg(long)]
    pub at_most_k: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated hypotheses (empty for the empty set).
    #[arg(long, allow_hyphen_values = true)]
    pub solution: String,
}

#[derive(Args, Debug, Clone)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub common: Common,
    /// DIMACS output path; the role map goes to `<out>.roles.json`.
    #[arg(long)]
    pub out: PathBuf,
    /// Read solutions from selector variables.
    #[arg(long)]
    pub decoupled: bool,
    /// Encode "this hypothesis is in a subset-minimal solution" instead.
    #[arg(long = "h")]
    pub h: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct RelevanceArgs {
    #[command(flatten)]
    pub common: Common,
    /// The hypothesis to test.
    #[arg(long = "h")]
    pub h: String,
    /// Ask for a subset-minimal solution containing it.
    #[arg(long)]
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackdoorReport {
    pub class: String,
    pub vars: Vec<String>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pruned: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: String,
    pub solution: Option<Vec<String>>,
    pub backdoor: BackdoorReport,
    pub encoding: EncodingStats,
    /// The decoded solution passed the class checker.
    pub verified: Option<bool>,
    pub self_check: Option<bool>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub minimal: bool,
    pub at_most_k: Option<usize>,
    pub solutions: Vec<Vec<String>>,
    pub count: usize,
    pub backdoor: BackdoorReport,
    pub self_check: Option<bool>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub solution: Vec<String>,
    pub is_solution: bool,
    pub backdoor: BackdoorReport,
    pub self_check: Option<bool>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectEntry {
    pub class: String,
    /// `None` when no backdoor of size at most `max_k` exists.
    pub backdoor: Option<BackdoorReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectReport {
    pub max_k: usize,
    pub results: Vec<DetectEntry>,
    pub chosen: Option<BackdoorReport>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncodeReport {
    pub dimacs: String,
    pub roles: String,
    pub backdoor: BackdoorReport,
    pub encoding: EncodingStats,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelevanceReport {
    pub hypothesis: String,
    pub mode: RelevanceMode,
    pub relevant: bool,
    pub witness: Option<Vec<String>>,
    pub backdoor: BackdoorReport,
    pub self_check: Option<bool>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Solve(SolveReport),
    Enumerate(EnumerateReport),
    Check(CheckReport),
    Detect(DetectReport),
    Encode(EncodeReport),
    Relevance(RelevanceReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Bad arguments or input files; exit code 1.
    Usage,
    /// Verification or solver failure; exit code 2.
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub error: String,
}

impl CliError {
    fn failure(msg: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Failure, error: msg.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            ErrorKind::Usage => 1,
            ErrorKind::Failure => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Syntax { .. }
            | Error::Semantic(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::NotAHypothesis(_)
            | Error::UnknownVariable(_)
            | Error::WrongClass { .. } => ErrorKind::Usage,
            _ => ErrorKind::Failure,
        };
        CliError { kind, error: e.to_string() }
    }
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let json = cli.common().json;
    match run(&cli) {
        Ok(report) => {
            let stdout = if json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                report.to_text()
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => {
            if json {
                let stdout = serde_json::to_string_pretty(&e).expect("errors serialize") + "\n";
                Outcome { code: e.exit_code(), stdout, stderr: String::new() }
            } else {
                Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", e.error) }
            }
        }
    }
}

impl Cli {
    pub fn common(&self) -> &Common {
        match &self.command {
            Command::Solve(c) | Command::Detect(c) => c,
            Command::Enumerate(a) => &a.common,
            Command::Check(a) => &a.common,
            Command::Encode(a) => &a.common,
            Command::Relevance(a) => &a.common,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let common = cli.common();
    let p = parse_instance(&common.instance)?;
    let elapsed = || start.elapsed().as_secs_f64() * 1e3;
    match &cli.command {
        Command::Detect(c) => {
            let (results, chosen) = detect_all(&p, c)?;
            Ok(Report::Detect(DetectReport { max_k: c.max_k, results, chosen, wall_ms: elapsed() }))
        }
        Command::Solve(c) => {
            let b = select_backdoor(&p, c)?;
            let enc = encode_solv(&p, &b, &solv_options(c, false))?;
            let (status, solution, verified) = match solver(c).solve(&enc.cnf).map_err(Error::from)? {
                SolverResult::Sat(model) => {
                    let s = enc.decode(&model)?;
                    let ok = check(&p, &b, &s, false)?;
                    if !ok {
                        return Err(CliError::failure(format!(
                            "decoded solution {} failed verification",
                            names(&p, &s).join(",")
                        )));
                    }
                    ("sat", Some(s), Some(true))
                }
                SolverResult::Unsat => ("unsat", None, None),
            };
            let self_check = self_check(&p, c, solution.iter())?;
            Ok(Report::Solve(SolveReport {
                status: status.to_owned(),
                solution: solution.as_ref().map(|s| names(&p, s)),
                backdoor: backdoor_report(&p, &b),
                encoding: enc.stats(),
                verified,
                self_check,
                wall_ms: elapsed(),
            }))
        }
        Command::Enumerate(a) => {
            let c = &a.common;
            let b = select_backdoor(&p, c)?;
            let solutions = if a.minimal {
                let mut all = enumerate_minimal(&p, &b, &min_options(c), &solver(c))?;
                if let Some(k) = a.at_most_k {
                    all.retain(|s| s.len() <= k);
                }
                all
            } else {
                enumerate_solutions(&p, &b, &solv_options(c, true), a.at_most_k, &solver(c))?
            };
            let self_check = self_check(&p, c, solutions.iter())?;
            Ok(Report::Enumerate(EnumerateReport {
                minimal: a.minimal,
                at_most_k: a.at_most_k,
                count: solutions.len(),
                solutions: solutions.iter().map(|s| names(&p, s)).collect(),
                backdoor: backdoor_report(&p, &b),
                self_check,
                wall_ms: elapsed(),
            }))
        }
        Command::Check(a) => {
            let c = &a.common;
            let b = select_backdoor(&p, c)?;
            let s = p.solution_from_names(&a.solution)?;
            let is_solution = check(&p, &b, &s, c.strict_paper)?;
            let self_check = if c.self_check && within_oracle_bounds(&p) {
                let truth = oracle_is_solution(&p, &s)?;
                if truth != is_solution {
                    return Err(CliError::failure(format!(
                        "self-check failed: checker says {is_solution}, exhaustive enumeration says {truth}"
                    )));
                }
                Some(true)
            } else {
                None
            };
            Ok(Report::Check(CheckReport {
                solution: names(&p, &s),
                is_solution,
                backdoor: backdoor_report(&p, &b),
                self_check,
                wall_ms: elapsed(),
            }))
        }
        Command::Encode(a) => {
            let c = &a.common;
            let b = select_backdoor(&p, c)?;
            let enc = match &a.h {
                Some(h) => encode_subsetmin(&p, &b, p.hyp(h)?, &min_options(c))?,
                None => encode_solv(&p, &b, &solv_options(c, a.decoupled))?,
            };
            let roles_path = roles_path(&a.out);
            std::fs::write(&a.out, to_dimacs(&enc.cnf)).map_err(Error::from)?;
            let roles = serde_json::to_string_pretty(&enc.role_map(p.names())).map_err(Error::from)?;
            std::fs::write(&roles_path, roles + "\n").map_err(Error::from)?;
            Ok(Report::Encode(EncodeReport {
                dimacs: a.out.display().to_string(),
                roles: roles_path.display().to_string(),
                backdoor: backdoor_report(&p, &b),
                encoding: enc.stats(),
                wall_ms: elapsed(),
            }))
        }
        Command::Relevance(a) => {
            let c = &a.common;
            let b = select_backdoor(&p, c)?;
            let h = p.hyp(&a.h)?;
            let mode = if a.minimal { RelevanceMode::MinimalSolution } else { RelevanceMode::AnySolution };
            let witness = relevance_witness(&p, &b, h, mode, &min_options(c), &solver(c))?;
            let self_check = self_check(&p, c, witness.iter())?;
            Ok(Report::Relevance(RelevanceReport {
                hypothesis: a.h.clone(),
                mode,
                relevant: witness.is_some(),
                witness: witness.as_ref().map(|s| names(&p, s)),
                backdoor: backdoor_report(&p, &b),
                self_check,
                wall_ms: elapsed(),
            }))
        }
    }
}

/// Sidecar role-map path for a DIMACS output path.
pub fn roles_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".roles.json");
    PathBuf::from(s)
}

fn solver(c: &Common) -> Solver {
    match &c.solver {
        Some(template) => Solver::external(template),
        None => Solver::Builtin,
    }
}

fn solv_options(c: &Common, decoupled: bool) -> SolvOptions {
    SolvOptions { decoupled, strict: c.strict_paper, ..SolvOptions::default() }
}

fn min_options(c: &Common) -> MinOptions {
    MinOptions { all_manifestations_false: c.strict_paper, solv: solv_options(c, true) }
}

fn classes(c: &Common) -> Vec<BaseClass> {
    match c.class {
        ClassArg::Horn => vec![BaseClass::Horn],
        ClassArg::Krom => vec![BaseClass::Krom],
        ClassArg::Auto => vec![BaseClass::Horn, BaseClass::Krom],
    }
}

fn detect_all(p: &Instance, c: &Common) -> Result<(Vec<DetectEntry>, Option<BackdoorReport>), CliError> {
    let mut results = Vec::new();
    let mut best: Option<Backdoor> = None;
    for class in classes(c) {
        let found = match Backdoor::smallest(p.theory(), class, c.max_k) {
            Ok(b) => Some(b),
            Err(Error::ResourceCap { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        results.push(DetectEntry { class: class.to_string(), backdoor: found.as_ref().map(|b| backdoor_report(p, b)) });
        if let Some(b) = found {
            if best.as_ref().is_none_or(|cur| b.len() < cur.len()) {
                best = Some(b);
            }
        }
    }
    Ok((results, best.map(|b| backdoor_report(p, &b))))
}

/// The explicit backdoor (verified) or the smallest detected one; for
/// `auto`, the smaller of the two classes with ties going to Horn.
pub fn select_backdoor(p: &Instance, c: &Common) -> Result<Backdoor, CliError> {
    if let Some(list) = &c.backdoor {
        let vars = list
            .iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| p.var(s))
            .collect::<abdsat::Result<Vec<_>>>()?;
        let mut last = None;
        for class in classes(c) {
            match Backdoor::verified(p.theory(), vars.iter().copied(), class) {
                Ok(b) => return Ok(b),
                Err(e) => last = Some(e),
            }
        }
        return Err(last.expect("at least one class is tried").into());
    }
    let mut best: Option<Backdoor> = None;
    for class in classes(c) {
        match Backdoor::smallest(p.theory(), class, c.max_k) {
            Ok(b) => {
                if best.as_ref().is_none_or(|cur| b.len() < cur.len()) {
                    best = Some(b);
                }
            }
            Err(Error::ResourceCap { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    best.ok_or_else(|| CliError::failure(format!("no strong backdoor of size at most {} found", c.max_k)))
}

fn check(p: &Instance, b: &Backdoor, s: &Solution, strict: bool) -> Result<bool, CliError> {
    Ok(match (b.class(), strict) {
        (BaseClass::Horn, _) => check_solution_horn(p, b, s)?,
        (BaseClass::Krom, false) => check_solution_krom(p, b, s)?,
        (BaseClass::Krom, true) => check_solution_krom_strict(p, b, s)?,
    })
}

fn within_oracle_bounds(p: &Instance) -> bool {
    p.num_vars() <= DEFAULT_ORACLE_VARS && p.hyps().len() <= DEFAULT_ORACLE_HYPS
}

/// With `--self-check`, confirms every solution by exhaustive enumeration.
/// `None` when the check is off or the instance is too large for it.
fn self_check<'a>(
    p: &Instance,
    c: &Common,
    solutions: impl Iterator<Item = &'a Solution>,
) -> Result<Option<bool>, CliError> {
    if !c.self_check || !within_oracle_bounds(p) {
        return Ok(None);
    }
    for s in solutions {
        if !oracle_is_solution(p, s)? {
            return Err(CliError::failure(format!(
                "self-check failed: {} is not a solution",
                format_solution(&names(p, s))
            )));
        }
    }
    Ok(Some(true))
}

fn names(p: &Instance, s: &Solution) -> Vec<String> {
    p.solution_names(s)
}

fn backdoor_report(p: &Instance, b: &Backdoor) -> BackdoorReport {
    BackdoorReport {
        class: b.class().to_string(),
        vars: b.vars().iter().map(|&v| p.names().name(v).to_owned()).collect(),
        size: b.len(),
        pruned: b.pruned().iter().map(|&v| p.names().name(v).to_owned()).collect(),
    }
}

pub fn format_solution(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn format_backdoor(b: &BackdoorReport) -> String {
    format!("{} {} (size {})", b.class, format_solution(&b.vars), b.size)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        match self {
            Report::Solve(r) => {
                line(format!("status: {}", r.status));
                if let Some(s) = &r.solution {
                    line(format!("solution: {}", format_solution(s)));
                }
                line(format!("backdoor: {}", format_backdoor(&r.backdoor)));
                line(format!("encoding: {} variables, {} clauses", r.encoding.vars, r.encoding.clauses));
            }
            Report::Enumerate(r) => {
                for s in &r.solutions {
                    line(format_solution(s));
                }
                let noun = if r.count == 1 { "solution" } else { "solutions" };
                let what = if r.minimal { format!("subset-minimal {noun}") } else { noun.to_owned() };
                line(format!("{} {what}", r.count));
            }
            Report::Check(r) => line(yes_no(r.is_solution).to_owned()),
            Report::Detect(r) => {
                for e in &r.results {
                    match &e.backdoor {
                        Some(b) => line(format!("{}: {} (size {})", e.class, format_solution(&b.vars), b.size)),
                        None => line(format!("{}: none of size at most {}", e.class, r.max_k)),
                    }
                }
            }
            Report::Encode(r) => {
                line(format!("wrote {} ({} variables, {} clauses)", r.dimacs, r.encoding.vars, r.encoding.clauses));
                line(format!("wrote {}", r.roles));
            }
            Report::Relevance(r) => {
                line(yes_no(r.relevant).to_owned());
                if let Some(w) = &r.witness {
                    line(format!("witness: {}", format_solution(w)));
                }
            }
        }
        out
    }
}
