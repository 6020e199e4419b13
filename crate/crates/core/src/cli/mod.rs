//! The `ordlat` command line.
//!
//! Exit codes: `0` when a verdict was produced, `2` when a search came back
//! empty-handed (inconclusive), `1` on errors.

mod commands;
mod config;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{load_config, parse_config, Format, RunConfig};

use crate::group::{Group, GroupError, Word};
use crate::lgroup::{LGroupError, LTerm};
use crate::lo_space::LoError;
use crate::orderings::{OrderError, PositiveCone};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Lo(#[from] LoError),
    #[error(transparent)]
    LGroup(#[from] LGroupError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Parser, Debug)]
#[command(name = "ordlat", version, about = "Left orderings, positive cones and lattice-ordered group terms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Options {
    /// Group spec: free:rank=N, zn:rank=N, tararin:n=N or braid:n=N
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Cone spec; repeat for commands taking several cones
    #[arg(long, global = true)]
    pub cone: Vec<String>,
    /// Second cone (orbit-contains, kernel-falsify)
    #[arg(long, global = true)]
    pub target: Option<String>,
    /// Lattice-group term, or @file with one term per line
    #[arg(long, global = true)]
    pub term: Vec<String>,
    /// Evaluation point
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Comma-separated words required positive
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Ball radius
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Radius schedule: `1..5` or `1,2,4`
    #[arg(long, global = true)]
    pub radii: Option<String>,
    /// Radius of the conjugator ball
    #[arg(long, global = true)]
    pub conj_radius: Option<usize>,
    /// Element-count cap for enumerations
    #[arg(long, global = true, env = "ORDLAT_CAP")]
    pub cap: Option<usize>,
    /// Row cap for term normalization
    #[arg(long, global = true)]
    pub row_cap: Option<usize>,
    /// Output style; `records` is key=value lines
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for sampled checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; output does not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// key=value file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Source sign sequence, e.g. `+,-,+`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub from: Option<String>,
    /// Target sign sequence
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub to: Option<String>,
    /// Length of the sign sequences; defaults to that of --from
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Exponent bound for cofinality tests
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    /// Element tested for cofinality
    #[arg(long, global = true)]
    pub element: Option<String>,
    /// Treat the element as cofinal without a structural reason (taints certificates)
    #[arg(long, global = true)]
    pub assume_cofinal: bool,
    /// Write the orbit graph in DOT format (`-` for standard output)
    #[arg(long, global = true)]
    pub emit_dot: Option<PathBuf>,
    /// Certificate file (`-` for standard input)
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Number of sampled triples for axioms-check
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Stop counting after this many assignments
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Print every assignment found
    #[arg(long, global = true)]
    pub list: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Count consistent sign assignments on a ball
    EnumerateCones,
    /// Assignments on a ball making the --spec words positive
    OpenSet,
    /// Check that the --spec words single out one assignment at every radius
    IsolatedScan,
    /// Distinct restrictions of the conjugates of a cone
    Orbit,
    /// Search for a conjugate of --cone agreeing with --target
    OrbitContains,
    /// Find a term in the kernel of --cone but not of --target
    KernelFalsify,
    /// Certify that the reverse of a cone is not in its orbit closure
    CofinalObstruction,
    /// Conjugator carrying one Tararin sign sequence to another on T_n
    TararinConjugator,
    /// Orbits of a complete finite space of orderings
    MinimalSets,
    /// Size and isolating families of a complete finite space
    FiniteCheck,
    /// Evaluate a term at a point
    EvalTerm,
    /// Join-of-meets normal form of a term
    NormalizeTerm,
    /// Search cones and points for one moved by a term
    NontrivialWitness,
    /// Decide whether a term is basic over a complete finite space
    BasicCheck,
    /// Scan a ball for violations of the Conradian condition
    ConradianCheck,
    /// Test cofinality of an element on a ball
    CofinalCheck,
    /// Re-check a certificate from its records
    VerifyCertificate,
    /// Sample ordering axioms on a ball
    AxiomsCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Verdict,
    Inconclusive,
}

/// Collects output lines. Records mode keeps only `key=value` lines.
pub(crate) struct Out {
    records: bool,
    lines: Vec<String>,
}

impl Out {
    pub(crate) fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}={value}"));
    }

    pub(crate) fn say(&mut self, line: impl Into<String>) {
        if !self.records {
            self.lines.push(line.into());
        }
    }

    pub(crate) fn raw(&mut self, block: &str) {
        self.lines.extend(block.lines().map(str::to_string));
    }
}

/// Validated inputs shared by the subcommands.
pub(crate) struct Ctx {
    pub cfg: RunConfig,
    pub group: Option<Group>,
    pub cones: Vec<PositiveCone>,
    pub target: Option<PositiveCone>,
}

impl Ctx {
    fn new(cfg: RunConfig) -> Result<Ctx, CliError> {
        let group = cfg.group.as_deref().map(Group::parse).transpose()?;
        let cone_group = || group.ok_or_else(|| CliError::Usage("--cone requires --group".into()));
        let cones = cfg
            .cones
            .iter()
            .map(|s| Ok(PositiveCone::parse(cone_group()?, s)?))
            .collect::<Result<Vec<_>, CliError>>()?;
        let target = match &cfg.target {
            Some(s) => Some(PositiveCone::parse(cone_group()?, s)?),
            None => None,
        };
        Ok(Ctx {
            cfg,
            group,
            cones,
            target,
        })
    }

    pub(crate) fn group(&self) -> Result<Group, CliError> {
        self.group.ok_or_else(|| CliError::Usage("missing --group".into()))
    }

    pub(crate) fn cone(&self) -> Result<&PositiveCone, CliError> {
        match self.cones.as_slice() {
            [c] => Ok(c),
            [] => Err(CliError::Usage("missing --cone".into())),
            _ => Err(CliError::Usage("expected exactly one --cone".into())),
        }
    }

    pub(crate) fn target(&self) -> Result<&PositiveCone, CliError> {
        self.target
            .as_ref()
            .ok_or_else(|| CliError::Usage("missing --target".into()))
    }

    pub(crate) fn radius(&self, default: usize) -> usize {
        self.cfg.radius.unwrap_or(default)
    }

    pub(crate) fn conj_radius(&self, default: usize) -> usize {
        self.cfg.conj_radius.unwrap_or(default)
    }

    pub(crate) fn word(&self, text: Option<&str>, flag: &str) -> Result<Word, CliError> {
        let text = text.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))?;
        Ok(self.group()?.parse_word(text)?)
    }

    /// All terms, expanding `@file` entries line by line.
    pub(crate) fn terms(&self) -> Result<Vec<LTerm>, CliError> {
        let group = self.group()?;
        let mut out = Vec::new();
        for t in &self.cfg.terms {
            if let Some(path) = t.strip_prefix('@') {
                let text = fs::read_to_string(path).map_err(|e| CliError::Io {
                    path: path.to_string(),
                    reason: e.to_string(),
                })?;
                for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                    out.push(LTerm::parse(group, line)?);
                }
            } else {
                out.push(LTerm::parse(group, t)?);
            }
        }
        if out.is_empty() {
            return Err(CliError::Usage("missing --term".into()));
        }
        Ok(out)
    }

    pub(crate) fn term(&self) -> Result<LTerm, CliError> {
        let mut t = self.terms()?;
        if t.len() != 1 {
            return Err(CliError::Usage("expected exactly one term".into()));
        }
        Ok(t.remove(0))
    }

    pub(crate) fn radii(&self, default: &str) -> Result<Vec<usize>, CliError> {
        parse_radii(self.cfg.radii.as_deref().unwrap_or(default))
    }
}

/// `a..b` (inclusive) or a comma list.
pub fn parse_radii(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad radius schedule {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|r| r.trim().parse().map_err(|_| bad()))
        .collect()
}

fn execute(cli: Cli, out: &mut Out) -> Result<Status, CliError> {
    let mut cfg = match &cli.options.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    cfg.apply(&cli.options);
    out.records = cfg.format == Format::Records;
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let ctx = Ctx::new(cfg)?;
    commands::dispatch(cli.command, &ctx, out)
}

/// Runs the command line, writing the report to `stdout` and errors to
/// `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let mut out = Out {
        records: false,
        lines: Vec::new(),
    };
    let result = execute(cli, &mut out);
    for line in &out.lines {
        let _ = writeln!(stdout, "{line}");
    }
    match result {
        Ok(Status::Verdict) => 0,
        Ok(Status::Inconclusive) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("ordlat").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn radii_schedules() {
        assert_eq!(parse_radii("1..3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_radii("2,4").unwrap(), [2, 4]);
        assert!(parse_radii("x").is_err());
    }

    #[test]
    fn bad_group_is_an_error() {
        let (code, _, err) = run_str(&["enumerate-cones", "--group", "nope"]);
        assert_eq!(code, 1);
        assert!(err.contains("invalid group spec"));
    }

    #[test]
    fn missing_flags_are_reported() {
        let (code, _, err) = run_str(&["eval-term", "--group", "zn:rank=1"]);
        assert_eq!(code, 1);
        assert!(err.contains("--cone"), "{err}");
    }
}
