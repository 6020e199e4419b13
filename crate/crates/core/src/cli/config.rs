//! Run configuration: defaults, `key=value` config files and flag overrides.

use std::fs;
use std::path::{Path, PathBuf};

use super::{CliError, Options};
use crate::group::DEFAULT_CAP;
use crate::lgroup::DEFAULT_ROW_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

/// Every setting a subcommand may read. Strings are validated when the
/// command context is built, before any computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub group: Option<String>,
    pub cones: Vec<String>,
    pub target: Option<String>,
    pub terms: Vec<String>,
    pub point: Option<String>,
    pub spec: Option<String>,
    pub radius: Option<usize>,
    pub radii: Option<String>,
    pub conj_radius: Option<usize>,
    pub cap: usize,
    pub row_cap: usize,
    pub format: Format,
    pub seed: u64,
    pub threads: Option<usize>,
    pub from: Option<String>,
    pub to: Option<String>,
    pub n: Option<usize>,
    pub bound: Option<u32>,
    pub element: Option<String>,
    pub assume_cofinal: bool,
    pub emit_dot: Option<PathBuf>,
    pub file: Option<PathBuf>,
    pub samples: Option<usize>,
    pub limit: Option<usize>,
    pub list: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: None,
            cones: Vec::new(),
            target: None,
            terms: Vec::new(),
            point: None,
            spec: None,
            radius: None,
            radii: None,
            conj_radius: None,
            cap: DEFAULT_CAP,
            row_cap: DEFAULT_ROW_CAP,
            format: Format::Text,
            seed: 0,
            threads: None,
            from: None,
            to: None,
            n: None,
            bound: None,
            element: None,
            assume_cofinal: false,
            emit_dot: None,
            file: None,
            samples: None,
            limit: None,
            list: false,
        }
    }
}

fn value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Config {
        line,
        msg: format!("malformed value {v:?} for {key}"),
    })
}

fn flag(key: &str, v: &str, line: usize) -> Result<bool, CliError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Config {
            line,
            msg: format!("malformed value {v:?} for {key} (expected true or false)"),
        }),
    }
}

/// Reads `key=value` lines over the defaults. `#` starts a comment; `cone`
/// and `term` may repeat.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut c = RunConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (k, v) = body.split_once('=').ok_or_else(|| CliError::Config {
            line,
            msg: format!("expected key=value, found {body:?}"),
        })?;
        let key = k.trim().replace('_', "-");
        let v = v.trim();
        let s = || Some(v.to_string());
        match key.as_str() {
            "group" => c.group = s(),
            "cone" => c.cones.push(v.to_string()),
            "target" => c.target = s(),
            "term" => c.terms.push(v.to_string()),
            "point" => c.point = s(),
            "spec" => c.spec = s(),
            "radius" => c.radius = Some(value(&key, v, line)?),
            "radii" => c.radii = s(),
            "conj-radius" => c.conj_radius = Some(value(&key, v, line)?),
            "cap" => c.cap = value(&key, v, line)?,
            "row-cap" => c.row_cap = value(&key, v, line)?,
            "format" => {
                c.format = <Format as clap::ValueEnum>::from_str(v, true).map_err(|_| CliError::Config {
                    line,
                    msg: format!("malformed value {v:?} for format (expected text or records)"),
                })?
            }
            "seed" => c.seed = value(&key, v, line)?,
            "threads" => c.threads = Some(value(&key, v, line)?),
            "from" => c.from = s(),
            "to" => c.to = s(),
            "n" => c.n = Some(value(&key, v, line)?),
            "bound" => c.bound = Some(value(&key, v, line)?),
            "element" => c.element = s(),
            "assume-cofinal" => c.assume_cofinal = flag(&key, v, line)?,
            "emit-dot" => c.emit_dot = Some(PathBuf::from(v)),
            "file" => c.file = Some(PathBuf::from(v)),
            "samples" => c.samples = Some(value(&key, v, line)?),
            "limit" => c.limit = Some(value(&key, v, line)?),
            "list" => c.list = flag(&key, v, line)?,
            _ => return Err(CliError::UnknownKey(k.trim().to_string())),
        }
    }
    Ok(c)
}

impl RunConfig {
    /// Command-line values win over the file.
    pub(super) fn apply(&mut self, o: &Options) {
        fn set<T: Clone>(slot: &mut Option<T>, v: &Option<T>) {
            if v.is_some() {
                slot.clone_from(v);
            }
        }
        set(&mut self.group, &o.group);
        if !o.cone.is_empty() {
            self.cones = o.cone.clone();
        }
        set(&mut self.target, &o.target);
        if !o.term.is_empty() {
            self.terms = o.term.clone();
        }
        set(&mut self.point, &o.point);
        set(&mut self.spec, &o.spec);
        set(&mut self.radius, &o.radius);
        set(&mut self.radii, &o.radii);
        set(&mut self.conj_radius, &o.conj_radius);
        if let Some(cap) = o.cap {
            self.cap = cap;
        }
        if let Some(r) = o.row_cap {
            self.row_cap = r;
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        set(&mut self.threads, &o.threads);
        set(&mut self.from, &o.from);
        set(&mut self.to, &o.to);
        set(&mut self.n, &o.n);
        set(&mut self.bound, &o.bound);
        set(&mut self.element, &o.element);
        self.assume_cofinal |= o.assume_cofinal;
        set(&mut self.emit_dot, &o.emit_dot);
        set(&mut self.file, &o.file);
        set(&mut self.samples, &o.samples);
        set(&mut self.limit, &o.limit);
        self.list |= o.list;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.cap, 1_000_000);
    }

    #[test]
    fn keys_and_errors() {
        let c = parse_config("# comment\ngroup=braid:n=3\ncone=dehornoy\ncone=rev(dehornoy)\nconj_radius = 2\n").unwrap();
        assert_eq!(c.group.as_deref(), Some("braid:n=3"));
        assert_eq!(c.cones.len(), 2);
        assert_eq!(c.conj_radius, Some(2));
        match parse_config("foo=1") {
            Err(CliError::UnknownKey(k)) => assert_eq!(k, "foo"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("radius=x"), Err(CliError::Config { line: 1, .. })));
        assert!(matches!(parse_config("group"), Err(CliError::Config { .. })));
        assert!(parse_config("format=json").is_err());
    }
}
