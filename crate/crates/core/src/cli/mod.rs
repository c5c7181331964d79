//! Command-line front end: `eval`, `table`, `verify` and `list`.

mod functions;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use umbral_special::identities::{self, tally, Params, Status, SweepOptions, VerificationReport};
use umbral_special::EvalPolicy;

use functions::{Function, Output, FUNCTIONS};

pub const MAX_TABLE_ROWS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] umbral_special::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Evaluate special functions and verify the identity catalog")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long = "rel-tol", global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long = "abs-tol", global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long = "max-terms", global = true)]
    pub max_terms: Option<usize>,
    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    pub parallelism: Option<usize>,
    /// Nonzero seeds jitter the default grids.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Record 0 seconds in reports so output is byte-identical across runs.
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
    /// Flat key=value file with the same keys as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(FnArgs),
    /// Evaluate a function over a sweep start:stop:count of one argument.
    Table(FnArgs),
    /// Verify identities ("all" or a list of ids).
    Verify {
        #[arg(required = true)]
        ids: Vec<String>,
        /// Verify at this point instead of the default grid, e.g. --param alpha=-0.5
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// List the functions and identities.
    List,
}

#[derive(Debug, Args)]
pub struct FnArgs {
    pub function: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<String>,
}

impl FnArgs {
    fn supplied(&self) -> BTreeMap<&'static str, &str> {
        [
            ("n", &self.n),
            ("x", &self.x),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("mu", &self.mu),
            ("nu", &self.nu),
            ("rho", &self.rho),
            ("a", &self.a),
            ("b1", &self.b1),
            ("b2", &self.b2),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}

/// Settings after merging defaults, the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub output_format: Format,
    pub report_path: Option<PathBuf>,
    pub parallelism: usize,
    pub seed: u64,
    pub verbose: bool,
    pub timing: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        let p = EvalPolicy::default();
        Self {
            rel_tol: p.rel_tol,
            abs_tol: p.abs_tol,
            max_terms: p.max_terms,
            output_format: Format::Text,
            report_path: None,
            parallelism: 1,
            seed: 0,
            verbose: false,
            timing: true,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| usage(format!("invalid value `{v}` for {key}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(usage(format!("invalid boolean `{v}` for {key}"))),
    }
}

impl CliConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "rel-tol" => self.rel_tol = parse_num(&key, value)?,
                "abs-tol" => self.abs_tol = parse_num(&key, value)?,
                "max-terms" => self.max_terms = parse_num(&key, value)?,
                "format" => {
                    self.output_format =
                        Format::from_str(value, true).map_err(|_| usage(format!("unknown format `{value}`")))?
                }
                "out" | "report-path" => self.report_path = Some(PathBuf::from(value)),
                "parallelism" => self.parallelism = parse_num(&key, value)?,
                "seed" => self.seed = parse_num(&key, value)?,
                "verbose" => self.verbose = parse_bool(&key, value)?,
                "no-timing" => self.timing = !parse_bool(&key, value)?,
                _ => return Err(usage(format!("config line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, g: &GlobalArgs) {
        if let Some(v) = g.rel_tol {
            self.rel_tol = v;
        }
        if let Some(v) = g.abs_tol {
            self.abs_tol = v;
        }
        if let Some(v) = g.max_terms {
            self.max_terms = v;
        }
        if let Some(v) = g.format {
            self.output_format = v;
        }
        if let Some(v) = &g.out {
            self.report_path = Some(v.clone());
        }
        if let Some(v) = g.parallelism {
            self.parallelism = v;
        }
        if let Some(v) = g.seed {
            self.seed = v;
        }
        self.verbose |= g.verbose;
        if g.no_timing {
            self.timing = false;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.parallelism < 1 {
            return Err(usage("parallelism must be at least 1"));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(usage("tolerances must be positive"));
        }
        self.policy().validate()?;
        Ok(())
    }

    pub fn policy(&self) -> EvalPolicy {
        EvalPolicy {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_terms: self.max_terms,
            ..EvalPolicy::default()
        }
    }
}

pub fn resolve_config(g: &GlobalArgs) -> Result<CliConfig, CliError> {
    let mut config = CliConfig::default();
    if let Some(path) = &g.config {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        config.apply_file(&text)?;
    }
    config.apply_flags(g);
    config.validate()?;
    Ok(config)
}

/// Shortest round-trip text, switching to exponent form for very small or
/// large magnitudes.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// Runs the parsed command, returning the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let config = resolve_config(&cli.global)?;
    let mut out: Box<dyn Write> = match &config.report_path {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let code = match &cli.command {
        Command::Eval(args) => cmd_eval(args, &config, &mut out)?,
        Command::Table(args) => cmd_table(args, &config, &mut out)?,
        Command::Verify { ids, params } => cmd_verify(ids, params, &config, &mut out)?,
        Command::List => cmd_list(&config, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn lookup(name: &str) -> Result<&'static Function, CliError> {
    functions::find(name).ok_or_else(|| {
        let names: Vec<_> = FUNCTIONS.iter().map(|f| f.name).collect();
        usage(format!("unknown function `{name}`; available: {}", names.join(", ")))
    })
}

/// Checks that exactly the function's arguments were supplied.
fn argument_map<'a>(f: &Function, args: &'a FnArgs) -> Result<BTreeMap<&'static str, &'a str>, CliError> {
    let supplied = args.supplied();
    for key in supplied.keys() {
        if !f.args.contains(key) {
            return Err(usage(format!(
                "{} takes --{}, not --{key}",
                f.name,
                f.args.join(" --")
            )));
        }
    }
    for key in f.args {
        if !supplied.contains_key(key) {
            return Err(usage(format!("{} needs --{key}", f.name)));
        }
    }
    Ok(supplied)
}

fn parse_arg(f: &Function, key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = parse_num(&format!("--{key}"), v)?;
    if !x.is_finite() {
        return Err(usage(format!("--{key} must be finite")));
    }
    if f.integer_args.contains(&key) && x.fract() != 0.0 {
        return Err(usage(format!("--{key} must be an integer, got {v}")));
    }
    Ok(x)
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    function: &'a str,
    args: BTreeMap<&'a str, f64>,
    #[serde(flatten)]
    output: &'a Output,
}

fn cmd_eval(args: &FnArgs, config: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let f = lookup(&args.function)?;
    let supplied = argument_map(f, args)?;
    let values: Vec<f64> = f
        .args
        .iter()
        .map(|k| parse_arg(f, k, supplied[k]))
        .collect::<Result<_, _>>()?;
    let output = f.call(&values, &config.policy())?;
    match config.output_format {
        Format::Text => {
            writeln!(out, "{}", fmt_num(output.value))?;
            if config.verbose {
                if let Some(path) = output.path {
                    writeln!(out, "path: {path}")?;
                }
                if let Some(n) = output.terms_used {
                    writeln!(out, "terms_used: {n}")?;
                }
                if let Some(t) = output.tail_estimate {
                    writeln!(out, "tail_estimate: {}", fmt_num(t))?;
                }
            }
        }
        Format::Json => {
            let record = EvalRecord {
                function: f.name,
                args: f.args.iter().copied().zip(values.iter().copied()).collect(),
                output: &output,
            };
            writeln!(out, "{}", serde_json::to_string(&record)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<&str> = f.args.to_vec();
            header.extend(["value", "path", "terms_used"]);
            w.write_record(&header)?;
            let mut row: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
            row.push(fmt_num(output.value));
            row.push(output.path.map(|p| p.to_string()).unwrap_or_default());
            row.push(output.terms_used.map(|n| n.to_string()).unwrap_or_default());
            w.write_record(&row)?;
            w.flush()?;
        }
    }
    Ok(0)
}

/// Parses `start:stop:count`, both ends included.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(usage(format!("sweep `{spec}` must look like start:stop:count")));
    };
    let start: f64 = parse_num("sweep start", start)?;
    let stop: f64 = parse_num("sweep stop", stop)?;
    let count: usize = parse_num("sweep count", count)?;
    if !(start.is_finite() && stop.is_finite()) {
        return Err(usage("sweep bounds must be finite"));
    }
    if count == 0 || count > MAX_TABLE_ROWS {
        return Err(usage(format!("sweep count must lie in 1..={MAX_TABLE_ROWS}, got {count}")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect())
}

#[derive(Serialize)]
struct TableRow<'a> {
    #[serde(flatten)]
    args: BTreeMap<&'a str, f64>,
    value: f64,
    path: Option<umbral_special::Path>,
    terms_used: Option<usize>,
}

fn cmd_table(args: &FnArgs, config: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let f = lookup(&args.function)?;
    let supplied = argument_map(f, args)?;
    let swept: Vec<&str> = f.args.iter().copied().filter(|k| supplied[k].contains(':')).collect();
    if swept.len() > 1 {
        return Err(usage("only one argument may be swept"));
    }
    let sweep_key = swept.first().copied();
    let grid = match sweep_key {
        Some(k) => parse_sweep(supplied[k])?,
        None => vec![0.0],
    };
    let fixed: BTreeMap<&str, f64> = f
        .args
        .iter()
        .filter(|k| Some(**k) != sweep_key)
        .map(|k| Ok((*k, parse_arg(f, k, supplied[k])?)))
        .collect::<Result<_, CliError>>()?;
    if let Some(k) = sweep_key {
        if f.integer_args.contains(&k) && grid.iter().any(|v| v.fract() != 0.0) {
            return Err(usage(format!("--{k} must be swept over integers")));
        }
    }
    let policy = config.policy();
    let mut rows = Vec::with_capacity(grid.len());
    for &g in &grid {
        let values: Vec<f64> = f
            .args
            .iter()
            .map(|k| if Some(*k) == sweep_key { g } else { fixed[k] })
            .collect();
        let output = f.call(&values, &policy).map_err(|e| {
            usage(format!("{} failed at {}: {e}", f.name, sweep_key.map_or(String::new(), |k| format!("{k} = {g}"))))
        })?;
        rows.push((values, output));
    }
    let header: Vec<&str> = f.args.iter().copied().chain(["value", "path", "terms_used"]).collect();
    match config.output_format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for (values, o) in &rows {
                let mut row: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
                row.push(fmt_num(o.value));
                row.push(o.path.map(|p| p.to_string()).unwrap_or_default());
                row.push(o.terms_used.map(|n| n.to_string()).unwrap_or_default());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for (values, o) in &rows {
                let row = TableRow {
                    args: f.args.iter().copied().zip(values.iter().copied()).collect(),
                    value: o.value,
                    path: o.path,
                    terms_used: o.terms_used,
                };
                writeln!(out, "{}", serde_json::to_string(&row)?)?;
            }
        }
        Format::Text => {
            writeln!(out, "# {}", header.join("\t"))?;
            for (values, o) in &rows {
                let mut cols: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
                cols.push(fmt_num(o.value));
                cols.push(o.path.map(|p| p.to_string()).unwrap_or_else(|| "-".into()));
                cols.push(o.terms_used.map(|n| n.to_string()).unwrap_or_else(|| "-".into()));
                writeln!(out, "{}", cols.join("\t"))?;
            }
        }
    }
    Ok(0)
}

fn parse_params(items: &[String]) -> Result<Params, CliError> {
    let mut p = Params::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--param expects name=value, got `{item}`")))?;
        p.insert(k.trim().to_string(), parse_num(k, v)?);
    }
    Ok(p)
}

const CSV_HEADER: [&str; 11] = [
    "id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol_abs", "tol_rel", "status", "seconds", "reason",
];

fn params_text(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", fmt_num(*v))).collect::<Vec<_>>().join(";")
}

fn write_reports(reports: &[VerificationReport], config: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.output_format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in reports {
                w.write_record([
                    r.id.clone(),
                    params_text(&r.params),
                    fmt_opt(r.lhs),
                    fmt_opt(r.rhs),
                    fmt_opt(r.abs_err),
                    fmt_opt(r.rel_err),
                    fmt_num(r.tol_abs),
                    fmt_num(r.tol_rel),
                    r.status.to_string(),
                    fmt_num(r.seconds),
                    r.reason.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                write!(
                    out,
                    "{} [{}] {}: lhs={} rhs={} abs_err={} rel_err={}",
                    r.id,
                    params_text(&r.params),
                    r.status,
                    fmt_opt(r.lhs),
                    fmt_opt(r.rhs),
                    fmt_opt(r.abs_err),
                    fmt_opt(r.rel_err),
                )?;
                if config.timing {
                    write!(out, " ({:.3} s)", r.seconds)?;
                }
                if let Some(reason) = &r.reason {
                    write!(out, " reason: {reason}")?;
                }
                writeln!(out)?;
            }
            let (pass, fail, skipped) = tally(reports);
            writeln!(out, "{} checks: {pass} pass, {fail} fail, {skipped} skipped", reports.len())?;
        }
    }
    Ok(())
}

fn cmd_verify(ids: &[String], params: &[String], config: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let policy = config.policy();
    let reports = if !params.is_empty() {
        let [id] = ids else {
            return Err(usage("--param needs exactly one identity id"));
        };
        let mut r = identities::verify(id, &parse_params(params)?, &policy)?;
        if !config.timing {
            r.seconds = 0.0;
        }
        vec![r]
    } else {
        let all = ids.iter().any(|i| i.eq_ignore_ascii_case("all"));
        if all && ids.len() > 1 {
            return Err(usage("`all` cannot be combined with other ids"));
        }
        let options = SweepOptions {
            parallelism: config.parallelism,
            seed: config.seed,
            timing: config.timing,
            ids: if all { Vec::new() } else { ids.to_vec() },
        };
        identities::sweep(&policy, &options)?
    };
    write_reports(&reports, config, out)?;
    Ok(if reports.iter().all(|r| r.status == Status::Pass) { 0 } else { 1 })
}

fn cmd_list(config: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    match config.output_format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string(&identities::catalog_json())?)?;
        }
        _ => {
            writeln!(out, "functions:")?;
            for f in FUNCTIONS {
                let args: Vec<String> = f.args.iter().map(|a| format!("--{a}")).collect();
                writeln!(out, "  {:<14}{:<32}{}", f.name, args.join(" "), f.summary)?;
            }
            writeln!(out, "identities:")?;
            for i in identities::list_identities() {
                writeln!(out, "  {}  {} ({} points)", i.id, i.description, i.grid.len())?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let g = parse_sweep("0.1:10:100").unwrap();
        assert_eq!(g.len(), 100);
        assert_eq!((g[0], g[99]), (0.1, 10.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(parse_sweep("0:1:0").is_err());
        assert!(parse_sweep("0:1").is_err());
        assert!(parse_sweep("0:inf:3").is_err());
        assert_eq!(parse_sweep("2:5:1").unwrap(), vec![2.0]);
    }

    #[test]
    fn config_file() {
        let mut c = CliConfig::default();
        c.apply_file("# defaults\nrel_tol = 1e-10\nformat=json\nparallelism=4\nno-timing=true\n")
            .unwrap();
        assert_eq!(c.rel_tol, 1e-10);
        assert_eq!(c.output_format, Format::Json);
        assert_eq!(c.parallelism, 4);
        assert!(!c.timing);
        assert!(c.apply_file("bogus=1").is_err());
        assert!(c.apply_file("seed").is_err());
        c.apply_flags(&GlobalArgs {
            parallelism: Some(2),
            ..GlobalArgs::default()
        });
        assert_eq!(c.parallelism, 2);
        c.parallelism = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.9003163161571061), "0.9003163161571061");
        assert_eq!(fmt_num(1e-20), "1e-20");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-2.5e20), "-2.5e20");
    }
}
