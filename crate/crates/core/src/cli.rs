//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code with both output
//! streams, so the binary is a thin wrapper and tests can drive it in-process.
//! Exit codes: 0 on success or PASS, 1 on a FAIL report, 2 on bad input.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::freegroup::{self, GroupWord};
use crate::freelie::LieSeries;
use crate::invariants::{
    ch_first_nonvanishing, chord_weight_with, detect_noninvertible, mu_first_nonvanishing,
    vanishing_check_bracket_with, vanishing_check_phi_with, Counterexample, Evaluation,
    FirstOrderInvariant, VanishingReport, Verdict,
};
use crate::stringlink;

/// Degrees above this need `--max-degree`.
pub const DEFAULT_DEGREE_CEILING: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "chlink",
    version,
    about = "Campbell-Hausdorff and Milnor invariants of string links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Magnus and Campbell-Hausdorff expansions of free-group words, one per line.
    Expand,
    /// BCH product of the CH expansions of exactly two free-group words.
    Bch,
    /// Zero-framed longitudes and linking matrix of each string link.
    Longitudes,
    /// Milnor invariants at the first non-vanishing order.
    Mu,
    /// First non-vanishing Campbell-Hausdorff invariant.
    Ch,
    /// Compares the first-order CH invariant with that of the reversed link.
    InvertCheck,
    /// Alternating sums over the resolutions of the double points.
    VanishCheck {
        #[arg(long, value_enum, default_value_t = CheckArg::Both)]
        check: CheckArg,
    },
    /// Degree-s weight of a word with exactly s-1 double points.
    Weight,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckArg {
    Phi,
    Bracket,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Truncation degree s.
    #[arg(long, short = 'd', global = true, default_value_t = 3,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub degree: u32,

    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Sum resolutions in an order shuffled by this seed; results do not change.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Print the parsed input in canonical form and stop.
    #[arg(long, global = true)]
    pub echo: bool,

    /// Raise the degree ceiling.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,

    /// Inline input; `/` separates lines, e.g. "strands 2 / s1 s1".
    #[arg(long, global = true, conflicts_with = "file")]
    pub word: Option<String>,

    /// Input file; standard input is read when neither this nor --word is given.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli, stdin)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let opts = &cli.options;
    let mut stderr = String::new();
    let ceiling = match opts.max_degree {
        Some(c) => {
            if c > DEFAULT_DEGREE_CEILING {
                stderr.push_str(&format!(
                    "warning: degree ceiling raised to {c}; basis sizes grow exponentially\n"
                ));
            }
            c
        }
        None => DEFAULT_DEGREE_CEILING,
    };
    let s = opts.degree as usize;
    if s > ceiling {
        return Outcome::input_error(format!(
            "degree {s} exceeds the ceiling {ceiling} (raise it with --max-degree)"
        ));
    }

    let text = match read_input(opts, stdin) {
        Ok(t) => t,
        Err(message) => return Outcome::input_error(message),
    };

    let result = if matches!(cli.command, Command::Expand | Command::Bch) {
        group_command(cli.command, &text, s, opts.echo)
    } else {
        link_command(cli.command, &text, s, opts)
    };

    match result {
        Ok(Produced::Echo(canonical)) => Outcome {
            code: 0,
            stdout: canonical,
            stderr,
        },
        Ok(Produced::Values { values, failed }) => {
            let value = match <[Value; 1]>::try_from(values) {
                Ok([single]) => single,
                Err(many) => Value::Array(many),
            };
            Outcome {
                code: i32::from(failed),
                stdout: emit(&value, opts.format),
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

/// 1 for a failed runtime assertion, 2 for anything caused by the input.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LowerDegreeNonvanishing { .. } => 1,
        _ => 2,
    }
}

fn read_input(opts: &Options, stdin: &mut dyn Read) -> std::result::Result<String, String> {
    if let Some(w) = &opts.word {
        return Ok(w.replace('/', "\n"));
    }
    if let Some(path) = &opts.file {
        return std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()));
    }
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| format!("cannot read standard input: {e}"))?;
    Ok(text)
}

enum Produced {
    Echo(String),
    Values { values: Vec<Value>, failed: bool },
}

fn no_input() -> Error {
    Error::Syntax {
        line: 1,
        token: String::new(),
        reason: "no input words".into(),
    }
}

fn group_command(cmd: Command, text: &str, s: usize, echo: bool) -> crate::Result<Produced> {
    let words = freegroup::parse_file(text)?;
    if words.is_empty() {
        return Err(no_input());
    }
    if echo {
        return Ok(Produced::Echo(
            words.iter().map(|w| format!("{w}\n")).collect(),
        ));
    }
    let values = match cmd {
        Command::Expand => words
            .iter()
            .map(|w| {
                json!({
                    "word": w.to_string(),
                    "degree": s,
                    "magnus": w.magnus_expand(s).to_string(),
                    "ch": w.ch_expand(s).to_string(),
                })
            })
            .collect(),
        _ => {
            let [a, b] =
                <&[GroupWord; 2]>::try_from(words.as_slice()).map_err(|_| Error::Syntax {
                    line: 1,
                    token: String::new(),
                    reason: format!("bch takes exactly two words, found {}", words.len()),
                })?;
            let (ra, rb) = (a.ch_expand(s), b.ch_expand(s));
            vec![json!({
                "degree": s,
                "a": ra.to_string(),
                "b": rb.to_string(),
                "bch": ra.bch(&rb)?.to_string(),
            })]
        }
    };
    Ok(Produced::Values {
        values,
        failed: false,
    })
}

fn link_command(cmd: Command, text: &str, s: usize, opts: &Options) -> crate::Result<Produced> {
    let words = stringlink::parse_file(text)?;
    if words.is_empty() {
        return Err(no_input());
    }
    if opts.echo {
        return Ok(Produced::Echo(stringlink::format_file(&words)));
    }
    let how = opts.seed.map(Evaluation::Shuffled).unwrap_or_default();
    let mut values = Vec::new();
    let mut failed = false;
    for w in &words {
        match cmd {
            Command::Longitudes => {
                let ls = w.longitudes()?;
                values.push(json!({
                    "word": w.to_string(),
                    "strands": w.strands(),
                    "longitudes": ls.longs.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    "linking": ls.linking,
                }));
            }
            Command::Mu => {
                let mu = mu_first_nonvanishing(&w.longitudes()?, s)?;
                let entries: Vec<Value> = mu
                    .iter()
                    .map(|m| json!({ "index": m.index, "value": m.value }))
                    .collect();
                values.push(json!({ "mu": entries }));
            }
            Command::Ch => {
                let f = ch_first_nonvanishing(&w.longitudes()?, s)?;
                values.push(first_order_json(&f));
            }
            Command::InvertCheck => {
                let report = detect_noninvertible(w, s)?;
                let verdict = match report.verdict {
                    Verdict::Distinct => "DISTINCT",
                    Verdict::Inconclusive => "INCONCLUSIVE",
                };
                values.push(json!({
                    "verdict": verdict,
                    "forward": first_order_json(&report.forward),
                    "reversed": first_order_json(&report.reversed),
                }));
            }
            Command::VanishCheck { check } => {
                let mut reports = Vec::new();
                if matches!(check, CheckArg::Phi | CheckArg::Both) {
                    reports.push(vanishing_check_phi_with(w, s, how)?);
                }
                if matches!(check, CheckArg::Bracket | CheckArg::Both) {
                    reports.push(vanishing_check_bracket_with(w, s, how)?);
                }
                for r in reports {
                    failed |= !r.pass;
                    values.push(report_json(&r));
                }
            }
            Command::Weight => {
                let parts = chord_weight_with(w, s, how)?;
                values.push(json!({ "degree": s, "parts": series_texts(&parts) }));
            }
            Command::Expand | Command::Bch => unreachable!("handled by group_command"),
        }
    }
    Ok(Produced::Values { values, failed })
}

fn series_texts(parts: &[LieSeries]) -> Vec<String> {
    parts.iter().map(LieSeries::to_string).collect()
}

fn first_order_json(f: &FirstOrderInvariant) -> Value {
    json!({ "degree": f.degree, "parts": series_texts(&f.parts) })
}

fn report_json(r: &VanishingReport) -> Value {
    let mut map = Map::new();
    map.insert("check".into(), json!(r.check.name()));
    map.insert("s".into(), json!(r.s));
    map.insert("k".into(), json!(r.k));
    map.insert("pass".into(), json!(r.pass));
    if let Some(c) = &r.counterexample {
        let detail = match c {
            Counterexample::Monomial { monomial, series } => {
                json!({ "monomial": monomial.to_string(), "series": series.to_string() })
            }
            Counterexample::Component { component, series } => {
                json!({ "component": component, "series": series.to_string() })
            }
        };
        map.insert("counterexample".into(), detail);
    }
    Value::Object(map)
}

/// Serializes with sorted keys; text mode prints the same content line by line.
pub fn emit(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(_) | Value::Object(_) => None,
        Value::Array(items) => {
            let inner: Option<Vec<String>> = items.iter().map(inline).collect();
            inner.map(|parts| format!("[{}]", parts.join(", ")))
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        other => inline(other),
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) if s.is_empty() => out.push_str(&format!("{pad}{k}:\n")),
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let flat = item.as_object().and_then(|m| {
                    m.iter()
                        .map(|(k, val)| scalar(val).map(|s| format!("{k}: {s}")))
                        .collect::<Option<Vec<_>>>()
                });
                match (scalar(item), flat) {
                    (Some(s), _) => out.push_str(&format!("{pad}- {s}\n")),
                    (None, Some(fields)) => {
                        out.push_str(&format!("{pad}- {}\n", fields.join(", ")))
                    }
                    (None, None) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
