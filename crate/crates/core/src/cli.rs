//! Command-line front end. Every verb is a thin shell over library calls.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{build, identify, Family};
use crate::cliffweights::{build_weights, Shape};
use crate::gram_engine::CaseId;
use crate::json::{norms_summary, parse_root_set, parse_weight_config, root_set_to_json, to_pretty};
use crate::rootsys::{closure, is_admissible, RootSet, DEFAULT_MAX_SIZE};
use crate::verifier::{self, Report};

#[derive(Parser, Debug)]
#[command(name = "clifford-roots", version, about = "Exact root-system toolkit for even Clifford structures")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a catalog root system.
    Catalog { family: String, rank: usize },
    /// Closure of a subsystem of roots and the roots it adds.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// Whether closure minus the set is a root system.
    Admissible { file: PathBuf },
    /// Cartan type of every irreducible component.
    Identify { file: PathBuf },
    /// Weight set of a configuration.
    Weights {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        config: PathBuf,
    },
    /// Replay a claim and print its report.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
}

#[derive(Subcommand, Debug)]
enum Claim {
    LemmaGram {
        #[arg(long, value_parser = ["3", "4", "8"])]
        q: String,
    },
    PropBounds {
        #[arg(long)]
        case: CaseId,
    },
    Theorem(TheoremArgs),
    R14,
    All {
        /// Only claims whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[arg(long)]
    case: Shape,
    /// Replace the built-in configuration.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Input problems; these exit with code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> std::result::Result<T, InputError> {
    r.map_err(|e| InputError(e.into()))
}

fn read(path: &Path) -> std::result::Result<String, InputError> {
    input(fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())))
}

fn load_root_set(path: &Path) -> std::result::Result<RootSet, InputError> {
    let text = read(path)?;
    input(parse_root_set(&text).with_context(|| path.display().to_string()))
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn set_text(s: &RootSet) -> String {
    let mut out = format!("{} vectors, rank {}\n", s.len(), s.rank());
    for v in s.vectors() {
        out.push_str(&format!("  {v}\n"));
    }
    out
}

fn report_text(r: &Report) -> String {
    let mut out = format!("{}: {} (expected {})\n", r.claim, r.status, r.expected);
    for s in &r.steps {
        out.push_str(&format!("  [{}] {}: {}\n", if s.passed { "ok" } else { "FAIL" }, s.op, s.assertion));
    }
    for a in &r.annotations {
        out.push_str(&format!("  note: {a}\n"));
    }
    if let Some(id) = r.artifacts.get("identification") {
        let names: Vec<String> = id["components"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|c| format!("{}{}", c["family"].as_str().unwrap_or("?"), c["rank"]))
            .collect();
        out.push_str(&format!("  identified: {}\n", names.join(" + ")));
    }
    out
}

fn report_output(r: Report) -> Output {
    let code = if r.as_expected() { 0 } else { 1 };
    Output { text: report_text(&r), json: r.to_json(), code }
}

fn dispatch(cli: Cli) -> std::result::Result<Output, InputError> {
    Ok(match cli.command {
        Command::Catalog { family, rank } => {
            let family: Family = input(family.parse())?;
            let s = input(build(family, rank))?;
            Output::ok(set_text(&s), root_set_to_json(&s))
        }
        Command::Closure { file, max_size } => {
            let p = load_root_set(&file)?;
            let c = input(closure(&p, max_size))?;
            let added = c.difference(&p).expect("same form");
            let text = format!("closure: {}added: {}", set_text(&c), set_text(&added));
            Output::ok(text, json!({ "closure": root_set_to_json(&c), "complement": root_set_to_json(&added) }))
        }
        Command::Admissible { file } => {
            let p = load_root_set(&file)?;
            let a = input(is_admissible(&p, DEFAULT_MAX_SIZE))?;
            let complement_id = identify(&a.complement).ok();
            let names = complement_id.as_ref().map(|i| i.to_string()).unwrap_or_else(|| "unrecognized".into());
            let text = format!(
                "admissible: {}\nclosure: {} roots\ncomplement: {} roots ({})\n{}",
                a.admissible,
                a.closure.len(),
                a.complement.len(),
                if a.complement.is_empty() { "empty".into() } else { names },
                a.violations.first().map(|v| format!("first violation: {v}\n")).unwrap_or_default(),
            );
            Output::ok(
                text,
                json!({
                    "admissible": a.admissible,
                    "closure_size": a.closure.len(),
                    "complement": root_set_to_json(&a.complement),
                    "complement_identification": complement_id,
                    "violations": a.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Identify { file } => {
            let p = load_root_set(&file)?;
            let id = input(identify(&p))?;
            Output::ok(format!("{id}\n"), serde_json::to_value(&id).expect("serializable"))
        }
        Command::Weights { shape, config } => {
            let cfg = input(parse_weight_config(&read(&config)?))?;
            if cfg.shape != shape {
                return Err(InputError(anyhow!("--shape {shape} but the configuration declares {}", cfg.shape)));
            }
            let w = input(build_weights(&cfg))?;
            let mut j = root_set_to_json(&w);
            j["norms"] = norms_summary(&w);
            Output::ok(set_text(&w), j)
        }
        Command::Verify { claim } => match claim {
            Claim::LemmaGram { q } => report_output(verifier::verify_lemma_gram(q.parse().expect("restricted values"))),
            Claim::PropBounds { case } => report_output(verifier::verify_prop_bounds(case)),
            Claim::Theorem(TheoremArgs { case, config }) => {
                let cfg = match config {
                    Some(path) => Some(input(parse_weight_config(&read(&path)?))?),
                    None => None,
                };
                report_output(verifier::verify_limit_case_with(case, cfg))
            }
            Claim::R14 => report_output(verifier::exclude_r14()),
            Claim::All { filter } => {
                let agg = verifier::verify_all(filter.as_deref());
                let mut text = String::new();
                for r in &agg.reports {
                    text.push_str(&report_text(r));
                }
                text.push_str(&format!(
                    "{} reports, {}\n",
                    agg.count,
                    if agg.as_expected { "all as expected" } else { "some unexpected" }
                ));
                let code = if agg.as_expected { 0 } else { 1 };
                Output { text, json: serde_json::to_value(&agg).expect("serializable"), code }
            }
        },
    })
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(o) => {
            let _ = if json { writeln!(out, "{}", to_pretty(&o.json)) } else { write!(out, "{}", o.text) };
            o.code
        }
        Err(InputError(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}
