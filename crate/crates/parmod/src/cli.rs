//! Argument parsing and command dispatch. [`run`] never panics on bad input:
//! exit 0 on success, 2 on input errors, 3 when a library identity fails.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parmod_core::hecke::{build_chain, replay_chain};
use parmod_core::invariants::{epsilon, flip_exponents, moduli_dim};
use parmod_core::oracle::{decide, open_genera};
use parmod_core::shift::shift;
use parmod_core::weightspace::{enumerate_walls, has_generic_weight, walls_on_segment, walls_through};
use parmod_core::{Error, ParabolicData};

use crate::document::{parse_eta, InstanceDocument};
use crate::report::{self, ReportDocument};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "parmod", version, about = "Exact computations on moduli of parabolic bundles")]
struct Cli {
    /// Output format; JSON is the machine contract.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct InstanceArg {
    /// Instance document; stdin when absent or `-`.
    #[arg(long, value_name = "FILE")]
    instance: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BatchOp {
    Walls,
    Rationality,
    Dim,
    Generic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Feasible walls of the instance's weight face.
    Walls(InstanceArg),
    /// Rationality verdict with its rule trail.
    Rationality(InstanceArg),
    /// Genera up to `--gmax` where rank `r` and degree `d` stay undecided.
    OpenGenera {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        gmax: i64,
    },
    /// Dimension of the moduli space.
    Dim(InstanceArg),
    /// Slope gap ε(d, r).
    Epsilon {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        r: u32,
    },
    /// Shifted instance, printed as an instance document.
    Shift {
        #[command(flatten)]
        instance: InstanceArg,
        /// `a/b` for every point, optionally followed by `id=a/b` overrides.
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Whether the face has generic weights, and whether the instance's weights are generic.
    Generic(InstanceArg),
    /// Walls crossed on the segment from the instance's weights to those of `--to`.
    Cross {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
    },
    /// Hecke chain from degree `d` to `d − 1` with full flag at one point.
    Hecke {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Runs one instance command over many files; output is ordered by input.
    Batch {
        #[arg(long, value_enum)]
        op: BatchOp,
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
    },
}

/// Failures of a command: library errors, plus input that could not be read.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Internal(_)) => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                Error::Invalid(_) => "invalid",
                Error::MissingWeights => "missingWeights",
                Error::ZeroDenominator => "zeroDenominator",
                Error::MalformedRational(_) => "malformedRational",
                Error::Precondition(_) => "precondition",
                Error::NonGeneric(_) => "nonGeneric",
                Error::NotCoprime { .. } => "notCoprime",
                Error::Internal(_) => "internal",
            },
        }
    }

    pub fn to_value(&self) -> Value {
        let violations: Vec<Value> = match self {
            CliError::Core(e) => e
                .violations()
                .iter()
                .map(|v| json!({"path": v.path, "message": v.message}))
                .collect(),
            CliError::Io { .. } => Vec::new(),
        };
        let mut message = self.to_string();
        if let Some(first) = violations.first() {
            message = format!("{message}: {}", first["message"].as_str().unwrap_or_default());
        }
        json!({"error": self.kind(), "message": message, "violations": violations})
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

struct Loaded {
    doc: InstanceDocument,
    data: ParabolicData,
}

fn load_text(text: &str) -> CliResult<Loaded> {
    let doc = InstanceDocument::from_json(text)?;
    let data = doc.to_data()?;
    Ok(Loaded { doc, data })
}

fn load(arg: &InstanceArg, stdin: &mut dyn Read) -> CliResult<Loaded> {
    let text = match &arg.instance {
        Some(p) if p.as_os_str() != "-" => read_file(p)?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Io {
                path: "<stdin>".into(),
                message: e.to_string(),
            })?;
            s
        }
    };
    load_text(&text)
}

fn echo(doc: &InstanceDocument) -> Value {
    serde_json::to_value(doc).expect("documents always serialize")
}

fn walls_report(l: &Loaded) -> ReportDocument {
    let walls: Vec<Value> = enumerate_walls(&l.data)
        .iter()
        .filter(|w| w.feasible)
        .map(|w| report::wall(&l.data, w))
        .collect();
    ReportDocument::new("walls", echo(&l.doc), Value::Array(walls))
}

fn rationality_report(l: &Loaded) -> CliResult<ReportDocument> {
    let v = decide(&l.data, l.doc.options.fixed_det)?;
    let mut rep = ReportDocument::new("rationality", echo(&l.doc), report::verdict(&v));
    rep.citations = report::citations(&v);
    Ok(rep)
}

fn dim_report(l: &Loaded) -> ReportDocument {
    let dim = moduli_dim(&l.data, l.doc.options.fixed_det);
    ReportDocument::new("dim", echo(&l.doc), json!(dim))
}

fn generic_report(l: &Loaded) -> CliResult<ReportDocument> {
    let face = has_generic_weight(&l.data)?;
    let mut result = json!({
        "faceHasGenericWeight": face.generic,
        "witness": face.witness.as_ref().map(|w| report::weights(&l.data, w)),
    });
    if l.data.has_weights() {
        let w = l.data.weights()?;
        let through = walls_through(&l.data, &w);
        result["weightsGeneric"] = json!(through.is_empty());
        result["wallsThrough"] =
            Value::Array(through.iter().map(|xi| report::sub_type(&l.data, xi)).collect());
    }
    Ok(ReportDocument::new("generic", echo(&l.doc), result))
}

fn instance_report(op: BatchOp, l: &Loaded) -> CliResult<ReportDocument> {
    match op {
        BatchOp::Walls => Ok(walls_report(l)),
        BatchOp::Rationality => rationality_report(l),
        BatchOp::Dim => Ok(dim_report(l)),
        BatchOp::Generic => generic_report(l),
    }
}

fn cross_report(l: &Loaded, to: &Path) -> CliResult<ReportDocument> {
    let other = load_text(&read_file(to)?)?;
    if other.data.mults() != l.data.mults()
        || (other.data.genus(), other.data.rank(), other.data.degree())
            != (l.data.genus(), l.data.rank(), l.data.degree())
    {
        return Err(Error::precondition("--to must share g, r, d, point ids and multiplicities").into());
    }
    let alpha = l.data.weights()?;
    let beta = other.data.weights()?;
    let crossings = walls_on_segment(&l.data, &alpha, &beta)?;
    let mut rows = Vec::with_capacity(crossings.len());
    for c in &crossings {
        let gamma = alpha.lerp(&beta, &c.t);
        // several hyperplanes meeting at gamma have no single flip
        let flip = match flip_exponents(&l.data, &c.wall.xi, &gamma) {
            Ok(f) => report::flip(&f),
            Err(Error::Precondition(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        rows.push(json!({
            "xi": report::sub_type(&l.data, &c.wall.xi),
            "coeffs": report::per_point(&l.data, &c.wall.coeffs, |v| json!(v)),
            "rhs": c.wall.rhs,
            "t": report::rational(&c.t),
            "gamma": report::weights(&l.data, &gamma),
            "flip": flip,
        }));
    }
    let input = json!({"from": echo(&l.doc), "to": echo(&other.doc)});
    Ok(ReportDocument::new("cross", input, Value::Array(rows)))
}

fn batch(op: BatchOp, files: &[PathBuf]) -> Value {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let mut slots: Vec<Option<Value>> = vec![None; files.len()];
    std::thread::scope(|s| {
        let chunk = files.len().div_ceil(workers).max(1);
        for (files, slots) in files.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            s.spawn(move || {
                for (path, slot) in files.iter().zip(slots) {
                    let outcome = read_file(path)
                        .and_then(|t| load_text(&t))
                        .and_then(|l| instance_report(op, &l));
                    *slot = Some(match outcome {
                        Ok(rep) => json!({"file": path.display().to_string(), "report": rep.to_value()}),
                        Err(e) => json!({
                            "file": path.display().to_string(),
                            "exitCode": e.exit_code(),
                            "error": e.to_value(),
                        }),
                    });
                }
            });
        }
    });
    Value::Array(slots.into_iter().map(|s| s.expect("every slot filled")).collect())
}

enum Output {
    Report(ReportDocument),
    /// Printed as is; used where the output must itself be a valid input.
    Raw(Value),
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> CliResult<Output> {
    let out = match command {
        Command::Walls(a) => Output::Report(walls_report(&load(&a, stdin)?)),
        Command::Rationality(a) => Output::Report(rationality_report(&load(&a, stdin)?)?),
        Command::OpenGenera { r, d, gmax } => {
            let genera = open_genera(r, d, gmax)?;
            Output::Report(ReportDocument::new(
                "open-genera",
                json!({"r": r, "d": d, "gmax": gmax}),
                json!(genera),
            ))
        }
        Command::Dim(a) => Output::Report(dim_report(&load(&a, stdin)?)),
        Command::Epsilon { d, r } => {
            if r == 0 {
                return Err(Error::precondition("rank must be positive").into());
            }
            Output::Report(ReportDocument::new(
                "epsilon",
                json!({"d": d, "r": r}),
                report::slope_gap(&epsilon(d, r)),
            ))
        }
        Command::Shift { instance, eta } => {
            let l = load(&instance, stdin)?;
            let amount = parse_eta(&eta, &l.data)?;
            let shifted = shift(&l.data, &amount)?;
            let doc = InstanceDocument::from_data(&shifted, l.doc.options.clone());
            Output::Raw(echo(&doc))
        }
        Command::Generic(a) => Output::Report(generic_report(&load(&a, stdin)?)?),
        Command::Cross { instance, to } => Output::Report(cross_report(&load(&instance, stdin)?, &to)?),
        Command::Hecke { g, r, d } => {
            let chain = build_chain(g, r, d)?;
            let mut result = report::hecke(&chain);
            result["replays"] = json!(replay_chain(&chain)?);
            Output::Report(ReportDocument::new("hecke", json!({"g": g, "r": r, "d": d}), result))
        }
        Command::Batch { op, files } => Output::Raw(batch(op, &files)),
    };
    Ok(out)
}

fn emit(out: &mut dyn Write, text: &str) {
    // a closed pipe is not worth a panic
    let _ = out.write_all(text.as_bytes());
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(stdout, &e.render().to_string());
                return 0;
            }
            let v = json!({"error": "usage", "message": e.render().to_string(), "violations": []});
            emit(stderr, &report::pretty(&v));
            return 2;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => {
            let rendered = match (out, cli.format) {
                (Output::Report(rep), Format::Json) => report::pretty(&rep.to_value()),
                (Output::Report(rep), Format::Text) => text::render_report(&rep.to_value()),
                (Output::Raw(v), Format::Json) => report::pretty(&v),
                (Output::Raw(v), Format::Text) => text::render(&v),
            };
            emit(stdout, &rendered);
            0
        }
        Err(e) => {
            emit(stderr, &report::pretty(&e.to_value()));
            e.exit_code()
        }
    }
}
