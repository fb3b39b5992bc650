//! Command-line front end. Prints a JSON report (`"schema": 1`) and exits with
//! 0 for a positive verdict, 1 for a negative one, 2 on errors.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use regular_reals::analysis::{self, Continuity};
use regular_reals::automaton::{closure, complete, is_closed, is_weak, path_label_count, path_label_count_any, scc, sinks, trim};
use regular_reals::format::{parse, serialize};
use regular_reals::geometry;
use regular_reals::omega::{complement_det, determinize_closed, determinize_partial, product_intersect, product_union, project};
use regular_reals::real::{eval_function, parse_rational, saturate};
use regular_reals::{Automaton, Error};

#[derive(Parser)]
#[command(name = "regba", version, about = "Büchi automata over digit alphabets as real sets and functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Size and structural predicates.
    Info { file: PathBuf },
    Trim { file: PathBuf, #[arg(long)] out: Option<PathBuf> },
    Closure { file: PathBuf, #[arg(long)] out: Option<PathBuf> },
    /// Subset construction of a closed automaton (complete, with a reject sink).
    Determinize { file: PathBuf, #[arg(long)] out: Option<PathBuf> },
    /// Complement; closed inputs are determinized first.
    Complement { file: PathBuf, #[arg(long)] out: Option<PathBuf> },
    /// Intersection, or union of deterministic complete inputs with `--union`.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        union: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Keep the listed coordinates (0-based, increasing).
    Project {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Saturate { file: PathBuf, #[arg(long)] out: Option<PathBuf> },
    IsFunction { file: PathBuf },
    IsContinuous { file: PathBuf },
    /// Decides differentiability (equivalently affineness).
    DiffCheck { file: PathBuf },
    Eval { file: PathBuf, #[arg(long)] at: String },
    Slopes { file: PathBuf, #[arg(long, default_value_t = 6)] depth: usize },
    /// Box cover of the attractor.
    Render {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Measure { file: PathBuf, #[arg(long, default_value_t = 6)] depth: usize },
    Kernel { file: PathBuf },
    Porosity { file: PathBuf },
    /// Distinct path labels of a given length.
    Paths {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        depth: usize,
    },
}

struct Outcome {
    positive: bool,
    report: Value,
}

fn yes(report: Value) -> Outcome {
    Outcome { positive: true, report }
}

fn load(path: &Path) -> Result<Automaton, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(a: &Automaton, out: &Option<PathBuf>) -> Result<Value, String> {
    let text = serialize(a);
    let mut report = json!({ "states": a.num_states(), "transitions": a.num_transitions() });
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display()))?;
            report["out"] = json!(p.display().to_string());
        }
        None => report["automaton"] = json!(text),
    }
    Ok(report)
}

fn graph_ready(a: &Automaton) -> Result<Automaton, Error> {
    if a.is_deterministic() {
        trim(a)
    } else {
        determinize_partial(a)
    }
}

fn run(cmd: Command) -> Result<Outcome, String> {
    let e = |err: Error| err.to_string();
    Ok(match cmd {
        Command::Info { file } => {
            let a = load(&file)?;
            let d = scc(&a);
            let sink_names: Vec<Vec<&str>> = sinks(&a).iter().map(|s| s.iter().map(|&q| a.name(q)).collect()).collect();
            yes(json!({
                "radix": a.radix().radices(),
                "states": a.num_states(),
                "transitions": a.num_transitions(),
                "deterministic": a.is_deterministic(),
                "complete": a.is_complete(),
                "closed": is_closed(&a),
                "weak": is_weak(&a),
                "trim": trim(&a).map(|t| t.num_states() == a.num_states()).unwrap_or(false),
                "components": d.len(),
                "sinks": sink_names,
            }))
        }
        Command::Trim { file, out } => yes(emit(&trim(&load(&file)?).map_err(e)?, &out)?),
        Command::Closure { file, out } => yes(emit(&closure(&load(&file)?), &out)?),
        Command::Determinize { file, out } => yes(emit(&determinize_closed(&load(&file)?).map_err(e)?, &out)?),
        Command::Complement { file, out } => {
            let a = load(&file)?;
            let det = if is_closed(&a) && !(a.is_deterministic() && a.is_complete()) {
                determinize_closed(&a).map_err(e)?
            } else {
                a
            };
            yes(emit(&complement_det(&det).map_err(e)?, &out)?)
        }
        Command::Product { left, right, union, out } => {
            let (a, b) = (load(&left)?, load(&right)?);
            let p = if union {
                let prep = |x: Automaton| if x.is_deterministic() { complete(&x) } else { determinize_closed(&x) };
                product_union(&prep(a).map_err(e)?, &prep(b).map_err(e)?)
            } else {
                product_intersect(&a, &b)
            };
            yes(emit(&p.map_err(e)?, &out)?)
        }
        Command::Project { file, keep, out } => yes(emit(&project(&load(&file)?, &keep).map_err(e)?, &out)?),
        Command::Saturate { file, out } => yes(emit(&saturate(&load(&file)?).map_err(e)?, &out)?),
        Command::IsFunction { file } => {
            let r = analysis::is_function(&load(&file)?).map_err(e)?;
            Outcome { positive: r.is_function(), report: json!({ "is_function": r.is_function(), "report": r }) }
        }
        Command::IsContinuous { file } => {
            let c = analysis::is_continuous(&load(&file)?).map_err(e)?;
            Outcome { positive: c == Continuity::Continuous, report: json!({ "continuity": c }) }
        }
        Command::DiffCheck { file } => {
            let a = load(&file)?;
            if !a.radix().is_uniform() {
                return Err(Error::MixedRadix(a.radix().radices().to_vec()).to_string());
            }
            let d = analysis::is_differentiable(&a).map_err(e)?;
            let verdict = if d.is_differentiable() { "differentiable" } else { "not differentiable" };
            Outcome { positive: d.is_differentiable(), report: json!({ "verdict": verdict, "detail": d }) }
        }
        Command::Eval { file, at } => {
            let x = parse_rational(&at).map_err(e)?;
            let y = eval_function(&load(&file)?, &x).map_err(e)?;
            yes(json!({ "x": x.to_string(), "value": y.to_string() }))
        }
        Command::Slopes { file, depth } => {
            let a = graph_ready(&load(&file)?).map_err(e)?;
            yes(json!({ "report": analysis::slope_set(&a, depth).map_err(e)? }))
        }
        Command::Render { file, depth, format, out } => {
            let cover = geometry::attractor_boxes(&load(&file)?, depth).map_err(e)?;
            let body = match format {
                Format::Csv => cover.to_csv(),
                Format::Json => serde_json::to_string(&cover).map_err(|x| x.to_string())?,
            };
            let mut report = json!({ "depth": depth, "boxes": cover.len() });
            match out {
                Some(p) => {
                    std::fs::write(&p, body).map_err(|x| format!("{}: {x}", p.display()))?;
                    report["out"] = json!(p.display().to_string());
                }
                None => report["cover"] = json!(body),
            }
            yes(report)
        }
        Command::Measure { file, depth } => {
            let m = geometry::box_measure_estimate(&load(&file)?, depth).map_err(e)?;
            yes(json!({ "depth": depth, "upper_bound": m.to_string() }))
        }
        Command::Kernel { file } => {
            let a = graph_ready(&load(&file)?).map_err(e)?;
            let classes = geometry::kernel_residuals(&a).map_err(e)?;
            yes(json!({ "classes": classes.len(), "residuals": classes }))
        }
        Command::Porosity { file } => match geometry::porosity_witness(&load(&file)?) {
            Ok(w) => yes(json!({ "porous": true, "witness": w })),
            Err(Error::NotNowhereDense(s)) => {
                Outcome { positive: false, report: json!({ "porous": false, "full_residual": s }) }
            }
            Err(err) => return Err(err.to_string()),
        },
        Command::Paths { file, from, to, depth } => {
            let a = load(&file)?;
            let c = match to {
                Some(q) => path_label_count(&a, &from, &q, depth),
                None => path_label_count_any(&a, &from, depth),
            };
            yes(json!({ "paths": c.map_err(e)? }))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { positive, mut report }) => {
            report["schema"] = json!(1);
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(if positive { 0 } else { 1 })
        }
        Err(msg) => {
            let _ = writeln!(std::io::stdout(), "{}", json!({ "schema": 1, "error": msg }));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
