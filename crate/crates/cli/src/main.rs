//! `hnn`: command-line access to the word problem, diagram construction
//! and analysis, and the experiments.
//!
//! Machine output goes to stdout, diagnostics to stderr. Exit status is 0
//! on success, 1 on domain errors and 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hnn_core::diagram::{
    count_report, detect_annuli, find_mirror_pair, to_dot, to_svg, trace_bands, validate,
    LetterClass,
};
use hnn_core::experiments::{
    curve_csv, dehn_curve, geodesic_experiment, loglog_slope, partition_search, SCHEMA_VERSION,
};
use hnn_core::fill::{build_trapezium, fill_with, report_for, FillOptions};
use hnn_core::{geodesic_distance, normal_form, Diagram, Distance, Error, Word};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "hnn",
    version,
    about = "Word problem and van Kampen diagrams for <t,u,a,k | a^t=a, a^u=a, k^t=ka, k^u=ka>"
)]
struct Cli {
    /// Output format for machine-readable results.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "HNN_FORMAT",
        default_value = "json"
    )]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form and identity verdict of a word.
    Solve { word: String },
    /// Exact geodesic length of a word, up to a cap.
    Dist {
        word: String,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Build the trapezium filling of [k^n, t^n U^n].
    Trapezium {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduced filling of an identity word.
    Fill {
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the diagram before mirror-pair reduction instead.
        #[arg(long)]
        raw: bool,
    },
    /// Validate a diagram and report census, bands and annuli.
    Analyze { diagram: PathBuf },
    /// Area and diameter of the commutator family.
    Curve {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distances of k a^m k for m = 0..=max-m.
    Geodesic {
        #[arg(long = "max-m")]
        max_m: usize,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Random connected partitions of a trapezium.
    PartitionSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pieces: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// DOT (default) or SVG drawing of a diagram.
    Render {
        diagram: PathBuf,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(String, Option<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            let detail = match &e {
                Error::NotNullHomotopic { normal_form } => Some(json!({
                    "error": "not_null_homotopic",
                    "theta_part": normal_form.theta_part,
                    "ak_part": normal_form.ak_part,
                })),
                _ => None,
            };
            Failure::Domain(e.to_string(), detail)
        }
    }
}

type Outcome = Result<String, Failure>;

fn envelope<T: Serialize>(body: T) -> Value {
    let mut v = serde_json::to_value(body).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn print_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    Word::parse(s).map_err(|e| Failure::Usage(format!("cannot parse word {s:?}: {e}")))
}

fn read_diagram(p: &Path) -> Result<Diagram, Failure> {
    let text =
        fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    Diagram::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn write_file(p: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(p, contents).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn json_only(format: Format, verb: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::Usage(format!("{verb} has no CSV output"))),
    }
}

fn solve(word: &str) -> Outcome {
    let w = parse_word(word)?;
    let nf = normal_form(&w);
    Ok(print_json(&envelope(json!({
        "input": w,
        "theta_part": nf.theta_part,
        "ak_part": nf.ak_part,
        "is_identity": nf.is_identity(),
    }))))
}

fn dist(word: &str, cap: usize) -> Outcome {
    let w = parse_word(word)?;
    let d = geodesic_distance(&w, cap)?;
    let (distance, exact) = match d {
        Distance::Exact(d) => (json!(d), true),
        Distance::Beyond(_) => (Value::Null, false),
    };
    Ok(print_json(&envelope(json!({
        "input": w,
        "cap": cap,
        "distance": distance,
        "exact": exact,
    }))))
}

fn emit_diagram(w: &Word, d: &Diagram, steps: usize, out: Option<&Path>) -> Outcome {
    if let Some(p) = out {
        write_file(p, &d.to_json_pretty())?;
    }
    let report = report_for(w, d, steps)?;
    Ok(print_json(&envelope(report)))
}

fn trapezium(n: usize, out: Option<&Path>) -> Outcome {
    let d = build_trapezium(n)?;
    let w = d.boundary_word()?;
    emit_diagram(&w, &d, 2 * n, out)
}

fn fill_cmd(word: &str, out: Option<&Path>, raw: bool) -> Outcome {
    let w = parse_word(word)?;
    let f = fill_with(&w, FillOptions { keep_raw: raw })?;
    if raw {
        let r = f.raw.as_ref().expect("requested");
        if let Some(p) = out {
            write_file(p, &r.to_json_pretty())?;
        }
        // the raw diagram may hold mirror pairs; report on the reduced one
        let report = report_for(&w, &f.diagram, f.theta_steps)?;
        return Ok(print_json(&envelope(json!({
            "raw_area": r.area(),
            "report": report,
        }))));
    }
    emit_diagram(&w, &f.diagram, f.theta_steps, out)
}

fn analyze(path: &Path) -> Outcome {
    let d = read_diagram(path)?;
    let v = validate(&d);
    if !v.is_valid() {
        let body = envelope(json!({ "valid": false, "violations": v.violations }));
        return Err(Failure::Domain(format!("invalid diagram: {v}"), Some(body)));
    }
    let mirror_pair = find_mirror_pair(&d)?;
    let census = match mirror_pair {
        None => Some(count_report(&d)?),
        Some(_) => None,
    };
    let mut bands = serde_json::Map::new();
    for class in LetterClass::ALL {
        let bs = trace_bands(&d, class)?;
        bands.insert(
            class.to_string(),
            json!({
                "count": bs.len(),
                "closed": bs.iter().filter(|b| b.closed).count(),
                "longest": bs.iter().map(|b| b.len()).max().unwrap_or(0),
            }),
        );
    }
    let annuli = detect_annuli(&d)?;
    Ok(print_json(&envelope(json!({
        "valid": true,
        "boundary": d.boundary_word()?,
        "perimeter": d.perimeter()?,
        "area": d.area(),
        "reduced": mirror_pair.is_none(),
        "mirror_pair": mirror_pair,
        "census": census,
        "bands": bands,
        "annuli": annuli,
    }))))
}

fn curve(format: Format, max_n: usize, out: Option<&Path>) -> Outcome {
    let pts = dehn_curve(max_n)?;
    let csv = curve_csv(&pts);
    if let Some(p) = out {
        write_file(p, &csv)?;
    }
    if format == Format::Csv {
        return Ok(csv);
    }
    let fit: Vec<(f64, f64)> = pts
        .iter()
        .filter(|p| p.n >= 4)
        .map(|p| (p.perimeter as f64, p.trapezium_area as f64))
        .collect();
    let slope = (fit.len() >= 2).then(|| loglog_slope(&fit));
    Ok(print_json(&envelope(json!({
        "points": pts,
        "area_loglog_slope": slope,
    }))))
}

fn geodesic(max_m: usize, cap: usize) -> Outcome {
    let rows = geodesic_experiment(max_m, cap)?;
    Ok(print_json(&envelope(json!({ "cap": cap, "rows": rows }))))
}

fn render(path: &Path, svg: bool, out: Option<&Path>) -> Outcome {
    let d = read_diagram(path)?;
    let text = if svg { to_svg(&d)? } else { to_dot(&d)? };
    match out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(print_json(&envelope(json!({
                "out": p.display().to_string(),
                "kind": if svg { "svg" } else { "dot" },
            }))))
        }
        None => Ok(text),
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Curve { .. } => {}
        Command::Render { .. } => {}
        other => json_only(format, verb_name(other))?,
    }
    match cli.command {
        Command::Solve { word } => solve(&word),
        Command::Dist { word, cap } => dist(&word, cap),
        Command::Trapezium { n, out } => trapezium(n, out.as_deref()),
        Command::Fill { word, out, raw } => fill_cmd(&word, out.as_deref(), raw),
        Command::Analyze { diagram } => analyze(&diagram),
        Command::Curve { max_n, out } => curve(format, max_n, out.as_deref()),
        Command::Geodesic { max_m, cap } => geodesic(max_m, cap),
        Command::PartitionSearch {
            n,
            pieces,
            trials,
            seed,
        } => Ok(print_json(&envelope(partition_search(
            n, pieces, trials, seed,
        )?))),
        Command::Render { diagram, svg, out } => render(&diagram, svg, out.as_deref()),
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::Solve { .. } => "solve",
        Command::Dist { .. } => "dist",
        Command::Trapezium { .. } => "trapezium",
        Command::Fill { .. } => "fill",
        Command::Analyze { .. } => "analyze",
        Command::Curve { .. } => "curve",
        Command::Geodesic { .. } => "geodesic",
        Command::PartitionSearch { .. } => "partition-search",
        Command::Render { .. } => "render",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg, detail)) => {
            eprintln!("error: {msg}");
            if let Some(v) = detail {
                print!("{}", print_json(&envelope(v)));
            }
            ExitCode::from(1)
        }
    }
}
