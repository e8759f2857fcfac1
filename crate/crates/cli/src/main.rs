//! `fv`: classify, tabulate and verify successive-vanishing criteria.
//!
//! Exit codes: 0 success, 1 hypothesis rejected, 2 sweep mismatch,
//! 64 malformed input or usage, 74 I/O failure.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use fv_core::basept::{basept_order, successive_basept, successive_basept_infinite, BaseptProblem};
use fv_core::curve::{CurveModel, PicardModel};
use fv_core::divcrit::{classify_div, holds_direct_div, vanishing_order};
use fv_core::exactq::{farey_set, FareyInterval};
use fv_core::extremal::max_over_pairs;
use fv_core::floorcrit::{classify_crt, holds_direct, CrtInput};
use fv_core::oracle::{sweep, Suite, SweepConfig, SweepReport};
use fv_core::vanish::{
    is_empty_adjoint, nvl_dichotomy, nvl_standard, successive_empty, successive_empty_infinite,
    AdjointProblem,
};
use fv_core::{Divisor, PointId, Rational};

use render::{Color, Mode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fv_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.hypothesis_name().is_some() => 1,
            CliError::Core(_) | CliError::Usage(_) => 64,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 74,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "fv",
    version,
    about = "Exact criteria for successive vanishing of adjoint systems on curves"
)]
struct Cli {
    /// Table colors for boolean verdicts.
    #[arg(long, global = true, value_enum, env = "FV_COLOR", default_value_t = Color::Auto)]
    color: Color,
    /// Worker threads for searches and sweeps.
    #[arg(long, global = true, env = "FV_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    #[arg(long, value_enum, default_value_t = Mode::Table)]
    format: Mode,
    /// Same as `--format json`.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Same as `--format csv`.
    #[arg(long)]
    csv: bool,
}

impl Output {
    fn mode(self) -> Mode {
        if self.json {
            Mode::Json
        } else if self.csv {
            Mode::Csv
        } else {
            self.format
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Farey sets and intervals.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Floor-system criteria.
    #[command(subcommand)]
    Crit(CritCmd),
    /// Successive emptiness of `|⌈K + B + iL⌉|`.
    #[command(subcommand)]
    Vanish(VanishCmd),
    /// Successive base points of `|⌈K + B + iL⌉|`.
    #[command(subcommand)]
    Basept(BaseptCmd),
    /// Largest failure index over pairs of fractions with numerators at most `l`.
    Extremal(ExtremalArgs),
    /// Brute-force oracle sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum FareyCmd {
    /// Elements of the Farey set of order N.
    List {
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// The interval `[x, x⁺)` of the Farey set of order N containing x.
    Interval {
        x: Rational,
        n: u32,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum CritCmd {
    /// `⌊iδ - b⌋ + ⌊iδ' - b'⌋ ≥ i - 1` for `1 ≤ i ≤ N`.
    Floor(FloorArgs),
    /// `deg⌊iΔ - B⌋ ≥ i - 1` for `1 ≤ i ≤ N`.
    Divisor(DivisorArgs),
}

#[derive(Args)]
struct FloorArgs {
    #[arg(long)]
    delta: Rational,
    #[arg(long, default_value = "0")]
    b: Rational,
    #[arg(long)]
    deltap: Rational,
    #[arg(long, default_value = "0")]
    bp: Rational,
    #[arg(long = "N")]
    n: u32,
    /// Add the closed-form classification.
    #[arg(long)]
    classify: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct DivisorArgs {
    #[arg(long, allow_hyphen_values = true)]
    delta: Divisor,
    #[arg(long = "B", default_value = "", allow_hyphen_values = true)]
    b: Divisor,
    #[arg(long = "N")]
    n: u32,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    P1,
    Elliptic,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    curve: CurveKind,
    /// Cyclic group of this order (shorthand for `--group "0;t"`).
    #[arg(long, conflicts_with = "group")]
    torsion: Option<u64>,
    /// Picard group `"r;n1,n2"`: free rank, then torsion orders.
    #[arg(long)]
    group: Option<String>,
    /// Group elements of the points, `"P=g,Q=g"`, coordinates joined by `:`.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
}

#[derive(Args)]
#[group(id = "order", required = true, multiple = false, args = ["n", "inf"])]
struct OrderArgs {
    #[arg(long = "N")]
    n: Option<u32>,
    /// Every `i ≥ 1`.
    #[arg(long)]
    inf: bool,
}

#[derive(Subcommand)]
enum VanishCmd {
    /// Whether `|⌈K + B + iL⌉| = ∅` for `1 ≤ i ≤ N`, with the matching case.
    Classify(VanishArgs),
    /// Dichotomy for `m(K+B)` on `P¹`.
    Nvl(NvlArgs),
}

#[derive(Args)]
struct VanishArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long = "L", allow_hyphen_values = true)]
    l: Divisor,
    #[arg(long = "B", default_value = "", allow_hyphen_values = true)]
    b: Divisor,
    #[command(flatten)]
    order: OrderArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct NvlArgs {
    /// Multiple of `K + B`.
    #[arg(long)]
    m: u32,
    /// Boundary on `P¹`.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Divisor,
    /// Numerator bound; omitted, the standard-coefficient form is used.
    #[arg(long)]
    l: Option<u32>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum BaseptCmd {
    /// Whether `Q` is a base point of `|⌈K + B + iL⌉|` for `1 ≤ i ≤ N`.
    Classify(BaseptArgs),
}

#[derive(Args)]
struct BaseptArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long = "L", allow_hyphen_values = true)]
    l: Divisor,
    #[arg(long = "B", default_value = "", allow_hyphen_values = true)]
    b: Divisor,
    #[arg(long = "Q")]
    q: PointId,
    #[command(flatten)]
    order: OrderArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Rows for every numerator bound up to this one.
    #[arg(long)]
    l: u32,
    /// Denominator bound of the search (default `2(l²+l+1)` per row).
    #[arg(long = "max-den")]
    max_den: Option<u32>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare classifiers with their oracles over a finite grid.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// One of floor, divisor, vanish, basept, crossmodule.
    #[arg(long)]
    suite: Suite,
    #[arg(long = "max-den", default_value_t = 6)]
    max_den: u32,
    #[arg(long = "max-points", default_value_t = 3)]
    max_points: u32,
    #[arg(long = "max-N", default_value_t = 6)]
    max_n: u32,
    /// Cyclic torsion orders of the elliptic models, e.g. `"2,3,5"`.
    #[arg(long, value_delimiter = ',')]
    torsion: Vec<u64>,
    /// Add elliptic models with a free generator.
    #[arg(long)]
    free: bool,
    /// Leave out `P¹`.
    #[arg(long = "no-p1")]
    no_p1: bool,
    #[arg(long = "chunk-size", default_value_t = 64)]
    chunk_size: usize,
    /// Resume from this chunk.
    #[arg(long = "start-chunk", default_value_t = 0)]
    start_chunk: usize,
    #[arg(long = "mismatch-cap", default_value_t = 50)]
    mismatch_cap: usize,
    /// Write the full report as JSON.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Write the kept mismatch rows as CSV.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Table)]
    format: Mode,
}

/// What a command prints, and whether it found a mismatch.
struct Rendered {
    json: Value,
    /// Sections for table and CSV output; the JSON value itself by default.
    sections: Vec<Value>,
    mismatch: bool,
}

impl Rendered {
    fn of<T: Serialize>(v: &T) -> Result<Self> {
        let json = serde_json::to_value(v)?;
        Ok(Rendered {
            sections: vec![json.clone()],
            json,
            mismatch: false,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fv: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let jobs = cli.jobs;
    let (rendered, mode) = match cli.command {
        Command::Farey(FareyCmd::List { n, out }) => (Rendered::of(&farey_set(n)?)?, out.mode()),
        Command::Farey(FareyCmd::Interval { x, n, out }) => (
            Rendered::of(&FareyInterval::containing(&x, n)?)?,
            out.mode(),
        ),
        Command::Crit(CritCmd::Floor(a)) => (crit_floor(&a)?, a.out.mode()),
        Command::Crit(CritCmd::Divisor(a)) => (crit_divisor(&a)?, a.out.mode()),
        Command::Vanish(VanishCmd::Classify(a)) => (vanish_classify(&a)?, a.out.mode()),
        Command::Vanish(VanishCmd::Nvl(a)) => (vanish_nvl(&a)?, a.out.mode()),
        Command::Basept(BaseptCmd::Classify(a)) => (basept_classify(&a)?, a.out.mode()),
        Command::Extremal(a) => (extremal(&a)?, a.out.mode()),
        Command::Verify(VerifyCmd::Sweep(a)) => (verify_sweep(&a, jobs)?, a.format),
    };
    let text = match mode {
        Mode::Json => render::json(&rendered.json)?,
        Mode::Table => {
            let color = cli.color.enabled();
            let parts: Vec<String> = rendered
                .sections
                .iter()
                .map(|s| render::table(s, color))
                .collect();
            parts.join("\n")
        }
        Mode::Csv => {
            let parts = rendered
                .sections
                .iter()
                .map(render::csv)
                .collect::<Result<Vec<_>>>()?;
            parts.join("\n")
        }
    };
    print!("{text}");
    Ok(if rendered.mismatch { 2 } else { 0 })
}

fn crit_floor(a: &FloorArgs) -> Result<Rendered> {
    let input = CrtInput::new(
        a.delta.clone(),
        a.b.clone(),
        a.deltap.clone(),
        a.bp.clone(),
        a.n,
    )?;
    let direct = holds_direct(&input);
    let mut v = json!({
        "input": input,
        "holds": direct.holds(),
        "first_violation": direct.first_violation(),
    });
    if a.classify {
        let c = classify_crt(&input);
        v["case"] = json!(c.case.tag());
        v["classification"] = serde_json::to_value(&c)?;
    }
    Rendered::of(&v)
}

fn crit_divisor(a: &DivisorArgs) -> Result<Rendered> {
    let direct = holds_direct_div(&a.delta, &a.b, a.n)?;
    let c = classify_div(&a.delta, &a.b, a.n)?;
    let order = vanishing_order(&a.delta, &a.b)?;
    Rendered::of(&json!({
        "delta": a.delta,
        "B": a.b,
        "N": a.n,
        "holds": direct.holds(),
        "first_violation": direct.first_violation(),
        "classified_holds": c.holds,
        "vanishing_order": order.to_string(),
        "classification": c,
    }))
}

fn curve_model(c: &CurveArgs, used: &[&PointId]) -> Result<CurveModel> {
    match c.curve {
        CurveKind::P1 => {
            if c.torsion.is_some() || c.group.is_some() || c.points.is_some() {
                return Err(CliError::Usage(
                    "--torsion, --group and --points apply to elliptic curves".into(),
                ));
            }
            Ok(CurveModel::P1)
        }
        CurveKind::Elliptic => {
            let group = match (&c.group, c.torsion) {
                (Some(g), _) => g.clone(),
                (None, Some(t)) => format!("0;{t}"),
                (None, None) => {
                    return Err(CliError::Usage(
                        "an elliptic curve needs --group or --torsion".into(),
                    ))
                }
            };
            let points = c
                .points
                .as_deref()
                .ok_or_else(|| CliError::Usage("an elliptic curve needs --points".into()))?;
            let model = PicardModel::parse(&group, points)?;
            for p in used {
                if !model.points().any(|(name, _)| name == *p) {
                    return Err(CliError::Usage(format!(
                        "point {p} has no group element; assign it with --points"
                    )));
                }
            }
            Ok(CurveModel::of_genus(1, Some(model))?)
        }
    }
}

fn vanish_classify(a: &VanishArgs) -> Result<Rendered> {
    let used: Vec<&PointId> = a.l.points().chain(a.b.points()).collect();
    let p = AdjointProblem::new(curve_model(&a.curve, &used)?, a.l.clone(), a.b.clone())?;
    let mut v = match a.order.n {
        None => serde_json::to_value(successive_empty_infinite(&p)?)?,
        Some(0) => return Err(CliError::Usage("--N must be at least 1".into())),
        Some(1) => {
            let (holds, case) = is_empty_adjoint(&p)?;
            json!({ "case": case, "holds": holds })
        }
        Some(n) => serde_json::to_value(successive_empty(&p, n)?)?,
    };
    v["curve"] = json!(p.curve.kind());
    v["L"] = json!(p.l);
    v["B"] = json!(p.b);
    v["N"] = a.order.n.map_or(json!("infinity"), |n| json!(n));
    Rendered::of(&v)
}

fn vanish_nvl(a: &NvlArgs) -> Result<Rendered> {
    let r = match a.l {
        Some(l) => nvl_dichotomy(a.m, &a.b, l)?,
        None => nvl_standard(a.m, &a.b)?,
    };
    let mut v = serde_json::to_value(&r)?;
    v["B"] = json!(a.b);
    v["branch"] = json!(r.branch());
    v["exclusive"] = json!(r.exclusive());
    Rendered::of(&v)
}

fn basept_classify(a: &BaseptArgs) -> Result<Rendered> {
    let used: Vec<&PointId> = a.l.points().chain(a.b.points()).chain([&a.q]).collect();
    let p = BaseptProblem::new(
        curve_model(&a.curve, &used)?,
        a.l.clone(),
        a.b.clone(),
        a.q.clone(),
    )?;
    let c = match a.order.n {
        None => successive_basept_infinite(&p)?,
        Some(n) => successive_basept(&p, n)?,
    };
    let order = basept_order(&p, 64)
        .map(|o| o.to_string())
        .unwrap_or_else(|_| "> 64".into());
    Rendered::of(&json!({
        "curve": p.curve.kind(),
        "L": p.l,
        "B": p.b,
        "Q": p.q,
        "N": a.order.n.map_or(json!("infinity"), |n| json!(n)),
        "holds": c.holds,
        "cases": c.tags(),
        "delta": c.delta,
        "order": order,
    }))
}

fn extremal(a: &ExtremalArgs) -> Result<Rendered> {
    if a.l == 0 {
        return Err(CliError::Usage("--l must be at least 1".into()));
    }
    let rows = (1..=a.l)
        .map(|l| max_over_pairs(l, a.max_den.unwrap_or(2 * (l * l + l + 1))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Rendered::of(&rows)
}

fn verify_sweep(a: &SweepArgs, jobs: Option<usize>) -> Result<Rendered> {
    let mut c = SweepConfig::new(a.suite);
    c.max_denominator = a.max_den;
    c.max_points = a.max_points;
    c.max_n = a.max_n;
    c.torsion_orders = a.torsion.clone();
    c.free_generator = a.free;
    c.p1 = !a.no_p1;
    c.chunk_size = a.chunk_size;
    c.start_chunk = a.start_chunk;
    c.mismatch_cap = a.mismatch_cap;
    if let Some(j) = jobs {
        c.jobs = j;
    }
    let report = sweep(&c)?;
    if let Some(path) = &a.json {
        fs::write(path, render::json(&serde_json::to_value(&report)?)?)?;
    }
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["check", "input", "classifier", "oracle"])?;
        for m in &report.mismatches {
            w.write_record([&m.check, &m.input, &m.classifier, &m.oracle])?;
        }
        w.flush()?;
    }
    sweep_rendered(&report)
}

fn sweep_rendered(r: &SweepReport) -> Result<Rendered> {
    let summary = json!({
        "suite": r.suite,
        "grid_size": r.grid_size,
        "skipped": r.skipped,
        "chunks": r.chunks,
        "mismatch_count": r.mismatch_count,
        "elapsed_secs": (r.elapsed_secs * 100.0).round() / 100.0,
        "success": r.success,
    });
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|(k, s)| json!({"check": k, "compared": s.compared, "mismatches": s.mismatches}))
        .collect();
    let mut sections = vec![summary, Value::Array(checks)];
    if !r.mismatches.is_empty() {
        sections.push(serde_json::to_value(&r.mismatches)?);
    }
    Ok(Rendered {
        json: serde_json::to_value(r)?,
        sections,
        mismatch: r.mismatch_count > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fv_core::q;

    #[test]
    fn mismatches_select_exit_two() {
        let mut c = SweepConfig::new(Suite::Floor);
        c.max_denominator = 3;
        c.max_n = 3;
        c.jobs = 1;
        let mut r = sweep(&c).unwrap();
        assert!(!sweep_rendered(&r).unwrap().mismatch);
        r.mismatch_count = 1;
        r.success = false;
        assert!(sweep_rendered(&r).unwrap().mismatch);
    }

    #[test]
    fn hypothesis_errors_exit_one() {
        let e = CrtInput::new(q(1, 2), q(3, 4), q(1, 2), q(0, 1), 3).unwrap_err();
        assert_eq!(CliError::from(e).code(), 1);
        let e = "1/0".parse::<Rational>().unwrap_err();
        assert_eq!(CliError::from(e).code(), 64);
    }
}
