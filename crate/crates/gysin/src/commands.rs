//! Subcommand bodies. Each returns the text to print; `main` maps errors to
//! exit codes.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use gysin_core::engine::{
    divisibility_report, euler_characteristic, invertibility_report, mapping_cone_homology, period_window,
    rabinowitz_homology, vanishing_report, Mode, RfhResult,
};
use gysin_core::linalg::cokernel_description;
use gysin_core::presets::GysinProblem;
use gysin_core::{smith_normal_form, Error, Int, IntMatrix, NovikovGrading, Ring, Window};
use serde_json::Value;

use crate::output::{render_table, EulerJson, ReportSlot, ReportsJson, ResultJson};
use crate::problem_file::{export_problem_json, parse_problem, FileError};
use crate::registry::{build_preset, PresetError, PresetParams, PRESETS};
use crate::verify;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or invalid input: exit 1.
    Invalid(String),
    /// Engine invariant breach: exit 2.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PresetError> for CliError {
    fn from(e: PresetError) -> Self {
        match e {
            PresetError::Core(c) => c.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn file_error(path: &Path, e: FileError) -> CliError {
    CliError::Invalid(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug)]
pub enum Source {
    Preset { name: String, params: PresetParams },
    Input(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReportKind {
    Vanishing,
    Divisibility,
    Invertibility,
    Euler,
}

impl ReportKind {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s.trim() {
            "vanishing" => Ok(ReportKind::Vanishing),
            "divisibility" => Ok(ReportKind::Divisibility),
            "invertibility" => Ok(ReportKind::Invertibility),
            "euler" => Ok(ReportKind::Euler),
            other => Err(format!(
                "unknown report `{other}` (expected vanishing, divisibility, invertibility, euler)"
            )),
        }
    }
}

/// `a..b`, inclusive.
pub fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("window `{s}` is not of the form a..b"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| format!("window bound `{x}` is not an integer"))
    };
    Window::new(parse(a)?, parse(b)?).map_err(|e| e.to_string())
}

/// One period centred at 0 for periodic gradings; the support of the
/// groups otherwise.
pub fn cli_default_window(problem: &GysinProblem) -> Window {
    match problem.grading {
        NovikovGrading::Periodic(d) => {
            let p = d.get();
            Window {
                min: -(p / 2),
                max: p - p / 2 - 1,
            }
        }
        NovikovGrading::Trivial => period_window(problem),
    }
}

pub fn load(source: &Source) -> Result<(GysinProblem, Option<Window>), CliError> {
    match source {
        Source::Preset { name, params } => Ok((build_preset(name, params)?, None)),
        Source::Input(path) => {
            let loaded = parse_problem(&read(path)?).map_err(|e| file_error(path, e))?;
            Ok((loaded.problem, loaded.window))
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComputeArgs {
    pub source: Source,
    pub window: Option<Window>,
    pub format: Format,
    pub mode: Option<Mode>,
    pub reports: Vec<ReportKind>,
}

pub fn run_engine(problem: &GysinProblem, window: Window, mode: Option<Mode>) -> Result<RfhResult, Error> {
    let mode = mode.unwrap_or(if problem.has_nonzero_boundary() {
        Mode::MappingCone
    } else {
        Mode::LongExactSequence
    });
    match mode {
        Mode::LongExactSequence => rabinowitz_homology(problem, window),
        Mode::MappingCone => mapping_cone_homology(problem, window),
    }
}

fn slot<T, R>(r: Result<R, Error>, f: impl FnOnce(&R) -> T) -> Result<ReportSlot<T>, CliError> {
    match r {
        Ok(x) => Ok(ReportSlot::Ok(f(&x))),
        Err(e @ Error::Internal(_)) => Err(e.into()),
        Err(e) => Ok(ReportSlot::Err { error: e.to_string() }),
    }
}

/// Alternating sum of `dim_Q SH` over one full period, independent of the
/// display window.
fn euler_report(problem: &GysinProblem) -> Result<EulerJson, CliError> {
    let q = GysinProblem {
        ring: Ring::Rationals,
        ..problem.clone()
    };
    let r = run_engine(&q, period_window(&q), None).and_then(|r| euler_characteristic(&r));
    Ok(match r {
        Ok(sum) => EulerJson {
            alternating_sum: Some(sum),
            ok: sum == 0,
            error: None,
        },
        Err(e @ Error::Internal(_)) => return Err(e.into()),
        Err(e) => EulerJson {
            alternating_sum: None,
            ok: false,
            error: Some(e.to_string()),
        },
    })
}

pub fn build_reports(problem: &GysinProblem, kinds: &[ReportKind]) -> Result<ReportsJson, CliError> {
    let mut out = ReportsJson::default();
    for k in kinds {
        match k {
            ReportKind::Vanishing => out.vanishing = Some(slot(vanishing_report(problem), |r| r.into())?),
            ReportKind::Divisibility => out.divisibility = Some(slot(divisibility_report(problem), |r| r.into())?),
            ReportKind::Invertibility => out.invertibility = Some(slot(invertibility_report(problem), |r| r.into())?),
            ReportKind::Euler => out.euler = Some(euler_report(problem)?),
        }
    }
    Ok(out)
}

pub fn compute(args: &ComputeArgs) -> Result<String, CliError> {
    let (problem, file_window) = load(&args.source)?;
    let window = args
        .window
        .or(file_window)
        .unwrap_or_else(|| cli_default_window(&problem));
    let result = run_engine(&problem, window, args.mode)?;
    let reports = build_reports(&problem, &args.reports)?;
    Ok(match args.format {
        Format::Table => render_table(&result, &reports),
        Format::Json => {
            let mut s = ResultJson::new(&result, reports).to_pretty();
            s.push('\n');
            s
        }
    })
}

/// Text summary and whether every case passed.
pub fn verify(suite: &str) -> Result<(String, bool), CliError> {
    let results = verify::run_suite(suite).ok_or_else(|| {
        CliError::Invalid(format!(
            "unknown suite `{suite}` (expected all, {})",
            verify::SUITES.join(", ")
        ))
    })?;
    Ok((verify::render(&results), verify::all_passed(&results)))
}

pub fn presets_listing() -> String {
    let width = PRESETS.iter().map(|p| p.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for p in PRESETS {
        s.push_str(&format!(
            "{:<width$}  {}\n{:<width$}  params: {}\n",
            p.name, p.description, "", p.params
        ));
    }
    s
}

fn json_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Integer matrix from a JSON array of rows.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("line {}: {e}", e.line()))?;
    let rows = v.as_array().ok_or("expected a JSON array of rows")?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| format!("row {i} is not an array"))?;
        let parsed: Option<Vec<Int>> = row.iter().map(json_int).collect();
        out.push(parsed.ok_or_else(|| format!("row {i} has a non-integer entry"))?);
    }
    IntMatrix::from_rows(out).map_err(|e| e.to_string())
}

pub fn snf_text(m: &IntMatrix) -> String {
    let snf = smith_normal_form(m, false);
    let diag: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
    let factors: Vec<String> = snf.invariant_factors().iter().map(ToString::to_string).collect();
    format!(
        "diag({})\nrank: {}\ninvariant factors: {}\ncokernel: {}\n",
        diag.join(","),
        snf.rank,
        if factors.is_empty() {
            "none".into()
        } else {
            factors.join(", ")
        },
        cokernel_description(m)
    )
}

pub fn snf(path: &Path) -> Result<String, CliError> {
    let m = parse_matrix(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(snf_text(&m))
}

pub fn export(source: &Source, window: Option<Window>) -> Result<String, CliError> {
    let (problem, file_window) = load(source)?;
    let mut s = export_problem_json(&problem, window.or(file_window));
    s.push('\n');
    Ok(s)
}
