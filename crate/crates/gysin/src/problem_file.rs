//! JSON problem files (`"schema": 1`).
//!
//! ```json
//! {
//!   "schema": 1,
//!   "ring": "Z",
//!   "grading": {"deg_T": 2},
//!   "dim_sigma": 2,
//!   "generators": [{"label": "p0", "degree": 0}, {"label": "p1", "degree": 2}],
//!   "delta": [{"from": "p1", "to": "p0", "coeff": -2}],
//!   "delta_c": {"coeff": 2},
//!   "window": {"min": -3, "max": 3}
//! }
//! ```
//!
//! Coefficients are decimal integers or `"p/q"` strings; floats are rejected.

use std::fmt;
use std::str::FromStr;

use gysin_core::graded::{MapEntry, MapSpec, Violation};
use gysin_core::presets::{GysinProblem, Metadata};
use gysin_core::{Error, GradedBasis, GradedMap, NovikovGrading, Rational, Ring, Scalar, Window};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub Rational);

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            let n =
                serde_json::Number::from_str(&self.0.to_integer().to_string()).map_err(serde::ser::Error::custom)?;
            n.serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).map(Coeff).map_err(D::Error::custom),
            serde_json::Value::String(s) => parse_rational(&s).map(Coeff).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!(
                "expected an integer or a \"p/q\" string, got {other}"
            ))),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| format!("`{s}` is not an integer or p/q fraction"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(format!("`{s}` has zero denominator"));
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingName {
    Z,
    Q,
}

impl From<RingName> for Ring {
    fn from(r: RingName) -> Ring {
        match r {
            RingName::Z => Ring::Integers,
            RingName::Q => Ring::Rationals,
        }
    }
}

impl From<Ring> for RingName {
    fn from(r: Ring) -> RingName {
        match r {
            Ring::Integers => RingName::Z,
            Ring::Rationals => RingName::Q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GradingSpec {
    Trivial {
        trivial: bool,
    },
    Periodic {
        #[serde(rename = "deg_T")]
        deg_t: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub from: String,
    pub to: String,
    pub coeff: Coeff,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_power: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaC {
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetadataSpec {
    #[serde(rename = "m_W")]
    pub m_w: u64,
    #[serde(rename = "K")]
    pub k: Coeff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub min: i64,
    pub max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ring: RingName,
    pub grading: GradingSpec,
    pub dim_sigma: u32,
    pub generators: Vec<GeneratorSpec>,
    pub delta: Vec<EntrySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<EntrySpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_c: Option<DeltaC>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<MetadataSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
}

/// Parse or validation failure, anchored to a line of the input when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for FileError {}

/// A parsed problem and the window requested by the file, if any.
#[derive(Clone, Debug)]
pub struct LoadedProblem {
    pub problem: GysinProblem,
    pub window: Option<Window>,
}

pub fn parse_problem(text: &str) -> Result<LoadedProblem, FileError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| FileError {
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    let locator = Locator::new(text);
    file.into_problem(&locator)
}

impl ProblemFile {
    fn into_problem(self, loc: &Locator) -> Result<LoadedProblem, FileError> {
        let at = |key: &str| loc.key_line(key);
        if self.schema != SCHEMA_VERSION {
            return Err(FileError {
                line: at("schema"),
                message: format!("unsupported schema {}, expected {SCHEMA_VERSION}", self.schema),
            });
        }
        let grading = match self.grading {
            GradingSpec::Trivial { trivial: true } => NovikovGrading::Trivial,
            GradingSpec::Trivial { trivial: false } => {
                return Err(FileError {
                    line: at("grading"),
                    message: "grading must be {\"trivial\": true} or {\"deg_T\": n}".into(),
                })
            }
            GradingSpec::Periodic { deg_t } => NovikovGrading::periodic(deg_t).map_err(|e| FileError {
                line: at("grading"),
                message: e.to_string(),
            })?,
        };
        let gen_lines = loc.element_lines("generators");
        let basis = GradedBasis::new(self.generators.iter().map(|g| (g.label.clone(), g.degree))).map_err(|e| {
            let line = match &e {
                Error::DuplicateLabel(l) => self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| &g.label == l)
                    .nth(1)
                    .and_then(|(i, _)| gen_lines.get(i).copied()),
                _ => at("generators"),
            };
            FileError {
                line,
                message: e.to_string(),
            }
        })?;
        let delta = build_map(&basis, grading, -2, &self.delta, &loc.element_lines("delta"))?;
        let boundary = match &self.boundary {
            Some(b) => Some(build_map(&basis, grading, -1, b, &loc.element_lines("boundary"))?),
            None => None,
        };
        let window = match self.window {
            Some(w) => Some(Window::new(w.min, w.max).map_err(|e| FileError {
                line: at("window"),
                message: e.to_string(),
            })?),
            None => None,
        };
        let problem = GysinProblem {
            label: self.label.unwrap_or_else(|| "input".into()),
            ring: self.ring.into(),
            grading,
            dim_sigma: self.dim_sigma,
            basis,
            delta,
            boundary,
            delta_c_coeff: self.delta_c.map(|c| c.coeff.0),
            metadata: self.metadata.map(|m| Metadata { m_w: m.m_w, k: m.k.0 }),
        };
        problem.validate().map_err(|e| {
            let line = match &e {
                Error::NotAChainComplex { .. } | Error::NotAChainMap { .. } => at("boundary"),
                Error::WrongRing(_) => at("ring"),
                _ => None,
            };
            FileError {
                line: line.or_else(|| problem_error_line(&e, loc)),
                message: e.to_string(),
            }
        })?;
        Ok(LoadedProblem { problem, window })
    }
}

fn problem_error_line(e: &Error, loc: &Locator) -> Option<usize> {
    const HINTS: [(&str, &str); 6] = [
        ("dim_sigma", "dim_sigma"),
        ("non-integral", "ring"),
        ("sphere count", "delta_c"),
        ("sphere-count", "delta_c"),
        ("m_W", "metadata"),
        ("K must", "metadata"),
    ];
    let msg = e.to_string();
    HINTS
        .iter()
        .find(|(needle, _)| msg.contains(needle))
        .and_then(|(_, key)| loc.key_line(key))
}

fn build_map(
    basis: &GradedBasis,
    grading: NovikovGrading,
    shift: i64,
    entries: &[EntrySpec],
    lines: &[usize],
) -> Result<GradedMap, FileError> {
    let mut spec = MapSpec::endo(basis, shift, grading);
    spec.entries = entries
        .iter()
        .map(|e| MapEntry {
            from: e.from.clone(),
            to: e.to.clone(),
            coeff: e.coeff.0.clone(),
            t_power: e.t_power,
        })
        .collect();
    let violations = spec.validate();
    if let Some(v) = violations.first() {
        let idx = entries.iter().position(|e| violation_matches(v, e));
        return Err(FileError {
            line: idx.and_then(|i| lines.get(i).copied()),
            message: Error::InvalidMap(violations).to_string(),
        });
    }
    spec.build().map_err(|e| FileError {
        line: None,
        message: e.to_string(),
    })
}

fn violation_matches(v: &Violation, e: &EntrySpec) -> bool {
    match v {
        Violation::UnknownSource(l) => &e.from == l,
        Violation::UnknownTarget(l) => &e.to == l,
        Violation::Duplicate { from, to } => &e.from == from && &e.to == to,
        Violation::Incongruent { from, to, .. } | Violation::TPower { from, to, .. } => &e.from == from && &e.to == to,
    }
}

/// Line numbers of top-level keys and of the elements of top-level arrays.
struct Locator {
    keys: Vec<(String, usize)>,
    arrays: Vec<(String, Vec<usize>)>,
}

impl Locator {
    fn new(text: &str) -> Self {
        let mut keys = Vec::new();
        let mut arrays: Vec<(String, Vec<usize>)> = Vec::new();
        let mut depth = 0usize;
        let mut line = 1usize;
        let mut chars = text.chars();
        let mut last_string: Option<(String, usize)> = None;
        let mut pending_key: Option<String> = None;
        // index into `arrays` while inside a top-level array, and whether the
        // next value starts a new element
        let mut open: Option<usize> = None;
        let mut expect_element = false;
        while let Some(c) = chars.next() {
            if c == '\n' {
                line += 1;
                continue;
            }
            if c.is_whitespace() {
                continue;
            }
            if depth == 2 && expect_element && !matches!(c, ']' | ',') {
                if let Some(i) = open {
                    arrays[i].1.push(line);
                }
                expect_element = false;
            }
            match c {
                '"' => {
                    let start = line;
                    let mut s = String::new();
                    while let Some(c) = chars.next() {
                        match c {
                            '\\' => s.extend(chars.next()),
                            '"' => break,
                            _ => {
                                if c == '\n' {
                                    line += 1;
                                }
                                s.push(c);
                            }
                        }
                    }
                    last_string = Some((s, start));
                }
                ':' if depth == 1 => {
                    if let Some((k, l)) = last_string.take() {
                        keys.push((k.clone(), l));
                        pending_key = Some(k);
                    }
                }
                '[' | '{' => {
                    if depth == 1 && c == '[' {
                        if let Some(k) = pending_key.take() {
                            arrays.push((k, Vec::new()));
                            open = Some(arrays.len() - 1);
                            expect_element = true;
                        }
                    }
                    depth += 1;
                }
                ']' | '}' => {
                    depth = depth.saturating_sub(1);
                    if depth == 1 {
                        open = None;
                    }
                }
                ',' if depth == 2 && open.is_some() => expect_element = true,
                _ => {}
            }
            if depth == 1 && c != ':' && c != '"' {
                pending_key = None;
            }
        }
        Locator { keys, arrays }
    }

    fn key_line(&self, key: &str) -> Option<usize> {
        self.keys.iter().find(|(k, _)| k == key).map(|(_, l)| *l)
    }

    fn element_lines(&self, key: &str) -> Vec<usize> {
        self.arrays
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }
}

/// Problem file for `problem`. Delta entries carry their forced `t_power`.
pub fn export_problem(problem: &GysinProblem, window: Option<Window>) -> ProblemFile {
    let entries = |m: &GradedMap| -> Vec<EntrySpec> {
        m.terms()
            .map(|t| EntrySpec {
                from: t.from.label.clone(),
                to: t.to.label.clone(),
                coeff: Coeff(t.coeff.clone()),
                t_power: Some(t.t_power),
            })
            .collect()
    };
    ProblemFile {
        schema: SCHEMA_VERSION,
        label: Some(problem.label.clone()),
        ring: problem.ring.into(),
        grading: match problem.grading {
            NovikovGrading::Trivial => GradingSpec::Trivial { trivial: true },
            NovikovGrading::Periodic(d) => GradingSpec::Periodic { deg_t: d.get() },
        },
        dim_sigma: problem.dim_sigma,
        generators: problem
            .basis
            .generators()
            .iter()
            .map(|g| GeneratorSpec {
                label: g.label.clone(),
                degree: g.degree,
            })
            .collect(),
        delta: entries(&problem.delta),
        boundary: problem.boundary.as_ref().map(entries),
        delta_c: problem.delta_c_coeff.clone().map(|c| DeltaC { coeff: Coeff(c) }),
        metadata: problem.metadata.as_ref().map(|m| MetadataSpec {
            m_w: m.m_w,
            k: Coeff(m.k.clone()),
        }),
        window: window.map(|w| WindowSpec { min: w.min, max: w.max }),
    }
}

pub fn export_problem_json(problem: &GysinProblem, window: Option<Window>) -> String {
    serde_json::to_string_pretty(&export_problem(problem, window)).expect("problem files always serialize")
}

/// Exact scalar as it appears in files.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = r#"{
  "schema": 1,
  "ring": "Z",
  "grading": {"deg_T": 2},
  "dim_sigma": 2,
  "generators": [
    {"label": "p0", "degree": 0},
    {"label": "p1", "degree": 2}
  ],
  "delta": [
    {"from": "p1", "to": "p0", "coeff": -2},
    {"from": "p0", "to": "p1", "coeff": -2, "t_power": -2}
  ],
  "delta_c": {"coeff": 2},
  "metadata": {"m_W": 1, "K": 1},
  "window": {"min": -3, "max": 3}
}"#;

    #[test]
    fn parses_sphere() {
        let p = parse_problem(S2).unwrap();
        assert_eq!(p.window, Some(Window { min: -3, max: 3 }));
        assert_eq!(p.problem.delta.num_terms(), 2);
        assert!(p.problem.has_delta_c());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from_integer((-7).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        let c: Coeff = serde_json::from_str("\"2/4\"").unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "\"1/2\"");
        let big: Coeff = serde_json::from_str("123456789012345678901234567890").unwrap();
        assert_eq!(serde_json::to_string(&big).unwrap(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<Coeff>("1.5").is_err());
    }

    #[test]
    fn wrong_t_power_points_at_its_line() {
        let bad = S2.replace("\"t_power\": -2", "\"t_power\": -1");
        let e = parse_problem(&bad).unwrap_err();
        assert_eq!(e.line, Some(12));
        assert!(e.message.contains("t_power"));
    }

    #[test]
    fn unknown_label_points_at_its_line() {
        let bad = S2.replace("\"to\": \"p0\"", "\"to\": \"q\"");
        let e = parse_problem(&bad).unwrap_err();
        assert_eq!(e.line, Some(11));
    }

    #[test]
    fn duplicate_generator_line() {
        let bad = S2.replace("\"label\": \"p1\"", "\"label\": \"p0\"");
        let e = parse_problem(&bad).unwrap_err();
        assert_eq!(e.line, Some(8));
    }

    #[test]
    fn syntax_error_has_line() {
        let bad = S2.replace("\"dim_sigma\": 2,", "\"dim_sigma\": 2");
        assert_eq!(parse_problem(&bad).unwrap_err().line, Some(6));
    }

    #[test]
    fn odd_deg_t_rejected() {
        let bad = S2.replace("{\"deg_T\": 2}", "{\"deg_T\": 3}");
        let e = parse_problem(&bad).unwrap_err();
        assert_eq!(e.line, Some(4));
    }

    #[test]
    fn float_rejected() {
        let bad = S2.replace("\"coeff\": -2}", "\"coeff\": -2.0}");
        assert!(parse_problem(&bad).is_err());
    }

    #[test]
    fn export_round_trip() {
        let p = parse_problem(S2).unwrap();
        let text = export_problem_json(&p.problem, p.window);
        let q = parse_problem(&text).unwrap();
        assert_eq!(
            p.problem,
            GysinProblem {
                label: "input".into(),
                ..q.problem.clone()
            }
        );
        assert_eq!(q.window, p.window);
    }
}
