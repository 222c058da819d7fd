//! Result serialization: stable JSON (`"schema": 1`) and plain tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use gysin_core::engine::{
    DiscrepancyReport, DivisibilityReport, InvertibilityConclusion, InvertibilityReport, VanishingReport,
    EXTENSION_RESOLUTION,
};
use gysin_core::{AbelianGroup, Int, Mode, RfhResult, Window};
use serde::{Deserialize, Serialize};

use crate::problem_file::{RingName, WindowSpec, SCHEMA_VERSION};

/// Arbitrary-precision integer carried as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigNum(pub Int);

impl Serialize for BigNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        Int::from_str(&n.to_string())
            .map(BigNum)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigNum>,
    pub display: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Les,
    Cone,
}

impl From<Mode> for ModeName {
    fn from(m: Mode) -> Self {
        match m {
            Mode::LongExactSequence => ModeName::Les,
            Mode::MappingCone => ModeName::Cone,
        }
    }
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Les => Mode::LongExactSequence,
            ModeName::Cone => Mode::MappingCone,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub degree: i64,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingJson {
    pub delta_iso: bool,
    pub sh_vanishes: bool,
    pub slice_witness: Option<i64>,
    pub group_witness: Option<WitnessJson>,
}

impl From<&VanishingReport> for VanishingJson {
    fn from(r: &VanishingReport) -> Self {
        VanishingJson {
            delta_iso: r.delta_iso,
            sh_vanishes: r.sh_vanishes,
            slice_witness: r.slice_witness,
            group_witness: r.group_witness.as_ref().map(|(d, g)| WitnessJson {
                degree: *d,
                group: g.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityJson {
    pub divisor: BigNum,
    pub delta_iso: bool,
    pub primitivity_contradiction: bool,
}

impl From<&DivisibilityReport> for DivisibilityJson {
    fn from(r: &DivisibilityReport) -> Self {
        DivisibilityJson {
            divisor: BigNum(r.divisor.clone()),
            delta_iso: r.delta_iso,
            primitivity_contradiction: r.primitivity_contradiction,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertibilityJson {
    pub delta_c_zero: bool,
    pub delta_iso: bool,
    pub conclusion: String,
}

impl From<&InvertibilityReport> for InvertibilityJson {
    fn from(r: &InvertibilityReport) -> Self {
        InvertibilityJson {
            delta_c_zero: r.delta_c_zero,
            delta_iso: r.delta_iso,
            conclusion: match r.conclusion {
                InvertibilityConclusion::QuantumInvertible => "quantum-invertible".into(),
                InvertibilityConclusion::NoConclusion => "no-conclusion".into(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerJson {
    pub alternating_sum: Option<i64>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A report that could not be produced for this problem (e.g. divisibility
/// over Q) is recorded as `{"error": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportSlot<T> {
    Ok(T),
    Err { error: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishing: Option<ReportSlot<VanishingJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisibility: Option<ReportSlot<DivisibilityJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invertibility: Option<ReportSlot<InvertibilityJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerJson>,
}

impl ReportsJson {
    pub fn is_empty(&self) -> bool {
        *self == ReportsJson::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub schema: u32,
    pub label: String,
    pub ring: RingName,
    pub mode: ModeName,
    pub window: WindowSpec,
    pub period: Option<i64>,
    pub extension: String,
    pub groups: Vec<GroupJson>,
    #[serde(default, skip_serializing_if = "ReportsJson::is_empty")]
    pub reports: ReportsJson,
}

impl ResultJson {
    pub fn new(result: &RfhResult, reports: ReportsJson) -> Self {
        ResultJson {
            schema: SCHEMA_VERSION,
            label: result.label.clone(),
            ring: result.ring.into(),
            mode: result.mode.into(),
            window: WindowSpec {
                min: result.window.min,
                max: result.window.max,
            },
            period: result.period,
            extension: EXTENSION_RESOLUTION.into(),
            groups: result
                .groups
                .iter()
                .map(|(j, g)| GroupJson {
                    degree: *j,
                    free_rank: g.free_rank,
                    torsion: g.torsion.iter().cloned().map(BigNum).collect(),
                    display: g.display_over(result.ring).to_string(),
                })
                .collect(),
            reports,
        }
    }

    pub fn to_result(&self) -> RfhResult {
        RfhResult {
            label: self.label.clone(),
            ring: self.ring.into(),
            mode: self.mode.into(),
            window: Window {
                min: self.window.min,
                max: self.window.max,
            },
            groups: self
                .groups
                .iter()
                .map(|g| {
                    (
                        g.degree,
                        AbelianGroup {
                            free_rank: g.free_rank,
                            torsion: g.torsion.iter().map(|t| t.0.clone()).collect(),
                        },
                    )
                })
                .collect::<BTreeMap<_, _>>(),
            period: self.period,
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("result JSON always serializes")
    }
}

/// Plain table sorted by degree.
pub fn render_table(result: &RfhResult, reports: &ReportsJson) -> String {
    let mut s = String::new();
    let mode = match result.mode {
        Mode::LongExactSequence => "les",
        Mode::MappingCone => "cone",
    };
    let _ = write!(s, "# {}  ring {}  mode {}", result.label, result.ring, mode);
    match result.period {
        Some(p) => {
            let _ = writeln!(s, "  period {p}");
        }
        None => s.push('\n'),
    }
    let width = result
        .groups
        .keys()
        .map(|j| j.to_string().len())
        .max()
        .unwrap_or(1)
        .max(3);
    let _ = writeln!(s, "{:>width$}  SH_j", "j");
    for (j, g) in &result.groups {
        let _ = writeln!(s, "{j:>width$}  {}", g.display_over(result.ring));
    }
    if result.is_zero() {
        let _ = writeln!(s, "SH = 0 on the window");
    }
    render_reports(&mut s, reports);
    s
}

fn render_reports(s: &mut String, r: &ReportsJson) {
    match &r.vanishing {
        Some(ReportSlot::Ok(v)) => {
            let verdict = if v.sh_vanishes { "SH = 0" } else { "SH != 0" };
            let _ = write!(s, "vanishing: {verdict}, delta iso: {}", v.delta_iso);
            if let Some(d) = v.slice_witness {
                let _ = write!(s, ", non-invertible slice at degree {d}");
            }
            if let Some(w) = &v.group_witness {
                let _ = write!(s, ", SH_{} = {}", w.degree, w.group);
            }
            s.push('\n');
        }
        Some(ReportSlot::Err { error }) => {
            let _ = writeln!(s, "vanishing: unavailable ({error})");
        }
        None => {}
    }
    match &r.divisibility {
        Some(ReportSlot::Ok(d)) => {
            let _ = writeln!(
                s,
                "divisibility: D = {}, delta iso: {}, primitivity contradiction: {}",
                d.divisor.0, d.delta_iso, d.primitivity_contradiction
            );
        }
        Some(ReportSlot::Err { error }) => {
            let _ = writeln!(s, "divisibility: unavailable ({error})");
        }
        None => {}
    }
    match &r.invertibility {
        Some(ReportSlot::Ok(i)) => {
            let _ = writeln!(
                s,
                "invertibility: delta_c = 0: {}, delta iso: {}, conclusion: {}",
                i.delta_c_zero, i.delta_iso, i.conclusion
            );
        }
        Some(ReportSlot::Err { error }) => {
            let _ = writeln!(s, "invertibility: unavailable ({error})");
        }
        None => {}
    }
    if let Some(e) = &r.euler {
        match (&e.alternating_sum, &e.error) {
            (Some(sum), _) => {
                let _ = writeln!(
                    s,
                    "euler: alternating sum over one period = {sum} ({})",
                    if e.ok { "ok" } else { "FAIL" }
                );
            }
            (None, Some(err)) => {
                let _ = writeln!(s, "euler: unavailable ({err})");
            }
            (None, None) => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRowJson {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel: usize,
    pub primitive_kernel: usize,
    pub excess_kernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyRowJson {
    pub degree: i64,
    pub engine_rank: usize,
    pub closed_form_rank: i64,
    pub matches: bool,
}

/// Machine-readable discrepancy report for `3 <= d <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyJson {
    pub n: u32,
    pub d: u32,
    #[serde(rename = "deg_T")]
    pub deg_t: i64,
    pub primitive_rank: usize,
    pub betti: Vec<usize>,
    pub slices: Vec<SliceRowJson>,
    pub rows: Vec<DiscrepancyRowJson>,
    pub excess_kernel_degrees: Vec<i64>,
    pub consistent: bool,
    pub all_match: bool,
    /// Set when engine and closed form disagree somewhere; the engine value
    /// is the one reported in SH tables.
    pub open_question: bool,
    pub note: String,
}

impl From<&DiscrepancyReport> for DiscrepancyJson {
    fn from(r: &DiscrepancyReport) -> Self {
        DiscrepancyJson {
            n: r.n,
            d: r.d,
            deg_t: r.deg_t,
            primitive_rank: r.primitive_rank,
            betti: r.betti.clone(),
            slices: r
                .slices
                .iter()
                .map(|s| SliceRowJson {
                    degree: s.degree,
                    source_dim: s.source_dim,
                    target_dim: s.target_dim,
                    rank: s.rank,
                    kernel: s.kernel,
                    primitive_kernel: s.primitive_kernel,
                    excess_kernel: s.excess_kernel,
                })
                .collect(),
            rows: r
                .rows
                .iter()
                .map(|x| DiscrepancyRowJson {
                    degree: x.degree,
                    engine_rank: x.engine_rank,
                    closed_form_rank: x.closed_form_rank,
                    matches: x.matches,
                })
                .collect(),
            excess_kernel_degrees: r.excess_kernel_degrees.clone(),
            consistent: r.consistent,
            all_match: r.all_match,
            open_question: !r.all_match,
            note: "h^(n+1) = d^d h^(d-1) T^-1 gives multiplication by h a rank-one kernel at degrees 0 mod deg T; \
                   closed-form ranks assume injectivity there"
                .into(),
        }
    }
}
