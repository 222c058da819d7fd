//! Named verification suites.

use std::fmt::Write as _;

use crate::checks::{self, CaseResult, Status, SEED};
use crate::golden::{self, GoldenCase};

pub const SUITES: &[&str] = &[
    "spheres",
    "quadrics",
    "hypersurfaces-d1",
    "hypersurfaces-top",
    "hypersurfaces-generic",
    "flag",
    "classical",
    "cross-encoding",
    "snf",
    "properties",
];

/// Hypersurface degrees covered by the discrepancy report.
pub const DISCREPANCY_CASES: [(u32, u32); 4] = [(3, 3), (4, 3), (4, 4), (5, 3)];

fn goldens(cases: Vec<GoldenCase>) -> Vec<CaseResult> {
    cases.iter().map(checks::run_golden).collect()
}

/// Runs one suite, or every suite for `"all"`. `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<CaseResult>> {
    let out = match name {
        "all" => SUITES
            .iter()
            .flat_map(|s| run_suite(s).expect("listed suite"))
            .collect(),
        "spheres" => goldens(golden::sphere_cases()),
        "quadrics" => {
            let mut out = goldens(golden::quadric_cases());
            for n in 2..=6 {
                out.push(checks::quadric_slices(n));
                out.push(checks::quadric_primitive_rank(n));
            }
            out
        }
        "hypersurfaces-d1" => {
            let mut out = goldens(golden::linear_hypersurface_cases());
            out.push(checks::linear_reports());
            out
        }
        "hypersurfaces-top" => {
            let mut out = goldens(golden::top_degree_cases());
            out.extend((1..=4).map(checks::top_degree_encodings));
            out
        }
        "hypersurfaces-generic" => DISCREPANCY_CASES
            .iter()
            .map(|&(n, d)| checks::discrepancy(n, d))
            .collect(),
        "flag" => {
            let mut out = goldens(golden::flag_cases());
            out.push(checks::flag_matrices());
            out
        }
        "classical" => {
            let mut out = goldens(golden::classical_cases());
            out.push(checks::morse_invariance());
            out
        }
        "cross-encoding" => vec![checks::cross_encoding()],
        "snf" => vec![checks::snf_examples(), checks::snf_random(SEED, 200)],
        "properties" => vec![
            checks::presets_validate(),
            checks::periodicity(),
            checks::cone_vs_les(),
            checks::vanishing_equivalence(SEED, 100),
            checks::snf_random(SEED, 200),
            checks::alternating_sum(),
            checks::basis_change(SEED),
        ],
        _ => return None,
    };
    Some(out)
}

pub fn all_passed(results: &[CaseResult]) -> bool {
    results.iter().all(CaseResult::passed)
}

/// One line per case, indented details, attached reports as JSON and a
/// closing tally.
pub fn render(results: &[CaseResult]) -> String {
    let mut s = String::new();
    let mut tally = [0usize; 3];
    for r in results {
        let (tag, slot) = match r.status {
            Status::Pass => ("PASS", 0),
            Status::PassWithNotes => ("PASS (notes)", 1),
            Status::Fail => ("FAIL", 2),
        };
        tally[slot] += 1;
        let _ = writeln!(s, "{tag:<12} {}", r.name);
        for d in &r.details {
            let _ = writeln!(s, "    {d}");
        }
        if let Some(a) = &r.attachment {
            let json = serde_json::to_string_pretty(a).unwrap_or_default();
            for line in json.lines() {
                let _ = writeln!(s, "    | {line}");
            }
        }
    }
    let _ = writeln!(
        s,
        "{} cases: {} passed, {} passed with notes, {} failed",
        results.len(),
        tally[0],
        tally[1],
        tally[2]
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
    }

    #[test]
    fn small_suites_pass() {
        for s in ["spheres", "snf", "cross-encoding", "classical"] {
            let r = run_suite(s).unwrap();
            assert!(all_passed(&r), "{}", render(&r));
        }
    }
}
