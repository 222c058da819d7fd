//! Expected groups for the worked examples, generated from their case rules.
//!
//! Each table is written down from the closed-form description of the answer
//! (e.g. "Z_4 in degrees 2nZ"), never from the engine.

use std::collections::BTreeMap;

use gysin_core::{AbelianGroup, Int, Ring, Window};

use crate::registry::PresetParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Table stated with the worked example.
    CaseTable(&'static str),
    /// Computed by an independent method.
    Oracle(&'static str),
}

impl Provenance {
    pub fn tag(&self) -> String {
        match self {
            Provenance::CaseTable(s) => format!("case table: {s}"),
            Provenance::Oracle(s) => format!("oracle: {s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub id: String,
    pub suite: &'static str,
    pub preset: &'static str,
    pub params: PresetParams,
    /// SH degrees to compute.
    pub window: Window,
    /// Added to SH degrees before comparing (`n̄` for classical problems).
    pub offset: i64,
    pub expected: BTreeMap<i64, AbelianGroup>,
    pub provenance: Provenance,
}

fn zt(free: usize, torsion: &[i64]) -> AbelianGroup {
    AbelianGroup {
        free_rank: free,
        torsion: torsion.iter().map(|&t| Int::from(t)).collect(),
    }
}

fn table(window: Window, rule: impl Fn(i64) -> AbelianGroup) -> BTreeMap<i64, AbelianGroup> {
    window.degrees().map(|j| (j, rule(j))).collect()
}

/// Two full periods around zero.
fn two_periods(period: i64) -> Window {
    Window {
        min: -period,
        max: period - 1,
    }
}

pub fn sphere_cases() -> Vec<GoldenCase> {
    let mut out = vec![GoldenCase {
        id: "unit-cotangent-sphere k=2".into(),
        suite: "spheres",
        preset: "unit-cotangent-sphere",
        params: PresetParams {
            k: Some(2),
            ..Default::default()
        },
        window: Window { min: -6, max: 6 },
        offset: 0,
        expected: table(Window { min: -6, max: 6 }, |j| {
            if j.rem_euclid(2) == 0 {
                zt(1, &[2])
            } else {
                zt(1, &[])
            }
        }),
        provenance: Provenance::CaseTable("S*S^2: Z in odd degrees, Z+Z_2 in even degrees"),
    }];
    for k in 3..=7u32 {
        let n = i64::from(k) - 1;
        let w = two_periods(2 * n);
        let (expected, note) = if n % 2 == 1 {
            (
                table(w, |j| match j.rem_euclid(2 * n) {
                    0 => zt(0, &[2]),
                    r if r == n || r == n + 1 => zt(1, &[]),
                    _ => zt(0, &[]),
                }),
                "S*S^{n+1}, n odd: Z_2 on 2nZ, Z on 2nZ+{n,n+1}",
            )
        } else {
            (
                table(w, |j| match j.rem_euclid(n) {
                    0 | 1 => zt(1, &[]),
                    _ => zt(0, &[]),
                }),
                "S*S^{n+1}, n even: Z on nZ+{0,1}",
            )
        };
        out.push(GoldenCase {
            id: format!("unit-cotangent-sphere k={k}"),
            suite: "spheres",
            preset: "unit-cotangent-sphere",
            params: PresetParams {
                k: Some(k),
                ..Default::default()
            },
            window: w,
            offset: 0,
            expected,
            provenance: Provenance::CaseTable(note),
        });
    }
    out
}

pub fn quadric_cases() -> Vec<GoldenCase> {
    (2..=6u32)
        .map(|nu| {
            let n = i64::from(nu);
            let w = two_periods(2 * n);
            let (expected, note) = if n % 2 == 1 {
                (
                    table(w, |j| match j.rem_euclid(2 * n) {
                        0 => zt(0, &[4]),
                        r if r == n + 1 => zt(1, &[2]),
                        r if r == n => zt(1, &[]),
                        r if r % 2 == 0 => zt(0, &[2]),
                        _ => zt(0, &[]),
                    }),
                    "quadric complement, n odd: Z_4 on 2nZ, Z+Z_2 on 2nZ+n+1, Z on 2nZ+n, Z_2 on other even degrees",
                )
            } else {
                (
                    table(w, |j| match j.rem_euclid(n) {
                        1 => zt(1, &[2]),
                        0 => zt(1, &[]),
                        _ if j.rem_euclid(2) == 1 => zt(0, &[2]),
                        _ => zt(0, &[]),
                    }),
                    "quadric complement, n even: Z+Z_2 on nZ+1, Z on nZ, Z_2 on other odd degrees",
                )
            };
            GoldenCase {
                id: format!("hypersurface-complement n={nu} d=2"),
                suite: "quadrics",
                preset: "hypersurface-complement",
                params: PresetParams {
                    n: Some(nu),
                    d: Some(2),
                    ring: Some(Ring::Integers),
                    ..Default::default()
                },
                window: w,
                offset: 0,
                expected,
                provenance: Provenance::CaseTable(note),
            }
        })
        .collect()
}

fn vanishing_case(
    id: String,
    suite: &'static str,
    preset: &'static str,
    params: PresetParams,
    period: i64,
    note: &'static str,
) -> GoldenCase {
    let w = two_periods(period.max(2));
    GoldenCase {
        id,
        suite,
        preset,
        params,
        window: w,
        offset: 0,
        expected: table(w, |_| zt(0, &[])),
        provenance: Provenance::CaseTable(note),
    }
}

pub fn linear_hypersurface_cases() -> Vec<GoldenCase> {
    (0..=3u32)
        .map(|n| {
            vanishing_case(
                format!("hypersurface-complement n={n} d=1"),
                "hypersurfaces-d1",
                "hypersurface-complement",
                PresetParams {
                    n: Some(n),
                    d: Some(1),
                    ring: Some(Ring::Integers),
                    ..Default::default()
                },
                2 * (i64::from(n) + 1),
                "linear hypersurface complement: SH = 0",
            )
        })
        .collect()
}

pub fn top_degree_cases() -> Vec<GoldenCase> {
    (1..=4u32)
        .map(|n| {
            vanishing_case(
                format!("hypersurface-complement n={n} d={}", n + 1),
                "hypersurfaces-top",
                "hypersurface-complement",
                PresetParams {
                    n: Some(n),
                    d: Some(n + 1),
                    ring: Some(Ring::Rationals),
                    ..Default::default()
                },
                2,
                "degree n+1 hypersurface complement: SH(Q) = 0",
            )
        })
        .collect()
}

pub fn flag_cases() -> Vec<GoldenCase> {
    vec![vanishing_case(
        "flag-f3 Q".into(),
        "flag",
        "flag-f3",
        PresetParams {
            ring: Some(Ring::Rationals),
            ..Default::default()
        },
        4,
        "S*CP^2 via F3: SH(Q) = 0",
    )]
}

/// `H_*(L(k, 1))` in degrees 0..3 for the bundle with Euler number `-k`.
pub fn classical_cases() -> Vec<GoldenCase> {
    let mut out = Vec::new();
    for preset in ["classical-sphere-bundle", "classical-sphere-bundle-morse"] {
        for k in [1i64, 2, 3, 5] {
            let expected: BTreeMap<i64, AbelianGroup> = [
                (0, zt(1, &[])),
                (1, if k == 1 { zt(0, &[]) } else { zt(0, &[k]) }),
                (2, zt(0, &[])),
                (3, zt(1, &[])),
            ]
            .into_iter()
            .collect();
            out.push(GoldenCase {
                id: format!("{preset} e=-{k}"),
                suite: "classical",
                preset,
                params: PresetParams {
                    euler: Some(-k),
                    ..Default::default()
                },
                window: Window { min: -1, max: 2 },
                offset: 1,
                expected,
                provenance: Provenance::Oracle("lens space L(k,1): Z, Z_k, 0, Z"),
            });
        }
    }
    out.push(GoldenCase {
        id: "classical-sphere-bundle e=0".into(),
        suite: "classical",
        preset: "classical-sphere-bundle",
        params: PresetParams {
            euler: Some(0),
            ..Default::default()
        },
        window: Window { min: -1, max: 2 },
        offset: 1,
        expected: (0..=3).map(|i| (i, zt(1, &[]))).collect(),
        provenance: Provenance::Oracle("S^1 x S^2: Z in degrees 0..3"),
    });
    out
}

pub fn all_cases() -> Vec<GoldenCase> {
    let mut out = sphere_cases();
    out.extend(quadric_cases());
    out.extend(linear_hypersurface_cases());
    out.extend(top_degree_cases());
    out.extend(flag_cases());
    out.extend(classical_cases());
    out
}
