//! Named presets and their parameter ranges.

use std::fmt;

use gysin_core::presets::{
    classical_sphere_bundle, classical_sphere_bundle_morse, flag_f3, hypersurface_complement, unit_cotangent_sphere,
    GysinProblem,
};
use gysin_core::{Error, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

/// Sorted by name.
pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "classical-sphere-bundle",
        params: "--euler e (any integer)",
        description: "ordinary Gysin sequence of the circle bundle over S^2 with Euler number e",
    },
    PresetInfo {
        name: "classical-sphere-bundle-morse",
        params: "--euler e (any integer)",
        description: "same bundle on a four-critical-point Morse complex of S^2",
    },
    PresetInfo {
        name: "flag-f3",
        params: "--ring Z|Q",
        description: "unit cotangent bundle of CP^2 over the flag manifold F3",
    },
    PresetInfo {
        name: "hypersurface-complement",
        params: "--n n >= 0, --d 1 <= d <= n+1, --ring Z|Q (Q required for 3 <= d <= n+1, and for d = n+1 >= 2)",
        description: "boundary of CP^{n+1} minus a smooth degree-d hypersurface",
    },
    PresetInfo {
        name: "unit-cotangent-sphere",
        params: "--k k >= 2",
        description: "unit cotangent bundle of S^k over the quadric Q^{k-1}",
    },
];

/// Parameters accepted by [`build_preset`]; unused ones are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresetParams {
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub d: Option<u32>,
    pub euler: Option<i64>,
    pub ring: Option<Ring>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetError {
    Unknown(String),
    MissingParam { preset: &'static str, param: &'static str },
    Core(Error),
}

impl fmt::Display for PresetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetError::Unknown(n) => write!(f, "unknown preset `{n}` (see `gysin presets`)"),
            PresetError::MissingParam { preset, param } => write!(f, "preset `{preset}` needs --{param}"),
            PresetError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for PresetError {}

impl From<Error> for PresetError {
    fn from(e: Error) -> Self {
        PresetError::Core(e)
    }
}

pub fn build_preset(name: &str, p: &PresetParams) -> Result<GysinProblem, PresetError> {
    fn need<T: Copy>(v: Option<T>, preset: &'static str, param: &'static str) -> Result<T, PresetError> {
        v.ok_or(PresetError::MissingParam { preset, param })
    }
    let problem = match name {
        "unit-cotangent-sphere" => unit_cotangent_sphere(need(p.k, "unit-cotangent-sphere", "k")?)?,
        "hypersurface-complement" => {
            let n = need(p.n, "hypersurface-complement", "n")?;
            let d = need(p.d, "hypersurface-complement", "d")?;
            let ring = p.ring.unwrap_or(if d >= 3 || d == n + 1 && n >= 1 {
                Ring::Rationals
            } else {
                Ring::Integers
            });
            hypersurface_complement(n, d, ring)?
        }
        "flag-f3" => flag_f3(p.ring.unwrap_or(Ring::Rationals))?,
        "classical-sphere-bundle" => classical_sphere_bundle(need(p.euler, "classical-sphere-bundle", "euler")?)?,
        "classical-sphere-bundle-morse" => {
            classical_sphere_bundle_morse(need(p.euler, "classical-sphere-bundle-morse", "euler")?)?
        }
        other => return Err(PresetError::Unknown(other.to_string())),
    };
    Ok(match (name, p.ring) {
        ("unit-cotangent-sphere", Some(r)) => GysinProblem { ring: r, ..problem },
        ("classical-sphere-bundle" | "classical-sphere-bundle-morse", Some(r)) => GysinProblem { ring: r, ..problem },
        _ => problem,
    })
}
