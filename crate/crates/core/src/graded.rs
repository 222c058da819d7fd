//! Free graded modules over the Novikov ring and grading-constrained maps.
//!
//! A map between free graded modules over `R[T, T^-1]` sends a generator `g`
//! of degree `s` to a combination of `h T^k` with `deg h + k deg T = s + shift`.
//! For a fixed pair `(g, h)` that exponent is forced, so a map is stored as one
//! scalar per pair and the Laurent exponent is recomputed on demand.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{IntMatrix, Matrix, RatMatrix, Rational};

pub type Scalar = Rational;

/// Degree of the formal variable `T`; always even and positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegT(i64);

impl DegT {
    pub fn new(value: i64) -> Result<Self, Error> {
        if value <= 0 || value % 2 != 0 {
            return Err(Error::InvalidGrading(alloc::format!(
                "deg T must be a positive even integer, got {value}"
            )));
        }
        Ok(DegT(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// `Trivial` is `Λ = R`; `Periodic` is `Λ = R[T, T^-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NovikovGrading {
    Trivial,
    Periodic(DegT),
}

impl NovikovGrading {
    pub fn periodic(deg_t: i64) -> Result<Self, Error> {
        DegT::new(deg_t).map(NovikovGrading::Periodic)
    }

    pub fn period(self) -> Option<i64> {
        match self {
            NovikovGrading::Trivial => None,
            NovikovGrading::Periodic(d) => Some(d.get()),
        }
    }

    /// Exponent `k` with `to_degree + k deg T = from_degree + shift`, if any.
    pub fn forced_exponent(self, from_degree: i64, shift: i64, to_degree: i64) -> Option<i64> {
        let gap = from_degree + shift - to_degree;
        match self {
            NovikovGrading::Trivial => (gap == 0).then_some(0),
            NovikovGrading::Periodic(d) => (gap % d.get() == 0).then(|| gap / d.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
}

/// Labeled generators, kept sorted by `(degree, label)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedBasis {
    generators: Vec<Generator>,
    by_label: BTreeMap<String, usize>,
}

impl GradedBasis {
    pub fn new<L: Into<String>>(generators: impl IntoIterator<Item = (L, i64)>) -> Result<Self, Error> {
        let mut generators: Vec<Generator> = generators
            .into_iter()
            .map(|(label, degree)| Generator {
                label: label.into(),
                degree,
            })
            .collect();
        generators.sort_by(|a, b| (a.degree, &a.label).cmp(&(b.degree, &b.label)));
        let mut by_label = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if by_label.insert(g.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(g.label.clone()));
            }
        }
        Ok(GradedBasis { generators, by_label })
    }

    pub fn empty() -> Self {
        GradedBasis::default()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((self.generators.first()?.degree, self.generators.last()?.degree))
    }
}

/// One summand `g T^t_power` of a degree component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentEntry {
    pub generator: usize,
    pub t_power: i64,
}

/// All `g T^a` of total degree `d`, in basis order.
pub fn degree_component_basis(basis: &GradedBasis, grading: NovikovGrading, d: i64) -> Vec<ComponentEntry> {
    basis
        .generators
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            grading
                .forced_exponent(d, 0, g.degree)
                .map(|t_power| ComponentEntry { generator: i, t_power })
        })
        .collect()
}

/// A problem found while checking a raw map description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownSource(String),
    UnknownTarget(String),
    Duplicate {
        from: String,
        to: String,
    },
    Incongruent {
        from: String,
        to: String,
        from_degree: i64,
        to_degree: i64,
        shift: i64,
    },
    TPower {
        from: String,
        to: String,
        given: i64,
        forced: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownSource(l) => write!(f, "unknown source generator `{l}`"),
            Violation::UnknownTarget(l) => write!(f, "unknown target generator `{l}`"),
            Violation::Duplicate { from, to } => write!(f, "duplicate entry {from} -> {to}"),
            Violation::Incongruent {
                from,
                to,
                from_degree,
                to_degree,
                shift,
            } => write!(
                f,
                "entry {from} -> {to} violates the grading (degree {from_degree} with shift {shift} cannot reach degree {to_degree})"
            ),
            Violation::TPower { from, to, given, forced } => {
                write!(f, "entry {from} -> {to} has t_power {given}, the grading forces {forced}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub coeff: Scalar,
    pub t_power: Option<i64>,
}

/// Unchecked description of a graded map, as read from a file or written by
/// a preset. [`MapSpec::build`] turns it into a [`GradedMap`].
#[derive(Clone, Debug)]
pub struct MapSpec {
    pub source: GradedBasis,
    pub target: GradedBasis,
    pub shift: i64,
    pub grading: NovikovGrading,
    pub entries: Vec<MapEntry>,
}

impl MapSpec {
    pub fn new(source: GradedBasis, target: GradedBasis, shift: i64, grading: NovikovGrading) -> Self {
        MapSpec {
            source,
            target,
            shift,
            grading,
            entries: Vec::new(),
        }
    }

    pub fn endo(basis: &GradedBasis, shift: i64, grading: NovikovGrading) -> Self {
        MapSpec::new(basis.clone(), basis.clone(), shift, grading)
    }

    pub fn entry(mut self, from: &str, to: &str, coeff: impl Into<Scalar>) -> Self {
        self.entries.push(MapEntry {
            from: from.to_string(),
            to: to.to_string(),
            coeff: coeff.into(),
            t_power: None,
        });
        self
    }

    /// Every violated constraint, in entry order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for e in &self.entries {
            let from = self.source.index_of(&e.from);
            let to = self.target.index_of(&e.to);
            if from.is_none() {
                out.push(Violation::UnknownSource(e.from.clone()));
            }
            if to.is_none() {
                out.push(Violation::UnknownTarget(e.to.clone()));
            }
            let (Some(from), Some(to)) = (from, to) else {
                continue;
            };
            if seen.insert((from, to), ()).is_some() {
                out.push(Violation::Duplicate {
                    from: e.from.clone(),
                    to: e.to.clone(),
                });
            }
            let (sd, td) = (self.source.get(from).degree, self.target.get(to).degree);
            match self.grading.forced_exponent(sd, self.shift, td) {
                None => out.push(Violation::Incongruent {
                    from: e.from.clone(),
                    to: e.to.clone(),
                    from_degree: sd,
                    to_degree: td,
                    shift: self.shift,
                }),
                Some(forced) => {
                    if let Some(given) = e.t_power.filter(|&g| g != forced) {
                        out.push(Violation::TPower {
                            from: e.from.clone(),
                            to: e.to.clone(),
                            given,
                            forced,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<GradedMap, Error> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidMap(violations));
        }
        let mut coeffs = BTreeMap::new();
        for e in self.entries {
            if e.coeff.is_zero() {
                continue;
            }
            let from = self.source.index_of(&e.from).expect("validated");
            let to = self.target.index_of(&e.to).expect("validated");
            coeffs.insert((from, to), e.coeff);
        }
        Ok(GradedMap {
            source: self.source,
            target: self.target,
            shift: self.shift,
            grading: self.grading,
            coeffs,
        })
    }
}

/// A Λ-linear map of fixed degree shift. Always satisfies the grading
/// constraint; built through [`MapSpec`] or the algebra below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedBasis,
    target: GradedBasis,
    shift: i64,
    grading: NovikovGrading,
    /// `(source index, target index) -> nonzero coefficient`
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

/// A stored coefficient with its forced Laurent exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<'a> {
    pub from: &'a Generator,
    pub to: &'a Generator,
    pub coeff: &'a Scalar,
    pub t_power: i64,
}

impl GradedMap {
    pub fn zero(source: GradedBasis, target: GradedBasis, shift: i64, grading: NovikovGrading) -> Self {
        GradedMap {
            source,
            target,
            shift,
            grading,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn grading(&self) -> NovikovGrading {
        self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `to` in the image of `from` (zero if absent or unknown).
    pub fn coefficient(&self, from: &str, to: &str) -> Scalar {
        match (self.source.index_of(from), self.target.index_of(to)) {
            (Some(i), Some(j)) => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero),
            _ => Scalar::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = Term<'_>> {
        self.coeffs.iter().map(move |(&(i, j), c)| {
            let (from, to) = (self.source.get(i), self.target.get(j));
            Term {
                from,
                to,
                coeff: c,
                t_power: self
                    .grading
                    .forced_exponent(from.degree, self.shift, to.degree)
                    .expect("stored terms respect the grading"),
            }
        })
    }

    /// Raw description, with the forced exponents spelled out.
    pub fn to_spec(&self) -> MapSpec {
        MapSpec {
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            grading: self.grading,
            entries: self
                .terms()
                .map(|t| MapEntry {
                    from: t.from.label.clone(),
                    to: t.to.label.clone(),
                    coeff: t.coeff.clone(),
                    t_power: Some(t.t_power),
                })
                .collect(),
        }
    }

    /// Exact matrix of the map from total degree `d` to `d + shift`. Columns
    /// follow `degree_component_basis(source, d)`, rows the target component.
    pub fn degree_slice(&self, d: i64) -> RatMatrix {
        let cols = degree_component_basis(&self.source, self.grading, d);
        let rows = degree_component_basis(&self.target, self.grading, d + self.shift);
        let mut row_of = alloc::vec![None; self.target.len()];
        for (r, tgt) in rows.iter().enumerate() {
            row_of[tgt.generator] = Some(r);
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (c, src) in cols.iter().enumerate() {
            let g = src.generator;
            for (&(_, to), x) in self.coeffs.range((g, 0)..(g + 1, 0)) {
                if let Some(r) = row_of[to] {
                    m.set(r, c, x.clone());
                }
            }
        }
        m
    }

    /// Integer slice; fails if some coefficient is not an integer.
    pub fn degree_slice_integer(&self, d: i64) -> Result<IntMatrix, Error> {
        self.degree_slice(d)
            .to_integer()
            .ok_or_else(|| Error::WrongRing("map has non-integral coefficients".into()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Scalar::is_integer)
    }

    fn check_same_shape(&self, other: &GradedMap) -> Result<(), Error> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(
                "maps have different source or target bases".into(),
            ));
        }
        if self.shift != other.shift {
            return Err(Error::ShapeMismatch(alloc::format!(
                "shifts differ: {} vs {}",
                self.shift,
                other.shift
            )));
        }
        if self.grading != other.grading {
            return Err(Error::ShapeMismatch("gradings differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, Error> {
        self.check_same_shape(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let sum = coeffs.remove(k).unwrap_or_else(Scalar::zero) + v;
            if !sum.is_zero() {
                coeffs.insert(*k, sum);
            }
        }
        Ok(GradedMap { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect()
        };
        GradedMap { coeffs, ..self.clone() }
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&-Scalar::one())
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap, Error> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch(
                "target of the inner map is not the source of the outer map".into(),
            ));
        }
        if inner.grading != self.grading {
            return Err(Error::ShapeMismatch("gradings differ".into()));
        }
        let mut coeffs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(a, b), x) in &inner.coeffs {
            for (&(b2, c), y) in self.coeffs.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b, b2);
                let slot = coeffs.entry((a, c)).or_insert_with(Scalar::zero);
                *slot += x * y;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            shift: self.shift + inner.shift,
            grading: self.grading,
            coeffs,
        })
    }

    /// `c T^k id`, of shift `k deg T`.
    pub fn scalar_tpower_identity(
        basis: &GradedBasis,
        grading: NovikovGrading,
        c: &Scalar,
        k: i64,
    ) -> Result<GradedMap, Error> {
        let shift = match grading {
            NovikovGrading::Periodic(d) => k * d.get(),
            NovikovGrading::Trivial if k == 0 => 0,
            NovikovGrading::Trivial => {
                return Err(Error::ShapeMismatch("T-powers need a periodic grading".into()));
            }
        };
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            (0..basis.len()).map(|i| ((i, i), c.clone())).collect()
        };
        Ok(GradedMap {
            source: basis.clone(),
            target: basis.clone(),
            shift,
            grading,
            coeffs,
        })
    }

    pub fn identity(basis: &GradedBasis, grading: NovikovGrading) -> GradedMap {
        GradedMap::scalar_tpower_identity(basis, grading, &Scalar::one(), 0).expect("k = 0 is always allowed")
    }

    /// Stored coefficients, in `(source, target)` index order.
    pub fn coefficients(&self) -> impl Iterator<Item = &Scalar> {
        self.coeffs.values()
    }
}
