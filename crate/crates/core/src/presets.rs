//! Gysin problems: the data of a prequantization bundle's connecting map.
//!
//! Every constructor here writes the quantum product with the hyperplane (or
//! Euler) class directly from its known relations. Only multiplication by
//! that one class is ever encoded.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::graded::{GradedBasis, GradedMap, MapSpec, NovikovGrading, Scalar};
use crate::linalg::{Int, Rational, Ring};

/// Geometric bookkeeping carried along for the divisibility checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    /// Generator of the kernel of `pi_1(fiber) -> pi_1(W)`.
    pub m_w: u64,
    pub k: Rational,
}

/// Input of the engine: `H_*(Σ; Λ)` with its connecting map.
///
/// `delta` is the quantum cap product with the Euler class. The sphere-count
/// correction is kept apart in `delta_c_coeff`; the full connecting map is
/// [`GysinProblem::total_delta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinProblem {
    pub label: String,
    pub ring: Ring,
    pub grading: NovikovGrading,
    /// Real dimension of Σ.
    pub dim_sigma: u32,
    pub basis: GradedBasis,
    pub delta: GradedMap,
    /// Morse differential of shift -1, for chain-level problems.
    pub boundary: Option<GradedMap>,
    pub delta_c_coeff: Option<Scalar>,
    pub metadata: Option<Metadata>,
}

impl GysinProblem {
    /// Half the real dimension of Σ.
    pub fn n_bar(&self) -> i64 {
        i64::from(self.dim_sigma / 2)
    }

    pub fn has_delta_c(&self) -> bool {
        self.delta_c_coeff.as_ref().is_some_and(|c| !c.is_zero())
    }

    /// `c T^-1 id`, when a nonzero sphere-count term is present.
    pub fn delta_c_map(&self) -> Option<GradedMap> {
        let c = self.delta_c_coeff.as_ref().filter(|c| !c.is_zero())?;
        GradedMap::scalar_tpower_identity(&self.basis, self.grading, c, -1).ok()
    }

    /// `delta + delta_c`.
    pub fn total_delta(&self) -> GradedMap {
        match self.delta_c_map() {
            Some(dc) => self.delta.add(&dc).expect("validated problem"),
            None => self.delta.clone(),
        }
    }

    pub fn has_nonzero_boundary(&self) -> bool {
        self.boundary.as_ref().is_some_and(|b| !b.is_zero())
    }

    /// Checks every structural invariant; chain-level conditions report the
    /// first generator on which they fail.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidProblem(msg));
        if !self.dim_sigma.is_multiple_of(2) {
            return bad(format!("dim_sigma must be even, got {}", self.dim_sigma));
        }
        check_endomorphism(&self.delta, &self.basis, self.grading, -2, "delta")?;
        if let Some(b) = &self.boundary {
            check_endomorphism(b, &self.basis, self.grading, -1, "boundary")?;
        }
        if self.ring == Ring::Integers {
            let integral = self.delta.is_integral()
                && self.boundary.as_ref().is_none_or(GradedMap::is_integral)
                && self.delta_c_coeff.as_ref().is_none_or(Rational::is_integer);
            if !integral {
                return bad("non-integral coefficient in a problem over Z".into());
            }
        }
        if self.has_delta_c() && self.grading.period() != Some(2) {
            return bad("a sphere-count term requires a periodic grading with deg T = 2".into());
        }
        if let Some(meta) = &self.metadata {
            if meta.k <= Rational::zero() {
                return bad("metadata K must be positive".into());
            }
            if (meta.m_w == 0) != (self.grading == NovikovGrading::Trivial) {
                return bad("m_W = 0 exactly when the grading is trivial".into());
            }
            if let Some(c) = self.delta_c_coeff.as_ref().filter(|c| !c.is_zero()) {
                let divisible = c.is_integer() && meta.m_w != 0 && (c.to_integer() % BigInt::from(meta.m_w)).is_zero();
                if !divisible {
                    return bad(format!("m_W = {} does not divide the sphere count {c}", meta.m_w));
                }
            }
        }
        if let Some(b) = &self.boundary {
            let bb = b.compose(b)?;
            let bad_generator = bb.terms().next().map(|t| t.from.label.clone());
            if let Some(generator) = bad_generator {
                return Err(Error::NotAChainComplex { generator });
            }
            let d = self.total_delta();
            let comm = d.compose(b)?.add(&b.compose(&d)?.neg())?;
            let bad_generator = comm.terms().next().map(|t| t.from.label.clone());
            if let Some(generator) = bad_generator {
                return Err(Error::NotAChainMap { generator });
            }
        }
        Ok(())
    }
}

fn check_endomorphism(
    map: &GradedMap,
    basis: &GradedBasis,
    grading: NovikovGrading,
    shift: i64,
    what: &str,
) -> Result<(), Error> {
    if map.source() != basis || map.target() != basis {
        return Err(Error::InvalidProblem(format!(
            "{what} must be an endomorphism of the problem basis"
        )));
    }
    if map.shift() != shift {
        return Err(Error::InvalidProblem(format!(
            "{what} must have shift {shift}, got {}",
            map.shift()
        )));
    }
    if map.grading() != grading {
        return Err(Error::InvalidProblem(format!("{what} uses a different grading")));
    }
    Ok(())
}

fn int(x: impl Into<BigInt>) -> Scalar {
    Scalar::from_integer(x.into())
}

fn factorial(n: u32) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

fn pow(base: i64, exp: u32) -> Int {
    num_traits::pow(Int::from(base), exp as usize)
}

fn periodic(deg_t: i64) -> NovikovGrading {
    NovikovGrading::periodic(deg_t).expect("preset deg T is even and positive")
}

fn meta(m_w: u64, k: i64) -> Option<Metadata> {
    Some(Metadata { m_w, k: int(k) })
}

// ---------------------------------------------------------------------------
// Quadrics

fn quadric_h_label(i: u32) -> String {
    if i == 0 {
        "[Q]".into()
    } else {
        format!("h^{i}")
    }
}

/// `a•h^j`; the last one is the point class.
fn quadric_ah_label(j: u32, m: u32) -> String {
    match j {
        0 => "a".into(),
        j if j == m => "[pt]".into(),
        j => format!("a.h^{j}"),
    }
}

/// Integral homology basis of the quadric `Q^n`, `n >= 2`.
pub fn quadric_basis(n: u32) -> Result<GradedBasis, Error> {
    if n < 2 {
        return Err(Error::DomainError(format!("quadric basis needs n >= 2, got {n}")));
    }
    let (n_i, m) = (i64::from(n), n / 2);
    let mut gens = Vec::new();
    if n % 2 == 1 {
        for i in 0..=m {
            gens.push((quadric_h_label(i), 2 * n_i - 2 * i64::from(i)));
        }
        for j in 0..=m {
            gens.push((quadric_ah_label(j, m), 2 * i64::from(m) - 2 * i64::from(j)));
        }
    } else {
        for i in 0..m {
            gens.push((quadric_h_label(i), 2 * n_i - 2 * i64::from(i)));
        }
        gens.push(("a".into(), i64::from(n)));
        gens.push(("b".into(), i64::from(n)));
        for j in 1..=m {
            gens.push((quadric_ah_label(j, m), 2 * i64::from(m) - 2 * i64::from(j)));
        }
    }
    GradedBasis::new(gens)
}

/// Quantum product `*h` on `H_*(Q^n; Λ)`, `deg T = 2n`. Classical except
/// `(a•h^{m-1}) * h = [pt] + [Q] T^-1` and `[pt] * h = h T^-1`.
pub fn quadric_hyperplane_product(n: u32) -> Result<GradedMap, Error> {
    let basis = quadric_basis(n)?;
    let grading = periodic(2 * i64::from(n));
    let m = n / 2;
    let mut spec = MapSpec::endo(&basis, -2, grading);
    let one = || int(1);
    if n % 2 == 1 {
        for i in 0..m {
            spec = spec.entry(&quadric_h_label(i), &quadric_h_label(i + 1), one());
        }
        spec = spec.entry(&quadric_h_label(m), "a", int(2));
        for j in 0..m - 1 {
            spec = spec.entry(&quadric_ah_label(j, m), &quadric_ah_label(j + 1, m), one());
        }
        spec = spec
            .entry(&quadric_ah_label(m - 1, m), "[pt]", one())
            .entry(&quadric_ah_label(m - 1, m), "[Q]", one())
            .entry("[pt]", "h^1", one());
    } else {
        for i in 0..m - 1 {
            spec = spec.entry(&quadric_h_label(i), &quadric_h_label(i + 1), one());
        }
        spec = spec
            .entry(&quadric_h_label(m - 1), "a", one())
            .entry(&quadric_h_label(m - 1), "b", one());
        if m == 1 {
            for x in ["a", "b"] {
                spec = spec.entry(x, "[pt]", one()).entry(x, "[Q]", one());
            }
            spec = spec.entry("[pt]", "a", one()).entry("[pt]", "b", one());
        } else {
            let ah1 = quadric_ah_label(1, m);
            spec = spec.entry("a", &ah1, one()).entry("b", &ah1, one());
            for j in 1..m - 1 {
                spec = spec.entry(&quadric_ah_label(j, m), &quadric_ah_label(j + 1, m), one());
            }
            spec = spec
                .entry(&quadric_ah_label(m - 1, m), "[pt]", one())
                .entry(&quadric_ah_label(m - 1, m), "[Q]", one())
                .entry("[pt]", "h^1", one());
        }
    }
    spec.build()
}

/// Rabinowitz Floer data of the unit cotangent bundle `S^*S^k`, `k >= 2`.
///
/// `k = 2` uses the diagonal in `CP^1 x CP^1` (two spheres through each
/// point, `δ_c = 2`); `k >= 3` uses the quadric `Q^{k-1}` with `δ = -h*`.
pub fn unit_cotangent_sphere(k: u32) -> Result<GysinProblem, Error> {
    match k {
        0 | 1 => Err(Error::DomainError(format!(
            "unit cotangent sphere needs k >= 2, got {k}"
        ))),
        2 => {
            let basis = GradedBasis::new([("p0", 0), ("p1", 2)])?;
            let grading = periodic(2);
            let delta = MapSpec::endo(&basis, -2, grading)
                .entry("p1", "p0", int(-2))
                .entry("p0", "p1", int(-2))
                .build()?;
            Ok(GysinProblem {
                label: "unit-cotangent-sphere(k=2)".into(),
                ring: Ring::Integers,
                grading,
                dim_sigma: 2,
                basis,
                delta,
                boundary: None,
                delta_c_coeff: Some(int(2)),
                metadata: meta(1, 1),
            })
        }
        k => {
            let n = k - 1;
            let h = quadric_hyperplane_product(n)?;
            Ok(GysinProblem {
                label: format!("unit-cotangent-sphere(k={k})"),
                ring: Ring::Integers,
                grading: h.grading(),
                dim_sigma: 2 * n,
                basis: h.source().clone(),
                delta: h.neg(),
                boundary: None,
                delta_c_coeff: None,
                metadata: None,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Projective hypersurfaces

/// `χ(Σ^n_d) = ((1 - d)^{n+2} - 1)/d + n + 2` for a degree-`d` hypersurface
/// in `CP^{n+1}`.
pub fn hypersurface_euler_characteristic(n: u32, d: u32) -> Result<Int, Error> {
    if d == 0 {
        return Err(Error::DomainError("hypersurface degree must be at least 1".into()));
    }
    let num = pow(1 - i64::from(d), n + 2) - Int::one();
    let (q, r) = (&num / Int::from(d), &num % Int::from(d));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "Euler characteristic numerator {num} not divisible by {d}"
        )));
    }
    Ok(q + Int::from(n) + Int::from(2))
}

/// Rank of the primitive middle homology of `Σ^n_d`.
pub fn primitive_middle_rank(n: u32, d: u32) -> Result<usize, Error> {
    let chi = hypersurface_euler_characteristic(n, d)?;
    let hodge = Int::from(n) + Int::one();
    let b = if n.is_multiple_of(2) { chi - hodge } else { hodge - chi };
    if b.is_negative() {
        return Err(Error::Internal(format!("negative primitive rank for (n={n}, d={d})")));
    }
    b.to_usize()
        .ok_or_else(|| Error::DomainError(format!("primitive rank of (n={n}, d={d}) is too large")))
}

fn primitive_labels(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("prim_{i:03}")).collect()
}

/// Degree-`d` hypersurface complement in `CP^{n+1}`, `1 <= d <= n + 1`.
pub fn hypersurface_complement(n: u32, d: u32, ring: Ring) -> Result<GysinProblem, Error> {
    if d == 0 || d > n + 1 {
        return Err(Error::DomainError(format!(
            "hypersurface degree must satisfy 1 <= d <= n + 1, got n = {n}, d = {d}"
        )));
    }
    let mut problem = if d == 1 {
        linear_hypersurface(n)?
    } else if d == n + 1 {
        if ring == Ring::Integers {
            return Err(Error::DomainError(format!(
                "degree n+1 hypersurfaces (n = {n}) are only available over Q: \
                 the basis {{x_i, y}} is a basis over Q[T, T^-1] and no integral basis is known"
            )));
        }
        top_degree_hypersurface(n)?
    } else if d == 2 {
        let h = quadric_hyperplane_product(n)?;
        GysinProblem {
            label: String::new(),
            ring,
            grading: h.grading(),
            dim_sigma: 2 * n,
            basis: h.source().clone(),
            delta: h.scale(&int(-2)),
            boundary: None,
            delta_c_coeff: None,
            metadata: None,
        }
    } else {
        if ring == Ring::Integers {
            return Err(Error::DomainError(format!(
                "degree {d} hypersurfaces with 3 <= d <= n are only available over Q"
            )));
        }
        generic_hypersurface(n, d)?
    };
    problem.ring = ring;
    problem.label = format!("hypersurface-complement(n={n},d={d})");
    problem.metadata = meta(u64::from(d), i64::from(d));
    Ok(problem)
}

/// `d = 1`: Σ is `CP^n`, `h^{*(n+1)} = [Σ] T^-1`; for `n = 0` a point hit
/// by exactly one sphere.
fn linear_hypersurface(n: u32) -> Result<GysinProblem, Error> {
    if n == 0 {
        let basis = GradedBasis::new([("[pt]", 0)])?;
        let grading = periodic(2);
        return Ok(GysinProblem {
            label: String::new(),
            ring: Ring::Integers,
            grading,
            dim_sigma: 0,
            delta: GradedMap::zero(basis.clone(), basis.clone(), -2, grading),
            basis,
            boundary: None,
            delta_c_coeff: Some(int(1)),
            metadata: None,
        });
    }
    let n_i = i64::from(n);
    let label = |i: u32| format!("h^{i}");
    let basis = GradedBasis::new((0..=n).map(|i| (label(i), 2 * n_i - 2 * i64::from(i))))?;
    let grading = periodic(2 * (n_i + 1));
    let mut spec = MapSpec::endo(&basis, -2, grading);
    for i in 0..n {
        spec = spec.entry(&label(i), &label(i + 1), int(-1));
    }
    spec = spec.entry(&label(n), &label(0), int(-1));
    Ok(GysinProblem {
        label: String::new(),
        ring: Ring::Integers,
        grading,
        dim_sigma: 2 * n,
        delta: spec.build()?,
        basis,
        boundary: None,
        delta_c_coeff: None,
        metadata: None,
    })
}

fn generic_basis(n: u32, d: u32) -> Result<GradedBasis, Error> {
    let n_i = i64::from(n);
    let mut gens: Vec<(String, i64)> = (0..=n)
        .map(|i| (format!("e_{i}"), 2 * n_i - 2 * i64::from(i)))
        .collect();
    gens.extend(
        primitive_labels(primitive_middle_rank(n, d)?)
            .into_iter()
            .map(|l| (l, n_i)),
    );
    GradedBasis::new(gens)
}

/// `3 <= d <= n`, basis of quantum powers `e_i = h^{*i}` plus primitive
/// classes. `δ = -d h*` with `h^{*(n+1)} = d^d h^{*(d-1)} T^-1` and
/// primitives annihilated.
fn generic_hypersurface(n: u32, d: u32) -> Result<GysinProblem, Error> {
    let basis = generic_basis(n, d)?;
    let grading = periodic(2 * (i64::from(n) - i64::from(d) + 2));
    let d_i = i64::from(d);
    let mut spec = MapSpec::endo(&basis, -2, grading);
    for i in 0..n {
        spec = spec.entry(&format!("e_{i}"), &format!("e_{}", i + 1), int(-d_i));
    }
    spec = spec.entry(
        &format!("e_{n}"),
        &format!("e_{}", d - 1),
        Scalar::from_integer(-pow(d_i, d + 1)),
    );
    Ok(GysinProblem {
        label: String::new(),
        ring: Ring::Rationals,
        grading,
        dim_sigma: 2 * n,
        delta: spec.build()?,
        basis,
        boundary: None,
        delta_c_coeff: None,
        metadata: None,
    })
}

fn top_degree_basis(n: u32) -> Result<GradedBasis, Error> {
    let n_i = i64::from(n);
    let mut gens: Vec<(String, i64)> = (0..n)
        .map(|i| (format!("x_{i}"), 2 * n_i - 2 * i64::from(i) - 2))
        .collect();
    gens.push(("y".into(), 0));
    gens.extend(
        primitive_labels(primitive_middle_rank(n, n + 1)?)
            .into_iter()
            .map(|l| (l, n_i)),
    );
    GradedBasis::new(gens)
}

/// Quantum product `*h` on `Σ^n_{n+1}` in the basis `{x_i, y}` plus
/// primitives:
/// `h*x_i = -(n+1)! T^-1 x_i + x_{i+1}`, `h*y = ((n+1)^{n+1} - (n+1)!) T^-1 y`,
/// `h*a = -(n+1)! T^-1 a` on primitives.
pub fn top_degree_hyperplane_product(n: u32) -> Result<GradedMap, Error> {
    if n == 0 {
        return Err(Error::DomainError("the {x_i, y} basis needs n >= 1".into()));
    }
    let basis = top_degree_basis(n)?;
    let grading = periodic(2);
    let fact = Scalar::from_integer(factorial(n + 1));
    let mut spec = MapSpec::endo(&basis, -2, grading);
    for i in 0..n {
        let x = format!("x_{i}");
        spec = spec.entry(&x, &x, -fact.clone());
        if i + 1 < n {
            spec = spec.entry(&x, &format!("x_{}", i + 1), int(1));
        }
    }
    let y_coeff = Scalar::from_integer(pow(i64::from(n) + 1, n + 1)) - &fact;
    spec = spec.entry("y", "y", y_coeff);
    for p in primitive_labels(primitive_middle_rank(n, n + 1)?) {
        spec = spec.entry(&p, &p, -fact.clone());
    }
    spec.build()
}

/// `d = n + 1`: `δ_a + δ_b = -(n+1) h*` from the relations, plus the
/// sphere count `δ_c = (n+1)! T^-1`.
fn top_degree_hypersurface(n: u32) -> Result<GysinProblem, Error> {
    let h = top_degree_hyperplane_product(n)?;
    Ok(GysinProblem {
        label: String::new(),
        ring: Ring::Rationals,
        grading: h.grading(),
        dim_sigma: 2 * n,
        basis: h.source().clone(),
        delta: h.scale(&int(-(i64::from(n) + 1))),
        boundary: None,
        delta_c_coeff: Some(Scalar::from_integer(factorial(n + 1))),
        metadata: None,
    })
}

/// The full connecting map for `d = n + 1` written directly as the
/// lower-triangular matrix with diagonal `(n+2)!`, subdiagonal `-(n+1)`,
/// corner `(n+2)! - (n+1)^{n+2}`, and `(n+2)!` on primitives.
pub fn top_degree_direct_delta(n: u32) -> Result<GradedMap, Error> {
    if n == 0 {
        return Err(Error::DomainError("the {x_i, y} basis needs n >= 1".into()));
    }
    let basis = top_degree_basis(n)?;
    let alpha1 = Scalar::from_integer(factorial(n + 2));
    let alpha2 = int(-(i64::from(n) + 1));
    let beta = Scalar::from_integer(factorial(n + 2) - pow(i64::from(n) + 1, n + 2));
    let mut spec = MapSpec::endo(&basis, -2, periodic(2));
    for i in 0..n {
        let x = format!("x_{i}");
        spec = spec.entry(&x, &x, alpha1.clone());
        if i + 1 < n {
            spec = spec.entry(&x, &format!("x_{}", i + 1), alpha2.clone());
        }
    }
    spec = spec.entry("y", "y", beta);
    for p in primitive_labels(primitive_middle_rank(n, n + 1)?) {
        spec = spec.entry(&p, &p, alpha1.clone());
    }
    spec.build()
}

// ---------------------------------------------------------------------------
// Flag manifold

/// Quantum products `*a` and `*b` on `H_*(F_3; Λ)`, `deg T = 4`.
pub fn flag_f3_products() -> Result<(GradedMap, GradedMap), Error> {
    let basis = GradedBasis::new([("[pt]", 0), ("a2", 2), ("b2", 2), ("a", 4), ("b", 4), ("[F3]", 6)])?;
    let grading = periodic(4);
    let one = || int(1);
    let times_a = MapSpec::endo(&basis, -2, grading)
        .entry("[F3]", "a", one())
        .entry("a", "a2", one())
        .entry("a", "[F3]", one())
        .entry("b", "a2", one())
        .entry("b", "b2", one())
        .entry("a2", "b", one())
        .entry("b2", "[pt]", one())
        .entry("[pt]", "b2", one())
        .entry("[pt]", "[F3]", one())
        .build()?;
    let times_b = MapSpec::endo(&basis, -2, grading)
        .entry("[F3]", "b", one())
        .entry("a", "a2", one())
        .entry("a", "b2", one())
        .entry("b", "b2", one())
        .entry("b", "[F3]", one())
        .entry("a2", "[pt]", one())
        .entry("b2", "a", one())
        .entry("[pt]", "a2", one())
        .entry("[pt]", "[F3]", one())
        .build()?;
    Ok((times_a, times_b))
}

/// Unit cotangent bundle of `CP^2` over the flag manifold, `δ = -(a + b)*`.
pub fn flag_f3(ring: Ring) -> Result<GysinProblem, Error> {
    let (a, b) = flag_f3_products()?;
    let delta = a.add(&b)?.neg();
    Ok(GysinProblem {
        label: "flag-f3".into(),
        ring,
        grading: delta.grading(),
        dim_sigma: 6,
        basis: delta.source().clone(),
        delta,
        boundary: None,
        delta_c_coeff: None,
        metadata: meta(1, 1),
    })
}

// ---------------------------------------------------------------------------
// Classical Gysin sequences

/// Ordinary Gysin sequence of a circle bundle: trivial grading, `cap` is the
/// cap product with the Euler class, optionally on a Morse complex.
pub fn classical_circle_bundle(
    label: impl Into<String>,
    basis: GradedBasis,
    cap: GradedMap,
    dim_sigma: u32,
    ring: Ring,
    boundary: Option<GradedMap>,
) -> Result<GysinProblem, Error> {
    if cap.grading() != NovikovGrading::Trivial {
        return Err(Error::ShapeMismatch("classical mode needs the trivial grading".into()));
    }
    if cap.shift() != -2 || cap.source() != &basis || cap.target() != &basis {
        return Err(Error::ShapeMismatch(
            "cap map must be an endomorphism of shift -2".into(),
        ));
    }
    let problem = GysinProblem {
        label: label.into(),
        ring,
        grading: NovikovGrading::Trivial,
        dim_sigma,
        basis,
        delta: cap,
        boundary,
        delta_c_coeff: None,
        metadata: None,
    };
    problem.validate()?;
    Ok(problem)
}

/// Circle bundle over `S^2` with Euler number `euler` (`-k` gives `L(k, 1)`).
pub fn classical_sphere_bundle(euler: i64) -> Result<GysinProblem, Error> {
    let basis = GradedBasis::new([("[pt]", 0), ("[S2]", 2)])?;
    let cap = MapSpec::endo(&basis, -2, NovikovGrading::Trivial)
        .entry("[S2]", "[pt]", int(euler))
        .build()?;
    classical_circle_bundle(
        format!("classical-sphere-bundle(e={euler})"),
        basis,
        cap,
        2,
        Ring::Integers,
        None,
    )
}

/// Same bundle on the Morse complex of a non-perfect function on `S^2`: one
/// minimum `m`, a saddle `s`, two maxima with `∂M1 = s`, `∂M2 = -s`.
pub fn classical_sphere_bundle_morse(euler: i64) -> Result<GysinProblem, Error> {
    let basis = GradedBasis::new([("m", 0), ("s", 1), ("M1", 2), ("M2", 2)])?;
    let boundary = MapSpec::endo(&basis, -1, NovikovGrading::Trivial)
        .entry("M1", "s", int(1))
        .entry("M2", "s", int(-1))
        .build()?;
    let cap = MapSpec::endo(&basis, -2, NovikovGrading::Trivial)
        .entry("M1", "m", int(euler))
        .build()?;
    classical_circle_bundle(
        format!("classical-sphere-bundle-morse(e={euler})"),
        basis,
        cap,
        2,
        Ring::Integers,
        Some(boundary),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(x: i64) -> Scalar {
        int(x)
    }

    #[test]
    fn euler_characteristic_anchors() {
        assert_eq!(hypersurface_euler_characteristic(2, 2).unwrap(), Int::from(4));
        assert_eq!(primitive_middle_rank(2, 2).unwrap(), 1);
        assert_eq!(hypersurface_euler_characteristic(2, 3).unwrap(), Int::from(9));
        assert_eq!(primitive_middle_rank(2, 3).unwrap(), 6);
        assert_eq!(hypersurface_euler_characteristic(1, 3).unwrap(), Int::from(0));
        assert_eq!(primitive_middle_rank(1, 3).unwrap(), 2);
        // CP^n
        assert_eq!(hypersurface_euler_characteristic(5, 1).unwrap(), Int::from(6));
    }

    #[test]
    fn quadric_primitive_rank_matches_basis() {
        for n in 2..=8 {
            let b = primitive_middle_rank(n, 2).unwrap();
            assert_eq!(b, if n % 2 == 0 { 1 } else { 0 });
            assert_eq!(quadric_basis(n).unwrap().len() as u32, n + 1 + b as u32);
        }
    }

    #[test]
    fn cotangent_domain() {
        assert!(matches!(unit_cotangent_sphere(1), Err(Error::DomainError(_))));
    }

    #[test]
    fn s2_diagonal_slice() {
        let p = unit_cotangent_sphere(2).unwrap();
        p.validate().unwrap();
        for k in -3..=3 {
            let s = p.total_delta().degree_slice(2 * k);
            assert_eq!(s.to_rows(), vec![vec![q(2), q(-2)], vec![q(-2), q(2)]]);
        }
    }

    #[test]
    fn odd_quadric_middle_slice() {
        let p = unit_cotangent_sphere(4).unwrap();
        let s = p.total_delta().degree_slice(4);
        assert_eq!(s.to_rows(), vec![vec![q(-2)]]);
    }

    #[test]
    fn q2_delta_on_a() {
        let p = unit_cotangent_sphere(3).unwrap();
        let d = &p.delta;
        assert_eq!(d.coefficient("a", "[pt]"), q(-1));
        assert_eq!(d.coefficient("a", "[Q]"), q(-1));
        let t: Vec<_> = d
            .terms()
            .filter(|t| t.from.label == "a")
            .map(|t| (t.to.label.clone(), t.t_power))
            .collect();
        assert_eq!(t, [("[pt]".into(), 0), ("[Q]".into(), -1)]);
    }

    #[test]
    fn hypersurface_domains() {
        assert!(hypersurface_complement(3, 4, Ring::Integers).is_err());
        assert!(hypersurface_complement(4, 3, Ring::Integers).is_err());
        assert!(hypersurface_complement(1, 2, Ring::Integers).is_err());
        assert!(hypersurface_complement(2, 4, Ring::Rationals).is_err());
        assert!(hypersurface_complement(2, 0, Ring::Rationals).is_err());
        assert!(hypersurface_complement(0, 1, Ring::Integers).is_ok());
        assert!(hypersurface_complement(3, 2, Ring::Integers).is_ok());
    }

    #[test]
    fn top_degree_diagonal_n3() {
        let direct = top_degree_direct_delta(3).unwrap();
        assert_eq!(direct.coefficient("x_0", "x_0"), q(120));
        assert_eq!(direct.coefficient("x_0", "x_1"), q(-4));
        assert_eq!(direct.coefficient("y", "y"), q(-904));
        let p = hypersurface_complement(3, 4, Ring::Rationals).unwrap();
        p.validate().unwrap();
        assert_eq!(p.total_delta(), direct);
    }

    #[test]
    fn flag_matrices() {
        let p = flag_f3(Ring::Rationals).unwrap();
        let d = p.total_delta();
        let six: Vec<Vec<Scalar>> = [[-1, -1, 0], [0, -1, -1], [-1, 0, -1]]
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(d.degree_slice(6).to_rows(), six);
        let four: Vec<Vec<Scalar>> = [[-1, -2, -1], [-1, -1, -2], [-2, -1, -1]]
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(d.degree_slice(4).to_rows(), four);
        // δ(a) = -(2a² + b² + [F3]T^-1)
        assert_eq!(d.coefficient("a", "a2"), q(-2));
        assert_eq!(d.coefficient("a", "b2"), q(-1));
        assert_eq!(d.coefficient("a", "[F3]"), q(-1));
    }

    #[test]
    fn every_preset_validates() {
        let mut all = vec![flag_f3(Ring::Integers).unwrap()];
        for k in 2..=7 {
            all.push(unit_cotangent_sphere(k).unwrap());
        }
        for n in 0..=5 {
            for d in 1..=n + 1 {
                let ring = if d == 1 || (d == 2 && n >= 2) {
                    Ring::Integers
                } else {
                    Ring::Rationals
                };
                all.push(hypersurface_complement(n, d, ring).unwrap());
            }
        }
        all.push(classical_sphere_bundle(-3).unwrap());
        all.push(classical_sphere_bundle_morse(-3).unwrap());
        for p in &all {
            p.validate().unwrap_or_else(|e| panic!("{}: {e}", p.label));
        }
    }

    #[test]
    fn chain_violations_detected() {
        let basis = GradedBasis::new([("m", 0), ("s", 1), ("M", 2)]).unwrap();
        let bad_boundary = MapSpec::endo(&basis, -1, NovikovGrading::Trivial)
            .entry("M", "s", q(1))
            .entry("s", "m", q(1))
            .build()
            .unwrap();
        let cap = GradedMap::zero(basis.clone(), basis.clone(), -2, NovikovGrading::Trivial);
        let r = classical_circle_bundle("x", basis.clone(), cap, 2, Ring::Integers, Some(bad_boundary));
        assert!(matches!(r, Err(Error::NotAChainComplex { .. })));

        let basis = GradedBasis::new([("m", 0), ("s", 1), ("t", 2), ("M", 3)]).unwrap();
        let boundary = MapSpec::endo(&basis, -1, NovikovGrading::Trivial)
            .entry("M", "t", q(1))
            .build()
            .unwrap();
        let cap = MapSpec::endo(&basis, -2, NovikovGrading::Trivial)
            .entry("t", "m", q(1))
            .build()
            .unwrap();
        let r = classical_circle_bundle("x", basis, cap, 2, Ring::Integers, Some(boundary));
        assert!(matches!(r, Err(Error::NotAChainMap { .. })));
    }
}
