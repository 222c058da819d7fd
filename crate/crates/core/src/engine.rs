//! Rabinowitz Floer homology from the Gysin long exact sequence.
//!
//! With `n̄ = dim Σ / 2` the sequence
//! `H_{*+2} --δ--> H_* --> SH_{*-n̄+1} --> H_{*+1} --δ--> H_{*-1}`
//! gives `SH_j = coker(δ: H_{j+n̄+1} -> H_{j+n̄-1}) ⊕ ker(δ: H_{j+n̄} -> H_{j+n̄-2})`.
//! The short exact sequence `0 -> coker -> SH_j -> ker -> 0` splits because a
//! kernel of a map between free modules is free.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graded::{degree_component_basis, GradedMap, NovikovGrading};
use crate::linalg::{
    cokernel_description, cokernel_description_rational, is_invertible_rational, is_unimodular, rational_rank,
    smith_normal_form, AbelianGroup, Int, IntMatrix, Matrix, RatMatrix, Ring,
};
use crate::presets::{hypersurface_complement, primitive_middle_rank, GysinProblem};

/// How the extension problem of the long exact sequence is resolved.
pub const EXTENSION_RESOLUTION: &str =
    "SH_j = coker ⊕ ker: the sequence 0 -> coker -> SH_j -> ker -> 0 splits since kernels of integer matrices are free";

/// Inclusive range of degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub min: i64,
    pub max: i64,
}

impl Window {
    pub fn new(min: i64, max: i64) -> Result<Self, Error> {
        if min > max {
            return Err(Error::DomainError(format!("empty window {min}..{max}")));
        }
        Ok(Window { min, max })
    }

    pub fn len(&self) -> i64 {
        self.max - self.min + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, j: i64) -> bool {
        (self.min..=self.max).contains(&j)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.min..=self.max
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        Window {
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }
}

/// `[-n̄ - deg T, n̄ + deg T]` for periodic problems; for trivial gradings the
/// degrees where the generators can contribute at all.
pub fn default_window(problem: &GysinProblem) -> Window {
    let n_bar = problem.n_bar();
    match problem.grading {
        NovikovGrading::Periodic(d) => Window {
            min: -n_bar - d.get(),
            max: n_bar + d.get(),
        },
        NovikovGrading::Trivial => match problem.basis.degree_range() {
            Some((lo, hi)) => Window {
                min: lo - n_bar - 1,
                max: hi - n_bar + 1,
            },
            None => Window {
                min: -n_bar,
                max: n_bar,
            },
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Kernel/cokernel extraction from the long exact sequence.
    LongExactSequence,
    /// Homology of the mapping cone of δ on a chain-level complex.
    MappingCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfhResult {
    pub label: String,
    pub ring: Ring,
    pub mode: Mode,
    pub window: Window,
    pub groups: BTreeMap<i64, AbelianGroup>,
    /// `deg T` for periodic problems.
    pub period: Option<i64>,
}

impl RfhResult {
    pub fn group(&self, j: i64) -> Option<&AbelianGroup> {
        self.groups.get(&j)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(AbelianGroup::is_trivial)
    }

    /// `groups(j) == groups(j + period)` for all pairs inside the window.
    pub fn is_periodic(&self) -> bool {
        let Some(p) = self.period else {
            return true;
        };
        self.groups
            .iter()
            .all(|(j, g)| self.groups.get(&(j + p)).is_none_or(|h| h == g))
    }

    /// Groups with degrees moved by `offset`, e.g. `n̄` to read off `H_*(Y)`
    /// in classical mode.
    pub fn reindexed(&self, offset: i64) -> BTreeMap<i64, AbelianGroup> {
        self.groups.iter().map(|(j, g)| (j + offset, g.clone())).collect()
    }

    /// Same degrees, groups tensored with Q.
    pub fn rationalized(&self) -> RfhResult {
        RfhResult {
            groups: self.groups.iter().map(|(j, g)| (*j, g.rationalized())).collect(),
            ring: Ring::Rationals,
            ..self.clone()
        }
    }
}

/// Cokernel and kernel rank of one degree slice.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SliceData {
    cokernel: AbelianGroup,
    kernel_rank: usize,
    rank: usize,
    rows: usize,
    cols: usize,
    invertible: bool,
}

fn analyse(ring: Ring, m: &RatMatrix) -> Result<SliceData, Error> {
    let (rows, cols) = (m.rows(), m.cols());
    match ring {
        Ring::Integers => {
            let mi = m
                .to_integer()
                .ok_or_else(|| Error::WrongRing("non-integral slice over Z".into()))?;
            let snf = smith_normal_form(&mi, false);
            let cokernel = AbelianGroup {
                free_rank: rows - snf.rank,
                torsion: snf
                    .invariant_factors()
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect(),
            };
            let invertible = rows == cols && snf.rank == rows && snf.invariant_factors().iter().all(One::is_one);
            Ok(SliceData {
                cokernel,
                kernel_rank: cols - snf.rank,
                rank: snf.rank,
                rows,
                cols,
                invertible,
            })
        }
        Ring::Rationals => {
            let rank = rational_rank(m);
            Ok(SliceData {
                cokernel: AbelianGroup::free(rows - rank),
                kernel_rank: cols - rank,
                rank,
                rows,
                cols,
                invertible: rows == cols && rank == rows,
            })
        }
    }
}

/// Slices of one map, memoised by degree (modulo the period).
struct SliceCache<'a> {
    ring: Ring,
    map: &'a GradedMap,
    period: Option<i64>,
    memo: BTreeMap<i64, SliceData>,
}

impl<'a> SliceCache<'a> {
    fn new(ring: Ring, map: &'a GradedMap) -> Self {
        SliceCache {
            ring,
            map,
            period: map.grading().period(),
            memo: BTreeMap::new(),
        }
    }

    fn get(&mut self, d: i64) -> Result<&SliceData, Error> {
        let key = self.period.map_or(d, |p| d.rem_euclid(p));
        if !self.memo.contains_key(&key) {
            let data = analyse(self.ring, &self.map.degree_slice(key))?;
            self.memo.insert(key, data);
        }
        Ok(&self.memo[&key])
    }
}

/// `SH_j` for every `j` in the window, from the long exact sequence.
pub fn rabinowitz_homology(problem: &GysinProblem, window: Window) -> Result<RfhResult, Error> {
    problem.validate()?;
    if problem.has_nonzero_boundary() {
        return Err(Error::InvalidProblem(
            "the problem carries a nonzero boundary; use the mapping cone".into(),
        ));
    }
    let delta = problem.total_delta();
    let mut slices = SliceCache::new(problem.ring, &delta);
    let n_bar = problem.n_bar();
    let mut groups = BTreeMap::new();
    for j in window.degrees() {
        let coker = slices.get(j + n_bar + 1)?.cokernel.clone();
        let ker = slices.get(j + n_bar)?.kernel_rank;
        groups.insert(j, coker.direct_sum(&AbelianGroup::free(ker)));
    }
    Ok(RfhResult {
        label: problem.label.clone(),
        ring: problem.ring,
        mode: Mode::LongExactSequence,
        window,
        groups,
        period: problem.grading.period(),
    })
}

/// Homology of the cone `C_k = M_{k-1} ⊕ M_k` with `D(x, y) = (-∂x + δy, ∂y)`;
/// `SH_j = H_{j+n̄}(C)`. A missing boundary is treated as zero.
pub fn mapping_cone_homology(problem: &GysinProblem, window: Window) -> Result<RfhResult, Error> {
    problem.validate()?;
    let delta = problem.total_delta();
    let boundary = problem
        .boundary
        .clone()
        .unwrap_or_else(|| GradedMap::zero(problem.basis.clone(), problem.basis.clone(), -1, problem.grading));
    let period = problem.grading.period();
    let key = |k: i64| period.map_or(k, |p| k.rem_euclid(p));
    let ring = problem.ring;
    // rank and (over Z) invariant factors of D_k
    let mut memo: BTreeMap<i64, (usize, Vec<Int>)> = BTreeMap::new();
    let mut differential = |k: i64| -> Result<(usize, Vec<Int>), Error> {
        let k = key(k);
        if let Some(x) = memo.get(&k) {
            return Ok(x.clone());
        }
        let d = cone_differential(&delta, &boundary, k);
        let out = match ring {
            Ring::Integers => {
                let di = d
                    .to_integer()
                    .ok_or_else(|| Error::WrongRing("non-integral cone differential over Z".into()))?;
                let snf = smith_normal_form(&di, false);
                (
                    snf.rank,
                    snf.invariant_factors()
                        .iter()
                        .filter(|x| !x.is_one())
                        .cloned()
                        .collect(),
                )
            }
            Ring::Rationals => (rational_rank(&d), Vec::new()),
        };
        memo.insert(k, out.clone());
        Ok(out)
    };
    let dim = |k: i64| degree_component_basis(&problem.basis, problem.grading, k).len();
    let n_bar = problem.n_bar();
    let mut groups = BTreeMap::new();
    for j in window.degrees() {
        let k = j + n_bar;
        let chains = dim(k - 1) + dim(k);
        let (rank_out, _) = differential(k)?;
        let (rank_in, torsion) = differential(k + 1)?;
        let free_rank = chains
            .checked_sub(rank_out + rank_in)
            .ok_or_else(|| Error::Internal(format!("negative Betti number in cone degree {k}")))?;
        groups.insert(j, AbelianGroup { free_rank, torsion });
    }
    Ok(RfhResult {
        label: problem.label.clone(),
        ring,
        mode: Mode::MappingCone,
        window,
        groups,
        period,
    })
}

/// `D_k : M_{k-1} ⊕ M_k -> M_{k-2} ⊕ M_{k-1}`.
fn cone_differential(delta: &GradedMap, boundary: &GradedMap, k: i64) -> RatMatrix {
    let d_prev = boundary.degree_slice(k - 1).map(|x| -x.clone());
    let delta_k = delta.degree_slice(k);
    let d_k = boundary.degree_slice(k);
    let (m2, m1, m0) = (delta_k.rows(), d_k.rows(), d_k.cols());
    let zero = Matrix::zeros(m1, m1);
    Matrix::from_blocks(&[m2, m1], &[m1, m0], &[&[&d_prev, &delta_k], &[&zero, &d_k]])
}

/// Slice degrees covering every distinct δ slice once.
fn period_slice_degrees(problem: &GysinProblem) -> Vec<i64> {
    match (problem.grading, problem.basis.degree_range()) {
        (NovikovGrading::Periodic(d), _) => (0..d.get()).collect(),
        (NovikovGrading::Trivial, Some((lo, hi))) => (lo..=hi + 2).collect(),
        (NovikovGrading::Trivial, None) => Vec::new(),
    }
}

/// SH degrees covering one period (or every possibly nonzero degree).
pub fn period_window(problem: &GysinProblem) -> Window {
    let n_bar = problem.n_bar();
    match (problem.grading, problem.basis.degree_range()) {
        (NovikovGrading::Periodic(d), _) => Window {
            min: 0,
            max: d.get() - 1,
        },
        (NovikovGrading::Trivial, Some((lo, hi))) => Window {
            min: lo - n_bar - 2,
            max: hi - n_bar + 2,
        },
        (NovikovGrading::Trivial, None) => Window { min: 0, max: 0 },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    /// δ is invertible in every degree.
    pub delta_iso: bool,
    /// Every SH group over one period is zero.
    pub sh_vanishes: bool,
    /// First slice degree where δ fails to be invertible.
    pub slice_witness: Option<i64>,
    /// First SH degree with a nonzero group.
    pub group_witness: Option<(i64, AbelianGroup)>,
}

/// δ is an isomorphism exactly when SH vanishes; both sides are computed
/// separately and compared.
pub fn vanishing_report(problem: &GysinProblem) -> Result<VanishingReport, Error> {
    problem.validate()?;
    if problem.has_nonzero_boundary() {
        return Err(Error::InvalidProblem(
            "vanishing report needs homology-level data".into(),
        ));
    }
    let delta = problem.total_delta();
    let mut slice_witness = None;
    for d in period_slice_degrees(problem) {
        let m = delta.degree_slice(d);
        let invertible = match problem.ring {
            Ring::Integers => m.to_integer().is_some_and(|mi| is_unimodular(&mi)),
            Ring::Rationals => is_invertible_rational(&m),
        };
        if !invertible {
            slice_witness = Some(d);
            break;
        }
    }
    let sh = rabinowitz_homology(problem, period_window(problem))?;
    let group_witness = sh
        .groups
        .iter()
        .find(|(_, g)| !g.is_trivial())
        .map(|(j, g)| (*j, g.clone()));
    let report = VanishingReport {
        delta_iso: slice_witness.is_none(),
        sh_vanishes: group_witness.is_none(),
        slice_witness,
        group_witness,
    };
    if report.delta_iso != report.sh_vanishes {
        return Err(Error::Internal(format!(
            "{}: δ invertible = {} but SH vanishes = {}",
            problem.label, report.delta_iso, report.sh_vanishes
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    /// gcd of every coefficient of δ including the sphere count; 0 for δ = 0.
    pub divisor: Int,
    pub delta_iso: bool,
    /// δ invertible although every coefficient is divisible by `divisor >= 2`.
    pub primitivity_contradiction: bool,
}

pub fn divisibility_report(problem: &GysinProblem) -> Result<DivisibilityReport, Error> {
    if problem.ring != Ring::Integers {
        return Err(Error::WrongRing("divisibility is only meaningful over Z".into()));
    }
    problem.validate()?;
    let divisor = problem
        .total_delta()
        .coefficients()
        .fold(Int::zero(), |g, c| g.gcd(&c.to_integer()))
        .abs();
    let delta_iso = vanishing_report(problem)?.delta_iso;
    Ok(DivisibilityReport {
        primitivity_contradiction: delta_iso && divisor >= Int::from(2),
        divisor,
        delta_iso,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvertibilityConclusion {
    /// The Euler class is invertible in quantum cohomology.
    QuantumInvertible,
    NoConclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityReport {
    pub delta_c_zero: bool,
    pub delta_iso: bool,
    pub conclusion: InvertibilityConclusion,
}

/// With no sphere-count term, δ is the quantum product with the Euler
/// class, so δ invertible means the class is a unit.
pub fn invertibility_report(problem: &GysinProblem) -> Result<InvertibilityReport, Error> {
    let delta_iso = vanishing_report(problem)?.delta_iso;
    let delta_c_zero = !problem.has_delta_c();
    Ok(InvertibilityReport {
        delta_c_zero,
        delta_iso,
        conclusion: if delta_c_zero && delta_iso {
            InvertibilityConclusion::QuantumInvertible
        } else {
            InvertibilityConclusion::NoConclusion
        },
    })
}

/// `Σ_{j=j0}^{j0+deg T-1} (-1)^j dim_Q SH_j`, starting at the window minimum.
pub fn euler_characteristic(result: &RfhResult) -> Result<i64, Error> {
    let period = result.period.ok_or(Error::NotPeriodic)?;
    if result.window.len() < period {
        return Err(Error::WindowTooSmall {
            len: result.window.len(),
            period,
        });
    }
    let j0 = result.window.min;
    Ok((j0..j0 + period)
        .map(|j| {
            let r = result.groups.get(&j).map_or(0, |g| g.free_rank as i64);
            if j.rem_euclid(2) == 0 {
                r
            } else {
                -r
            }
        })
        .sum())
}

/// The alternating sum of ranks over one period vanishes.
pub fn euler_characteristic_check(result: &RfhResult) -> Result<bool, Error> {
    euler_characteristic(result).map(|s| s == 0)
}

// ---------------------------------------------------------------------------
// Hypersurfaces of degree 3 <= d <= n

/// One slice of δ in the discrepancy report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRow {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel: usize,
    /// Kernel coming from primitive classes, which δ kills.
    pub primitive_kernel: usize,
    /// `kernel - primitive_kernel`.
    pub excess_kernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub degree: i64,
    pub engine_rank: usize,
    pub closed_form_rank: i64,
    pub matches: bool,
}

/// Engine ranks of `SH_j(∂(CP^{n+1} \ Σ^n_d); Q)` next to the closed-form
/// expressions that assume δ injective away from the middle degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub n: u32,
    pub d: u32,
    pub deg_t: i64,
    pub primitive_rank: usize,
    /// `b_i = rank H_i(Σ; Λ)` for `i = 0 .. deg T - 1`.
    pub betti: Vec<usize>,
    pub slices: Vec<SliceRow>,
    pub rows: Vec<DiscrepancyRow>,
    /// Slice degrees (mod deg T) with excess kernel.
    pub excess_kernel_degrees: Vec<i64>,
    /// Excess kernel is exactly one-dimensional at degrees ≡ 0 mod deg T and
    /// zero elsewhere, slice ranks add up, SH ranks follow from the slices,
    /// and the alternating sum vanishes.
    pub consistent: bool,
    pub all_match: bool,
}

pub fn hypersurface_discrepancy_report(n: u32, d: u32) -> Result<DiscrepancyReport, Error> {
    if !(3..=n).contains(&d) {
        return Err(Error::DomainError(format!(
            "discrepancy report covers 3 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    let problem = hypersurface_complement(n, d, Ring::Rationals)?;
    let deg_t = problem.grading.period().ok_or(Error::NotPeriodic)?;
    let n_bar = i64::from(n);
    let b2 = primitive_middle_rank(n, d)?;

    // Betti numbers of Σ folded mod deg T: one class in each even degree
    // 0..2n, plus the primitive classes in degree n.
    let mut betti = alloc::vec![0usize; deg_t as usize];
    for c in (0..=2 * n_bar).step_by(2) {
        betti[c.rem_euclid(deg_t) as usize] += 1;
    }
    betti[n_bar.rem_euclid(deg_t) as usize] += b2;
    let b = |i: i64| betti[i.rem_euclid(deg_t) as usize] as i64;

    let delta = problem.total_delta();
    let prim_count = |deg: i64| {
        degree_component_basis(&problem.basis, problem.grading, deg)
            .iter()
            .filter(|e| problem.basis.get(e.generator).label.starts_with("prim_"))
            .count()
    };
    let mut slices = Vec::new();
    for deg in 0..deg_t {
        let m = delta.degree_slice(deg);
        let data = analyse(Ring::Rationals, &m)?;
        let primitive_kernel = prim_count(deg);
        slices.push(SliceRow {
            degree: deg,
            source_dim: data.cols,
            target_dim: data.rows,
            rank: data.rank,
            kernel: data.kernel_rank,
            primitive_kernel,
            excess_kernel: data.kernel_rank.saturating_sub(primitive_kernel),
        });
    }
    let slice = |deg: i64| &slices[deg.rem_euclid(deg_t) as usize];

    let window = Window::new(0, deg_t - 1)?;
    let sh = rabinowitz_homology(&problem, window)?;
    let n_even = n.is_multiple_of(2);
    let middle = |two_i: i64| {
        let base = if n_even { n_bar } else { n_bar + 1 };
        (two_i - base).rem_euclid(deg_t) == 0
    };
    let closed_form = |j: i64| -> i64 {
        if (j + n_bar).rem_euclid(2) == 0 {
            let two_i = j + n_bar;
            match (middle(two_i), n_even) {
                (false, _) => 0,
                (true, true) => b2 as i64,
                (true, false) => b(two_i - 1),
            }
        } else {
            let two_i = j + n_bar + 1;
            match (middle(two_i), n_even) {
                (false, _) => b(two_i - 2) - b(two_i),
                (true, true) => b(two_i - 2) - (b(two_i) - b2 as i64),
                (true, false) => b(two_i - 1) + b(two_i - 2) - b(two_i),
            }
        }
    };
    let rows: Vec<DiscrepancyRow> = window
        .degrees()
        .map(|j| {
            let engine_rank = sh.groups[&j].free_rank;
            let closed_form_rank = closed_form(j);
            DiscrepancyRow {
                degree: j,
                engine_rank,
                closed_form_rank,
                matches: closed_form_rank == engine_rank as i64,
            }
        })
        .collect();

    let excess_kernel_degrees: Vec<i64> = slices
        .iter()
        .filter(|s| s.excess_kernel > 0)
        .map(|s| s.degree)
        .collect();
    let excess_located = slices
        .iter()
        .all(|s| s.excess_kernel == usize::from(s.degree.rem_euclid(deg_t) == 0));
    let ranks_add_up = slices
        .iter()
        .all(|s| s.rank + s.kernel == s.source_dim && s.rank <= s.target_dim && s.primitive_kernel <= s.kernel);
    let sh_from_slices = rows.iter().all(|r| {
        let coker = slice(r.degree + n_bar + 1);
        let ker = slice(r.degree + n_bar);
        r.engine_rank == coker.target_dim - coker.rank + ker.kernel
    });
    let alternating_zero = euler_characteristic_check(&sh)?;
    Ok(DiscrepancyReport {
        n,
        d,
        deg_t,
        primitive_rank: b2,
        betti,
        all_match: rows.iter().all(|r| r.matches),
        consistent: excess_located && ranks_add_up && sh_from_slices && alternating_zero,
        slices,
        rows,
        excess_kernel_degrees,
    })
}

/// Integer matrix of the slice, for callers that want to inspect it.
pub fn integer_slice(problem: &GysinProblem, d: i64) -> Result<IntMatrix, Error> {
    problem.total_delta().degree_slice_integer(d)
}

/// `coker ⊕ ker` of a single slice, in the problem's ring.
pub fn slice_groups(problem: &GysinProblem, d: i64) -> Result<(AbelianGroup, usize), Error> {
    let m = problem.total_delta().degree_slice(d);
    Ok(match problem.ring {
        Ring::Integers => {
            let mi = m
                .to_integer()
                .ok_or_else(|| Error::WrongRing("non-integral slice".into()))?;
            let coker = cokernel_description(&mi);
            let rank = mi.rows() - coker.free_rank;
            (coker, mi.cols() - rank)
        }
        Ring::Rationals => {
            let coker = cokernel_description_rational(&m);
            let rank = m.rows() - coker.free_rank;
            (coker, m.cols() - rank)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{GradedBasis, MapSpec};
    use crate::presets::{classical_sphere_bundle, classical_sphere_bundle_morse, flag_f3, unit_cotangent_sphere};
    use alloc::vec;

    fn q(x: i64) -> crate::graded::Scalar {
        crate::graded::Scalar::from_integer(x.into())
    }

    fn z() -> AbelianGroup {
        AbelianGroup::free(1)
    }

    fn zt(free: usize, t: &[i64]) -> AbelianGroup {
        AbelianGroup {
            free_rank: free,
            torsion: t.iter().map(|&x| Int::from(x)).collect(),
        }
    }

    fn check_rule(result: &RfhResult, rule: impl Fn(i64) -> AbelianGroup) {
        for (j, g) in &result.groups {
            assert_eq!(*g, rule(*j), "{} degree {j}", result.label);
        }
    }

    #[test]
    fn s2_cotangent_table() {
        let p = unit_cotangent_sphere(2).unwrap();
        let r = rabinowitz_homology(&p, Window::new(-6, 6).unwrap()).unwrap();
        check_rule(&r, |j| if j % 2 == 0 { zt(1, &[2]) } else { z() });
        assert!(r.is_periodic());
    }

    #[test]
    fn odd_quadric_tables() {
        for n in [3i64, 5] {
            let p = unit_cotangent_sphere(n as u32 + 1).unwrap();
            let r = rabinowitz_homology(&p, Window::new(-2 * n, 2 * n - 1).unwrap()).unwrap();
            check_rule(&r, |j| match j.rem_euclid(2 * n) {
                0 => zt(0, &[2]),
                x if x == n || x == n + 1 => z(),
                _ => AbelianGroup::trivial(),
            });
            let c = hypersurface_complement(n as u32, 2, Ring::Integers).unwrap();
            let r = rabinowitz_homology(&c, Window::new(-2 * n, 2 * n - 1).unwrap()).unwrap();
            check_rule(&r, |j| match j.rem_euclid(2 * n) {
                0 => zt(0, &[4]),
                x if x == n + 1 => zt(1, &[2]),
                x if x == n => z(),
                x if x % 2 == 0 => zt(0, &[2]),
                _ => AbelianGroup::trivial(),
            });
        }
    }

    #[test]
    fn even_quadric_tables() {
        for n in [2i64, 4] {
            let p = unit_cotangent_sphere(n as u32 + 1).unwrap();
            let r = rabinowitz_homology(&p, Window::new(-2 * n, 2 * n - 1).unwrap()).unwrap();
            check_rule(&r, |j| match j.rem_euclid(n) {
                0 | 1 => z(),
                _ => AbelianGroup::trivial(),
            });
            let c = hypersurface_complement(n as u32, 2, Ring::Integers).unwrap();
            let r = rabinowitz_homology(&c, Window::new(-2 * n, 2 * n - 1).unwrap()).unwrap();
            check_rule(&r, |j| match j.rem_euclid(n) {
                1 => zt(1, &[2]),
                0 => z(),
                _ if j.rem_euclid(2) == 1 => zt(0, &[2]),
                _ => AbelianGroup::trivial(),
            });
        }
    }

    #[test]
    fn vanishing_presets() {
        for n in 0..=3 {
            let p = hypersurface_complement(n, 1, Ring::Integers).unwrap();
            assert!(rabinowitz_homology(&p, default_window(&p)).unwrap().is_zero());
            assert!(vanishing_report(&p).unwrap().sh_vanishes);
        }
        for n in 1..=4 {
            let p = hypersurface_complement(n, n + 1, Ring::Rationals).unwrap();
            let v = vanishing_report(&p).unwrap();
            assert!(v.delta_iso && v.sh_vanishes, "n = {n}");
        }
        let f = flag_f3(Ring::Rationals).unwrap();
        assert!(vanishing_report(&f).unwrap().sh_vanishes);
        let s = unit_cotangent_sphere(3).unwrap();
        let v = vanishing_report(&s).unwrap();
        assert!(!v.delta_iso && v.slice_witness.is_some() && v.group_witness.is_some());
    }

    #[test]
    fn flag_over_integers_has_torsion() {
        let f = flag_f3(Ring::Integers).unwrap();
        let r = rabinowitz_homology(&f, Window::new(0, 3).unwrap()).unwrap();
        assert!(!r.is_zero());
        assert!(r.groups.values().all(|g| g.free_rank == 0));
        assert!(r.rationalized().is_zero());
    }

    #[test]
    fn lens_spaces() {
        for k in [1i64, 2, 3, 5] {
            for p in [
                classical_sphere_bundle(-k).unwrap(),
                classical_sphere_bundle_morse(-k).unwrap(),
            ] {
                let r = mapping_cone_homology(&p, Window::new(-1, 2).unwrap()).unwrap();
                let h = r.reindexed(p.n_bar());
                let torsion = if k == 1 { AbelianGroup::trivial() } else { zt(0, &[k]) };
                assert_eq!(h[&0], z());
                assert_eq!(h[&1], torsion);
                assert_eq!(h[&2], AbelianGroup::trivial());
                assert_eq!(h[&3], z());
            }
        }
        let trivial = classical_sphere_bundle(0).unwrap();
        let h = rabinowitz_homology(&trivial, Window::new(-1, 2).unwrap())
            .unwrap()
            .reindexed(1);
        assert!(h.values().all(|g| *g == z()));
    }

    #[test]
    fn cone_agrees_with_les() {
        let presets = [
            unit_cotangent_sphere(2).unwrap(),
            unit_cotangent_sphere(4).unwrap(),
            hypersurface_complement(2, 2, Ring::Integers).unwrap(),
            flag_f3(Ring::Integers).unwrap(),
            hypersurface_complement(0, 1, Ring::Integers).unwrap(),
        ];
        for p in &presets {
            let w = default_window(p);
            assert_eq!(
                rabinowitz_homology(p, w).unwrap().groups,
                mapping_cone_homology(p, w).unwrap().groups,
                "{}",
                p.label
            );
        }
    }

    #[test]
    fn les_rejects_boundary() {
        let p = classical_sphere_bundle_morse(-2).unwrap();
        assert!(matches!(
            rabinowitz_homology(&p, Window::new(0, 1).unwrap()),
            Err(Error::InvalidProblem(_))
        ));
    }

    #[test]
    fn empty_basis_is_trivial() {
        let p = GysinProblem {
            label: "empty".into(),
            ring: Ring::Integers,
            grading: NovikovGrading::periodic(2).unwrap(),
            dim_sigma: 2,
            basis: GradedBasis::empty(),
            delta: GradedMap::zero(
                GradedBasis::empty(),
                GradedBasis::empty(),
                -2,
                NovikovGrading::periodic(2).unwrap(),
            ),
            boundary: None,
            delta_c_coeff: None,
            metadata: None,
        };
        let r = rabinowitz_homology(&p, Window::new(-3, 3).unwrap()).unwrap();
        assert!(r.is_zero());
        assert_eq!(euler_characteristic(&r).unwrap(), 0);
    }

    #[test]
    fn divisibility() {
        let q = hypersurface_complement(3, 2, Ring::Integers).unwrap();
        let r = divisibility_report(&q).unwrap();
        assert_eq!(r.divisor, Int::from(2));
        assert!(!r.primitivity_contradiction);
        let l = hypersurface_complement(2, 1, Ring::Integers).unwrap();
        assert_eq!(divisibility_report(&l).unwrap().divisor, Int::from(1));
        let zero = classical_sphere_bundle(0).unwrap();
        assert_eq!(divisibility_report(&zero).unwrap().divisor, Int::from(0));
        let f = flag_f3(Ring::Rationals).unwrap();
        assert!(matches!(divisibility_report(&f), Err(Error::WrongRing(_))));
    }

    #[test]
    fn invertibility() {
        let l = hypersurface_complement(2, 1, Ring::Integers).unwrap();
        assert_eq!(
            invertibility_report(&l).unwrap().conclusion,
            InvertibilityConclusion::QuantumInvertible
        );
        let s = unit_cotangent_sphere(2).unwrap();
        let r = invertibility_report(&s).unwrap();
        assert!(!r.delta_c_zero);
        assert_eq!(r.conclusion, InvertibilityConclusion::NoConclusion);
        let q = hypersurface_complement(2, 2, Ring::Integers).unwrap();
        assert_eq!(
            invertibility_report(&q).unwrap().conclusion,
            InvertibilityConclusion::NoConclusion
        );
    }

    #[test]
    fn euler_sums() {
        let s = unit_cotangent_sphere(2).unwrap();
        let r = rabinowitz_homology(&s, Window::new(-2, 2).unwrap())
            .unwrap()
            .rationalized();
        assert!(euler_characteristic_check(&r).unwrap());
        let q = hypersurface_complement(3, 2, Ring::Rationals).unwrap();
        let r = rabinowitz_homology(&q, Window::new(0, 5).unwrap()).unwrap();
        assert!(euler_characteristic_check(&r).unwrap());
        let short = rabinowitz_homology(&q, Window::new(0, 2).unwrap()).unwrap();
        assert!(matches!(
            euler_characteristic_check(&short),
            Err(Error::WindowTooSmall { .. })
        ));
        let c = classical_sphere_bundle(-1).unwrap();
        let r = rabinowitz_homology(&c, Window::new(0, 1).unwrap()).unwrap();
        assert_eq!(euler_characteristic_check(&r), Err(Error::NotPeriodic));
    }

    #[test]
    fn discrepancy_reports() {
        for (n, d) in [(3, 3), (4, 3), (4, 4), (5, 3)] {
            let r = hypersurface_discrepancy_report(n, d).unwrap();
            assert!(r.consistent, "({n},{d}) {r:?}");
            assert_eq!(r.excess_kernel_degrees, vec![0]);
            assert_eq!(r.rows.len() as i64, r.deg_t);
        }
        assert!(hypersurface_discrepancy_report(3, 2).is_err());
    }

    #[test]
    fn basis_change_invariance() {
        // swap-and-add automorphism on the even quadric middle degree
        let p = hypersurface_complement(2, 2, Ring::Integers).unwrap();
        let g = p.grading;
        let auto = MapSpec::endo(&p.basis, 0, g)
            .entry("a", "a", q(1))
            .entry("a", "b", q(1))
            .entry("b", "a", q(1))
            .entry("b", "b", q(2))
            .entry("[Q]", "[Q]", q(1))
            .entry("[pt]", "[pt]", q(1))
            .build()
            .unwrap();
        let inv = MapSpec::endo(&p.basis, 0, g)
            .entry("a", "a", q(2))
            .entry("a", "b", q(-1))
            .entry("b", "a", q(-1))
            .entry("b", "b", q(1))
            .entry("[Q]", "[Q]", q(1))
            .entry("[pt]", "[pt]", q(1))
            .build()
            .unwrap();
        assert_eq!(auto.compose(&inv).unwrap(), GradedMap::identity(&p.basis, g));
        let conj = auto.compose(&p.delta.compose(&inv).unwrap()).unwrap();
        let q = GysinProblem {
            delta: conj,
            ..p.clone()
        };
        let w = default_window(&p);
        assert_eq!(
            rabinowitz_homology(&p, w).unwrap().groups,
            rabinowitz_homology(&q, w).unwrap().groups
        );
    }
}
