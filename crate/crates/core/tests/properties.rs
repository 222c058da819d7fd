use gysin_core::engine::{default_window, mapping_cone_homology, rabinowitz_homology, vanishing_report};
use gysin_core::graded::{GradedBasis, GradedMap, MapSpec, NovikovGrading, Scalar};
use gysin_core::linalg::{
    cokernel_description, kernel_basis, kernel_rank, rational_rank, smith_normal_form, Int, IntMatrix,
};
use gysin_core::presets::GysinProblem;
use gysin_core::Ring;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| Int::from(v[i * c + j])))
    })
}

fn square_matrix(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, n * n)
        .prop_map(move |v| IntMatrix::from_fn(n, n, |i, j| Int::from(v[i * n + j])))
}

fn cofactor_det(m: &IntMatrix) -> Int {
    let n = m.rows();
    if n == 0 {
        return Int::from(1);
    }
    let mut total = Int::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let term = m.get(0, j) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Product of elementary row operations: always unimodular.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n.max(1), 0..n.max(1), -3i64..=3), 0..12).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (a, b, k) in ops {
            if a == b || n == 0 {
                continue;
            }
            for col in 0..n {
                let v = u.get(a, col) + u.get(b, col) * Int::from(k);
                u.set(a, col, v);
            }
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_divisibility_and_reconstruction(m in int_matrix(6, 9)) {
        let snf = smith_normal_form(&m, true);
        let diag = &snf.diagonal;
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        prop_assert_eq!(snf.rank, diag.iter().filter(|d| !d.is_zero()).count());
        let left = snf.left_transform.as_ref().unwrap();
        let right = snf.right_transform.as_ref().unwrap();
        prop_assert_eq!(cofactor_det(left).abs(), Int::from(1));
        prop_assert_eq!(cofactor_det(right).abs(), Int::from(1));
        let lmr = left.mul(&m).unwrap().mul(right).unwrap();
        prop_assert_eq!(lmr, snf.diagonal_matrix(m.rows(), m.cols()));
        prop_assert_eq!(snf.rank, rational_rank(&m.to_rational()));
    }

    #[test]
    fn snf_determinant(m in (1usize..=6).prop_flat_map(|n| square_matrix(n, 9))) {
        let det = cofactor_det(&m);
        let snf = smith_normal_form(&m, false);
        if det.is_zero() {
            prop_assert!(snf.rank < m.rows());
        } else {
            let product: Int = snf.diagonal.iter().product();
            prop_assert_eq!(product, det.abs());
        }
    }

    #[test]
    fn kernel_basis_is_annihilated(m in int_matrix(5, 5)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols(), kernel_rank(&m));
        prop_assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn cokernel_is_basis_invariant(
        (m, u, v) in (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
            (
                prop::collection::vec(-7i64..=7, r * c)
                    .prop_map(move |e| IntMatrix::from_fn(r, c, |i, j| Int::from(e[i * c + j]))),
                unimodular(r),
                unimodular(c),
            )
        })
    ) {
        let moved = u.mul(&m).unwrap().mul(&v).unwrap();
        prop_assert_eq!(cokernel_description(&moved), cokernel_description(&m));
        prop_assert_eq!(kernel_rank(&moved), kernel_rank(&m));
    }

    #[test]
    fn rational_rank_identities(m in int_matrix(6, 4)) {
        let q = m.to_rational();
        let r = rational_rank(&q);
        let coker = gysin_core::linalg::cokernel_description_rational(&q);
        prop_assert!(coker.torsion.is_empty());
        prop_assert_eq!(coker.free_rank + r, m.rows());
        prop_assert_eq!(gysin_core::linalg::kernel_rank_rational(&q) + r, m.cols());
    }
}

// ---------------------------------------------------------------------------
// graded maps

#[derive(Clone, Debug)]
struct RandomMaps {
    basis: GradedBasis,
    grading: NovikovGrading,
    f: GradedMap,
    g: GradedMap,
    h: GradedMap,
}

/// Random endomorphism of shift `shift`: each admissible pair gets a
/// coefficient in `[-5, 5]`.
fn random_map(basis: &GradedBasis, grading: NovikovGrading, shift: i64, coeffs: &[i64]) -> GradedMap {
    let mut spec = MapSpec::endo(basis, shift, grading);
    let mut next = coeffs.iter().cycle();
    for s in basis.generators() {
        for t in basis.generators() {
            let c = *next.next().unwrap();
            if c != 0 && grading.forced_exponent(s.degree, shift, t.degree).is_some() {
                spec = spec.entry(&s.label, &t.label, Scalar::from_integer(c.into()));
            }
        }
    }
    spec.build().unwrap()
}

fn random_maps() -> impl Strategy<Value = RandomMaps> {
    (
        prop::collection::vec(-4i64..=4, 1..=6),
        prop_oneof![Just(None), (1i64..=3).prop_map(Some)],
        prop::collection::vec(-5i64..=5, 1..=36),
        prop::collection::vec(-5i64..=5, 1..=36),
        prop::collection::vec(-5i64..=5, 1..=36),
    )
        .prop_map(|(halves, period, c1, c2, c3)| {
            let basis = GradedBasis::new(halves.iter().enumerate().map(|(i, h)| (format!("g{i}"), 2 * h))).unwrap();
            let grading = match period {
                None => NovikovGrading::Trivial,
                Some(p) => NovikovGrading::periodic(2 * p).unwrap(),
            };
            RandomMaps {
                f: random_map(&basis, grading, -2, &c1),
                g: random_map(&basis, grading, -2, &c2),
                h: random_map(&basis, grading, 0, &c3),
                basis,
                grading,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn slice_periodicity(m in random_maps(), d in -12i64..12) {
        if let Some(p) = m.grading.period() {
            prop_assert_eq!(m.f.degree_slice(d), m.f.degree_slice(d + p));
            prop_assert_eq!(m.f.degree_slice(d), m.f.degree_slice(d - 3 * p));
        }
    }

    #[test]
    fn slice_linearity(m in random_maps(), d in -12i64..12) {
        let sum = m.f.add(&m.g).unwrap();
        prop_assert_eq!(sum.degree_slice(d), m.f.degree_slice(d).add(&m.g.degree_slice(d)).unwrap());
        let zero = GradedMap::zero(m.basis.clone(), m.basis.clone(), -2, m.grading);
        prop_assert_eq!(m.f.add(&zero).unwrap(), m.f.clone());
    }

    #[test]
    fn slice_functoriality(m in random_maps(), d in -12i64..12) {
        let fg = m.f.compose(&m.g).unwrap();
        let product = m.f.degree_slice(d + m.g.shift()).mul(&m.g.degree_slice(d)).unwrap();
        prop_assert_eq!(fg.degree_slice(d), product);
        let fh = m.f.compose(&m.h).unwrap();
        prop_assert_eq!(fh.degree_slice(d), m.f.degree_slice(d).mul(&m.h.degree_slice(d)).unwrap());
    }

    #[test]
    fn trivial_grading_has_one_component_per_generator(m in random_maps()) {
        if m.grading == NovikovGrading::Trivial {
            for g in m.basis.generators() {
                let comp = gysin_core::graded::degree_component_basis(&m.basis, m.grading, g.degree);
                prop_assert!(comp.iter().all(|e| e.t_power == 0));
                prop_assert!(comp.iter().any(|e| m.basis.get(e.generator).label == g.label));
            }
        }
    }

    #[test]
    fn vanishing_equivalence_and_cone(m in random_maps(), integral in any::<bool>()) {
        let ring = if integral { Ring::Integers } else { Ring::Rationals };
        let problem = GysinProblem {
            label: "random".into(),
            ring,
            grading: m.grading,
            dim_sigma: 4,
            basis: m.basis.clone(),
            delta: m.f.clone(),
            boundary: None,
            delta_c_coeff: None,
            metadata: None,
        };
        // vanishing_report errors out if the two sides disagree
        let report = vanishing_report(&problem).unwrap();
        prop_assert_eq!(report.delta_iso, report.sh_vanishes);
        let w = default_window(&problem);
        prop_assert_eq!(
            rabinowitz_homology(&problem, w).unwrap().groups,
            mapping_cone_homology(&problem, w).unwrap().groups
        );
    }
}
