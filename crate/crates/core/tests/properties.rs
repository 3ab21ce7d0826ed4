mod common;

use common::*;
use hollowcert::deltacert::{
    build_h_aggregate, build_h_polys, cond_ii_bound, hessian_matrix_s, linear_parts_s, width_comparison_polys, SCoords,
};
use hollowcert::exactlinalg::{PolyMatrix, QMatrix};
use hollowcert::exactnum::{interval_eval, QSqrt2, RatInterval, Rational};
use hollowcert::globalbounds::{flatness_expr, global_bounds, lambda1_expr};
use hollowcert::mvpoly::MvPoly;
use hollowcert::widthlab::{difference_body_vertices, lattice_width, AffineLattice, Polytope, Vec3};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn q() -> impl Strategy<Value = QSqrt2> {
    (-40i64..=40, -40i64..=40, 1i64..=12).prop_map(|(a, b, d)| QSqrt2::frac(a, b, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qsqrt2_is_an_ordered_field(a in q(), b in q(), c in q()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, QSqrt2::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), QSqrt2::one());
            prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b.clone());
        }
        prop_assert_eq!((&a * &b).signum(), a.signum() * b.signum());
        prop_assert_eq!(a < b, (&b - &a).is_positive());
        // Order agrees with floating point away from ties.
        let (fa, fb) = (a.to_f64(), b.to_f64());
        if (fa - fb).abs() > 1e-9 {
            prop_assert_eq!(a < b, fa < fb);
        }
    }

    #[test]
    fn floor_brackets_value(a in q()) {
        let f = QSqrt2::from_rational(Rational::from_bigint(a.floor()));
        prop_assert!(f <= a);
        prop_assert!(a < &f + &QSqrt2::one());
    }

    #[test]
    fn interval_ops_enclose_points(seed in any::<u64>()) {
        prop_assert!(interval_enclosure(&mut rng(seed), 5).is_ok());
    }

    #[test]
    fn width_invariant_under_unimodular_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_tetrahedron(&mut r);
        // Random unimodular matrix as a product of elementary shears.
        let mut u = QMatrix::identity(3);
        for _ in 0..4 {
            let (i, j) = (r.gen_range(0..3), r.gen_range(0..3));
            if i != j {
                let mut e = QMatrix::identity(3);
                e.set(i, j, QSqrt2::from_int(r.gen_range(-2..=2)));
                u = u.mul(&e).unwrap();
            }
        }
        let z: Vec3 = std::array::from_fn(|_| QSqrt2::from_int(r.gen_range(-5..=5)));
        let moved: Vec<Vec3> = k
            .vertices()
            .iter()
            .map(|v| {
                let w = u.mul_vec(v).unwrap();
                std::array::from_fn(|i| &w[i] + &z[i])
            })
            .collect();
        let std = AffineLattice::standard();
        let a = lattice_width(&k, &std).unwrap();
        let b = lattice_width(&Polytope::new(moved).unwrap(), &std).unwrap();
        prop_assert_eq!(a.width, b.width);
        prop_assert_eq!(a.minimizers.len(), b.minimizers.len());
    }

    #[test]
    fn difference_body_is_centrally_symmetric(seed in any::<u64>()) {
        let k = random_tetrahedron(&mut rng(seed));
        let d = difference_body_vertices(&k);
        for v in &d {
            let neg: Vec3 = std::array::from_fn(|i| -&v[i]);
            prop_assert!(d.contains(&neg));
            // Every vertex is a difference of two vertices.
            let ok = k.vertices().iter().any(|a| k.vertices().iter().any(|b| {
                (0..3).all(|i| v[i] == &a[i] - &b[i])
            }));
            prop_assert!(ok);
        }
    }

    #[test]
    fn det_poly_agrees_with_pointwise_det(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let rows: Vec<Vec<MvPoly>> =
            (0..n).map(|_| (0..n).map(|_| random_poly(&mut r, 3, 2, 2)).collect()).collect();
        let m = PolyMatrix::from_rows(rows).unwrap();
        let det = m.det_poly().unwrap();
        for _ in 0..5 {
            let t: Vec<QSqrt2> = (0..3).map(|_| rand_q(&mut r, 6, 5)).collect();
            prop_assert_eq!(det.eval(&t), m.eval(&t).det().unwrap());
        }
    }
}

#[test]
fn field_axioms_on_seeded_samples() {
    field_axioms(&mut rng(1), 500).unwrap();
    interval_enclosure(&mut rng(2), 500).unwrap();
}

#[test]
fn root_bound_is_sound() {
    let mut r = rng(3);
    for _ in 0..200 {
        let nvars = r.gen_range(1..=5);
        let terms = r.gen_range(1..=8);
        let f = random_poly(&mut r, nvars, 4, terms);
        root_bound_sound_on(&f, 200, &mut r).unwrap();
    }
}

#[test]
fn lattice_width_matches_brute_force() {
    let mut r = rng(4);
    for _ in 0..100 {
        width_matches_oracle(&random_tetrahedron(&mut r)).unwrap();
    }
}

#[test]
fn hollow_check_matches_brute_force() {
    let mut r = rng(5);
    let mut hollow = 0;
    let mut trials = 0;
    while trials < 60 {
        // Small tetrahedra, so that both outcomes occur.
        let verts: Vec<Vec3> = (0..4)
            .map(|_| std::array::from_fn(|_| QSqrt2::from_rational(rand_rat(&mut r, 7, 3))))
            .collect();
        let Ok(k) = Polytope::new(verts) else { continue };
        if !k.is_full_dimensional() {
            continue;
        }
        trials += 1;
        hollow_matches_oracle(&k).unwrap();
        hollow += brute_hollow(&k) as usize;
    }
    assert!(hollow > 0 && hollow < trials, "{hollow} of {trials} hollow");
}

#[test]
fn adjugate_identity_on_perturbation_matrix() {
    let (_, ring) = delta();
    adjugate_identity(&ring.m, &mut rng(6), 20).unwrap();
}

#[test]
fn h_polys_match_inverse_formula() {
    h_identity(200, &mut rng(7)).unwrap();
}

#[test]
fn graded_decomposition_of_h() {
    let (model, ring) = delta();
    let hs = build_h_polys(&ring, &model).unwrap();
    for (h, l) in hs.iter().zip(&model.lambda) {
        let lh = h.scale(l);
        let parts: Vec<MvPoly> = (0..=3).map(|d| lh.graded_part(d)).collect();
        assert!(parts[0].is_zero());
        for (d, p) in parts.iter().enumerate().skip(1) {
            assert_eq!(p.total_degree(), Some(d as u32));
        }
        let sum = parts.iter().fold(MvPoly::zero(NVARS), |a, p| &a + p);
        assert_eq!(sum, lh);
    }
}

#[test]
fn linear_radius_increases_with_c() {
    let (model, ring) = delta();
    let hs = build_h_polys(&ring, &model).unwrap();
    let ls = linear_parts_s(&hs, &model.lambda, &SCoords::new());
    let radii: Vec<Rational> = [7, 8, 9, 10, 11, 12]
        .iter()
        .map(|&c| cond_ii_bound(&ls, &Rational::from_int(c)).unwrap().radius)
        .collect();
    assert!(radii.windows(2).all(|w| w[0] < w[1]));
}

fn random_s(r: &mut impl Rng, radius: &Rational, corner: bool) -> Vec<QSqrt2> {
    (0..NVARS)
        .map(|_| {
            let t = if corner {
                Rational::new(if r.gen_bool(0.5) { 999_999 } else { -999_999 }, 1_000_000)
            } else {
                Rational::new(r.gen_range(-999_999..=999_999), 1_000_000)
            };
            QSqrt2::from_rational(radius * &t)
        })
        .collect()
}

#[test]
fn width_comparisons_stay_positive_inside_radius() {
    let (model, ring) = delta();
    let sc = SCoords::new();
    let polys = width_comparison_polys(&model, &ring, &sc).unwrap();
    assert_eq!(polys.len(), 66);
    let radius = Rational::new(4423, 100_000);
    let mut r = rng(8);
    for k in 0..60 {
        let s = random_s(&mut r, &radius, k % 3 == 0);
        for (_, _, p) in &polys {
            assert!(p.eval(&s).is_positive());
        }
    }
}

#[test]
fn hessian_stays_definite_inside_radius() {
    let (model, ring) = delta();
    let sc = SCoords::new();
    let hs = build_h_polys(&ring, &model).unwrap();
    let h = build_h_aggregate(&hs, &model.lambda, &Rational::new(39, 4)).unwrap();
    let hess = hessian_matrix_s(&h, &sc).unwrap();
    let radius = Rational::new(2646, 100_000);
    let mut r = rng(9);
    for k in 0..60 {
        let s = random_s(&mut r, &radius, k % 3 == 0);
        assert!(hess.eval(&s).is_negative_definite().unwrap());
    }
}

#[test]
fn s_coordinates_round_trip() {
    let sc = SCoords::new();
    let mut r = rng(10);
    let p = random_poly(&mut r, NVARS, 3, 6);
    assert_eq!(sc.from_s(&sc.to_s(&p)), p);
    let t: Vec<QSqrt2> = (0..NVARS).map(|_| rand_q(&mut r, 5, 7)).collect();
    let s = sc.point_to_s(&t);
    assert_eq!(sc.to_s(&p).eval(&s), p.eval(&t));
}

/// `floor(sqrt(n))` and `floor(cbrt(n))` on big integers as the 50-digit
/// reference, independent of the interval code.
fn reference(digits: u32) -> (Rational, Rational, Rational) {
    let scale = BigInt::from(10).pow(digits);
    let s = |n: BigInt, d: BigInt| Rational::from_bigs(n, d).unwrap();
    let sqrt3 = s((BigInt::from(3) * &scale * &scale).sqrt(), scale.clone());
    let sqrt2 = s((BigInt::from(2) * &scale * &scale).sqrt(), scale.clone());
    let cube: BigInt = BigInt::from(3) * &scale * &scale * &scale / 4;
    let cbrt34 = s(cube.cbrt(), scale.clone());
    (sqrt2, sqrt3, cbrt34)
}

#[test]
fn enclosures_contain_fifty_digit_reference() {
    let (sqrt2, sqrt3, cbrt34) = reference(50);
    let two = Rational::from_int(2);
    let hurkens = &Rational::one() + &(&two / &sqrt3);
    let flat = &hurkens + &(&two * &cbrt34);
    let lambda1 = &Rational::one() - &(&hurkens / &(&two + &sqrt2));
    let report = global_bounds(&Rational::pow10_neg(12)).unwrap();
    assert!(report.flatness.upper.enclosure.contains(&flat));
    assert!(report.lambda1.report.enclosure.contains(&lambda1));
    assert!(report.volume.upper.enclosure.contains(&lambda1.pow(3).recip().unwrap()));
    let inv_sq = lambda1.square().recip().unwrap();
    assert!(report
        .inscribed_general
        .report
        .enclosure
        .contains(&(&Rational::from_int(6) * &inv_sq)));
    assert!(report
        .inscribed_tetrahedron
        .report
        .enclosure
        .contains(&(&Rational::new(12, 5) * &inv_sq)));
}

#[test]
fn tighter_precision_never_flips_verdicts() {
    let coarse = global_bounds(&Rational::pow10_neg(3)).unwrap();
    let fine = global_bounds(&Rational::pow10_neg(12)).unwrap();
    assert!(coarse.passed && fine.passed);
    for (a, b) in coarse.rows().iter().zip(fine.rows()) {
        assert_eq!(a.verdict, b.verdict);
        assert!(b.enclosure.is_subset_of(&a.enclosure), "{}", a.name);
    }
    for e in [flatness_expr(), lambda1_expr()] {
        let wide: RatInterval = interval_eval(&e, &Rational::pow10_neg(4)).unwrap();
        let narrow = interval_eval(&e, &Rational::pow10_neg(20)).unwrap();
        assert!(narrow.is_subset_of(&wide));
    }
}
