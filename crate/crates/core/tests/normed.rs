use geodesy::normed::{
    euclid_max_point, exact_l1_plane_unique, holder_negative_check, intermediate_point, is_multigeodesic,
    sample_unit_vectors, two_leg_geodesic, uniqueness_certificate, validate_witness, CertificateReason, FunctionSpace,
    MultigeodesicVerdict, NormedSpace, PExponent, PNormSpace, PiecewiseFunction, Poly2, StepFunctionSpace, Vector,
    WitnessSearch, WitnessStatus,
};
use geodesy::{first_deviation, verify_geodesic, GeodesicCurve, MetricSpace, ParamGrid, Scalar, Tolerance};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Composite Simpson rule, the numerical oracle for exact integrals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

fn quadratic() -> impl Strategy<Value = Poly2> {
    (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(a, b, c)| Poly2::new(r(a, 2), r(b, 2), r(c, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn l1_norm_matches_quadrature(p in quadratic(), q in quadratic(), k in 1i64..8) {
        let as_f64 = |p: &Poly2| {
            let c = [&p.0, &p.1, &p.2].map(|c| Scalar::Exact(c.clone()).to_f64());
            move |x: f64| (c[0] + c[1] * x + c[2] * x * x).abs()
        };
        let split = k as f64 / 8.0;
        // each piece on its own interval: f may jump at the split
        let oracle = simpson(as_f64(&p), 0.0, split, 20_000) + simpson(as_f64(&q), split, 1.0, 20_000);
        let f = PiecewiseFunction::new(vec![r(0, 1), r(k, 8), r(1, 1)], vec![p, q], false).unwrap();
        let exact = f.l1_norm().to_f64();
        prop_assert!((exact - oracle).abs() < 1e-6, "{exact} vs {oracle}");
    }

    #[test]
    fn taxicab_witnesses_validate(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let s = PNormSpace::l1(3);
        let n = a.abs() + b.abs() + c.abs();
        let x = vec![Scalar::ratio(a, n), Scalar::ratio(b, n), Scalar::ratio(c, n)];
        let w = s.find_witness(&x, tol()).unwrap();
        let support = [a, b, c].iter().filter(|v| **v != 0).count();
        if support >= 2 {
            prop_assert!(w.is_found());
            let res = validate_witness(&s, &x, w.y.as_ref().unwrap(), w.c.as_ref().unwrap(), tol()).unwrap();
            prop_assert!(res.norm_y.is_zero_tol(Tolerance(0.0)) && res.norm_x_minus_y.is_zero_tol(Tolerance(0.0)));
        } else {
            prop_assert!(w.is_certified_absent());
        }
    }

    #[test]
    fn witnesses_survive_scaling_and_translation(a in 1i64..9, b in 1i64..9, sx in -5i64..5, sy in -5i64..5, k in 1i64..4) {
        // witnesses for (u, v) come from the unit vector (v − u)/‖v − u‖
        let s = PNormSpace::l1(2);
        let u = vec![Scalar::int(sx), Scalar::int(sy)];
        let v = vec![Scalar::int(sx + k * a), Scalar::int(sy + k * b)];
        let (c, m) = intermediate_point(&s, &u, &v, tol()).unwrap().unwrap();
        let d = s.distance(&u, &v).unwrap();
        prop_assert_eq!(s.distance(&m, &u).unwrap(), &c * &d);
        prop_assert_eq!(s.distance(&v, &m).unwrap(), (Scalar::one() - &c) * &d);
        let gamma = two_leg_geodesic(&s, &u, &v, &m, &c, tol()).unwrap();
        prop_assert!(verify_geodesic(&s, &gamma, &ParamGrid::new(8, &[&gamma]).unwrap(), tol()).unwrap().passed());
    }
}

#[test]
fn cts_constant_for_the_linear_function() {
    let g = PiecewiseFunction::polynomial(Poly2::linear(r(0, 1), r(2, 1)));
    let w = FunctionSpace.find_witness(&g, tol()).unwrap();
    let c = w.c.clone().unwrap();
    assert_eq!(c, Scalar::ratio(2, 3));
    // ∫ x·2x dx by quadrature
    assert!((simpson(|x| 2.0 * x * x, 0.0, 1.0, 1000) - c.to_f64()).abs() < 1e-12);
    let h = w.y.unwrap();
    let total = FunctionSpace.norm(&h).unwrap() + FunctionSpace.distance(&g, &h).unwrap();
    assert_eq!(total, Scalar::one());
    // the two regions between h and C·g on either side of x = C
    let cg = |x: f64| 4.0 * x / 3.0;
    let below = simpson(|x| cg(x) - 2.0 * x * x, 0.0, 2.0 / 3.0, 1000);
    let above = simpson(|x| 2.0 * x * x - cg(x), 2.0 / 3.0, 1.0, 1000);
    assert!((below - above).abs() < 1e-12);
    assert!((below - 8.0 / 81.0).abs() < 1e-12);
}

#[test]
fn cts_geodesics_first_differ_right_after_the_start() {
    let s = FunctionSpace;
    let zero = PiecewiseFunction::zero();
    let g = PiecewiseFunction::polynomial(Poly2::linear(r(0, 1), r(2, 1)));
    let c = Scalar::ratio(2, 3);
    let h = g.mul_x().unwrap();
    let through_h = two_leg_geodesic(&s, &zero, &g, &h, &c, tol()).unwrap();
    let straight = GeodesicCurve::segment(zero, g);
    for curve in [&through_h, &straight] {
        assert!(
            verify_geodesic(&s, curve, &ParamGrid::new(12, &[curve]).unwrap(), tol())
                .unwrap()
                .passed()
        );
    }
    let grid = ParamGrid::with_params(1, [c.clone()]).unwrap();
    let bracket = first_deviation(&s, &straight, &through_h, &grid, tol())
        .unwrap()
        .unwrap();
    assert_eq!(bracket.agree_until, Scalar::zero());
    assert_eq!(bracket.differs_at, c);
}

#[test]
fn documented_witness_examples() {
    let l1 = PNormSpace::l1(2);
    let w = l1
        .find_witness(&vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)], tol())
        .unwrap();
    assert_eq!(w.c, Some(Scalar::ratio(1, 2)));
    let w = l1.find_witness(&vec![Scalar::one(), Scalar::zero()], tol()).unwrap();
    assert!(matches!(
        w.status,
        WitnessStatus::NoneCertified {
            reason: CertificateReason::L1SingleIntersection,
            ..
        }
    ));

    let step = StepFunctionSpace::uniform(4, PExponent::One).unwrap();
    let w = step.find_witness(&vec![Scalar::one(); 4], tol()).unwrap();
    assert_eq!(w.c, Some(Scalar::ratio(1, 2)));

    for n in [2, 3] {
        let l2 = PNormSpace::l2(n);
        for x in sample_unit_vectors(&l2, n, 20, 3).unwrap() {
            let w = l2.find_witness(&x, tol()).unwrap();
            assert!(matches!(
                w.status,
                WitnessStatus::NoneCertified {
                    reason: CertificateReason::StrictConvexity,
                    ..
                }
            ));
        }
    }
}

#[test]
fn multigeodesic_dichotomy_on_samples() {
    let step = StepFunctionSpace::uniform(4, PExponent::One).unwrap();
    let sample = sample_unit_vectors(&step, 4, 100, 11).unwrap();
    let report = is_multigeodesic(&step, &sample, tol()).unwrap();
    assert_eq!(report.verdict, MultigeodesicVerdict::MultigeodesicOnSample);

    let l1 = PNormSpace::l1(2);
    let sample: Vec<Vector> = vec![
        vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 2)],
        vec![Scalar::one(), Scalar::zero()],
    ];
    let report = is_multigeodesic(&l1, &sample, tol()).unwrap();
    assert_eq!(report.verdict, MultigeodesicVerdict::NotMultigeodesic { index: 1 });
}

#[test]
fn uniqueness_at_euclidean_maximisers() {
    for space in [
        PNormSpace::l1(2),
        PNormSpace::linf(2),
        PNormSpace::l2(3),
        PNormSpace::new(2, PExponent::new(4.0).unwrap()).unwrap(),
    ] {
        let x = euclid_max_point(&space);
        let report = uniqueness_certificate(&space, &x, 400, 5, tol()).unwrap();
        assert!(report.certified(), "{:?}: {report:?}", space.p);
    }
    let l1 = PNormSpace::l1(2);
    let half = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)];
    let report = uniqueness_certificate(&l1, &half, 400, 5, tol()).unwrap();
    assert!(!report.certified());
    assert!(report.counterexample.is_some());

    // sign-cell analysis against a brute-force rational grid search
    for c in [r(1, 4), r(1, 2), r(3, 5)] {
        assert!(exact_l1_plane_unique(&[r(1, 1), r(0, 1)], &c));
        let mut hits = 0;
        for i in -40..=40 {
            for j in -40..=40 {
                let y = [r(i, 40), r(j, 40)];
                let ny = y[0].abs() + y[1].abs();
                let nxy = (r(1, 1) - &y[0]).abs() + y[1].abs();
                if ny == c && nxy == r(1, 1) - &c {
                    hits += 1;
                    assert_eq!(y, [c.clone(), r(0, 1)]);
                }
            }
        }
        assert_eq!(hits, 1);
    }
}

#[test]
fn holder_gap_for_strictly_convex_step_spaces() {
    for p in [
        PExponent::new(1.5).unwrap(),
        PExponent::new(2.0).unwrap(),
        PExponent::new(3.0).unwrap(),
        PExponent::Infinity,
    ] {
        let space = StepFunctionSpace::uniform(4, p).unwrap();
        let report = holder_negative_check(&space, 200, 9).unwrap();
        // for the sup norm the gap is at least max f − min f
        assert!(report.passed, "{p}: {report:?}");
        assert!(report.max_constant_residual <= 1e-12);
    }
}
