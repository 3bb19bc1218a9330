use std::sync::OnceLock;

use geodesy::constructions::{GluedPoint, GluedSpace};
use geodesy::laakso::{LaaksoGraph, LaaksoPoint};
use geodesy::normed::{FunctionSpace, PExponent, PNormSpace, PiecewiseFunction, StepFunctionSpace, Vector};
use geodesy::{MetricSpace, Scalar, Tolerance};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        ..ProptestConfig::default()
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational().prop_map(Scalar::Exact), n)
}

fn function() -> impl Strategy<Value = PiecewiseFunction> {
    (prop::collection::vec(rational(), 3), 1i64..8).prop_map(|(ys, k)| {
        let mid = BigRational::new(BigInt::from(k), BigInt::from(8));
        let nodes = [
            (BigRational::from_integer(0.into()), ys[0].clone()),
            (mid, ys[1].clone()),
            (BigRational::from_integer(1.into()), ys[2].clone()),
        ];
        PiecewiseFunction::piecewise_linear(&nodes).unwrap()
    })
}

fn laakso() -> &'static LaaksoGraph {
    static GRAPH: OnceLock<LaaksoGraph> = OnceLock::new();
    GRAPH.get_or_init(|| LaaksoGraph::build(2).unwrap())
}

fn laakso_point() -> impl Strategy<Value = LaaksoPoint> {
    let g = laakso();
    (0..g.edges().len(), 0i64..=4)
        .prop_map(move |(e, k)| g.at_offset(e, g.edge_length() * BigRational::new(k.into(), 4.into())))
}

fn check_axioms<S: MetricSpace>(space: &S, a: &S::Point, b: &S::Point, c: &S::Point, exact: bool) {
    let tol = Tolerance::default();
    let ab = space.distance(a, b).unwrap();
    let ba = space.distance(b, a).unwrap();
    let bc = space.distance(b, c).unwrap();
    let ac = space.distance(a, c).unwrap();
    assert_eq!(ab, ba, "symmetry");
    assert!(ab >= Scalar::zero());
    assert!(space.distance(a, a).unwrap().is_zero_tol(Tolerance(0.0)));
    if exact {
        assert!(ab.is_exact() && bc.is_exact() && ac.is_exact());
        assert!(ac <= &ab + &bc, "triangle: {ac} > {ab} + {bc}");
    } else {
        assert!(ac.le_tol(&(&ab + &bc), tol), "triangle: {ac} > {ab} + {bc}");
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn taxicab(a in vector(3), b in vector(3), c in vector(3)) {
        check_axioms(&PNormSpace::l1(3), &a, &b, &c, true);
    }

    #[test]
    fn sup_norm(a in vector(3), b in vector(3), c in vector(3)) {
        check_axioms(&PNormSpace::linf(3), &a, &b, &c, true);
    }

    #[test]
    fn euclidean(a in vector(2), b in vector(2), c in vector(2)) {
        check_axioms(&PNormSpace::l2(2), &a, &b, &c, false);
    }

    #[test]
    fn three_norm(a in vector(2), b in vector(2), c in vector(2)) {
        let space = PNormSpace::new(2, PExponent::new(3.0).unwrap()).unwrap();
        check_axioms(&space, &a, &b, &c, false);
    }

    #[test]
    fn step_l1(a in vector(4), b in vector(4), c in vector(4)) {
        let measures = [1, 2, 3, 6].iter().map(|&d| BigRational::new(1.into(), BigInt::from(d))).collect();
        let space = StepFunctionSpace::new(measures, PExponent::One).unwrap();
        check_axioms(&space, &a, &b, &c, true);
    }

    #[test]
    fn step_sup(a in vector(4), b in vector(4), c in vector(4)) {
        let space = StepFunctionSpace::uniform(4, PExponent::Infinity).unwrap();
        check_axioms(&space, &a, &b, &c, true);
    }

    // irrational crossing points of linear pieces make some norms inexact
    #[test]
    fn function_space(a in function(), b in function(), c in function()) {
        check_axioms(&FunctionSpace, &a, &b, &c, false);
    }

    #[test]
    fn laakso_graph(a in laakso_point(), b in laakso_point(), c in laakso_point()) {
        check_axioms(laakso(), &a, &b, &c, true);
    }

    #[test]
    fn glued(
        (ca, a) in (0u8..2, vector(2)),
        (cb, b) in (0u8..2, vector(2)),
        (cc, c) in (0u8..2, vector(2)),
    ) {
        let space = GluedSpace::new(PNormSpace::l1(2), vec![Scalar::ratio(1, 3), Scalar::zero()], Tolerance::default());
        let p = |copy: u8, v: Vector| -> GluedPoint<Vector> { space.point(copy, v).unwrap() };
        check_axioms(&space, &p(ca, a), &p(cb, b), &p(cc, c), true);
    }
}
