//! Straight segments, two-leg geodesics through an intermediate point, and
//! the λ-family interpolating between two such points.

use super::NormedSpace;
use crate::curve::{Breakpoint, GeodesicCurve};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};

/// The affine segment from `u` to `v`.
pub fn segment_geodesic<S: NormedSpace>(
    space: &S,
    u: &S::Point,
    v: &S::Point,
    tol: Tolerance,
) -> Result<GeodesicCurve<S::Point>> {
    if space.same_point(u, v, tol)? {
        return Err(GeodesyError::DegenerateCurve);
    }
    Ok(GeodesicCurve::segment(u.clone(), v.clone()))
}

fn check_identity(name: &str, lhs: &Scalar, rhs: &Scalar, tol: Tolerance) -> Result<()> {
    if lhs.eq_tol(rhs, tol) {
        Ok(())
    } else {
        Err(GeodesyError::Precondition {
            identity: name.to_string(),
            residual: (lhs - rhs).to_string(),
        })
    }
}

/// The curve `(0, u), (C, x), (1, v)` with affine legs. Requires
/// `‖x − u‖ = C‖u − v‖` and `‖v − x‖ = (1 − C)‖u − v‖`; when `x` lies on the
/// straight segment the segment itself is returned.
pub fn two_leg_geodesic<S: NormedSpace>(
    space: &S,
    u: &S::Point,
    v: &S::Point,
    x: &S::Point,
    c: &Scalar,
    tol: Tolerance,
) -> Result<GeodesicCurve<S::Point>> {
    if *c < Scalar::zero() || *c > Scalar::one() {
        return Err(GeodesyError::ParameterOutOfRange(c.to_string()));
    }
    let span = space.distance(u, v)?;
    if span.is_zero_tol(tol) {
        return Err(GeodesyError::DegenerateCurve);
    }
    check_identity("‖x − u‖ = C·‖u − v‖", &space.distance(x, u)?, &(c * &span), tol)?;
    check_identity(
        "‖v − x‖ = (1 − C)·‖u − v‖",
        &space.distance(v, x)?,
        &((Scalar::one() - c) * &span),
        tol,
    )?;
    if c.is_zero_tol(Tolerance(0.0)) || *c == Scalar::one() {
        return Ok(GeodesicCurve::segment(u.clone(), v.clone()));
    }
    let on_segment = space.lerp(u, v, c)?;
    if space.same_point(&on_segment, x, tol)? {
        return Ok(GeodesicCurve::segment(u.clone(), v.clone()));
    }
    GeodesicCurve::new(vec![
        Breakpoint::new(Scalar::zero(), u.clone()),
        Breakpoint::new(c.clone(), x.clone()),
        Breakpoint::new(Scalar::one(), v.clone()),
    ])
}

/// Two-leg geodesic through `f(λ) = λx + (1 − λ)y`, where `x` and `y` both
/// lie at distance `C‖u − v‖` from `u` and `(1 − C)‖u − v‖` from `v`.
///
/// The identity `‖f(λ) − u‖ = C‖u − v‖` is re-checked on the result.
#[allow(clippy::too_many_arguments)]
pub fn family_geodesic<S: NormedSpace>(
    space: &S,
    u: &S::Point,
    v: &S::Point,
    x: &S::Point,
    y: &S::Point,
    c: &Scalar,
    lambda: &Scalar,
    tol: Tolerance,
) -> Result<GeodesicCurve<S::Point>> {
    if *lambda < Scalar::zero() || *lambda > Scalar::one() {
        return Err(GeodesyError::ParameterOutOfRange(lambda.to_string()));
    }
    let span = space.distance(u, v)?;
    let near = c * &span;
    let far = (Scalar::one() - c) * &span;
    check_identity("‖x − u‖ = C·‖u − v‖", &space.distance(x, u)?, &near, tol)?;
    check_identity("‖y − u‖ = C·‖u − v‖", &space.distance(y, u)?, &near, tol)?;
    check_identity("‖v − x‖ = (1 − C)·‖u − v‖", &space.distance(v, x)?, &far, tol)?;
    check_identity("‖v − y‖ = (1 − C)·‖u − v‖", &space.distance(v, y)?, &far, tol)?;
    let f = space.lerp(y, x, lambda)?;
    check_identity("‖f(λ) − u‖ = C·‖u − v‖", &space.distance(&f, u)?, &near, tol)?;
    two_leg_geodesic(space, u, v, &f, c, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ParamGrid;
    use crate::normed::{PNormSpace, Vector};
    use crate::verify::verify_geodesic;

    fn v(a: i64, b: i64) -> Vector {
        vec![Scalar::int(a), Scalar::int(b)]
    }

    #[test]
    fn two_leg_in_the_taxicab_plane() {
        let s = PNormSpace::l1(2);
        let tol = Tolerance::default();
        let g = two_leg_geodesic(&s, &v(0, 0), &v(1, 1), &v(1, 0), &Scalar::ratio(1, 2), tol).unwrap();
        assert_eq!(
            g.eval(&s, &Scalar::ratio(1, 4)).unwrap(),
            vec![Scalar::ratio(1, 2), Scalar::zero()]
        );
        assert_eq!(
            g.eval(&s, &Scalar::ratio(3, 4)).unwrap(),
            vec![Scalar::one(), Scalar::ratio(1, 2)]
        );
        let verdict = verify_geodesic(&s, &g, &ParamGrid::uniform(20).unwrap(), tol).unwrap();
        assert!(verdict.passed());
        assert_eq!(verdict.tolerance, None);
    }

    #[test]
    fn precondition_failures_name_the_identity() {
        let s = PNormSpace::l1(2);
        let err = two_leg_geodesic(
            &s,
            &v(0, 0),
            &v(1, 1),
            &v(2, 0),
            &Scalar::ratio(1, 2),
            Tolerance::default(),
        )
        .unwrap_err();
        match err {
            GeodesyError::Precondition { identity, residual } => {
                assert!(identity.contains("‖x − u‖"));
                assert_eq!(residual, "1/1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collinear_intermediate_gives_the_segment() {
        let s = PNormSpace::l2(2);
        let mid = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)];
        let g = two_leg_geodesic(&s, &v(0, 0), &v(1, 1), &mid, &Scalar::ratio(1, 2), Tolerance::default()).unwrap();
        assert_eq!(g.breakpoints().len(), 2);
    }

    #[test]
    fn family_midpoint_is_the_straight_segment() {
        let s = PNormSpace::l1(2);
        let g = family_geodesic(
            &s,
            &v(0, 0),
            &v(1, 1),
            &v(1, 0),
            &v(0, 1),
            &Scalar::ratio(1, 2),
            &Scalar::ratio(1, 2),
            Tolerance::default(),
        )
        .unwrap();
        assert_eq!(g, GeodesicCurve::segment(v(0, 0), v(1, 1)));
    }

    #[test]
    fn segment_rejects_equal_endpoints() {
        let s = PNormSpace::l1(2);
        assert_eq!(
            segment_geodesic(&s, &v(1, 1), &v(1, 1), Tolerance::default()).unwrap_err(),
            GeodesyError::DegenerateCurve
        );
    }
}
