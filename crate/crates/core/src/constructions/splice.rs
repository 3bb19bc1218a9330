use crate::curve::{Breakpoint, GeodesicCurve};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::space::MetricSpace;

/// Replaces the part of `gamma` on `[s, t]` by `sigma` (a curve from
/// `γ(s)` to `γ(t)`) run at the matching speed.
///
/// The breakpoints are those of `gamma` outside `[s, t]` together with
/// those of `sigma` mapped onto `[s, t]`. If `gamma` and `sigma` are
/// geodesics, so is the result.
pub fn splice<S: MetricSpace>(
    space: &S,
    gamma: &GeodesicCurve<S::Point>,
    s: &Scalar,
    t: &Scalar,
    sigma: &GeodesicCurve<S::Point>,
    tol: Tolerance,
) -> Result<GeodesicCurve<S::Point>> {
    if !(*s >= Scalar::zero() && s < t && *t <= Scalar::one()) {
        return Err(GeodesyError::InvalidCurve(format!(
            "splice window needs 0 <= s < t <= 1, got s = {s}, t = {t}"
        )));
    }
    let (gs, gt) = (gamma.eval(space, s)?, gamma.eval(space, t)?);
    if !space.same_point(sigma.start(), &gs, tol)? {
        return Err(GeodesyError::EndpointMismatch(format!(
            "spliced curve starts at {:?}, expected γ({s}) = {gs:?}",
            sigma.start()
        )));
    }
    if !space.same_point(sigma.end(), &gt, tol)? {
        return Err(GeodesyError::EndpointMismatch(format!(
            "spliced curve ends at {:?}, expected γ({t}) = {gt:?}",
            sigma.end()
        )));
    }
    let mut breakpoints: Vec<Breakpoint<S::Point>> =
        gamma.breakpoints().iter().filter(|b| b.param < *s).cloned().collect();
    let mut inner = sigma.rescaled_breakpoints(s, t);
    // pin the junctions to γ's own points
    inner[0].point = gs;
    let last = inner.len() - 1;
    inner[last].point = gt;
    breakpoints.extend(inner);
    breakpoints.extend(gamma.breakpoints().iter().filter(|b| b.param > *t).cloned());
    GeodesicCurve::new(breakpoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ParamGrid;
    use crate::normed::{PNormSpace, Vector};
    use crate::verify::{curves_distinct, verify_geodesic, Distinctness};

    fn v(a: i64, b: i64) -> Vector {
        vec![Scalar::int(a), Scalar::int(b)]
    }

    #[test]
    fn splicing_a_two_leg_into_a_segment() {
        let space = PNormSpace::l1(2);
        let tol = Tolerance::default();
        let gamma = GeodesicCurve::segment(v(0, 0), v(1, 1));
        let sigma = GeodesicCurve::new(vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
            Breakpoint::new(Scalar::one(), v(1, 1)),
        ])
        .unwrap();
        let out = splice(&space, &gamma, &Scalar::zero(), &Scalar::one(), &sigma, tol).unwrap();
        assert_eq!(out, sigma);
        assert!(verify_geodesic(&space, &out, &ParamGrid::uniform(10).unwrap(), tol)
            .unwrap()
            .passed());
    }

    #[test]
    fn identity_splice_changes_nothing() {
        let space = PNormSpace::l1(2);
        let tol = Tolerance::default();
        let gamma = GeodesicCurve::segment(v(0, 0), v(4, 4));
        let (s, t) = (Scalar::ratio(1, 4), Scalar::ratio(1, 2));
        let sigma = gamma.restrict(&space, &s, &t).unwrap();
        let out = splice(&space, &gamma, &s, &t, &sigma, tol).unwrap();
        let grid = ParamGrid::uniform(16).unwrap();
        assert_eq!(
            curves_distinct(&space, &gamma, &out, &grid, tol).unwrap(),
            Distinctness::Indistinguishable { complete: true }
        );
    }

    #[test]
    fn rejects_bad_windows_and_endpoints() {
        let space = PNormSpace::l1(2);
        let tol = Tolerance::default();
        let gamma = GeodesicCurve::segment(v(0, 0), v(1, 1));
        let sigma = GeodesicCurve::segment(v(0, 0), v(1, 1));
        assert!(splice(&space, &gamma, &Scalar::ratio(1, 2), &Scalar::ratio(1, 2), &sigma, tol).is_err());
        assert!(matches!(
            splice(&space, &gamma, &Scalar::ratio(1, 4), &Scalar::one(), &sigma, tol),
            Err(GeodesyError::EndpointMismatch(_))
        ));
    }
}
