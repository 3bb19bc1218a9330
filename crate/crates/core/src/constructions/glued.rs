//! Two copies of a metric space `Y` identified at one point `y₀`:
//! `d((x, i), (y, i)) = d(x, y)` and `d((x, i), (y, 1 − i)) = d(x, y₀) + d(y, y₀)`.
//!
//! Every path between the copies passes through the glue point, so two
//! geodesics from `(x, 0)` to `(y, 1)` always meet there.

use serde::{Deserialize, Serialize};

use super::branch::AlternativeChooser;
use super::splice::splice;
use crate::curve::{Breakpoint, GeodesicCurve, ParamGrid};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};
use crate::verify::verify_geodesic;

/// A point `(point, copy)`; the glue point is always stored with copy 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluedPoint<P> {
    pub copy: u8,
    pub point: P,
}

#[derive(Debug, Clone)]
pub struct GluedSpace<S: MetricSpace> {
    base: S,
    glue: S::Point,
    tol: Tolerance,
}

impl<S: MetricSpace> PartialEq for GluedSpace<S>
where
    S: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.glue == other.glue
    }
}

impl<S: MetricSpace> GluedSpace<S> {
    pub fn new(base: S, glue: S::Point, tol: Tolerance) -> Self {
        GluedSpace { base, glue, tol }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn glue(&self) -> &S::Point {
        &self.glue
    }

    /// The glue point in canonical form.
    pub fn glue_point(&self) -> GluedPoint<S::Point> {
        GluedPoint {
            copy: 0,
            point: self.glue.clone(),
        }
    }

    fn is_glue(&self, p: &S::Point) -> Result<bool> {
        self.base.same_point(p, &self.glue, self.tol)
    }

    /// `(p, copy)` in canonical form.
    pub fn point(&self, copy: u8, p: S::Point) -> Result<GluedPoint<S::Point>> {
        if copy > 1 {
            return Err(GeodesyError::InvalidPoint(format!("copy index {copy} is not 0 or 1")));
        }
        let copy = if self.is_glue(&p)? { 0 } else { copy };
        Ok(GluedPoint { copy, point: p })
    }

    fn check(&self, p: &GluedPoint<S::Point>) -> Result<()> {
        if p.copy > 1 {
            return Err(GeodesyError::InvalidPoint(format!(
                "copy index {} is not 0 or 1",
                p.copy
            )));
        }
        Ok(())
    }

    /// Copies of two points seen from each other: the glue point takes the
    /// copy of its partner.
    fn effective_copies(&self, a: &GluedPoint<S::Point>, b: &GluedPoint<S::Point>) -> Result<(u8, u8)> {
        let (ga, gb) = (self.is_glue(&a.point)?, self.is_glue(&b.point)?);
        Ok(match (ga, gb) {
            (true, false) => (b.copy, b.copy),
            (false, true) => (a.copy, a.copy),
            _ => (a.copy, b.copy),
        })
    }
}

impl<S: MetricSpace> MetricSpace for GluedSpace<S> {
    type Point = GluedPoint<S::Point>;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        let (ca, cb) = self.effective_copies(a, b)?;
        if ca == cb {
            self.base.distance(&a.point, &b.point)
        } else {
            Ok(self.base.distance(&a.point, &self.glue)? + self.base.distance(&b.point, &self.glue)?)
        }
    }

    fn interpolate(&self, a: &Self::Point, b: &Self::Point, frac: &Scalar) -> Result<Self::Point> {
        let (ca, cb) = self.effective_copies(a, b)?;
        if ca == cb {
            return self.point(ca, self.base.interpolate(&a.point, &b.point, frac)?);
        }
        // through the glue point
        let da = self.base.distance(&a.point, &self.glue)?;
        let db = self.base.distance(&b.point, &self.glue)?;
        let split = &da / &(&da + &db);
        if *frac <= split {
            self.point(ca, self.base.interpolate(&a.point, &self.glue, &(frac / &split))?)
        } else {
            let rest = (frac - &split) / (Scalar::one() - &split);
            self.point(cb, self.base.interpolate(&self.glue, &b.point, &rest)?)
        }
    }

    fn segment_meet(
        &self,
        a: (&Self::Point, &Self::Point),
        b: (&Self::Point, &Self::Point),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        let (a0, a1) = self.effective_copies(a.0, a.1)?;
        let (b0, b1) = self.effective_copies(b.0, b.1)?;
        if a0 != a1 || b0 != b1 {
            return Ok(None);
        }
        if a0 == b0 {
            return self
                .base
                .segment_meet((&a.0.point, &a.1.point), (&b.0.point, &b.1.point), tol);
        }
        // different copies: only the glue point can be shared
        let g = (&self.glue, &self.glue);
        let on_a = self.base.segment_meet((&a.0.point, &a.1.point), g, tol)?;
        let on_b = self.base.segment_meet((&b.0.point, &b.1.point), g, tol)?;
        Ok(match (on_a, on_b) {
            (Some(SegmentMeet::Point { a: alpha, .. }), Some(SegmentMeet::Point { a: beta, .. })) => {
                Some(SegmentMeet::Point { a: alpha, b: beta })
            }
            (Some(_), Some(_)) => Some(SegmentMeet::Empty),
            _ => None,
        })
    }

    fn same_point(&self, a: &Self::Point, b: &Self::Point, tol: Tolerance) -> Result<bool> {
        let (ca, cb) = self.effective_copies(a, b)?;
        Ok((ca == cb || (self.is_glue(&a.point)? && self.is_glue(&b.point)?))
            && self.base.same_point(&a.point, &b.point, tol)?)
    }
}

fn require_geodesic<S: MetricSpace>(
    space: &S,
    curve: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<()> {
    let grid = grid.merged(curve.params().cloned())?;
    let verdict = verify_geodesic(space, curve, &grid, tol)?;
    match verdict.violation() {
        None => Ok(()),
        Some(v) => Err(GeodesyError::InvalidCurve(format!(
            "base curve is not a geodesic: at (s, t) = ({}, {}) distance {} vs {}",
            v.s, v.t, v.lhs, v.rhs
        ))),
    }
}

/// `t ↦ (γ(t), copy)`, after checking that `γ` is a geodesic of the base.
pub fn lift_geodesic<S: MetricSpace>(
    space: &GluedSpace<S>,
    gamma: &GeodesicCurve<S::Point>,
    copy: u8,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<GeodesicCurve<GluedPoint<S::Point>>> {
    require_geodesic(&space.base, gamma, grid, tol)?;
    gamma.try_map_points(|p| space.point(copy, p.clone()))
}

/// Concatenates `γ₁` (from `x` to `y₀`, in copy 0) with `γ₂` (from `y₀` to
/// `y`, in copy 1), meeting at parameter `d(x, y₀)/(d(x, y₀) + d(y, y₀))`.
pub fn cross_geodesic<S: MetricSpace>(
    space: &GluedSpace<S>,
    gamma1: &GeodesicCurve<S::Point>,
    gamma2: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<GeodesicCurve<GluedPoint<S::Point>>> {
    if !space.is_glue(gamma1.end())? {
        return Err(GeodesyError::EndpointMismatch(
            "first curve must end at the glue point".into(),
        ));
    }
    if !space.is_glue(gamma2.start())? {
        return Err(GeodesyError::EndpointMismatch(
            "second curve must start at the glue point".into(),
        ));
    }
    if space.is_glue(gamma1.start())? || space.is_glue(gamma2.end())? {
        return Err(GeodesyError::EndpointMismatch(
            "cross geodesics need endpoints other than the glue point".into(),
        ));
    }
    require_geodesic(&space.base, gamma1, grid, tol)?;
    require_geodesic(&space.base, gamma2, grid, tol)?;
    let d1 = space.base.distance(gamma1.start(), &space.glue)?;
    let d2 = space.base.distance(gamma2.end(), &space.glue)?;
    let c = &d1 / &(&d1 + &d2);
    let mut breakpoints: Vec<Breakpoint<GluedPoint<S::Point>>> = Vec::new();
    for b in gamma1.rescaled_breakpoints(&Scalar::zero(), &c) {
        breakpoints.push(Breakpoint::new(b.param, space.point(0, b.point)?));
    }
    let last = breakpoints.len() - 1;
    breakpoints[last].point = space.glue_point();
    for b in gamma2.rescaled_breakpoints(&c, &Scalar::one()).into_iter().skip(1) {
        breakpoints.push(Breakpoint::new(b.param, space.point(1, b.point)?));
    }
    GeodesicCurve::new(breakpoints)
}

/// Finds alternatives in a glued space with a chooser for the base: pieces
/// inside one copy are handled in the base; a piece through the glue point
/// gets an alternative on its longer half.
#[derive(Debug, Clone)]
pub struct GluedChooser<C> {
    pub inner: C,
}

impl<S, C> AlternativeChooser<GluedSpace<S>> for GluedChooser<C>
where
    S: MetricSpace,
    C: AlternativeChooser<S>,
{
    fn alternative(
        &self,
        space: &GluedSpace<S>,
        original: &GeodesicCurve<GluedPoint<S::Point>>,
        tol: Tolerance,
    ) -> Result<GeodesicCurve<GluedPoint<S::Point>>> {
        let (ca, cb) = space.effective_copies(original.start(), original.end())?;
        if ca == cb
            && original
                .breakpoints()
                .iter()
                .all(|b| b.point.copy == ca || space.is_glue(&b.point.point).unwrap_or(false))
        {
            let base_curve = original.map_points(|p| p.point.clone());
            let alt = self.inner.alternative(&space.base, &base_curve, tol)?;
            return alt.try_map_points(|p| space.point(ca, p.clone()));
        }
        let d1 = space.base.distance(&original.start().point, &space.glue)?;
        let d2 = space.base.distance(&original.end().point, &space.glue)?;
        let c = &d1 / &(&d1 + &d2);
        let (lo, hi, copy) = if d1 >= d2 {
            (Scalar::zero(), c, ca)
        } else {
            (c, Scalar::one(), cb)
        };
        let half = original.restrict(space, &lo, &hi)?;
        let base_half = half.map_points(|p| p.point.clone());
        let alt = self.inner.alternative(&space.base, &base_half, tol)?;
        let lifted = alt.try_map_points(|p| space.point(copy, p.clone()))?;
        splice(space, original, &lo, &hi, &lifted, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normed::{PNormSpace, Vector};
    use crate::verify::{curves_disjoint, Disjointness};

    fn v(a: i64, b: i64) -> Vector {
        vec![Scalar::int(a), Scalar::int(b)]
    }

    fn glued() -> GluedSpace<PNormSpace> {
        GluedSpace::new(PNormSpace::l1(2), v(0, 0), Tolerance::default())
    }

    #[test]
    fn glued_metric() {
        let g = glued();
        let a = g.point(0, v(1, 0)).unwrap();
        let b = g.point(1, v(0, 1)).unwrap();
        assert_eq!(g.distance(&a, &b).unwrap(), Scalar::int(2));
        let same = g.point(0, v(0, 1)).unwrap();
        assert_eq!(g.distance(&a, &same).unwrap(), Scalar::int(2));
        assert_eq!(g.point(1, v(0, 0)).unwrap(), g.glue_point());
        assert_eq!(
            g.distance(&g.glue_point(), &g.point(1, v(0, 0)).unwrap()).unwrap(),
            Scalar::zero()
        );
        assert!(g
            .distance(
                &GluedPoint {
                    copy: 2,
                    point: v(0, 0)
                },
                &a
            )
            .is_err());
    }

    #[test]
    fn cross_geodesics_meet_at_the_glue_point() {
        let g = glued();
        let tol = Tolerance::default();
        let grid = ParamGrid::uniform(8).unwrap();
        let first = cross_geodesic(
            &g,
            &GeodesicCurve::segment(v(1, 0), v(0, 0)),
            &GeodesicCurve::segment(v(0, 0), v(0, 1)),
            &grid,
            tol,
        )
        .unwrap();
        assert_eq!(first.eval(&g, &Scalar::ratio(1, 2)).unwrap(), g.glue_point());
        assert!(verify_geodesic(&g, &first, &grid, tol).unwrap().passed());
        let corner = GeodesicCurve::new(vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
            Breakpoint::new(Scalar::one(), v(1, 1)),
        ])
        .unwrap();
        let second = cross_geodesic(&g, &GeodesicCurve::segment(v(1, 0), v(0, 0)), &corner, &grid, tol);
        // (1, 1) is at distance 2 from the glue point, (1, 0) at distance 1
        let second = second.unwrap();
        assert!(verify_geodesic(&g, &second, &grid, tol).unwrap().passed());
        assert_eq!(second.eval(&g, &Scalar::ratio(1, 3)).unwrap(), g.glue_point());
    }

    #[test]
    fn lifted_disjoint_curves_stay_disjoint() {
        let g = glued();
        let tol = Tolerance::default();
        let grid = ParamGrid::uniform(8).unwrap();
        let via = |x: Vector| {
            GeodesicCurve::new(vec![
                Breakpoint::new(Scalar::zero(), v(0, 0)),
                Breakpoint::new(Scalar::ratio(1, 2), x),
                Breakpoint::new(Scalar::one(), v(1, 1)),
            ])
            .unwrap()
        };
        let a = lift_geodesic(&g, &via(v(1, 0)), 1, &grid, tol).unwrap();
        let b = lift_geodesic(&g, &via(v(0, 1)), 1, &grid, tol).unwrap();
        assert_eq!(
            curves_disjoint(&g, &a, &b, &grid, tol).unwrap(),
            Disjointness::Disjoint { exact: true }
        );
    }

    #[test]
    fn lift_rejects_non_geodesics() {
        let g = glued();
        let bent = GeodesicCurve::new(vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(2, 0)),
            Breakpoint::new(Scalar::one(), v(1, 0)),
        ])
        .unwrap();
        assert!(lift_geodesic(&g, &bent, 0, &ParamGrid::uniform(4).unwrap(), Tolerance::default()).is_err());
    }
}
