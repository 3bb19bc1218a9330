use std::fmt;

use crate::error::Result;
use crate::scalar::{Scalar, Tolerance};

/// How two curve segments meet, in terms of the fractions along each
/// segment (`0` at the segment start, `1` at its end).
#[derive(Debug, Clone, PartialEq)]
pub enum SegmentMeet {
    Empty,
    Point {
        a: Scalar,
        b: Scalar,
    },
    /// A non-degenerate common piece; `start` and `end` are matching
    /// `(a, b)` fraction pairs at the two ends of the overlap.
    Overlap {
        start: (Scalar, Scalar),
        end: (Scalar, Scalar),
    },
}

/// A metric space together with the interpolation rule curves use between
/// consecutive breakpoints.
pub trait MetricSpace {
    type Point: Clone + fmt::Debug + PartialEq;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Result<Scalar>;

    /// Point at fraction `frac ∈ [0, 1]` of the canonical segment from `a`
    /// to `b` (affine in vector spaces, along the shared edge in graphs).
    fn interpolate(&self, a: &Self::Point, b: &Self::Point, frac: &Scalar) -> Result<Self::Point>;

    /// Exact intersection of two canonical segments, or `None` when the
    /// space cannot decide it (callers then fall back to sampling).
    fn segment_meet(
        &self,
        _a: (&Self::Point, &Self::Point),
        _b: (&Self::Point, &Self::Point),
        _tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        Ok(None)
    }

    fn same_point(&self, a: &Self::Point, b: &Self::Point, tol: Tolerance) -> Result<bool> {
        Ok(self.distance(a, b)?.is_zero_tol(tol))
    }
}

impl<S: MetricSpace + ?Sized> MetricSpace for &S {
    type Point = S::Point;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Result<Scalar> {
        (**self).distance(a, b)
    }

    fn interpolate(&self, a: &Self::Point, b: &Self::Point, frac: &Scalar) -> Result<Self::Point> {
        (**self).interpolate(a, b, frac)
    }

    fn segment_meet(
        &self,
        a: (&Self::Point, &Self::Point),
        b: (&Self::Point, &Self::Point),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        (**self).segment_meet(a, b, tol)
    }

    fn same_point(&self, a: &Self::Point, b: &Self::Point, tol: Tolerance) -> Result<bool> {
        (**self).same_point(a, b, tol)
    }
}
