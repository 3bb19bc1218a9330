//! Piecewise-parametrised curves `[0, 1] → X` and the finite parameter grids
//! on which continuum conditions are checked.

use std::cmp::Ordering;

use crate::error::{GeodesyError, Result};
use crate::scalar::Scalar;
use crate::space::MetricSpace;

#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoint<P> {
    pub param: Scalar,
    pub point: P,
}

impl<P> Breakpoint<P> {
    pub fn new(param: Scalar, point: P) -> Self {
        Breakpoint { param, point }
    }
}

/// A curve given by finitely many breakpoints; between consecutive
/// breakpoints the space's interpolation rule applies.
///
/// Parameters are strictly increasing, start at 0 and end at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicCurve<P> {
    breakpoints: Vec<Breakpoint<P>>,
}

impl<P: Clone> GeodesicCurve<P> {
    pub fn new(breakpoints: Vec<Breakpoint<P>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(GeodesyError::InvalidCurve(
                "a curve needs at least two breakpoints".into(),
            ));
        }
        if breakpoints[0].param != Scalar::zero() {
            return Err(GeodesyError::InvalidCurve(format!(
                "first parameter is {}, expected 0",
                breakpoints[0].param
            )));
        }
        if breakpoints[breakpoints.len() - 1].param != Scalar::one() {
            return Err(GeodesyError::InvalidCurve(format!(
                "last parameter is {}, expected 1",
                breakpoints[breakpoints.len() - 1].param
            )));
        }
        for pair in breakpoints.windows(2) {
            if pair[0].param.partial_cmp(&pair[1].param) != Some(Ordering::Less) {
                return Err(GeodesyError::InvalidCurve(format!(
                    "parameters not strictly increasing at {} -> {}",
                    pair[0].param, pair[1].param
                )));
            }
        }
        Ok(GeodesicCurve { breakpoints })
    }

    /// The two-breakpoint curve `(0, a), (1, b)`.
    pub fn segment(a: P, b: P) -> Self {
        GeodesicCurve {
            breakpoints: vec![Breakpoint::new(Scalar::zero(), a), Breakpoint::new(Scalar::one(), b)],
        }
    }

    /// Builds a curve from points visited at the given cumulative lengths,
    /// parametrised proportionally to length.
    pub fn constant_speed(points: Vec<P>, cumulative: &[Scalar]) -> Result<Self> {
        let total = cumulative
            .last()
            .cloned()
            .ok_or_else(|| GeodesyError::InvalidCurve("empty path".into()))?;
        if total.is_zero_tol(crate::scalar::Tolerance(0.0)) {
            return Err(GeodesyError::DegenerateCurve);
        }
        let breakpoints = points
            .into_iter()
            .zip(cumulative)
            .map(|(p, len)| Breakpoint::new(len / &total, p))
            .collect();
        Self::new(breakpoints)
    }

    pub fn breakpoints(&self) -> &[Breakpoint<P>] {
        &self.breakpoints
    }

    pub fn into_breakpoints(self) -> Vec<Breakpoint<P>> {
        self.breakpoints
    }

    pub fn params(&self) -> impl Iterator<Item = &Scalar> {
        self.breakpoints.iter().map(|b| &b.param)
    }

    pub fn start(&self) -> &P {
        &self.breakpoints[0].point
    }

    pub fn end(&self) -> &P {
        &self.breakpoints[self.breakpoints.len() - 1].point
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Breakpoint<P>, &Breakpoint<P>)> {
        self.breakpoints.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn map_points<Q: Clone>(&self, mut f: impl FnMut(&P) -> Q) -> GeodesicCurve<Q> {
        GeodesicCurve {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|b| Breakpoint::new(b.param.clone(), f(&b.point)))
                .collect(),
        }
    }

    pub fn try_map_points<Q: Clone>(&self, mut f: impl FnMut(&P) -> Result<Q>) -> Result<GeodesicCurve<Q>> {
        let breakpoints = self
            .breakpoints
            .iter()
            .map(|b| Ok(Breakpoint::new(b.param.clone(), f(&b.point)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeodesicCurve { breakpoints })
    }

    /// Evaluates the curve at `s ∈ [0, 1]`.
    pub fn eval<S>(&self, space: &S, s: &Scalar) -> Result<P>
    where
        S: MetricSpace<Point = P>,
    {
        if *s < Scalar::zero() || *s > Scalar::one() {
            return Err(GeodesyError::ParameterOutOfRange(s.to_string()));
        }
        // index of the first breakpoint with param > s
        let upper = self.breakpoints.partition_point(|b| b.param <= *s);
        if upper == 0 {
            return Err(GeodesyError::ParameterOutOfRange(s.to_string()));
        }
        let lo = &self.breakpoints[upper - 1];
        if lo.param == *s || upper == self.breakpoints.len() {
            return Ok(lo.point.clone());
        }
        let hi = &self.breakpoints[upper];
        let frac = (s - &lo.param) / (&hi.param - &lo.param);
        space.interpolate(&lo.point, &hi.point, &frac)
    }

    /// The restriction to `[s, t]`, reparametrised onto `[0, 1]`.
    pub fn restrict<S>(&self, space: &S, s: &Scalar, t: &Scalar) -> Result<Self>
    where
        S: MetricSpace<Point = P>,
    {
        if s >= t {
            return Err(GeodesyError::InvalidCurve(format!(
                "restriction window [{s}, {t}] is empty"
            )));
        }
        let width = t - s;
        let mut breakpoints = vec![Breakpoint::new(Scalar::zero(), self.eval(space, s)?)];
        for b in &self.breakpoints {
            if b.param > *s && b.param < *t {
                breakpoints.push(Breakpoint::new((&b.param - s) / &width, b.point.clone()));
            }
        }
        breakpoints.push(Breakpoint::new(Scalar::one(), self.eval(space, t)?));
        Self::new(breakpoints)
    }

    /// Breakpoints with parameters mapped affinely from `[0, 1]` onto
    /// `[lo, hi]`.
    pub fn rescaled_breakpoints(&self, lo: &Scalar, hi: &Scalar) -> Vec<Breakpoint<P>> {
        let width = hi - lo;
        self.breakpoints
            .iter()
            .map(|b| Breakpoint::new(lo + &(&width * &b.param), b.point.clone()))
            .collect()
    }
}

/// Sorted, duplicate-free parameters `{0, 1/N, …, 1}` together with every
/// breakpoint parameter of the curves under test.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    resolution: u32,
    params: Vec<Scalar>,
}

pub const DEFAULT_RESOLUTION: u32 = 100;

impl ParamGrid {
    pub fn uniform(resolution: u32) -> Result<Self> {
        Self::with_params(resolution, std::iter::empty())
    }

    pub fn new<P: Clone>(resolution: u32, curves: &[&GeodesicCurve<P>]) -> Result<Self> {
        Self::with_params(resolution, curves.iter().flat_map(|c| c.params().cloned()))
    }

    pub fn with_params(resolution: u32, extra: impl IntoIterator<Item = Scalar>) -> Result<Self> {
        if resolution == 0 {
            return Err(GeodesyError::InvalidCurve("grid resolution must be positive".into()));
        }
        let n = i64::from(resolution);
        let mut params: Vec<Scalar> = (0..=n).map(|k| Scalar::ratio(k, n)).collect();
        for p in extra {
            if p < Scalar::zero() || p > Scalar::one() {
                return Err(GeodesyError::ParameterOutOfRange(p.to_string()));
            }
            params.push(p);
        }
        params.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        params.dedup();
        Ok(ParamGrid { resolution, params })
    }

    /// A copy of this grid with more parameters merged in.
    pub fn merged(&self, extra: impl IntoIterator<Item = Scalar>) -> Result<Self> {
        let mut grid = Self::with_params(self.resolution, extra)?;
        grid.params.extend(self.params.iter().cloned());
        grid.params.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        grid.params.dedup();
        Ok(grid)
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normed::PNormSpace;

    fn v(a: i64, b: i64) -> Vec<Scalar> {
        vec![Scalar::int(a), Scalar::int(b)]
    }

    #[test]
    fn rejects_bad_parameters() {
        let bad = vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 1)),
            Breakpoint::new(Scalar::one(), v(1, 1)),
        ];
        assert!(GeodesicCurve::new(bad).is_err());
        let short = vec![Breakpoint::new(Scalar::zero(), v(0, 0))];
        assert!(GeodesicCurve::new(short).is_err());
        let not_one = vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
        ];
        assert!(GeodesicCurve::new(not_one).is_err());
    }

    #[test]
    fn eval_agrees_with_breakpoints_and_interpolates() {
        let space = PNormSpace::l1(2);
        let curve = GeodesicCurve::new(vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
            Breakpoint::new(Scalar::one(), v(1, 1)),
        ])
        .unwrap();
        for b in curve.breakpoints() {
            assert_eq!(curve.eval(&space, &b.param).unwrap(), b.point);
        }
        assert_eq!(
            curve.eval(&space, &Scalar::ratio(1, 4)).unwrap(),
            vec![Scalar::ratio(1, 2), Scalar::zero()]
        );
        assert!(curve.eval(&space, &Scalar::ratio(3, 2)).is_err());
    }

    #[test]
    fn restrict_reparametrises() {
        let space = PNormSpace::l1(2);
        let curve = GeodesicCurve::segment(v(0, 0), v(4, 0));
        let part = curve
            .restrict(&space, &Scalar::ratio(1, 4), &Scalar::ratio(3, 4))
            .unwrap();
        assert_eq!(part.start(), &v(1, 0));
        assert_eq!(part.end(), &v(3, 0));
    }

    #[test]
    fn grid_contains_breakpoints_sorted_without_duplicates() {
        let curve: GeodesicCurve<Vec<Scalar>> = GeodesicCurve::new(vec![
            Breakpoint::new(Scalar::zero(), v(0, 0)),
            Breakpoint::new(Scalar::ratio(1, 3), v(1, 0)),
            Breakpoint::new(Scalar::ratio(1, 2), v(1, 0)),
            Breakpoint::new(Scalar::one(), v(1, 1)),
        ])
        .unwrap();
        let grid = ParamGrid::new(4, &[&curve]).unwrap();
        let expected: Vec<Scalar> = [(0, 1), (1, 4), (1, 3), (1, 2), (3, 4), (1, 1)]
            .iter()
            .map(|&(a, b)| Scalar::ratio(a, b))
            .collect();
        assert_eq!(grid.params(), expected.as_slice());
        assert!(ParamGrid::uniform(0).is_err());
    }
}
