//! Finite verification of the geodesic identity
//! `d(γ(s), γ(t)) = |s − t| · d(γ(0), γ(1))` and of curve distinctness,
//! disjointness and first deviation.
//!
//! All checks run over a [`ParamGrid`]. For piecewise-affine curves with
//! exact breakpoints the grid check is complete; otherwise it is a sampled
//! approximation and verdicts say so.

use serde::Serialize;

use crate::curve::{GeodesicCurve, ParamGrid};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub s: Scalar,
    pub t: Scalar,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Box<Violation>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Tolerance used, or `None` when every comparison was exact.
    pub tolerance: Option<f64>,
    /// Largest `|lhs − rhs|` among approximate comparisons.
    pub max_residual: f64,
    pub pairs_checked: usize,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.outcome {
            Outcome::Pass => None,
            Outcome::Fail(v) => Some(v.as_ref()),
        }
    }

    pub fn record(&self) -> VerdictRecord {
        let v = self.violation();
        VerdictRecord {
            verdict: if self.passed() { "pass" } else { "fail" },
            witness_pair: v.map(|v| [v.s.clone(), v.t.clone()]),
            lhs: v.map(|v| v.lhs.clone()),
            rhs: v.map(|v| v.rhs.clone()),
            tolerance: self.tolerance,
            max_residual: self.max_residual,
            pairs_checked: self.pairs_checked,
        }
    }
}

/// JSON form of a [`Verdict`].
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub verdict: &'static str,
    pub witness_pair: Option<[Scalar; 2]>,
    pub lhs: Option<Scalar>,
    pub rhs: Option<Scalar>,
    pub tolerance: Option<f64>,
    pub max_residual: f64,
    pub pairs_checked: usize,
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Equality,
    Upper,
}

struct Scan {
    first_equality: Option<Violation>,
    first_upper: Option<Violation>,
    approx: bool,
    max_residual: f64,
    pairs: usize,
}

fn scan_pairs<S: MetricSpace>(
    space: &S,
    curve: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
    mode: Mode,
) -> Result<Scan> {
    let span = space.distance(curve.start(), curve.end())?;
    if span.is_zero_tol(tol) {
        return Err(GeodesyError::DegenerateCurve);
    }
    let params = grid.params();
    let points = params
        .iter()
        .map(|s| curve.eval(space, s))
        .collect::<Result<Vec<_>>>()?;

    let mut scan = Scan {
        first_equality: None,
        first_upper: None,
        approx: !span.is_exact(),
        max_residual: 0.0,
        pairs: 0,
    };
    // equality is implied by three upper bounds, hence the 3x slack
    let consistency_tol = tol.scaled(3.0);
    for i in 0..params.len() {
        for j in (i + 1)..params.len() {
            let lhs = space.distance(&points[i], &points[j])?;
            let rhs = (&params[j] - &params[i]) * &span;
            scan.pairs += 1;
            let exact = lhs.is_exact() && rhs.is_exact();
            if !exact {
                scan.approx = true;
                scan.max_residual = scan.max_residual.max((lhs.to_f64() - rhs.to_f64()).abs());
            }
            let ord = lhs.cmp_tol(&rhs, tol);
            let violation = || Violation {
                s: params[i].clone(),
                t: params[j].clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            };
            match mode {
                Mode::Equality => {
                    if ord != std::cmp::Ordering::Equal {
                        scan.first_equality = Some(violation());
                        return Ok(scan);
                    }
                }
                Mode::Upper => {
                    if ord == std::cmp::Ordering::Greater {
                        scan.first_upper = Some(violation());
                        return Ok(scan);
                    }
                    if scan.first_equality.is_none() && !lhs.eq_tol(&rhs, consistency_tol) {
                        scan.first_equality = Some(violation());
                    }
                }
            }
        }
    }
    Ok(scan)
}

fn verdict(scan: &Scan, violation: Option<Violation>, tol: Tolerance) -> Verdict {
    Verdict {
        outcome: match violation {
            None => Outcome::Pass,
            Some(v) => Outcome::Fail(Box::new(v)),
        },
        tolerance: scan.approx.then_some(tol.value()),
        max_residual: scan.max_residual,
        pairs_checked: scan.pairs,
    }
}

/// Checks the geodesic identity with equality on every grid pair; a failure
/// reports the lexicographically first violating `(s, t)`.
pub fn verify_geodesic<S: MetricSpace>(
    space: &S,
    curve: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Verdict> {
    let scan = scan_pairs(space, curve, grid, tol, Mode::Equality)?;
    let violation = scan.first_equality.clone();
    Ok(verdict(&scan, violation, tol))
}

/// Checks only `d(γ(s), γ(t)) ≤ |s − t| · d(u, v)`. Because the grid
/// contains 0 and 1, passing forces equality on the grid; that implication
/// is re-checked and a breach is reported as a metric inconsistency.
pub fn verify_geodesic_upper<S: MetricSpace>(
    space: &S,
    curve: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Verdict> {
    let scan = scan_pairs(space, curve, grid, tol, Mode::Upper)?;
    if scan.first_upper.is_none() {
        if let Some(v) = &scan.first_equality {
            return Err(GeodesyError::Inconsistent(format!(
                "upper bound holds on the grid but equality fails at ({}, {}): {} vs {}",
                v.s, v.t, v.lhs, v.rhs
            )));
        }
    }
    let violation = scan.first_upper.clone();
    Ok(verdict(&scan, violation, tol))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distinctness {
    Distinct {
        at: Scalar,
    },
    /// `complete` is true when the check is exact (piecewise curves with
    /// exact data, grid containing every breakpoint of both).
    Indistinguishable {
        complete: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Disjointness {
    /// `exact` is true when every segment pair was decided by an exact
    /// segment test rather than by sampling.
    Disjoint {
        exact: bool,
    },
    Intersect {
        s: Scalar,
        t: Scalar,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationBracket {
    /// Largest checked parameter up to which the curves agree.
    pub agree_until: Scalar,
    /// Smallest checked parameter at which they differ.
    pub differs_at: Scalar,
}

fn check_endpoints<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    tol: Tolerance,
) -> Result<()> {
    if !space.same_point(a.start(), b.start(), tol)? {
        return Err(GeodesyError::EndpointMismatch(format!(
            "start points differ: {:?} vs {:?}",
            a.start(),
            b.start()
        )));
    }
    if !space.same_point(a.end(), b.end(), tol)? {
        return Err(GeodesyError::EndpointMismatch(format!(
            "end points differ: {:?} vs {:?}",
            a.end(),
            b.end()
        )));
    }
    Ok(())
}

/// Parameters of `grid` and both curves' breakpoints with a flag telling
/// whether the curves agree there.
fn agreement<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
    stop_at_first_difference: bool,
) -> Result<(Vec<(Scalar, bool)>, bool)> {
    check_endpoints(space, a, b, tol)?;
    let grid = grid.merged(a.params().chain(b.params()).cloned())?;
    let mut exact = true;
    let mut out = Vec::with_capacity(grid.len());
    for s in grid.params() {
        exact &= s.is_exact();
        let d = space.distance(&a.eval(space, s)?, &b.eval(space, s)?)?;
        exact &= d.is_exact();
        let same = d.is_zero_tol(tol);
        out.push((s.clone(), same));
        if !same && stop_at_first_difference {
            break;
        }
    }
    Ok((out, exact))
}

/// Pointwise comparison on the grid together with all breakpoints.
pub fn curves_distinct<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Distinctness> {
    let (samples, exact) = agreement(space, a, b, grid, tol, true)?;
    Ok(match samples.into_iter().find(|(_, same)| !same) {
        Some((at, _)) => Distinctness::Distinct { at },
        None => Distinctness::Indistinguishable { complete: exact },
    })
}

/// Brackets `inf { s : a(s) ≠ b(s) }` between the last agreeing and the
/// first differing checked parameter.
pub fn first_deviation<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Option<DeviationBracket>> {
    let (samples, _) = agreement(space, a, b, grid, tol, true)?;
    let Some(idx) = samples.iter().position(|(_, same)| !same) else {
        return Ok(None);
    };
    // index 0 is parameter 0, where the endpoints already agree
    Ok(Some(DeviationBracket {
        agree_until: samples[idx.saturating_sub(1)].0.clone(),
        differs_at: samples[idx].0.clone(),
    }))
}

/// Decides whether the images of `a` and `b` meet anywhere other than the
/// shared endpoints.
pub fn curves_disjoint<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Disjointness> {
    check_endpoints(space, a, b, tol)?;
    let (u, v) = (a.start(), a.end());
    let is_endpoint =
        |p: &S::Point| -> Result<bool> { Ok(space.same_point(p, u, tol)? || space.same_point(p, v, tol)?) };

    let mut decided = true;
    'pairs: for (a0, a1) in a.segments() {
        for (b0, b1) in b.segments() {
            let Some(meet) = space.segment_meet((&a0.point, &a1.point), (&b0.point, &b1.point), tol)? else {
                decided = false;
                break 'pairs;
            };
            let (alpha, beta) = match meet {
                SegmentMeet::Empty => continue,
                SegmentMeet::Point { a, b } => (a, b),
                SegmentMeet::Overlap { start, end } => {
                    let half = Scalar::ratio(1, 2);
                    ((&start.0 + &end.0) * &half, (&start.1 + &end.1) * &half)
                }
            };
            let s = &a0.param + &(&alpha * &(&a1.param - &a0.param));
            let t = &b0.param + &(&beta * &(&b1.param - &b0.param));
            if !is_endpoint(&a.eval(space, &s)?)? {
                return Ok(Disjointness::Intersect { s, t });
            }
        }
    }
    if decided {
        return Ok(Disjointness::Disjoint { exact: true });
    }

    let grid = grid.merged(a.params().chain(b.params()).cloned())?;
    let interior: Vec<&Scalar> = grid
        .params()
        .iter()
        .filter(|s| **s > Scalar::zero() && **s < Scalar::one())
        .collect();
    let a_points = interior.iter().map(|s| a.eval(space, s)).collect::<Result<Vec<_>>>()?;
    let b_points = interior.iter().map(|s| b.eval(space, s)).collect::<Result<Vec<_>>>()?;
    for (i, pa) in a_points.iter().enumerate() {
        if is_endpoint(pa)? {
            continue;
        }
        for (j, pb) in b_points.iter().enumerate() {
            if space.same_point(pa, pb, tol)? {
                return Ok(Disjointness::Intersect {
                    s: interior[i].clone(),
                    t: interior[j].clone(),
                });
            }
        }
    }
    Ok(Disjointness::Disjoint { exact: false })
}
