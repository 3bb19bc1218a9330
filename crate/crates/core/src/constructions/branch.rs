//! Branching a geodesic off at time `t`: on each dyadic window
//! `[t + 2⁻ᵐ, t + 2⁻⁽ᵐ⁻¹⁾]`, `n < m ≤ M`, the geodesic is replaced by a
//! different geodesic between the same points. The result agrees with the
//! original up to `t + 2⁻ᴹ` and differs inside every window, so as `M`
//! grows its first deviation from the original tends to `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::splice::splice;
use crate::curve::{GeodesicCurve, ParamGrid};
use crate::error::{GeodesyError, Result};
use crate::laakso::{LaaksoGraph, LaaksoPoint};
use crate::normed::geodesics::two_leg_geodesic;
use crate::normed::witness::{intermediate_point, WitnessSearch};
use crate::scalar::{rational_serde, Scalar, Tolerance};
use crate::space::MetricSpace;
use crate::verify::{curves_distinct, first_deviation, verify_geodesic, DeviationBracket, Distinctness};

/// Cap on the truncation depth `M` (each level adds breakpoints).
pub const MAX_DEPTH: u32 = 24;

/// Supplies a geodesic between the endpoints of `original` that differs
/// from it somewhere.
pub trait AlternativeChooser<S: MetricSpace> {
    fn alternative(
        &self,
        space: &S,
        original: &GeodesicCurve<S::Point>,
        tol: Tolerance,
    ) -> Result<GeodesicCurve<S::Point>>;
}

fn differs<S: MetricSpace>(
    space: &S,
    a: &GeodesicCurve<S::Point>,
    b: &GeodesicCurve<S::Point>,
    tol: Tolerance,
) -> Result<bool> {
    let grid = ParamGrid::uniform(4)?;
    Ok(matches!(
        curves_distinct(space, a, b, &grid, tol)?,
        Distinctness::Distinct { .. }
    ))
}

/// Normed spaces: a two-leg geodesic through the witness point for the
/// direction of the piece, or the straight segment when the piece already
/// is that two-leg curve.
#[derive(Debug, Clone, Copy, Default)]
pub struct NormedChooser;

impl<S: WitnessSearch> AlternativeChooser<S> for NormedChooser {
    fn alternative(
        &self,
        space: &S,
        original: &GeodesicCurve<S::Point>,
        tol: Tolerance,
    ) -> Result<GeodesicCurve<S::Point>> {
        let (u, v) = (original.start(), original.end());
        let describe = || format!("{u:?} and {v:?}");
        let Some((c, m)) = intermediate_point(space, u, v, tol)? else {
            return Err(GeodesyError::NoAlternative(describe()));
        };
        let two_leg = two_leg_geodesic(space, u, v, &m, &c, tol)?;
        if differs(space, &two_leg, original, tol)? {
            return Ok(two_leg);
        }
        let straight = GeodesicCurve::segment(u.clone(), v.clone());
        if differs(space, &straight, original, tol)? {
            return Ok(straight);
        }
        Err(GeodesyError::NoAlternative(describe()))
    }
}

/// Laakso graphs: the first geodesic in enumeration order that differs
/// from the piece.
#[derive(Debug, Clone, Copy)]
pub struct LaaksoChooser {
    pub cap: usize,
}

impl Default for LaaksoChooser {
    fn default() -> Self {
        LaaksoChooser { cap: 64 }
    }
}

impl AlternativeChooser<LaaksoGraph> for LaaksoChooser {
    fn alternative(
        &self,
        space: &LaaksoGraph,
        original: &GeodesicCurve<LaaksoPoint>,
        tol: Tolerance,
    ) -> Result<GeodesicCurve<LaaksoPoint>> {
        let found = space.enumerate_geodesics(original.start(), original.end(), self.cap)?;
        for c in found.curves {
            if differs(space, &c, original, tol)? {
                return Ok(c);
            }
        }
        Err(GeodesyError::NoAlternative(format!(
            "{} and {}",
            original.start(),
            original.end()
        )))
    }
}

/// Branch time `t`, start index `n` with `t + 2⁻ⁿ < 1`, depth `M > n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchPlan {
    #[serde(with = "rational_serde")]
    pub t: BigRational,
    pub start: u32,
    pub depth: u32,
}

fn dyadic(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

impl BranchPlan {
    /// Plan with the smallest admissible start index.
    pub fn new(t: BigRational, depth: u32) -> Result<Self> {
        if !(t.is_positive() && t < BigRational::one()) {
            return Err(GeodesyError::InvalidPlan(format!("branch time {t} must lie in (0, 1)")));
        }
        let start = (0..=MAX_DEPTH)
            .find(|&n| &t + dyadic(n) < BigRational::one())
            .ok_or_else(|| GeodesyError::InvalidPlan(format!("branch time {t} is too close to 1")))?;
        Self::with_start(t, start, depth)
    }

    pub fn with_start(t: BigRational, start: u32, depth: u32) -> Result<Self> {
        let plan = BranchPlan { t, start, depth };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_positive() && self.t < BigRational::one()) {
            return Err(GeodesyError::InvalidPlan(format!(
                "branch time {} must lie in (0, 1)",
                self.t
            )));
        }
        if &self.t + dyadic(self.start) >= BigRational::one() {
            return Err(GeodesyError::InvalidPlan(format!(
                "t + 2^-{} = {} is not below 1",
                self.start,
                &self.t + dyadic(self.start)
            )));
        }
        if self.depth <= self.start {
            return Err(GeodesyError::InvalidPlan(format!(
                "depth {} must exceed the start index {}",
                self.depth, self.start
            )));
        }
        if self.depth > MAX_DEPTH {
            return Err(GeodesyError::InvalidPlan(format!(
                "depth {} exceeds the cap {MAX_DEPTH}",
                self.depth
            )));
        }
        Ok(())
    }

    /// Windows `[t + 2⁻ᵐ, t + 2⁻⁽ᵐ⁻¹⁾]` for `m = n + 1, …, M`.
    pub fn windows(&self) -> Vec<(Scalar, Scalar)> {
        (self.start + 1..=self.depth)
            .map(|m| {
                (
                    Scalar::Exact(&self.t + dyadic(m)),
                    Scalar::Exact(&self.t + dyadic(m - 1)),
                )
            })
            .collect()
    }

    /// `t + 2⁻ᴹ`, up to which the branch agrees with the original.
    pub fn agree_until(&self) -> Scalar {
        Scalar::Exact(&self.t + dyadic(self.depth))
    }
}

#[derive(Debug, Clone)]
pub struct BranchResult<P> {
    pub curve: GeodesicCurve<P>,
    pub plan: BranchPlan,
    pub windows: Vec<(Scalar, Scalar)>,
}

/// Applies the splices of `plan` to `gamma`, checks that each alternative
/// differs from the piece it replaces, and verifies the result.
pub fn branch_truncated<S, C>(
    space: &S,
    gamma: &GeodesicCurve<S::Point>,
    plan: &BranchPlan,
    chooser: &C,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<BranchResult<S::Point>>
where
    S: MetricSpace,
    C: AlternativeChooser<S>,
{
    plan.validate()?;
    let windows = plan.windows();
    let mut current = gamma.clone();
    for (lo, hi) in &windows {
        // earlier splices only touched later windows, so here current = γ
        let piece = gamma.restrict(space, lo, hi)?;
        let sigma = chooser.alternative(space, &piece, tol)?;
        if !differs(space, &sigma, &piece, tol)? {
            return Err(GeodesyError::IndistinguishableAlternative(format!("[{lo}, {hi}]")));
        }
        current = splice(space, &current, lo, hi, &sigma, tol)?;
    }
    let check_grid = grid.merged(current.params().cloned())?;
    let verdict = verify_geodesic(space, &current, &check_grid, tol)?;
    if let Some(v) = verdict.violation() {
        return Err(GeodesyError::Inconsistent(format!(
            "branched curve fails the geodesic identity at ({}, {})",
            v.s, v.t
        )));
    }
    Ok(BranchResult {
        curve: current,
        plan: plan.clone(),
        windows,
    })
}

/// One branched geodesic per time, each agreeing with `gamma` up to
/// `tᵢ + 2⁻ᴹ`; checks that the family is pairwise distinct and distinct
/// from `gamma`.
pub fn distinct_family<S, C>(
    space: &S,
    gamma: &GeodesicCurve<S::Point>,
    times: &[BigRational],
    depth: u32,
    chooser: &C,
    grid: &ParamGrid,
    tol: Tolerance,
) -> Result<Vec<BranchResult<S::Point>>>
where
    S: MetricSpace,
    C: AlternativeChooser<S>,
{
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GeodesyError::InvalidPlan("times must be strictly increasing".into()));
    }
    let family = times
        .iter()
        .map(|t| branch_truncated(space, gamma, &BranchPlan::new(t.clone(), depth)?, chooser, grid, tol))
        .collect::<Result<Vec<_>>>()?;
    let brackets = family
        .iter()
        .map(|b| first_deviation(space, gamma, &b.curve, grid, tol))
        .collect::<Result<Vec<Option<DeviationBracket>>>>()?;
    if let Some(i) = brackets.iter().position(Option::is_none) {
        return Err(GeodesyError::Inconsistent(format!(
            "family member {i} does not deviate from the base curve"
        )));
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !differs(space, &family[i].curve, &family[j].curve, tol)?
                && matches!(
                    curves_distinct(space, &family[i].curve, &family[j].curve, grid, tol)?,
                    Distinctness::Indistinguishable { .. }
                )
            {
                return Err(GeodesyError::Inconsistent(format!(
                    "family members {i} and {j} coincide"
                )));
            }
        }
    }
    Ok(family)
}
