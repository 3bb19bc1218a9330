//! Witnesses `(C, y)` with `‖y‖ = C`, `‖x − y‖ = 1 − C` and `y ≠ Cx` for a
//! unit vector `x`, or a certificate that none exists.
//!
//! A witness for `x` yields two distinct geodesics from `0` to `x`; a normed
//! space has two geodesics between every pair of points exactly when every
//! unit vector has one. Each space kind has a constructive strategy; the
//! generic [`search_witness`] can only ever find a witness or give up, never
//! certify absence.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    CellSplit, FunctionSpace, NormedSpace, PExponent, PNormSpace, PiecewiseFunction, StepFunctionSpace, Vector,
};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};

/// Why no witness can exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateReason {
    /// `x` is a signed coordinate vector of ℓ¹: the spheres `‖y‖ = C` and
    /// `‖x − y‖ = 1 − C` meet only in `Cx`.
    L1SingleIntersection,
    /// Strictly convex norms admit a unique geodesic between any two points.
    StrictConvexity,
    /// Equality in Hölder's inequality forces a constant function.
    HolderEquality,
    /// Every coordinate of `x` has modulus one, which pins each coordinate
    /// of `y` to `C·xᵢ` under the sup norm.
    SupNormVertex,
}

impl CertificateReason {
    pub fn description(self) -> &'static str {
        match self {
            CertificateReason::L1SingleIntersection => "ℓ¹ sphere intersection is a single point",
            CertificateReason::StrictConvexity => "strict convexity",
            CertificateReason::HolderEquality => "Hölder equality forces constant",
            CertificateReason::SupNormVertex => "sup-norm cube vertex: every coordinate is pinned",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessStatus {
    Found,
    NoneCertified {
        reason: CertificateReason,
        justification: &'static str,
    },
    NoneFound {
        attempts: usize,
    },
}

/// Signed residuals of the witness identities and the separation
/// `‖y − Cx‖`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessResiduals {
    pub norm_y: Scalar,
    pub norm_x_minus_y: Scalar,
    pub separation: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<P> {
    #[serde(flatten)]
    pub status: WitnessStatus,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<Scalar>,
    pub x: P,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<P>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<WitnessResiduals>,
    /// Set when a step-function witness needed a cell split; `x` and `y`
    /// are then expressed in the refined partition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<CellSplit>,
}

impl<P> Witness<P> {
    pub fn is_found(&self) -> bool {
        matches!(self.status, WitnessStatus::Found)
    }

    pub fn is_certified_absent(&self) -> bool {
        matches!(self.status, WitnessStatus::NoneCertified { .. })
    }

    fn certified(x: P, reason: CertificateReason) -> Self {
        Witness {
            status: WitnessStatus::NoneCertified {
                reason,
                justification: reason.description(),
            },
            c: None,
            x,
            y: None,
            residuals: None,
            split: None,
        }
    }
}

/// Validates a candidate witness and returns its residuals.
pub fn validate_witness<S: NormedSpace>(
    space: &S,
    x: &S::Point,
    y: &S::Point,
    c: &Scalar,
    tol: Tolerance,
) -> Result<WitnessResiduals> {
    if !(*c > Scalar::zero() && *c < Scalar::one()) {
        return Err(GeodesyError::Inconsistent(format!(
            "witness constant {c} outside (0, 1)"
        )));
    }
    let residuals = WitnessResiduals {
        norm_y: space.norm(y)? - c,
        norm_x_minus_y: space.distance(x, y)? - (Scalar::one() - c),
        separation: space.distance(y, &space.scale(c, x)?)?,
    };
    if !residuals.norm_y.is_zero_tol(tol) || !residuals.norm_x_minus_y.is_zero_tol(tol) {
        return Err(GeodesyError::Inconsistent(format!(
            "witness identities fail: ‖y‖ − C = {}, ‖x − y‖ − (1 − C) = {}",
            residuals.norm_y, residuals.norm_x_minus_y
        )));
    }
    if residuals.separation.is_zero_tol(tol) {
        return Err(GeodesyError::Inconsistent("witness y coincides with Cx".into()));
    }
    Ok(residuals)
}

fn found<S: NormedSpace>(space: &S, x: S::Point, y: S::Point, c: Scalar, tol: Tolerance) -> Result<Witness<S::Point>> {
    let residuals = validate_witness(space, &x, &y, &c, tol)?;
    Ok(Witness {
        status: WitnessStatus::Found,
        c: Some(c),
        x,
        y: Some(y),
        residuals: Some(residuals),
        split: None,
    })
}

fn check_unit<S: NormedSpace>(space: &S, x: &S::Point, tol: Tolerance) -> Result<()> {
    let n = space.norm(x)?;
    if n.eq_tol(&Scalar::one(), tol) {
        Ok(())
    } else {
        Err(GeodesyError::NotUnitVector(n.to_string()))
    }
}

/// Kind-specific witness construction.
pub trait WitnessSearch: NormedSpace {
    fn find_witness(&self, x: &Self::Point, tol: Tolerance) -> Result<Witness<Self::Point>>;
}

/// `C = 1/2`, `y = x/2 + ((1 − |xᵢ|)/2)·sign(xᵢ)·eᵢ` for the first
/// coordinate with `|xᵢ| < 1`; none when every coordinate has modulus one.
fn sup_norm_witness<S: NormedSpace<Point = Vector>>(space: &S, x: &Vector, tol: Tolerance) -> Result<Witness<Vector>> {
    let one = Scalar::one();
    let Some(i) = x.iter().position(|xi| xi.abs().cmp_tol(&one, tol).is_lt()) else {
        return Ok(Witness::certified(x.clone(), CertificateReason::SupNormVertex));
    };
    let half = Scalar::ratio(1, 2);
    let mut y: Vector = x.iter().map(|xi| xi * &half).collect();
    let shift = (&one - &x[i].abs()) * &half;
    y[i] = if x[i].is_negative() {
        &y[i] - &shift
    } else {
        &y[i] + &shift
    };
    found(space, x.clone(), y, half, tol)
}

impl WitnessSearch for PNormSpace {
    fn find_witness(&self, x: &Vector, tol: Tolerance) -> Result<Witness<Vector>> {
        check_unit(self, x, tol)?;
        match self.p {
            PExponent::One => {
                let nonzero: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero_tol(tol)).collect();
                if nonzero.len() < 2 {
                    return Ok(Witness::certified(x.clone(), CertificateReason::L1SingleIntersection));
                }
                let k = nonzero[0];
                let mut y = vec![Scalar::zero(); x.len()];
                y[k] = x[k].clone();
                found(self, x.clone(), y, x[k].abs(), tol)
            }
            PExponent::Finite(_) => Ok(Witness::certified(x.clone(), CertificateReason::StrictConvexity)),
            PExponent::Infinity => sup_norm_witness(self, x, tol),
        }
    }
}

impl WitnessSearch for StepFunctionSpace {
    fn find_witness(&self, x: &Vector, tol: Tolerance) -> Result<Witness<Vector>> {
        check_unit(self, x, tol)?;
        match self.p {
            PExponent::Finite(_) => Ok(Witness::certified(x.clone(), CertificateReason::HolderEquality)),
            PExponent::Infinity => sup_norm_witness(self, x, tol),
            PExponent::One => step_l1_witness(self, x, tol),
        }
    }
}

/// `y = x·χ_E` for the cell prefix `E` whose mass is closest to one half
/// (ties to the shorter prefix), splitting the single supporting cell in
/// half when no prefix has mass strictly between 0 and 1.
fn step_l1_witness(space: &StepFunctionSpace, x: &Vector, tol: Tolerance) -> Result<Witness<Vector>> {
    let half = Scalar::ratio(1, 2);
    let one = Scalar::one();
    let mut best: Option<(usize, Scalar, Scalar)> = None; // (k, mass, |mass − 1/2|)
    for k in 1..space.cells() {
        let mass = space.prefix_mass(x, k);
        if mass.is_zero_tol(tol) || !mass.cmp_tol(&one, tol).is_lt() {
            continue;
        }
        let gap = (&mass - &half).abs();
        if best.as_ref().is_none_or(|(_, _, g)| gap < *g) {
            best = Some((k, mass, gap));
        }
    }
    if let Some((k, mass, _)) = best {
        let y = x
            .iter()
            .enumerate()
            .map(|(i, v)| if i < k { v.clone() } else { Scalar::zero() })
            .collect();
        return found(space, x.clone(), y, mass, tol);
    }
    let cell = x
        .iter()
        .position(|v| !v.is_zero_tol(tol))
        .ok_or_else(|| GeodesyError::NotUnitVector("0".into()))?;
    let split = CellSplit {
        cell,
        fraction: BigRational::new(1.into(), 2.into()),
    };
    let refined = space.split_cell(&split)?;
    let rx = space.refine_point(x, &split)?;
    let y = rx
        .iter()
        .enumerate()
        .map(|(i, v)| if i == cell { v.clone() } else { Scalar::zero() })
        .collect::<Vector>();
    let c = refined.prefix_mass(&y, cell + 1);
    let mut w = found(&refined, rx, y, c, tol)?;
    w.split = Some(split);
    Ok(w)
}

impl WitnessSearch for FunctionSpace {
    /// `y = h` with `h(s) = s·g(s)` and `C = ‖h‖₁`; requires `g` piecewise
    /// linear so that `h` stays in the quadratic class.
    fn find_witness(&self, g: &PiecewiseFunction, tol: Tolerance) -> Result<Witness<PiecewiseFunction>> {
        check_unit(self, g, tol)?;
        let h = g.mul_x()?;
        let c = h.l1_norm();
        found(self, g.clone(), h, c, tol)
    }
}

/// Generic randomised search for points of `Rⁿ`-like spaces: tries
/// `y = Cx + εw` for sampled `C`, sign patterns `w` and dyadic `ε`, and
/// accepts whenever `‖y‖ + ‖x − y‖ = 1` with `y` off the ray through `x`
/// (then `C := ‖y‖`). Returns `Found` or `NoneFound` only.
pub fn search_witness<S: NormedSpace<Point = Vector>>(
    space: &S,
    x: &Vector,
    attempts: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Witness<Vector>> {
    check_unit(space, x, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.len();
    for attempt in 0..attempts {
        let c0 = Scalar::ratio(rng.gen_range(1..64), 64);
        let w: Vector = (0..n).map(|_| Scalar::int(rng.gen_range(-1..=1))).collect();
        if w.iter().all(|v| v.is_zero_tol(tol)) {
            continue;
        }
        let base = space.scale(&c0, x)?;
        for k in 1..=20u32 {
            let eps = Scalar::dyadic(k + (attempt % 4) as u32);
            let y = space.add(&base, &space.scale(&eps, &w)?)?;
            let ny = space.norm(&y)?;
            let sum = &ny + &space.distance(x, &y)?;
            let on_sphere = if sum.is_exact() {
                sum == Scalar::one()
            } else {
                sum.eq_tol(&Scalar::one(), tol)
            };
            if !on_sphere || !(ny > Scalar::zero() && ny < Scalar::one()) {
                continue;
            }
            // with rounded norms, a tiny offset from the ray passes the
            // identity only to second order; insist on a visible one
            if !sum.is_exact() && space.distance(&y, &space.scale(&ny, x)?)?.to_f64() < tol.value().sqrt() {
                continue;
            }
            if let Ok(w) = found(space, x.clone(), y, ny, tol) {
                return Ok(w);
            }
        }
    }
    Ok(Witness {
        status: WitnessStatus::NoneFound { attempts },
        c: None,
        x: x.clone(),
        y: None,
        residuals: None,
        split: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MultigeodesicVerdict {
    MultigeodesicOnSample,
    /// A certified absence at sample index `index`.
    NotMultigeodesic {
        index: usize,
    },
    /// Some searches were exhausted without a certificate.
    Inconclusive {
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultigeodesicReport<P> {
    #[serde(flatten)]
    pub verdict: MultigeodesicVerdict,
    pub witnesses: Vec<Witness<P>>,
}

/// Runs the witness search on every sample vector.
pub fn is_multigeodesic<S: WitnessSearch>(
    space: &S,
    sample: &[S::Point],
    tol: Tolerance,
) -> Result<MultigeodesicReport<S::Point>> {
    if sample.is_empty() {
        return Err(GeodesyError::InvalidPoint("sample of unit vectors is empty".into()));
    }
    let witnesses = sample
        .iter()
        .map(|x| space.find_witness(x, tol))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if let Some(i) = witnesses.iter().position(Witness::is_certified_absent) {
        MultigeodesicVerdict::NotMultigeodesic { index: i }
    } else if let Some(i) = witnesses.iter().position(|w| !w.is_found()) {
        MultigeodesicVerdict::Inconclusive { index: i }
    } else {
        MultigeodesicVerdict::MultigeodesicOnSample
    };
    Ok(MultigeodesicReport { verdict, witnesses })
}

/// Seeded unit vectors of an `n`-coordinate space: random small integer
/// coordinates divided by their norm (exact whenever the norm is rational).
pub fn sample_unit_vectors<S: NormedSpace<Point = Vector>>(
    space: &S,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Vector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vector = (0..n).map(|_| Scalar::int(rng.gen_range(-9..=9))).collect();
        let norm = space.norm(&v)?;
        if norm.is_zero_tol(Tolerance(0.0)) {
            continue;
        }
        out.push(space.scale(&(Scalar::one() / norm), &v)?);
    }
    Ok(out)
}

/// Moves a witness for the unit vector `(v − u)/‖v − u‖` to an intermediate
/// point `m = u + ‖v − u‖·y` with `‖m − u‖ = C‖v − u‖` and
/// `‖v − m‖ = (1 − C)‖v − u‖`.
pub fn intermediate_point<S: WitnessSearch>(
    space: &S,
    u: &S::Point,
    v: &S::Point,
    tol: Tolerance,
) -> Result<Option<(Scalar, S::Point)>> {
    let span = space.distance(u, v)?;
    if span.is_zero_tol(tol) {
        return Err(GeodesyError::DegenerateCurve);
    }
    let x = space.scale(&(Scalar::one() / &span), &space.sub(v, u)?)?;
    let w = space.find_witness(&x, tol)?;
    if w.split.is_some() {
        return Ok(None);
    }
    let (Some(c), Some(y)) = (w.c, w.y) else {
        return Ok(None);
    };
    let m = space.add(u, &space.scale(&span, &y)?)?;
    Ok(Some((c, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(i64, i64)]) -> Vector {
        xs.iter().map(|&(a, b)| Scalar::ratio(a, b)).collect()
    }

    #[test]
    fn taxicab_witness_uses_first_nonzero_coordinate() {
        let s = PNormSpace::l1(2);
        let w = s.find_witness(&v(&[(1, 2), (1, 2)]), Tolerance::default()).unwrap();
        assert!(w.is_found());
        assert_eq!(w.c, Some(Scalar::ratio(1, 2)));
        assert_eq!(w.y, Some(v(&[(1, 2), (0, 1)])));
        assert_eq!(w.residuals.unwrap().separation, Scalar::ratio(1, 2));
    }

    #[test]
    fn taxicab_axis_vectors_are_certified() {
        let s = PNormSpace::l1(2);
        let w = s.find_witness(&v(&[(-1, 1), (0, 1)]), Tolerance::default()).unwrap();
        assert!(matches!(
            w.status,
            WitnessStatus::NoneCertified {
                reason: CertificateReason::L1SingleIntersection,
                ..
            }
        ));
    }

    #[test]
    fn sup_norm_witness_and_vertex_certificate() {
        let s = PNormSpace::linf(2);
        let w = s.find_witness(&v(&[(1, 1), (-1, 3)]), Tolerance::default()).unwrap();
        assert!(w.is_found());
        assert_eq!(w.y, Some(v(&[(1, 2), (-1, 2)])));
        let vertex = s.find_witness(&v(&[(1, 1), (-1, 1)]), Tolerance::default()).unwrap();
        assert!(vertex.is_certified_absent());
    }

    #[test]
    fn step_prefix_closest_to_half() {
        let s = StepFunctionSpace::uniform(4, PExponent::One).unwrap();
        let w = s.find_witness(&s.indicator(), Tolerance::default()).unwrap();
        assert_eq!(w.c, Some(Scalar::ratio(1, 2)));
        assert_eq!(w.y, Some(v(&[(1, 1), (1, 1), (0, 1), (0, 1)])));
    }

    #[test]
    fn step_single_cell_support_splits() {
        let s = StepFunctionSpace::uniform(4, PExponent::One).unwrap();
        let w = s
            .find_witness(&v(&[(0, 1), (0, 1), (4, 1), (0, 1)]), Tolerance::default())
            .unwrap();
        assert!(w.is_found());
        assert_eq!(w.c, Some(Scalar::ratio(1, 2)));
        assert_eq!(w.split.as_ref().unwrap().cell, 2);
        assert_eq!(w.y.unwrap().len(), 5);
    }

    #[test]
    fn non_unit_vectors_are_rejected() {
        let s = PNormSpace::l1(2);
        assert!(matches!(
            s.find_witness(&v(&[(1, 1), (1, 1)]), Tolerance::default()),
            Err(GeodesyError::NotUnitVector(_))
        ));
    }

    #[test]
    fn generic_search_finds_taxicab_witnesses_but_never_certifies() {
        let s = PNormSpace::l1(3);
        let x = v(&[(1, 3), (1, 3), (1, 3)]);
        assert!(search_witness(&s, &x, 50, 7, Tolerance::default()).unwrap().is_found());
        let e = PNormSpace::l2(2);
        let w = search_witness(&e, &v(&[(3, 5), (4, 5)]), 20, 7, Tolerance::default()).unwrap();
        assert!(matches!(w.status, WitnessStatus::NoneFound { .. }));
    }

    #[test]
    fn intermediate_point_for_a_translated_pair() {
        let s = PNormSpace::l1(2);
        let u = v(&[(1, 1), (1, 1)]);
        let w = v(&[(3, 1), (5, 1)]);
        let (c, m) = intermediate_point(&s, &u, &w, Tolerance::default()).unwrap().unwrap();
        assert_eq!(c, Scalar::ratio(1, 3));
        assert_eq!(m, v(&[(3, 1), (1, 1)]));
    }
}
