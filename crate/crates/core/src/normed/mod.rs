//! Normed vector spaces: p-norm spaces `(Rⁿ, ‖·‖_p)`, step functions on a
//! finite partition, and continuous piecewise-polynomial functions under the
//! L¹ norm; plus two-leg geodesics, λ-families, witness search and the
//! uniqueness certificates.

pub mod affine;
pub mod certificates;
pub mod geodesics;
pub mod pnorm;
pub mod pwfun;
pub mod step;
pub mod witness;

use std::fmt;

use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

pub use certificates::{
    euclid_max_point, exact_l1_plane_solutions, exact_l1_plane_unique, holder_negative_check, uniqueness_certificate,
    CertificateStatus, HolderReport, UniquenessReport,
};
pub use geodesics::{family_geodesic, segment_geodesic, two_leg_geodesic};
pub use pnorm::PNormSpace;
pub use pwfun::{FunctionSpace, PiecewiseFunction, Poly2};
pub use step::{CellSplit, StepFunctionSpace};
pub use witness::{
    intermediate_point, is_multigeodesic, sample_unit_vectors, search_witness, validate_witness, CertificateReason,
    MultigeodesicReport, MultigeodesicVerdict, Witness, WitnessResiduals, WitnessSearch, WitnessStatus,
};

/// Points of `Rⁿ`-like spaces.
pub type Vector = Vec<Scalar>;

/// A real normed vector space with the metric `d(a, b) = ‖a − b‖`.
pub trait NormedSpace: MetricSpace {
    fn norm(&self, x: &Self::Point) -> Result<Scalar>;
    fn zero(&self) -> Self::Point;
    fn add(&self, a: &Self::Point, b: &Self::Point) -> Result<Self::Point>;
    fn sub(&self, a: &Self::Point, b: &Self::Point) -> Result<Self::Point>;
    fn scale(&self, c: &Scalar, a: &Self::Point) -> Result<Self::Point>;

    /// Linear coordinates of the given points in one common basis.
    fn coordinates(&self, points: &[&Self::Point]) -> Result<Vec<Vec<Scalar>>>;

    /// `(1 − λ) a + λ b`.
    fn lerp(&self, a: &Self::Point, b: &Self::Point, lambda: &Scalar) -> Result<Self::Point> {
        let delta = self.sub(b, a)?;
        self.add(a, &self.scale(lambda, &delta)?)
    }
}

pub(crate) fn normed_distance<S: NormedSpace>(space: &S, a: &S::Point, b: &S::Point) -> Result<Scalar> {
    space.norm(&space.sub(a, b)?)
}

pub(crate) fn normed_segment_meet<S: NormedSpace>(
    space: &S,
    a: (&S::Point, &S::Point),
    b: (&S::Point, &S::Point),
    tol: Tolerance,
) -> Result<Option<SegmentMeet>> {
    let c = space.coordinates(&[a.0, a.1, b.0, b.1])?;
    Ok(Some(affine::segment_meet(&c[0], &c[1], &c[2], &c[3], tol)))
}

pub(crate) fn check_dim(expected: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != expected {
        return Err(GeodesyError::DimensionMismatch { expected, got: v.len() });
    }
    Ok(())
}

pub(crate) fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// The exponent `p ∈ [1, ∞]` of an L^p-type norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    One,
    /// `1 < p < ∞`
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(PExponent::One)
        } else if p == f64::INFINITY {
            Ok(PExponent::Infinity)
        } else if p.is_finite() && p > 1.0 {
            Ok(PExponent::Finite(p))
        } else {
            Err(GeodesyError::InvalidSpace(format!("p must lie in [1, ∞], got {p}")))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PExponent::One => 1.0,
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }

    /// Norms with polyhedral unit balls stay exact on exact input.
    pub fn is_polyhedral(self) -> bool {
        matches!(self, PExponent::One | PExponent::Infinity)
    }

    pub fn is_strictly_convex(self) -> bool {
        matches!(self, PExponent::Finite(_))
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::One => write!(f, "1"),
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::One => s.serialize_u64(1),
            PExponent::Finite(p) => s.serialize_f64(*p),
            PExponent::Infinity => s.serialize_str("inf"),
        }
    }
}

struct PVisitor;

impl Visitor<'_> for PVisitor {
    type Value = PExponent;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number p >= 1 or \"inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<PExponent, E> {
        PExponent::new(v).map_err(E::custom)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<PExponent, E> {
        self.visit_f64(v as f64)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<PExponent, E> {
        self.visit_f64(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<PExponent, E> {
        match v.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(PExponent::Infinity),
            other => other.parse::<f64>().map_err(E::custom).and_then(|p| self.visit_f64(p)),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(PVisitor)
    }
}

/// `(Σ wᵢ |vᵢ|^p)^{1/p}` (or `max |vᵢ|` for `p = ∞`), with unit weights when
/// `weights` is `None`. Exact for `p ∈ {1, ∞}` and for `p = 2` when the
/// result is rational.
pub(crate) fn weighted_norm(values: &[Scalar], weights: Option<&[BigRational]>, p: PExponent) -> Scalar {
    let weight = |i: usize| -> Scalar { weights.map_or_else(Scalar::one, |w| Scalar::Exact(w[i].clone())) };
    match p {
        PExponent::One => values.iter().enumerate().map(|(i, v)| weight(i) * v.abs()).sum(),
        PExponent::Infinity => values.iter().map(Scalar::abs).fold(Scalar::zero(), Scalar::max),
        PExponent::Finite(2.0) => values
            .iter()
            .enumerate()
            .map(|(i, v)| weight(i) * (v * v))
            .sum::<Scalar>()
            .sqrt(),
        PExponent::Finite(q) => {
            let sum: f64 = values
                .iter()
                .enumerate()
                .map(|(i, v)| weight(i).to_f64() * v.to_f64().abs().powf(q))
                .sum();
            Scalar::Approx(sum.powf(1.0 / q))
        }
    }
}
