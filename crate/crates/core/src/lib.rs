//! Construction, verification and enumeration of minimising geodesics.
//!
//! A curve `γ: [0, 1] → X` is a geodesic from `u = γ(0)` to `v = γ(1)` when
//! `d(γ(s), γ(t)) = |s − t|·d(u, v)` for all `s, t`. The crate models
//! several metric spaces (p-norm spaces, step and piecewise-polynomial
//! function spaces, finite-level Laakso graphs, glued double spaces), checks
//! that identity exactly on rational data, and builds families of distinct
//! geodesics.

pub mod constructions;
pub mod curve;
pub mod document;
pub mod error;
pub mod laakso;
pub mod normed;
pub mod scalar;
pub mod space;
pub mod verify;

pub use curve::{Breakpoint, GeodesicCurve, ParamGrid, DEFAULT_RESOLUTION};
pub use document::{AnyChooser, AnyPoint, AnySpace, CurveDocument, Mode, NormedAny, SpaceDescriptor};
pub use error::{GeodesyError, Result};
pub use scalar::{Scalar, Tolerance, DEFAULT_TOLERANCE};
pub use space::{MetricSpace, SegmentMeet};
pub use verify::{
    curves_disjoint, curves_distinct, first_deviation, verify_geodesic, verify_geodesic_upper, DeviationBracket,
    Disjointness, Distinctness, Outcome, Verdict, VerdictRecord, Violation,
};
