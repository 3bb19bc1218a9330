//! JSON documents: space descriptors, points and curves over any of the
//! supported space kinds.
//!
//! A curve document looks like
//!
//! ```json
//! {
//!   "space": {"kind": "pnorm", "n": 2, "p": 1},
//!   "mode": "exact",
//!   "breakpoints": [
//!     {"s": "0", "point": ["0", "0"]},
//!     {"s": "1/2", "point": ["1", "0"]},
//!     {"s": "1", "point": ["1", "1"]}
//!   ]
//! }
//! ```
//!
//! In exact mode scalars are strings (`"p/q"`, integers or decimals, all
//! read exactly) or JSON integers; JSON floats are rejected. In approx mode
//! every scalar is read as an `f64`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{AlternativeChooser, GluedChooser, GluedPoint, GluedSpace, LaaksoChooser, NormedChooser};
use crate::curve::{Breakpoint, GeodesicCurve};
use crate::error::{GeodesyError, Result};
use crate::laakso::{LaaksoGraph, LaaksoPoint};
use crate::normed::{
    FunctionSpace, NormedSpace, PExponent, PNormSpace, PiecewiseFunction, StepFunctionSpace, Vector, Witness,
    WitnessSearch,
};
use crate::scalar::{parse_rational, Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Approx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDescriptor {
    Pnorm {
        n: usize,
        p: PExponent,
    },
    /// Piecewise polynomials of degree at most 2 on `[0, 1]` with the L¹ norm.
    Pwfun {},
    Step {
        measures: Vec<Scalar>,
        p: PExponent,
    },
    Laakso {
        level: u32,
    },
    /// Two copies of `base` glued at `glue` (a point of `base`).
    Glued {
        base: Box<SpaceDescriptor>,
        glue: Value,
    },
}

#[derive(Debug, Clone)]
pub enum AnySpace {
    PNorm(PNormSpace),
    Step(StepFunctionSpace),
    Function(FunctionSpace),
    Laakso(Arc<LaaksoGraph>),
    Glued(Box<GluedSpace<AnySpace>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AnyPoint {
    Vector(Vector),
    Function(PiecewiseFunction),
    Laakso(LaaksoPoint),
    Glued(Box<GluedPoint<AnyPoint>>),
}

fn doc_err(path: &str, msg: impl fmt::Display) -> GeodesyError {
    GeodesyError::Document(format!("{path}: {msg}"))
}

/// Reads one scalar according to `mode`.
pub fn parse_scalar(v: &Value, mode: Mode, path: &str) -> Result<Scalar> {
    let exact = match v {
        Value::String(s) => parse_rational(s).map_err(|e| doc_err(path, e))?,
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()).map_err(|e| doc_err(path, e))?,
        Value::Number(n) => match mode {
            Mode::Approx => return Ok(Scalar::approx(n.as_f64().unwrap_or(f64::NAN))),
            Mode::Exact => {
                return Err(doc_err(
                    path,
                    format!("float {n} in exact mode; write it as a string such as \"{n}\""),
                ))
            }
        },
        other => {
            return Err(doc_err(
                path,
                format!("expected a number or rational string, found {other}"),
            ))
        }
    };
    Ok(match mode {
        Mode::Exact => Scalar::Exact(exact),
        Mode::Approx => Scalar::approx(Scalar::Exact(exact).to_f64()),
    })
}

impl SpaceDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            SpaceDescriptor::Pnorm { .. } => "pnorm",
            SpaceDescriptor::Pwfun {} => "pwfun",
            SpaceDescriptor::Step { .. } => "step",
            SpaceDescriptor::Laakso { .. } => "laakso",
            SpaceDescriptor::Glued { .. } => "glued",
        }
    }

    pub fn build(&self, tol: Tolerance) -> Result<AnySpace> {
        Ok(match self {
            SpaceDescriptor::Pnorm { n, p } => AnySpace::PNorm(PNormSpace::new(*n, *p)?),
            SpaceDescriptor::Pwfun {} => AnySpace::Function(FunctionSpace),
            SpaceDescriptor::Step { measures, p } => {
                let m = measures.iter().map(Scalar::to_exact).collect::<Result<Vec<_>>>()?;
                AnySpace::Step(StepFunctionSpace::new(m, *p)?)
            }
            SpaceDescriptor::Laakso { level } => AnySpace::Laakso(Arc::new(LaaksoGraph::build(*level)?)),
            SpaceDescriptor::Glued { base, glue } => {
                let base = base.build(tol)?;
                let glue = base.parse_point(glue, Mode::Exact, "space.glue")?;
                AnySpace::Glued(Box::new(GluedSpace::new(base, glue, tol)))
            }
        })
    }
}

fn wrong_kind(expected: &'static str) -> GeodesyError {
    GeodesyError::KindMismatch { expected }
}

impl AnySpace {
    pub fn kind(&self) -> &'static str {
        match self {
            AnySpace::PNorm(_) => "pnorm",
            AnySpace::Step(_) => "step",
            AnySpace::Function(_) => "pwfun",
            AnySpace::Laakso(_) => "laakso",
            AnySpace::Glued(_) => "glued",
        }
    }

    fn vector<'a>(&self, p: &'a AnyPoint) -> Result<&'a Vector> {
        match p {
            AnyPoint::Vector(v) => Ok(v),
            _ => Err(wrong_kind(self.kind())),
        }
    }

    fn function<'a>(&self, p: &'a AnyPoint) -> Result<&'a PiecewiseFunction> {
        match p {
            AnyPoint::Function(f) => Ok(f),
            _ => Err(wrong_kind(self.kind())),
        }
    }

    fn laakso<'a>(&self, p: &'a AnyPoint) -> Result<&'a LaaksoPoint> {
        match p {
            AnyPoint::Laakso(l) => Ok(l),
            _ => Err(wrong_kind(self.kind())),
        }
    }

    fn glued<'a>(&self, p: &'a AnyPoint) -> Result<&'a GluedPoint<AnyPoint>> {
        match p {
            AnyPoint::Glued(g) => Ok(g),
            _ => Err(wrong_kind(self.kind())),
        }
    }

    /// Reads a point of this space from JSON; `path` prefixes diagnostics.
    pub fn parse_point(&self, v: &Value, mode: Mode, path: &str) -> Result<AnyPoint> {
        let vector = |dim: usize| -> Result<AnyPoint> {
            let Value::Array(items) = v else {
                return Err(doc_err(path, "expected an array of coordinates"));
            };
            if items.len() != dim {
                return Err(doc_err(
                    path,
                    format!("expected {dim} coordinates, found {}", items.len()),
                ));
            }
            let coords = items
                .iter()
                .enumerate()
                .map(|(i, x)| parse_scalar(x, mode, &format!("{path}[{i}]")))
                .collect::<Result<Vector>>()?;
            Ok(AnyPoint::Vector(coords))
        };
        match self {
            AnySpace::PNorm(s) => vector(s.dim()),
            AnySpace::Step(s) => vector(s.cells()),
            AnySpace::Function(_) => {
                let f: PiecewiseFunction = serde_json::from_value(v.clone()).map_err(|e| doc_err(path, e))?;
                f.validate().map_err(|e| doc_err(path, e))?;
                Ok(AnyPoint::Function(f))
            }
            AnySpace::Laakso(g) => {
                let p: LaaksoPoint = serde_json::from_value(v.clone()).map_err(|e| doc_err(path, e))?;
                g.validate(&p).map_err(|e| doc_err(path, e))?;
                Ok(AnyPoint::Laakso(p))
            }
            AnySpace::Glued(g) => {
                let copy = v
                    .get("copy")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| doc_err(path, "expected an object with an integer field `copy`"))?;
                let inner = v.get("point").ok_or_else(|| doc_err(path, "missing field `point`"))?;
                let p = g.base().parse_point(inner, mode, &format!("{path}.point"))?;
                let copy = u8::try_from(copy).map_err(|_| doc_err(path, format!("copy index {copy} is not 0 or 1")))?;
                Ok(AnyPoint::Glued(Box::new(
                    g.point(copy, p).map_err(|e| doc_err(path, e))?,
                )))
            }
        }
    }

    /// Witness search for the unit vector `x` (normed kinds only).
    pub fn find_witness(&self, x: &AnyPoint, tol: Tolerance) -> Result<Witness<AnyPoint>> {
        match self {
            AnySpace::PNorm(s) => Ok(lift_witness(s.find_witness(self.vector(x)?, tol)?, AnyPoint::Vector)),
            AnySpace::Step(s) => Ok(lift_witness(s.find_witness(self.vector(x)?, tol)?, AnyPoint::Vector)),
            AnySpace::Function(s) => Ok(lift_witness(
                s.find_witness(self.function(x)?, tol)?,
                AnyPoint::Function,
            )),
            _ => Err(GeodesyError::Unsupported(format!(
                "witness search in a {} space",
                self.kind()
            ))),
        }
    }
}

fn lift_witness<P>(w: Witness<P>, wrap: impl Fn(P) -> AnyPoint) -> Witness<AnyPoint> {
    Witness {
        status: w.status,
        c: w.c,
        x: wrap(w.x),
        y: w.y.map(&wrap),
        residuals: w.residuals,
        split: w.split,
    }
}

impl MetricSpace for AnySpace {
    type Point = AnyPoint;

    fn distance(&self, a: &AnyPoint, b: &AnyPoint) -> Result<Scalar> {
        match self {
            AnySpace::PNorm(s) => s.distance(self.vector(a)?, self.vector(b)?),
            AnySpace::Step(s) => s.distance(self.vector(a)?, self.vector(b)?),
            AnySpace::Function(s) => s.distance(self.function(a)?, self.function(b)?),
            AnySpace::Laakso(g) => g.distance(self.laakso(a)?, self.laakso(b)?),
            AnySpace::Glued(g) => g.distance(self.glued(a)?, self.glued(b)?),
        }
    }

    fn interpolate(&self, a: &AnyPoint, b: &AnyPoint, frac: &Scalar) -> Result<AnyPoint> {
        Ok(match self {
            AnySpace::PNorm(s) => AnyPoint::Vector(s.interpolate(self.vector(a)?, self.vector(b)?, frac)?),
            AnySpace::Step(s) => AnyPoint::Vector(s.interpolate(self.vector(a)?, self.vector(b)?, frac)?),
            AnySpace::Function(s) => AnyPoint::Function(s.interpolate(self.function(a)?, self.function(b)?, frac)?),
            AnySpace::Laakso(g) => AnyPoint::Laakso(g.interpolate(self.laakso(a)?, self.laakso(b)?, frac)?),
            AnySpace::Glued(g) => AnyPoint::Glued(Box::new(g.interpolate(self.glued(a)?, self.glued(b)?, frac)?)),
        })
    }

    fn segment_meet(
        &self,
        a: (&AnyPoint, &AnyPoint),
        b: (&AnyPoint, &AnyPoint),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        match self {
            AnySpace::PNorm(s) => s.segment_meet(
                (self.vector(a.0)?, self.vector(a.1)?),
                (self.vector(b.0)?, self.vector(b.1)?),
                tol,
            ),
            AnySpace::Step(s) => s.segment_meet(
                (self.vector(a.0)?, self.vector(a.1)?),
                (self.vector(b.0)?, self.vector(b.1)?),
                tol,
            ),
            AnySpace::Function(s) => s.segment_meet(
                (self.function(a.0)?, self.function(a.1)?),
                (self.function(b.0)?, self.function(b.1)?),
                tol,
            ),
            AnySpace::Laakso(g) => g.segment_meet(
                (self.laakso(a.0)?, self.laakso(a.1)?),
                (self.laakso(b.0)?, self.laakso(b.1)?),
                tol,
            ),
            AnySpace::Glued(g) => g.segment_meet(
                (self.glued(a.0)?, self.glued(a.1)?),
                (self.glued(b.0)?, self.glued(b.1)?),
                tol,
            ),
        }
    }

    fn same_point(&self, a: &AnyPoint, b: &AnyPoint, tol: Tolerance) -> Result<bool> {
        match self {
            AnySpace::PNorm(s) => s.same_point(self.vector(a)?, self.vector(b)?, tol),
            AnySpace::Step(s) => s.same_point(self.vector(a)?, self.vector(b)?, tol),
            AnySpace::Function(s) => s.same_point(self.function(a)?, self.function(b)?, tol),
            AnySpace::Laakso(g) => g.same_point(self.laakso(a)?, self.laakso(b)?, tol),
            AnySpace::Glued(g) => g.same_point(self.glued(a)?, self.glued(b)?, tol),
        }
    }
}

/// Per-kind chooser: witnesses and two-leg curves in normed kinds, the
/// enumeration order in Laakso graphs, the base chooser in glued spaces.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnyChooser {
    pub laakso: LaaksoChooser,
}

impl AlternativeChooser<AnySpace> for AnyChooser {
    fn alternative(
        &self,
        space: &AnySpace,
        original: &GeodesicCurve<AnyPoint>,
        tol: Tolerance,
    ) -> Result<GeodesicCurve<AnyPoint>> {
        Ok(match space {
            AnySpace::PNorm(s) => {
                let c = original.try_map_points(|p| space.vector(p).cloned())?;
                NormedChooser
                    .alternative(s, &c, tol)?
                    .map_points(|p| AnyPoint::Vector(p.clone()))
            }
            AnySpace::Step(s) => {
                let c = original.try_map_points(|p| space.vector(p).cloned())?;
                NormedChooser
                    .alternative(s, &c, tol)?
                    .map_points(|p| AnyPoint::Vector(p.clone()))
            }
            AnySpace::Function(s) => {
                let c = original.try_map_points(|p| space.function(p).cloned())?;
                NormedChooser
                    .alternative(s, &c, tol)?
                    .map_points(|p| AnyPoint::Function(p.clone()))
            }
            AnySpace::Laakso(g) => {
                let c = original.try_map_points(|p| space.laakso(p).cloned())?;
                self.laakso
                    .alternative(&**g, &c, tol)?
                    .map_points(|p| AnyPoint::Laakso(p.clone()))
            }
            AnySpace::Glued(g) => {
                let c = original.try_map_points(|p| space.glued(p).cloned())?;
                GluedChooser { inner: *self }
                    .alternative(&**g, &c, tol)?
                    .map_points(|p| AnyPoint::Glued(Box::new(p.clone())))
            }
        })
    }
}

/// A normed kind of [`AnySpace`] (p-norm, step or function space), checked
/// by [`AnySpace::as_normed`].
#[derive(Debug, Clone, Copy)]
pub struct NormedAny<'a>(&'a AnySpace);

impl AnySpace {
    pub fn as_normed(&self) -> Result<NormedAny<'_>> {
        match self {
            AnySpace::PNorm(_) | AnySpace::Step(_) | AnySpace::Function(_) => Ok(NormedAny(self)),
            _ => Err(GeodesyError::Unsupported(format!(
                "a {} space is not a normed space",
                self.kind()
            ))),
        }
    }
}

const NORMED_ONLY: &str = "NormedAny wraps normed kinds only";

impl MetricSpace for NormedAny<'_> {
    type Point = AnyPoint;

    fn distance(&self, a: &AnyPoint, b: &AnyPoint) -> Result<Scalar> {
        self.0.distance(a, b)
    }

    fn interpolate(&self, a: &AnyPoint, b: &AnyPoint, frac: &Scalar) -> Result<AnyPoint> {
        self.0.interpolate(a, b, frac)
    }

    fn segment_meet(
        &self,
        a: (&AnyPoint, &AnyPoint),
        b: (&AnyPoint, &AnyPoint),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        self.0.segment_meet(a, b, tol)
    }

    fn same_point(&self, a: &AnyPoint, b: &AnyPoint, tol: Tolerance) -> Result<bool> {
        self.0.same_point(a, b, tol)
    }
}

impl NormedSpace for NormedAny<'_> {
    fn norm(&self, x: &AnyPoint) -> Result<Scalar> {
        let space = self.0;
        match space {
            AnySpace::PNorm(s) => s.norm(space.vector(x)?),
            AnySpace::Step(s) => s.norm(space.vector(x)?),
            AnySpace::Function(s) => s.norm(space.function(x)?),
            _ => unreachable!("{NORMED_ONLY}"),
        }
    }

    fn zero(&self) -> AnyPoint {
        match self.0 {
            AnySpace::PNorm(s) => AnyPoint::Vector(s.zero()),
            AnySpace::Step(s) => AnyPoint::Vector(s.zero()),
            AnySpace::Function(s) => AnyPoint::Function(s.zero()),
            _ => unreachable!("{NORMED_ONLY}"),
        }
    }

    fn add(&self, a: &AnyPoint, b: &AnyPoint) -> Result<AnyPoint> {
        let space = self.0;
        Ok(match space {
            AnySpace::PNorm(s) => AnyPoint::Vector(s.add(space.vector(a)?, space.vector(b)?)?),
            AnySpace::Step(s) => AnyPoint::Vector(s.add(space.vector(a)?, space.vector(b)?)?),
            AnySpace::Function(s) => AnyPoint::Function(s.add(space.function(a)?, space.function(b)?)?),
            _ => unreachable!("{NORMED_ONLY}"),
        })
    }

    fn sub(&self, a: &AnyPoint, b: &AnyPoint) -> Result<AnyPoint> {
        let space = self.0;
        Ok(match space {
            AnySpace::PNorm(s) => AnyPoint::Vector(s.sub(space.vector(a)?, space.vector(b)?)?),
            AnySpace::Step(s) => AnyPoint::Vector(s.sub(space.vector(a)?, space.vector(b)?)?),
            AnySpace::Function(s) => AnyPoint::Function(s.sub(space.function(a)?, space.function(b)?)?),
            _ => unreachable!("{NORMED_ONLY}"),
        })
    }

    fn scale(&self, c: &Scalar, a: &AnyPoint) -> Result<AnyPoint> {
        let space = self.0;
        Ok(match space {
            AnySpace::PNorm(s) => AnyPoint::Vector(s.scale(c, space.vector(a)?)?),
            AnySpace::Step(s) => AnyPoint::Vector(s.scale(c, space.vector(a)?)?),
            AnySpace::Function(s) => AnyPoint::Function(s.scale(c, space.function(a)?)?),
            _ => unreachable!("{NORMED_ONLY}"),
        })
    }

    fn coordinates(&self, points: &[&AnyPoint]) -> Result<Vec<Vec<Scalar>>> {
        let space = self.0;
        match space {
            AnySpace::PNorm(s) => s.coordinates(&points.iter().map(|p| space.vector(p)).collect::<Result<Vec<_>>>()?),
            AnySpace::Step(s) => s.coordinates(&points.iter().map(|p| space.vector(p)).collect::<Result<Vec<_>>>()?),
            AnySpace::Function(s) => {
                s.coordinates(&points.iter().map(|p| space.function(p)).collect::<Result<Vec<_>>>()?)
            }
            _ => unreachable!("{NORMED_ONLY}"),
        }
    }
}

impl WitnessSearch for NormedAny<'_> {
    fn find_witness(&self, x: &AnyPoint, tol: Tolerance) -> Result<Witness<AnyPoint>> {
        self.0.find_witness(x, tol)
    }
}

#[derive(Deserialize)]
struct RawBreakpoint {
    s: Value,
    point: Value,
}

#[derive(Deserialize)]
struct RawCurve {
    space: SpaceDescriptor,
    #[serde(default)]
    mode: Mode,
    breakpoints: Vec<RawBreakpoint>,
}

/// A curve together with the space it lives in.
#[derive(Debug, Clone)]
pub struct CurveDocument {
    pub descriptor: SpaceDescriptor,
    pub mode: Mode,
    pub space: AnySpace,
    pub curve: GeodesicCurve<AnyPoint>,
}

#[derive(Serialize)]
struct BreakpointOut<'a> {
    s: &'a Scalar,
    point: &'a AnyPoint,
}

#[derive(Serialize)]
struct CurveOut<'a> {
    space: &'a SpaceDescriptor,
    mode: Mode,
    breakpoints: Vec<BreakpointOut<'a>>,
}

impl CurveDocument {
    pub fn parse(text: &str, tol: Tolerance) -> Result<Self> {
        let raw: RawCurve = serde_json::from_str(text).map_err(|e| GeodesyError::Document(e.to_string()))?;
        let space = raw.space.build(tol).map_err(|e| doc_err("space", e))?;
        let breakpoints = raw
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let s = parse_scalar(&b.s, raw.mode, &format!("breakpoints[{i}].s"))?;
                let p = space.parse_point(&b.point, raw.mode, &format!("breakpoints[{i}].point"))?;
                Ok(Breakpoint::new(s, p))
            })
            .collect::<Result<Vec<_>>>()?;
        let curve = GeodesicCurve::new(breakpoints).map_err(|e| doc_err("breakpoints", e))?;
        Ok(CurveDocument {
            descriptor: raw.space,
            mode: raw.mode,
            space,
            curve,
        })
    }

    /// Same space and mode, different curve.
    pub fn with_curve(&self, curve: GeodesicCurve<AnyPoint>) -> Self {
        CurveDocument { curve, ..self.clone() }
    }

    pub fn to_value(&self) -> Value {
        let out = CurveOut {
            space: &self.descriptor,
            mode: self.mode,
            breakpoints: self
                .curve
                .breakpoints()
                .iter()
                .map(|b| BreakpointOut {
                    s: &b.param,
                    point: &b.point,
                })
                .collect(),
        };
        serde_json::to_value(out).expect("curve documents serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ParamGrid;
    use crate::verify::verify_geodesic;

    const TWO_LEG: &str = r#"{
        "space": {"kind": "pnorm", "n": 2, "p": 1},
        "breakpoints": [
            {"s": "0", "point": ["0", "0"]},
            {"s": "1/2", "point": ["1", 0]},
            {"s": 1, "point": ["1", "1"]}
        ]
    }"#;

    #[test]
    fn round_trip_and_verify() {
        let tol = Tolerance::default();
        let doc = CurveDocument::parse(TWO_LEG, tol).unwrap();
        assert!(
            verify_geodesic(&doc.space, &doc.curve, &ParamGrid::uniform(10).unwrap(), tol)
                .unwrap()
                .passed()
        );
        let text = doc.to_value().to_string();
        assert!(text.contains(r#""s":"1/2""#));
        let again = CurveDocument::parse(&text, tol).unwrap();
        assert_eq!(again.curve, doc.curve);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let tol = Tolerance::default();
        let bad = TWO_LEG.replace(r#"["1", 0]"#, r#"["1", 0.5]"#);
        let err = CurveDocument::parse(&bad, tol).unwrap_err().to_string();
        assert!(err.contains("breakpoints[1].point[1]"), "{err}");
        let approx = bad.replace(r#""breakpoints""#, r#""mode": "approx", "breakpoints""#);
        assert!(CurveDocument::parse(&approx, tol).is_ok());
        let err = CurveDocument::parse(&TWO_LEG[..40], tol).unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
        let err = CurveDocument::parse(&TWO_LEG.replace(r#"["0", "0"]"#, r#"["0"]"#), tol).unwrap_err();
        assert!(err.to_string().contains("expected 2 coordinates"));
    }

    #[test]
    fn glued_and_laakso_documents() {
        let tol = Tolerance::default();
        let glued = r#"{
            "space": {"kind": "glued", "base": {"kind": "pnorm", "n": 2, "p": 1}, "glue": ["0", "0"]},
            "breakpoints": [
                {"s": "0", "point": {"copy": 0, "point": ["1", "0"]}},
                {"s": "1/2", "point": {"copy": 1, "point": ["0", "0"]}},
                {"s": "1", "point": {"copy": 1, "point": ["0", "1"]}}
            ]
        }"#;
        let doc = CurveDocument::parse(glued, tol).unwrap();
        // the glue point is stored in copy 0 whatever the input says
        assert_eq!(
            doc.curve.breakpoints()[1].point,
            AnyPoint::Glued(Box::new(GluedPoint {
                copy: 0,
                point: AnyPoint::Vector(vec![Scalar::zero(), Scalar::zero()])
            }))
        );
        assert!(
            verify_geodesic(&doc.space, &doc.curve, &ParamGrid::uniform(8).unwrap(), tol)
                .unwrap()
                .passed()
        );

        let laakso = r#"{
            "space": {"kind": "laakso", "level": 1},
            "breakpoints": [
                {"s": "0", "point": {"vertex": 0}},
                {"s": "1", "point": {"vertex": 1}}
            ]
        }"#;
        let doc = CurveDocument::parse(laakso, tol).unwrap();
        assert!(
            !verify_geodesic(&doc.space, &doc.curve, &ParamGrid::uniform(4).unwrap(), tol).is_ok_and(|v| v.passed())
        );
    }

    #[test]
    fn normed_view_runs_generic_constructions() {
        let tol = Tolerance::default();
        let space = SpaceDescriptor::Pnorm {
            n: 2,
            p: PExponent::One,
        }
        .build(tol)
        .unwrap();
        let normed = space.as_normed().unwrap();
        let u = AnyPoint::Vector(vec![Scalar::zero(), Scalar::zero()]);
        let v = AnyPoint::Vector(vec![Scalar::one(), Scalar::one()]);
        let (c, m) = crate::normed::intermediate_point(&normed, &u, &v, tol)
            .unwrap()
            .unwrap();
        assert_eq!(c, Scalar::ratio(1, 2));
        assert_eq!(m, AnyPoint::Vector(vec![Scalar::one(), Scalar::zero()]));
        assert!(SpaceDescriptor::Laakso { level: 1 }
            .build(tol)
            .unwrap()
            .as_normed()
            .is_err());
    }

    #[test]
    fn kind_mismatch() {
        let space = SpaceDescriptor::Pwfun {}.build(Tolerance::default()).unwrap();
        let v = AnyPoint::Vector(vec![Scalar::one()]);
        assert_eq!(
            space.distance(&v, &v),
            Err(GeodesyError::KindMismatch { expected: "pwfun" })
        );
    }
}
