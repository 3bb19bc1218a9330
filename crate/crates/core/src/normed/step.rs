use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{
    check_dim, normed_distance, normed_segment_meet, vec_add, vec_scale, vec_sub, weighted_norm, NormedSpace,
    PExponent, Vector,
};
use crate::error::{GeodesyError, Result};
use crate::scalar::{rational_serde, Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

/// L^p(K) restricted to functions constant on each cell of a fixed finite
/// partition of `K`; a point is the vector of cell values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunctionSpace {
    #[serde(with = "measures_serde")]
    measures: Vec<BigRational>,
    pub p: PExponent,
}

mod measures_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let scalars: Vec<Scalar> = m.iter().cloned().map(Scalar::Exact).collect();
        scalars.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        #[derive(Deserialize)]
        struct Exact(#[serde(with = "rational_serde")] BigRational);
        let v: Vec<Exact> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|e| e.0).collect())
    }
}

/// Records that cell `cell` was split into a first part of relative size
/// `fraction` and a second part holding the rest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSplit {
    pub cell: usize,
    #[serde(with = "rational_serde")]
    pub fraction: BigRational,
}

impl StepFunctionSpace {
    pub fn new(measures: Vec<BigRational>, p: PExponent) -> Result<Self> {
        if measures.is_empty() {
            return Err(GeodesyError::InvalidSpace("partition needs at least one cell".into()));
        }
        if let Some(bad) = measures.iter().find(|m| !m.is_positive()) {
            return Err(GeodesyError::InvalidSpace(format!(
                "cell measures must be positive, got {bad}"
            )));
        }
        Ok(StepFunctionSpace { measures, p })
    }

    /// `m` cells of measure `1/m` each.
    pub fn uniform(m: usize, p: PExponent) -> Result<Self> {
        let cell = BigRational::new(1.into(), (m.max(1) as i64).into());
        Self::new(vec![cell; m], p)
    }

    pub fn measures(&self) -> &[BigRational] {
        &self.measures
    }

    pub fn cells(&self) -> usize {
        self.measures.len()
    }

    pub fn total_measure(&self) -> BigRational {
        self.measures.iter().sum()
    }

    pub fn has_unit_measure(&self) -> bool {
        self.total_measure().is_one()
    }

    /// The indicator function χ_K.
    pub fn indicator(&self) -> Vector {
        vec![Scalar::one(); self.cells()]
    }

    pub fn with_exponent(&self, p: PExponent) -> Self {
        StepFunctionSpace {
            measures: self.measures.clone(),
            p,
        }
    }

    /// Splits one cell in two, the first part carrying `fraction` of its
    /// measure.
    pub fn split_cell(&self, split: &CellSplit) -> Result<Self> {
        if split.cell >= self.cells() {
            return Err(GeodesyError::InvalidSpace(format!("no cell {}", split.cell)));
        }
        if !split.fraction.is_positive() || split.fraction >= BigRational::one() {
            return Err(GeodesyError::InvalidSpace("split fraction must lie in (0, 1)".into()));
        }
        let mut measures = self.measures.clone();
        let whole = measures[split.cell].clone();
        measures[split.cell] = &whole * &split.fraction;
        measures.insert(split.cell + 1, &whole * (BigRational::one() - &split.fraction));
        Self::new(measures, self.p)
    }

    /// Re-expresses a point of this space in the refined partition.
    pub fn refine_point(&self, x: &Vector, split: &CellSplit) -> Result<Vector> {
        check_dim(self.cells(), x)?;
        let mut out = x.clone();
        out.insert(split.cell + 1, x[split.cell].clone());
        Ok(out)
    }

    fn check_point(&self, x: &Vector) -> Result<()> {
        check_dim(self.cells(), x)
    }
}

impl MetricSpace for StepFunctionSpace {
    type Point = Vector;

    fn distance(&self, a: &Vector, b: &Vector) -> Result<Scalar> {
        normed_distance(self, a, b)
    }

    fn interpolate(&self, a: &Vector, b: &Vector, frac: &Scalar) -> Result<Vector> {
        self.lerp(a, b, frac)
    }

    fn segment_meet(
        &self,
        a: (&Vector, &Vector),
        b: (&Vector, &Vector),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        normed_segment_meet(self, a, b, tol)
    }
}

impl NormedSpace for StepFunctionSpace {
    fn norm(&self, x: &Vector) -> Result<Scalar> {
        self.check_point(x)?;
        Ok(weighted_norm(x, Some(&self.measures), self.p))
    }

    fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.cells()]
    }

    fn add(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.check_point(a)?;
        self.check_point(b)?;
        Ok(vec_add(a, b))
    }

    fn sub(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.check_point(a)?;
        self.check_point(b)?;
        Ok(vec_sub(a, b))
    }

    fn scale(&self, c: &Scalar, a: &Vector) -> Result<Vector> {
        self.check_point(a)?;
        Ok(vec_scale(c, a))
    }

    fn coordinates(&self, points: &[&Vector]) -> Result<Vec<Vec<Scalar>>> {
        points.iter().map(|p| self.check_point(p).map(|_| p.to_vec())).collect()
    }
}

impl StepFunctionSpace {
    /// Total mass `∫|x|` of the first `k` cells.
    pub fn prefix_mass(&self, x: &Vector, k: usize) -> Scalar {
        self.measures
            .iter()
            .zip(x)
            .take(k)
            .map(|(m, v)| Scalar::Exact(m.clone()) * v.abs())
            .sum()
    }

    pub fn is_constant(&self, x: &Vector, tol: Tolerance) -> bool {
        x.iter().all(|v| v.eq_tol(&x[0], tol)) || x.is_empty()
    }
}
