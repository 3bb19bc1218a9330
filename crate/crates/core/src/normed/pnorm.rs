use serde::{Deserialize, Serialize};

use super::{
    check_dim, normed_distance, normed_segment_meet, vec_add, vec_scale, vec_sub, weighted_norm, NormedSpace,
    PExponent, Vector,
};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

/// `(Rⁿ, ‖·‖_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PNormSpace {
    pub n: usize,
    pub p: PExponent,
}

impl PNormSpace {
    pub fn new(n: usize, p: PExponent) -> Result<Self> {
        if n == 0 {
            return Err(GeodesyError::InvalidSpace("dimension must be positive".into()));
        }
        Ok(PNormSpace { n, p })
    }

    pub fn l1(n: usize) -> Self {
        PNormSpace { n, p: PExponent::One }
    }

    pub fn l2(n: usize) -> Self {
        PNormSpace {
            n,
            p: PExponent::Finite(2.0),
        }
    }

    pub fn linf(n: usize) -> Self {
        PNormSpace {
            n,
            p: PExponent::Infinity,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        (0..self.n)
            .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
            .collect()
    }
}

impl MetricSpace for PNormSpace {
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

impl NormedSpace for PNormSpace {
    fn norm(&self, x: &Vector) -> Result<Scalar> {
        check_dim(self.n, x)?;
        Ok(weighted_norm(x, None, self.p))
    }

    fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.n]
    }

    fn add(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        check_dim(self.n, a)?;
        check_dim(self.n, b)?;
        Ok(vec_add(a, b))
    }

    fn sub(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        check_dim(self.n, a)?;
        check_dim(self.n, b)?;
        Ok(vec_sub(a, b))
    }

    fn scale(&self, c: &Scalar, a: &Vector) -> Result<Vector> {
        check_dim(self.n, a)?;
        Ok(vec_scale(c, a))
    }

    fn coordinates(&self, points: &[&Vector]) -> Result<Vec<Vec<Scalar>>> {
        points
            .iter()
            .map(|p| check_dim(self.n, p).map(|_| p.to_vec()))
            .collect()
    }
}
