//! Continuous piecewise-polynomial functions on `[0, 1]` of degree at most
//! two with rational breakpoints and coefficients, normed by
//! `‖f‖₁ = ∫₀¹ |f(x)| dx`.
//!
//! The class is closed under `g ↦ x·g` for piecewise-linear `g`. The L¹
//! integral splits each piece at the real roots of its polynomial; rational
//! roots keep the result exact, an irrational root makes it approximate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{normed_distance, normed_segment_meet, NormedSpace};
use crate::error::{GeodesyError, Result};
use crate::scalar::{rational_serde, rational_to_f64, Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `c0 + c1·x + c2·x²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly2(
    #[serde(with = "rational_serde")] pub BigRational,
    #[serde(with = "rational_serde")] pub BigRational,
    #[serde(with = "rational_serde")] pub BigRational,
);

enum Roots {
    Rational(Vec<BigRational>),
    Irrational(Vec<f64>),
}

impl Poly2 {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational) -> Self {
        Poly2(c0, c1, c2)
    }

    pub fn constant(c: BigRational) -> Self {
        Poly2(c, q(0), q(0))
    }

    pub fn linear(c0: BigRational, c1: BigRational) -> Self {
        Poly2(c0, c1, q(0))
    }

    pub fn zero() -> Self {
        Poly2(q(0), q(0), q(0))
    }

    pub fn degree(&self) -> usize {
        if !self.2.is_zero() {
            2
        } else if !self.1.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        &self.0 + x * (&self.1 + x * &self.2)
    }

    fn eval_f64(&self, x: f64) -> f64 {
        rational_to_f64(&self.0) + x * (rational_to_f64(&self.1) + x * rational_to_f64(&self.2))
    }

    fn add(&self, o: &Poly2) -> Poly2 {
        Poly2(&self.0 + &o.0, &self.1 + &o.1, &self.2 + &o.2)
    }

    fn sub(&self, o: &Poly2) -> Poly2 {
        Poly2(&self.0 - &o.0, &self.1 - &o.1, &self.2 - &o.2)
    }

    fn scale(&self, c: &BigRational) -> Poly2 {
        Poly2(c * &self.0, c * &self.1, c * &self.2)
    }

    fn mul_x(&self) -> Result<Poly2> {
        if !self.2.is_zero() {
            return Err(GeodesyError::Unsupported(
                "x·f would leave the degree-2 function class".into(),
            ));
        }
        Ok(Poly2(q(0), self.0.clone(), self.1.clone()))
    }

    /// `F(x) = c0·x + c1·x²/2 + c2·x³/3`.
    fn antiderivative(&self, x: &BigRational) -> BigRational {
        x * (&self.0 + x * (&self.1 / q(2) + x * &self.2 / q(3)))
    }

    fn antiderivative_f64(&self, x: f64) -> f64 {
        x * (rational_to_f64(&self.0) + x * (rational_to_f64(&self.1) / 2.0 + x * rational_to_f64(&self.2) / 3.0))
    }

    pub fn integral(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.antiderivative(b) - self.antiderivative(a)
    }

    /// Real roots strictly inside `(a, b)`, sorted.
    fn roots_in(&self, a: &BigRational, b: &BigRational) -> Roots {
        let inside = |r: &BigRational| r > a && r < b;
        if self.2.is_zero() {
            if self.1.is_zero() {
                return Roots::Rational(vec![]);
            }
            let r = -&self.0 / &self.1;
            return Roots::Rational(if inside(&r) { vec![r] } else { vec![] });
        }
        let disc = &self.1 * &self.1 - q(4) * &self.2 * &self.0;
        if disc.is_negative() {
            return Roots::Rational(vec![]);
        }
        let two_a = q(2) * &self.2;
        let (n, d) = (disc.numer(), disc.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            let sq = BigRational::new(rn, rd);
            let mut roots = vec![(-&self.1 - &sq) / &two_a, (-&self.1 + &sq) / &two_a];
            roots.sort();
            roots.dedup();
            roots.retain(inside);
            Roots::Rational(roots)
        } else {
            let sq = rational_to_f64(&disc).sqrt();
            let (c1, ta) = (rational_to_f64(&self.1), rational_to_f64(&two_a));
            let mut roots = vec![(-c1 - sq) / ta, (-c1 + sq) / ta];
            roots.sort_by(|x, y| x.total_cmp(y));
            let (af, bf) = (rational_to_f64(a), rational_to_f64(b));
            roots.retain(|r| *r > af && *r < bf);
            if roots.is_empty() {
                Roots::Rational(vec![])
            } else {
                Roots::Irrational(roots)
            }
        }
    }

    /// `∫_a^b |p(x)| dx`.
    pub fn abs_integral(&self, a: &BigRational, b: &BigRational) -> Scalar {
        match self.roots_in(a, b) {
            Roots::Rational(roots) => {
                let mut cuts = vec![a.clone()];
                cuts.extend(roots);
                cuts.push(b.clone());
                Scalar::Exact(cuts.windows(2).map(|w| self.integral(&w[0], &w[1]).abs()).sum())
            }
            Roots::Irrational(roots) => {
                let mut cuts = vec![rational_to_f64(a)];
                cuts.extend(roots);
                cuts.push(rational_to_f64(b));
                Scalar::Approx(
                    cuts.windows(2)
                        .map(|w| (self.antiderivative_f64(w[1]) - self.antiderivative_f64(w[0])).abs())
                        .sum(),
                )
            }
        }
    }
}

/// A piecewise polynomial on `[0, 1]`: piece `i` lives on
/// `[breakpoints[i], breakpoints[i + 1]]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseFunction {
    #[serde(with = "breakpoints_serde")]
    breakpoints: Vec<BigRational>,
    pieces: Vec<Poly2>,
    #[serde(default = "default_true")]
    continuous: bool,
}

fn default_true() -> bool {
    true
}

mod breakpoints_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Scalar> = m.iter().cloned().map(Scalar::Exact).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        #[derive(Deserialize)]
        struct Exact(#[serde(with = "rational_serde")] BigRational);
        let v: Vec<Exact> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|e| e.0).collect())
    }
}

impl PiecewiseFunction {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<Poly2>, continuous: bool) -> Result<Self> {
        let f = PiecewiseFunction {
            breakpoints,
            pieces,
            continuous,
        };
        f.validate()?;
        Ok(f)
    }

    /// Checks the partition and, when flagged continuous, continuity at
    /// interior breakpoints. Used after deserialisation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GeodesyError::InvalidPoint(m));
        let bps = &self.breakpoints;
        if bps.len() < 2 || !bps[0].is_zero() || !bps[bps.len() - 1].is_one() {
            return bad("breakpoints must run from 0 to 1".into());
        }
        if bps.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing".into());
        }
        if self.pieces.len() != bps.len() - 1 {
            return bad(format!(
                "{} breakpoints need {} pieces, got {}",
                bps.len(),
                bps.len() - 1,
                self.pieces.len()
            ));
        }
        if self.continuous {
            for (i, x) in bps.iter().enumerate().skip(1).take(bps.len() - 2) {
                if self.pieces[i - 1].eval(x) != self.pieces[i].eval(x) {
                    return bad(format!("discontinuous at x = {x}"));
                }
            }
        }
        Ok(())
    }

    pub fn polynomial(p: Poly2) -> Self {
        PiecewiseFunction {
            breakpoints: vec![q(0), q(1)],
            pieces: vec![p],
            continuous: true,
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Poly2::zero())
    }

    /// Continuous piecewise-linear interpolant through `(xᵢ, yᵢ)` with
    /// `x₀ = 0 < … < x_k = 1`.
    pub fn piecewise_linear(nodes: &[(BigRational, BigRational)]) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(GeodesyError::InvalidPoint("need at least two nodes".into()));
        }
        let pieces = nodes
            .windows(2)
            .map(|w| {
                let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
                let slope = (y1 - y0) / (x1 - x0);
                Poly2::linear(y0 - &slope * x0, slope)
            })
            .collect();
        Self::new(nodes.iter().map(|(x, _)| x.clone()).collect(), pieces, true)
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly2] {
        &self.pieces
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(Poly2::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let i = self.breakpoints.partition_point(|b| b <= x).clamp(1, self.pieces.len());
        self.pieces[i - 1].eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let i = self
            .breakpoints
            .partition_point(|b| rational_to_f64(b) <= x)
            .clamp(1, self.pieces.len());
        self.pieces[i - 1].eval_f64(x)
    }

    fn piece_at(&self, a: &BigRational, b: &BigRational) -> &Poly2 {
        let mid = (a + b) / q(2);
        let i = self
            .breakpoints
            .partition_point(|x| *x <= mid)
            .clamp(1, self.pieces.len());
        &self.pieces[i - 1]
    }

    /// Union of the breakpoints of all given functions.
    pub fn common_breakpoints(fs: &[&PiecewiseFunction]) -> Vec<BigRational> {
        let mut all: Vec<BigRational> = fs.iter().flat_map(|f| f.breakpoints.iter().cloned()).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Pieces of this function on a finer partition containing its own
    /// breakpoints.
    pub fn pieces_on(&self, partition: &[BigRational]) -> Vec<Poly2> {
        partition
            .windows(2)
            .map(|w| self.piece_at(&w[0], &w[1]).clone())
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Poly2, &Poly2) -> Poly2) -> Self {
        let partition = Self::common_breakpoints(&[self, other]);
        let pieces = self
            .pieces_on(&partition)
            .iter()
            .zip(other.pieces_on(&partition).iter())
            .map(|(a, b)| op(a, b))
            .collect();
        PiecewiseFunction {
            breakpoints: partition,
            pieces,
            continuous: self.continuous && other.continuous,
        }
        .merged()
    }

    /// Merges adjacent identical pieces.
    fn merged(mut self) -> Self {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut pieces: Vec<Poly2> = Vec::new();
        for (i, p) in self.pieces.drain(..).enumerate() {
            if pieces.last() == Some(&p) {
                *bps.last_mut().unwrap() = self.breakpoints[i + 1].clone();
            } else {
                pieces.push(p);
                bps.push(self.breakpoints[i + 1].clone());
            }
        }
        PiecewiseFunction {
            breakpoints: bps,
            pieces,
            continuous: self.continuous,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, Poly2::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, Poly2::sub)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PiecewiseFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
            continuous: self.continuous,
        }
        .merged()
    }

    /// `x ↦ x·f(x)`; requires every piece to have degree at most one.
    pub fn mul_x(&self) -> Result<Self> {
        Ok(PiecewiseFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(Poly2::mul_x).collect::<Result<_>>()?,
            continuous: self.continuous,
        })
    }

    /// Signed integral `∫₀¹ f`.
    pub fn integral(&self) -> BigRational {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| p.integral(&w[0], &w[1]))
            .sum()
    }

    /// `∫₀¹ |f|`.
    pub fn l1_norm(&self) -> Scalar {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| p.abs_integral(&w[0], &w[1]))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| *p == Poly2::zero())
    }
}

impl PartialEq for PiecewiseFunction {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// `(C[0, 1], ‖·‖₁)` modelled by [`PiecewiseFunction`]s.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpace;

fn exact_factor(c: &Scalar) -> Result<BigRational> {
    c.as_exact()
        .cloned()
        .ok_or_else(|| GeodesyError::NotExact(format!("function-space scalars must be exact, got {c}")))
}

impl MetricSpace for FunctionSpace {
    type Point = PiecewiseFunction;

    fn distance(&self, a: &PiecewiseFunction, b: &PiecewiseFunction) -> Result<Scalar> {
        normed_distance(self, a, b)
    }

    fn interpolate(&self, a: &PiecewiseFunction, b: &PiecewiseFunction, frac: &Scalar) -> Result<PiecewiseFunction> {
        self.lerp(a, b, frac)
    }

    fn segment_meet(
        &self,
        a: (&PiecewiseFunction, &PiecewiseFunction),
        b: (&PiecewiseFunction, &PiecewiseFunction),
        tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        normed_segment_meet(self, a, b, tol)
    }

    fn same_point(&self, a: &PiecewiseFunction, b: &PiecewiseFunction, _tol: Tolerance) -> Result<bool> {
        Ok(a == b)
    }
}

impl NormedSpace for FunctionSpace {
    fn norm(&self, x: &PiecewiseFunction) -> Result<Scalar> {
        Ok(x.l1_norm())
    }

    fn zero(&self) -> PiecewiseFunction {
        PiecewiseFunction::zero()
    }

    fn add(&self, a: &PiecewiseFunction, b: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        Ok(a.add(b))
    }

    fn sub(&self, a: &PiecewiseFunction, b: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        Ok(a.sub(b))
    }

    fn scale(&self, c: &Scalar, a: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        Ok(a.scale(&exact_factor(c)?))
    }

    fn coordinates(&self, points: &[&PiecewiseFunction]) -> Result<Vec<Vec<Scalar>>> {
        let partition = PiecewiseFunction::common_breakpoints(points);
        Ok(points
            .iter()
            .map(|f| {
                f.pieces_on(&partition)
                    .into_iter()
                    .flat_map(|p| [p.0, p.1, p.2])
                    .map(Scalar::Exact)
                    .collect()
            })
            .collect())
    }
}
