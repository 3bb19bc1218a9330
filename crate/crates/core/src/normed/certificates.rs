//! Negative results: finite-dimensional spaces fail to be multigeodesic at
//! a point of maximal Euclidean norm on the unit sphere, and step-function
//! L^p spaces with `p > 1` admit no witness for the constant function.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{NormedSpace, PExponent, PNormSpace, StepFunctionSpace, Vector};
use crate::error::{GeodesyError, Result};
use crate::scalar::{Scalar, Tolerance};

/// A unit vector maximising the Euclidean norm over the unit ball, ties
/// broken towards the lexicographically largest maximiser.
///
/// ℓ¹ (and any `p ≤ 2`) gives `e₁`; ℓ∞ gives `(1, …, 1)`; `2 < p < ∞` gives
/// `n^{-1/p}·(1, …, 1)` in approximate arithmetic.
pub fn euclid_max_point(space: &PNormSpace) -> Vector {
    match space.p {
        PExponent::One => space.basis_vector(0),
        PExponent::Infinity => vec![Scalar::one(); space.n],
        PExponent::Finite(p) if p <= 2.0 => space.basis_vector(0),
        PExponent::Finite(p) => vec![Scalar::Approx((space.n as f64).powf(-1.0 / p)); space.n],
    }
}

fn norm_f64(p: PExponent, v: &[f64]) -> f64 {
    match p {
        PExponent::One => v.iter().map(|x| x.abs()).sum(),
        PExponent::Infinity => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        PExponent::Finite(q) => v.iter().map(|x| x.abs().powf(q)).sum::<f64>().powf(1.0 / q),
    }
}

fn dist_f64(p: PExponent, a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm_f64(p, &d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    /// Every candidate collapsed to `Cx` (and the exact check, if run,
    /// agreed).
    Certified,
    /// A candidate `y ≠ Cx` was found.
    Refuted,
    /// The sampler produced no candidate at all.
    NoCandidates,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub status: CertificateStatus,
    pub samples: usize,
    pub candidates: usize,
    pub collapsed: usize,
    /// Largest `‖y − Cx‖` over accepted candidates.
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Bound on `‖y − Cx‖` for a candidate to count as collapsed.
    pub collapse_tolerance: f64,
    pub exact_checks: usize,
    /// Outcome of the exact sign-cell analysis (ℓ¹ plane only).
    pub exact_unique: Option<bool>,
    /// A non-collapsing candidate `(C, y)`, if any.
    pub counterexample: Option<(f64, Vec<f64>)>,
    pub seed: u64,
}

impl UniquenessReport {
    pub fn certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

/// Maximum number of sampled `C` values re-checked by the exact ℓ¹-plane
/// analysis.
const EXACT_CHECK_LIMIT: usize = 256;
const COARSE_STEPS: usize = 72;
const GOLDEN_ITERATIONS: usize = 80;

/// Samples `C ∈ (0, 1)` and searches a random 2-D slice through `x` for
/// `y` with `‖y‖ = C` and `‖x − y‖ = 1 − C` (to `tol`), then checks that
/// every such `y` equals `Cx`.
///
/// Candidates are `y(φ) = C·d(φ)/‖d(φ)‖` for directions `d(φ)` in the slice;
/// `f(φ) = ‖x − y(φ)‖ − (1 − C) ≥ 0` is scanned coarsely and refined by
/// golden-section search around each local minimum. For strictly convex
/// norms `f` is quadratic near the minimiser, so a residual of `tol`
/// corresponds to a deviation of order `√tol`, which is the collapse bound
/// used there. For the ℓ¹ plane with exact `x` the sampled `C` values are
/// additionally decided exactly by [`exact_l1_plane_unique`].
pub fn uniqueness_certificate(
    space: &PNormSpace,
    x: &Vector,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<UniquenessReport> {
    let n = space.norm(x)?;
    if !n.eq_tol(&Scalar::one(), tol) {
        return Err(GeodesyError::NotUnitVector(n.to_string()));
    }
    let p = space.p;
    let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
    let x_len = xf.iter().map(|v| v * v).sum::<f64>().sqrt();
    let e1: Vec<f64> = xf.iter().map(|v| v / x_len).collect();
    let collapse_tolerance = if p.is_strictly_convex() {
        tol.value().sqrt()
    } else {
        tol.value()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = UniquenessReport {
        status: CertificateStatus::NoCandidates,
        samples,
        candidates: 0,
        collapsed: 0,
        max_deviation: 0.0,
        tolerance: tol.value(),
        collapse_tolerance,
        exact_checks: 0,
        exact_unique: None,
        counterexample: None,
        seed,
    };
    let exact_x = (space.n == 2 && p == PExponent::One)
        .then(|| x.iter().map(|v| v.as_exact().cloned()).collect::<Option<Vec<_>>>())
        .flatten();

    for _ in 0..samples {
        let c: f64 = rng.gen_range(0.0..1.0);
        if c == 0.0 {
            continue;
        }
        let e2 = random_orthonormal(&e1, &mut rng);
        let cx: Vec<f64> = xf.iter().map(|v| c * v).collect();
        let y_at = |phi: f64| -> Vec<f64> {
            let d: Vec<f64> = match &e2 {
                Some(e2) => e1.iter().zip(e2).map(|(a, b)| phi.cos() * a + phi.sin() * b).collect(),
                None => e1.iter().map(|a| phi.cos().signum() * a).collect(),
            };
            let nd = norm_f64(p, &d);
            d.iter().map(|v| c * v / nd).collect()
        };
        let f = |phi: f64| dist_f64(p, &xf, &y_at(phi)) - (1.0 - c);

        let mut feasible: Vec<f64> = Vec::new();
        let grid: Vec<f64> = (0..COARSE_STEPS)
            .map(|k| -PI + 2.0 * PI * k as f64 / COARSE_STEPS as f64)
            .collect();
        let values: Vec<f64> = grid.iter().map(|&phi| f(phi)).collect();
        for k in 0..COARSE_STEPS {
            if values[k] <= tol.value() {
                feasible.push(grid[k]);
            }
            let prev = values[(k + COARSE_STEPS - 1) % COARSE_STEPS];
            let next = values[(k + 1) % COARSE_STEPS];
            if values[k] <= prev && values[k] <= next {
                let step = 2.0 * PI / COARSE_STEPS as f64;
                let phi = golden_min(&f, grid[k] - step, grid[k] + step);
                if f(phi) <= tol.value() {
                    feasible.push(phi);
                }
            }
        }
        if feasible.is_empty() {
            continue;
        }
        report.candidates += 1;
        let (dev, y) = feasible
            .iter()
            .map(|&phi| {
                let y = y_at(phi);
                (dist_f64(p, &y, &cx), y)
            })
            .fold(
                (f64::NEG_INFINITY, Vec::new()),
                |acc, cur| if cur.0 > acc.0 { cur } else { acc },
            );
        report.max_deviation = report.max_deviation.max(dev);
        if dev <= collapse_tolerance {
            report.collapsed += 1;
        } else if report.counterexample.is_none() {
            report.counterexample = Some((c, y));
        }

        if let Some(ex) = &exact_x {
            if report.exact_checks < EXACT_CHECK_LIMIT {
                let cq = BigRational::from_float(c).expect("finite");
                let unique = exact_l1_plane_unique(&[ex[0].clone(), ex[1].clone()], &cq);
                report.exact_checks += 1;
                report.exact_unique = Some(report.exact_unique.unwrap_or(true) && unique);
            }
        }
    }

    report.status = if report.counterexample.is_some() || report.exact_unique == Some(false) {
        CertificateStatus::Refuted
    } else if report.candidates == 0 {
        CertificateStatus::NoCandidates
    } else {
        CertificateStatus::Certified
    };
    Ok(report)
}

/// A unit vector Euclidean-orthogonal to `e1`, or `None` in dimension one.
fn random_orthonormal(e1: &[f64], rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    if e1.len() < 2 {
        return None;
    }
    loop {
        let w: Vec<f64> = (0..e1.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let dot: f64 = w.iter().zip(e1).map(|(a, b)| a * b).sum();
        let w: Vec<f64> = w.iter().zip(e1).map(|(a, b)| a - dot * b).collect();
        let len = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > 1e-6 {
            return Some(w.iter().map(|v| v / len).collect());
        }
    }
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERATIONS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Extreme points of `{ y ∈ R² : |y₁| + |y₂| = C, |x₁ − y₁| + |x₂ − y₂| = ‖x‖₁ − C }`.
///
/// Within each of the 16 sign cells of `(y₁, y₂, x₁ − y₁, x₂ − y₂)` both
/// equations are linear, so the solution set there is a point, a segment
/// or empty; the returned list holds every isolated solution and every
/// segment endpoint, without duplicates.
pub fn exact_l1_plane_solutions(x: &[BigRational; 2], c: &BigRational) -> Vec<[BigRational; 2]> {
    let zero = BigRational::zero();
    let norm_x = x[0].abs() + x[1].abs();
    let rhs = &norm_x - c;
    let mut out: Vec<[BigRational; 2]> = Vec::new();
    let signs = [1i64, -1];
    for &s1 in &signs {
        for &s2 in &signs {
            for &t1 in &signs {
                for &t2 in &signs {
                    let q = |v: i64| BigRational::from_integer(v.into());
                    let (s1q, s2q, t1q, t2q) = (q(s1), q(s2), q(t1), q(t2));
                    let feasible = |y: &[BigRational; 2]| {
                        &s1q * &y[0] >= zero
                            && &s2q * &y[1] >= zero
                            && &t1q * (&x[0] - &y[0]) >= zero
                            && &t2q * (&x[1] - &y[1]) >= zero
                    };
                    // s1 y1 + s2 y2 = c ;  t1 y1 + t2 y2 = t1 x1 + t2 x2 − rhs
                    let b1 = c.clone();
                    let b2 = &t1q * &x[0] + &t2q * &x[1] - &rhs;
                    let det = &s1q * &t2q - &s2q * &t1q;
                    let mut push = |y: [BigRational; 2]| {
                        if feasible(&y) && !out.contains(&y) {
                            out.push(y);
                        }
                    };
                    if !det.is_zero() {
                        let y1 = (&b1 * &t2q - &s2q * &b2) / &det;
                        let y2 = (&s1q * &b2 - &t1q * &b1) / &det;
                        push([y1, y2]);
                        continue;
                    }
                    // parallel rows: second row is k·(first row) with k = t1/s1
                    let k = &t1q / &s1q;
                    if b2 != &k * &b1 {
                        continue;
                    }
                    // the line s1 y1 + s2 y2 = c against each boundary line
                    for (axis, value) in [
                        (0, zero.clone()),
                        (1, zero.clone()),
                        (0, x[0].clone()),
                        (1, x[1].clone()),
                    ] {
                        let y = if axis == 0 {
                            let y2 = (&b1 - &s1q * &value) / &s2q;
                            [value, y2]
                        } else {
                            let y1 = (&b1 - &s2q * &value) / &s1q;
                            [y1, value]
                        };
                        push(y);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// True when the only solution of the two-sphere system is `Cx`.
pub fn exact_l1_plane_unique(x: &[BigRational; 2], c: &BigRational) -> bool {
    let cx = [c * &x[0], c * &x[1]];
    let sols = exact_l1_plane_solutions(x, c);
    !sols.is_empty() && sols.iter().all(|y| *y == cx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderReport {
    pub p: PExponent,
    pub samples: usize,
    /// Smallest `‖f‖_p + ‖χ_K − f‖_p − 1` over nonconstant samples.
    pub min_margin: f64,
    pub worst_sample: Vec<f64>,
    pub constant_checks: usize,
    /// Largest `|‖f‖_p + ‖χ_K − f‖_p − 1|` over constant `f = Cχ_K`.
    pub max_constant_residual: f64,
    pub required_margin: f64,
    pub passed: bool,
    pub seed: u64,
}

/// Margin by which nonconstant samples must exceed 1, and the bound on the
/// constant-case residual.
pub const HOLDER_MARGIN: f64 = 1e-12;

/// For random nonconstant step functions `f` checks
/// `‖f‖_p + ‖χ_K − f‖_p > 1`, and equality for constant `f = Cχ_K`.
pub fn holder_negative_check(space: &StepFunctionSpace, samples: usize, seed: u64) -> Result<HolderReport> {
    if !space.has_unit_measure() {
        return Err(GeodesyError::InvalidSpace(format!(
            "total measure must be 1, got {}",
            space.total_measure()
        )));
    }
    if space.p == PExponent::One {
        return Err(GeodesyError::Unsupported("the Hölder check needs p > 1".into()));
    }
    let m = space.cells();
    let chi = space.indicator();
    let one = Scalar::one();
    let split_sum = |f: &Vector| -> Result<f64> {
        let a = space.norm(f)?;
        let b = space.norm(&space.sub(&chi, f)?)?;
        Ok((a + b - &one).to_f64())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_margin = f64::INFINITY;
    let mut worst_sample = Vec::new();
    let mut done = 0;
    while done < samples && m > 1 {
        let f: Vector = (0..m).map(|_| Scalar::ratio(rng.gen_range(-32..=64), 32)).collect();
        if f.iter().all(|v| *v == f[0]) {
            continue;
        }
        done += 1;
        let margin = split_sum(&f)?;
        if margin < min_margin {
            min_margin = margin;
            worst_sample = f.iter().map(Scalar::to_f64).collect();
        }
    }
    let mut constants: Vec<Scalar> = (0..=4).map(|k| Scalar::ratio(k, 4)).collect();
    constants.extend((0..16).map(|_| Scalar::ratio(rng.gen_range(0..=64), 64)));
    let mut max_constant_residual: f64 = 0.0;
    for c in &constants {
        let f = space.scale(c, &chi)?;
        max_constant_residual = max_constant_residual.max(split_sum(&f)?.abs());
    }
    Ok(HolderReport {
        p: space.p,
        samples: done,
        min_margin,
        worst_sample,
        constant_checks: constants.len(),
        max_constant_residual,
        required_margin: HOLDER_MARGIN,
        passed: min_margin > HOLDER_MARGIN && max_constant_residual <= HOLDER_MARGIN,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn max_points() {
        assert_eq!(
            euclid_max_point(&PNormSpace::l1(2)),
            vec![Scalar::one(), Scalar::zero()]
        );
        assert_eq!(
            euclid_max_point(&PNormSpace::linf(2)),
            vec![Scalar::one(), Scalar::one()]
        );
        let p4 = euclid_max_point(&PNormSpace::new(2, PExponent::Finite(4.0)).unwrap());
        assert!((p4[0].to_f64() - 2f64.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn exact_plane_analysis() {
        for c in [r(1, 3), r(1, 2), r(7, 8)] {
            assert!(exact_l1_plane_unique(&[r(1, 1), r(0, 1)], &c));
            assert!(exact_l1_plane_unique(&[r(0, 1), r(-1, 1)], &c));
            assert!(!exact_l1_plane_unique(&[r(1, 2), r(1, 2)], &c));
        }
        let sols = exact_l1_plane_solutions(&[r(1, 2), r(1, 2)], &r(1, 2));
        assert!(sols.contains(&[r(1, 2), r(0, 1)]));
        assert!(sols.contains(&[r(0, 1), r(1, 2)]));
    }

    #[test]
    fn certificate_collapses_at_max_point_and_fails_elsewhere() {
        let s = PNormSpace::l1(2);
        let tol = Tolerance::default();
        let ok = uniqueness_certificate(&s, &euclid_max_point(&s), 200, 1, tol).unwrap();
        assert!(ok.certified(), "{ok:?}");
        assert_eq!(ok.exact_unique, Some(true));
        let x = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)];
        let bad = uniqueness_certificate(&s, &x, 50, 1, tol).unwrap();
        assert_eq!(bad.status, CertificateStatus::Refuted);
        assert_eq!(bad.exact_unique, Some(false));
    }

    #[test]
    fn euclidean_certificate_for_any_unit_vector() {
        let s = PNormSpace::l2(2);
        let x = vec![Scalar::ratio(3, 5), Scalar::ratio(-4, 5)];
        let rep = uniqueness_certificate(&s, &x, 200, 3, Tolerance::default()).unwrap();
        assert!(rep.certified(), "{rep:?}");
    }

    #[test]
    fn holder_examples() {
        let two = StepFunctionSpace::uniform(2, PExponent::Finite(2.0)).unwrap();
        let f = vec![Scalar::one(), Scalar::zero()];
        let sum = two.norm(&f).unwrap() + two.norm(&two.sub(&two.indicator(), &f).unwrap()).unwrap();
        assert!((sum.to_f64() - 2f64.sqrt()).abs() < 1e-15);

        let four = StepFunctionSpace::uniform(4, PExponent::Infinity).unwrap();
        let f = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
        let sum = four.norm(&f).unwrap() + four.norm(&four.sub(&four.indicator(), &f).unwrap()).unwrap();
        assert_eq!(sum, Scalar::int(2));

        let rep = holder_negative_check(&four, 100, 5).unwrap();
        assert!(rep.passed, "{rep:?}");
        let l1 = StepFunctionSpace::uniform(4, PExponent::One).unwrap();
        assert!(holder_negative_check(&l1, 10, 5).is_err());
    }
}
