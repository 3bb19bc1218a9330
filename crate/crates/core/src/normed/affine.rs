//! Exact intersection of two affine segments given by coordinate vectors.

use std::cmp::Ordering;

use crate::scalar::{Scalar, Tolerance};
use crate::space::SegmentMeet;

/// Solves `a0 + α (a1 − a0) = b0 + β (b1 − b0)` for `(α, β) ∈ [0, 1]²`.
///
/// Exact inputs give an exact answer. With approximate coordinates zero
/// tests use `tol`.
pub fn segment_meet(a0: &[Scalar], a1: &[Scalar], b0: &[Scalar], b1: &[Scalar], tol: Tolerance) -> SegmentMeet {
    // rows: [da_k, -db_k | b0_k - a0_k]
    let mut rows: Vec<[Scalar; 3]> = (0..a0.len())
        .map(|k| [&a1[k] - &a0[k], -(&b1[k] - &b0[k]), &b0[k] - &a0[k]])
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..2 {
        let pivot = (next_row..rows.len())
            .filter(|&r| !rows[r][col].is_zero_tol(tol))
            .max_by(|&x, &y| {
                rows[x][col]
                    .abs()
                    .partial_cmp(&rows[y][col].abs())
                    .unwrap_or(Ordering::Equal)
            });
        let Some(p) = pivot else { continue };
        rows.swap(next_row, p);
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero_tol(tol) {
                continue;
            }
            let factor = &rows[r][col] / &rows[next_row][col];
            let pivot_row = rows[next_row].clone();
            for (x, p) in rows[r].iter_mut().zip(&pivot_row).skip(col) {
                *x = &*x - &(&factor * p);
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }

    // inconsistent system: some zero row with nonzero right-hand side
    if rows[next_row..].iter().any(|row| !row[2].is_zero_tol(tol)) {
        return SegmentMeet::Empty;
    }

    let unit = |x: &Scalar| !x.is_negative() || x.is_zero_tol(tol);
    let in_unit = |x: &Scalar| unit(x) && x.le_tol(&Scalar::one(), tol);
    let clamp = |x: Scalar| x.max(Scalar::zero()).min(Scalar::one());

    match pivots.as_slice() {
        [] => SegmentMeet::Point {
            a: Scalar::zero(),
            b: Scalar::zero(),
        },
        [(r0, 0), (r1, 1)] => {
            let beta = &rows[*r1][2] / &rows[*r1][1];
            let alpha = &rows[*r0][2] / &rows[*r0][0];
            if in_unit(&alpha) && in_unit(&beta) {
                SegmentMeet::Point {
                    a: clamp(alpha),
                    b: clamp(beta),
                }
            } else {
                SegmentMeet::Empty
            }
        }
        [(r0, 0)] => {
            // α = c − k β, β free in [0, 1]
            let c = &rows[*r0][2] / &rows[*r0][0];
            let k = &rows[*r0][1] / &rows[*r0][0];
            if k.is_zero_tol(tol) {
                // the b segment is a single point
                return if in_unit(&c) {
                    SegmentMeet::Point {
                        a: clamp(c),
                        b: Scalar::zero(),
                    }
                } else {
                    SegmentMeet::Empty
                };
            }
            let at_alpha_zero = &c / &k;
            let at_alpha_one = (&c - &Scalar::one()) / &k;
            let (lo, hi) = if at_alpha_zero < at_alpha_one {
                (at_alpha_zero, at_alpha_one)
            } else {
                (at_alpha_one, at_alpha_zero)
            };
            let lo = lo.max(Scalar::zero());
            let hi = hi.min(Scalar::one());
            match lo.cmp_tol(&hi, tol) {
                Ordering::Greater => SegmentMeet::Empty,
                Ordering::Equal => {
                    let alpha = clamp(&c - &(&k * &lo));
                    SegmentMeet::Point { a: alpha, b: lo }
                }
                Ordering::Less => {
                    let alpha_lo = clamp(&c - &(&k * &lo));
                    let alpha_hi = clamp(&c - &(&k * &hi));
                    SegmentMeet::Overlap {
                        start: (alpha_lo, lo),
                        end: (alpha_hi, hi),
                    }
                }
            }
        }
        [(r1, 1)] => {
            // the a segment is a single point
            let beta = &rows[*r1][2] / &rows[*r1][1];
            if in_unit(&beta) {
                SegmentMeet::Point {
                    a: Scalar::zero(),
                    b: clamp(beta),
                }
            } else {
                SegmentMeet::Empty
            }
        }
        _ => unreachable!("at most one pivot per column"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Vec<Scalar> {
        vec![Scalar::int(x), Scalar::int(y)]
    }

    fn meet(a0: Vec<Scalar>, a1: Vec<Scalar>, b0: Vec<Scalar>, b1: Vec<Scalar>) -> SegmentMeet {
        segment_meet(&a0, &a1, &b0, &b1, Tolerance::default())
    }

    #[test]
    fn crossing_segments_meet_in_one_point() {
        assert_eq!(
            meet(p(0, 0), p(2, 2), p(0, 2), p(2, 0)),
            SegmentMeet::Point {
                a: Scalar::ratio(1, 2),
                b: Scalar::ratio(1, 2)
            }
        );
    }

    #[test]
    fn parallel_and_separated_segments() {
        assert_eq!(meet(p(0, 0), p(1, 0), p(0, 1), p(1, 1)), SegmentMeet::Empty);
        assert_eq!(meet(p(0, 0), p(1, 0), p(2, 0), p(3, 0)), SegmentMeet::Empty);
        assert_eq!(meet(p(0, 0), p(1, 1), p(2, 0), p(3, -1)), SegmentMeet::Empty);
    }

    #[test]
    fn collinear_overlap() {
        let m = meet(p(0, 0), p(4, 0), p(2, 0), p(6, 0));
        assert_eq!(
            m,
            SegmentMeet::Overlap {
                start: (Scalar::ratio(1, 2), Scalar::zero()),
                end: (Scalar::one(), Scalar::ratio(1, 2)),
            }
        );
        // touching end to end
        assert_eq!(
            meet(p(0, 0), p(1, 0), p(1, 0), p(2, 0)),
            SegmentMeet::Point {
                a: Scalar::one(),
                b: Scalar::zero()
            }
        );
    }

    #[test]
    fn degenerate_segments() {
        assert_eq!(
            meet(p(1, 1), p(1, 1), p(0, 0), p(2, 2)),
            SegmentMeet::Point {
                a: Scalar::zero(),
                b: Scalar::ratio(1, 2)
            }
        );
        assert_eq!(
            meet(p(0, 0), p(2, 2), p(1, 1), p(1, 1)),
            SegmentMeet::Point {
                a: Scalar::ratio(1, 2),
                b: Scalar::zero()
            }
        );
        assert_eq!(
            meet(p(1, 1), p(1, 1), p(1, 1), p(1, 1)),
            SegmentMeet::Point {
                a: Scalar::zero(),
                b: Scalar::zero()
            }
        );
        assert_eq!(meet(p(1, 1), p(1, 1), p(0, 1), p(0, 1)), SegmentMeet::Empty);
    }

    #[test]
    fn higher_dimensional_skew_segments_miss() {
        let a0 = vec![Scalar::int(0), Scalar::int(0), Scalar::int(0)];
        let a1 = vec![Scalar::int(1), Scalar::int(0), Scalar::int(0)];
        let b0 = vec![Scalar::int(0), Scalar::int(1), Scalar::int(1)];
        let b1 = vec![Scalar::int(0), Scalar::int(-1), Scalar::int(1)];
        assert_eq!(
            segment_meet(&a0, &a1, &b0, &b1, Tolerance::default()),
            SegmentMeet::Empty
        );
    }
}
