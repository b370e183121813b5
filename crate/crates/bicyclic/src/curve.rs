//! The symmetric moment curve `SM_2k` and its derivatives.
//!
//! `SM_2k(t) = (cos t, sin t, cos 3t, sin 3t, ..., cos (2k-1)t, sin (2k-1)t)`
//! takes values in R^{2k}. Only odd frequencies appear, which forces
//! `SM_2k(t + π) = -SM_2k(t)`. Derivatives are evaluated in closed form via
//! phase shifts, so the non-flatness determinant check is exact up to
//! rounding; finite differences are used only as a cross-test.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::circle::AnglePoint;

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("curve order k must be at least 1")]
    ZeroK,
    #[error("derivative order {order} out of range 0..={max}")]
    OrderOutOfRange { order: usize, max: usize },
}

/// A point of `SM_2k` together with its source angle.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub k: usize,
    pub coords: Vec<f64>,
    pub source_angle: AnglePoint,
}

/// Evaluate the curve at `t`.
pub fn sm_eval(k: usize, t: AnglePoint) -> Result<CurvePoint, CurveError> {
    if k == 0 {
        return Err(CurveError::ZeroK);
    }
    let th = t.radians();
    let mut coords = Vec::with_capacity(2 * k);
    for j in 1..=k {
        let m = (2 * j - 1) as f64;
        coords.push((m * th).cos());
        coords.push((m * th).sin());
    }
    Ok(CurvePoint {
        k,
        coords,
        source_angle: t,
    })
}

/// Componentwise derivative of order `order` at `t`; order 0 is the curve
/// itself. Valid orders are `0..=2k-1`.
pub fn sm_derivative(k: usize, t: AnglePoint, order: usize) -> Result<Vec<f64>, CurveError> {
    if k == 0 {
        return Err(CurveError::ZeroK);
    }
    if order > 2 * k - 1 {
        return Err(CurveError::OrderOutOfRange {
            order,
            max: 2 * k - 1,
        });
    }
    let th = t.radians();
    let phase = order as f64 * std::f64::consts::FRAC_PI_2;
    let mut out = Vec::with_capacity(2 * k);
    for j in 1..=k {
        let m = (2 * j - 1) as f64;
        let scale = m.powi(order as i32);
        out.push(scale * (m * th + phase).cos());
        out.push(scale * (m * th + phase).sin());
    }
    Ok(out)
}

fn derivative_matrix(k: usize, t: AnglePoint) -> DMatrix<f64> {
    let rows: Vec<Vec<f64>> = (0..2 * k)
        .map(|r| sm_derivative(k, t, r).expect("order in range"))
        .collect();
    DMatrix::from_fn(2 * k, 2 * k, |i, j| rows[i][j])
}

/// `|det|` of the 2k×2k matrix whose rows are the curve derivatives of
/// orders `0..2k-1` at `t`. Rotational invariance makes this independent
/// of `t`; it is nonzero for every k, which is the non-flatness property.
pub fn nonflatness_check(k: usize, t: AnglePoint) -> f64 {
    derivative_matrix(k, t).determinant().abs()
}

/// `|det|` of the derivative matrix after normalizing every row to unit
/// Euclidean length. Decays roughly like a Vandermonde product as k grows.
pub fn nonflatness_row_normalized(k: usize, t: AnglePoint) -> f64 {
    let mut m = derivative_matrix(k, t);
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        row /= norm;
    }
    m.determinant().abs()
}

/// Dimension-compensated non-degeneracy scale: the row-normalized `|det|`
/// raised to `1/(2k)`, i.e. the geometric mean of the normalized volume
/// factors. Stays bounded away from zero uniformly in k, unlike the raw
/// row-normalized determinant.
pub fn nonflatness_scaled(k: usize, t: AnglePoint) -> f64 {
    nonflatness_row_normalized(k, t).powf(1.0 / (2 * k) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sm_eval_examples() {
        let p = sm_eval(2, AnglePoint::new(0.0)).unwrap();
        assert_eq!(p.coords, vec![1.0, 0.0, 1.0, 0.0]);

        let p = sm_eval(2, AnglePoint::new(PI)).unwrap();
        let q = sm_eval(2, AnglePoint::new(0.0)).unwrap();
        for (a, b) in p.coords.iter().zip(q.coords.iter()) {
            assert!((a + b).abs() < 1e-12, "SM(t+π) = -SM(t)");
        }

        let p = sm_eval(3, AnglePoint::new(PI / 2.0)).unwrap();
        let expect = [0.0, 1.0, 0.0, -1.0, 0.0, 1.0];
        for (a, e) in p.coords.iter().zip(expect) {
            assert!((a - e).abs() < 1e-12);
        }

        assert!(matches!(
            sm_eval(0, AnglePoint::new(0.0)),
            Err(CurveError::ZeroK)
        ));
    }

    #[test]
    fn consecutive_pairs_have_unit_norm() {
        for k in 1..=6 {
            let p = sm_eval(k, AnglePoint::new(1.234)).unwrap();
            for pair in p.coords.chunks(2) {
                let n = (pair[0] * pair[0] + pair[1] * pair[1]).sqrt();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn central_symmetry_randomized() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) * std::f64::consts::TAU
        };
        for k in 1..=6 {
            for _ in 0..1000 {
                let t = AnglePoint::new(next());
                let p = sm_eval(k, t).unwrap();
                let q = sm_eval(k, t.antipode()).unwrap();
                for (a, b) in p.coords.iter().zip(q.coords.iter()) {
                    assert!((a + b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn projection_truncates_exactly() {
        let t = AnglePoint::new(2.71);
        let big = sm_eval(5, t).unwrap();
        for kp in 1..5 {
            let small = sm_eval(kp, t).unwrap();
            assert_eq!(&big.coords[..2 * kp], small.coords.as_slice());
        }
    }

    #[test]
    fn sm_derivative_examples() {
        let d = sm_derivative(2, AnglePoint::new(0.0), 1).unwrap();
        for (a, e) in d.iter().zip([0.0, 1.0, 0.0, 3.0]) {
            assert!((a - e).abs() < 1e-12);
        }
        let d = sm_derivative(2, AnglePoint::new(0.0), 2).unwrap();
        for (a, e) in d.iter().zip([-1.0, 0.0, -9.0, 0.0]) {
            assert!((a - e).abs() < 1e-12);
        }
        let t = AnglePoint::new(0.77);
        let d0 = sm_derivative(3, t, 0).unwrap();
        assert_eq!(d0, sm_eval(3, t).unwrap().coords);

        assert!(sm_derivative(2, t, 4).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let t = 1.1;
        let h = 1e-6;
        for k in 1..=4 {
            for order in 1..=(2 * k - 1).min(2) {
                let exact = sm_derivative(k, AnglePoint::new(t), order).unwrap();
                let lo = sm_derivative(k, AnglePoint::new(t - h), order - 1).unwrap();
                let hi = sm_derivative(k, AnglePoint::new(t + h), order - 1).unwrap();
                for ((e, l), u) in exact.iter().zip(lo).zip(hi) {
                    let fd = (u - l) / (2.0 * h);
                    assert!((e - fd).abs() < 1e-5, "k={k} order={order}");
                }
            }
        }
    }

    #[test]
    fn nonflatness_identity_at_k1() {
        let d = nonflatness_check(1, AnglePoint::new(0.0));
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nonflatness_positive_at_origin() {
        // k=2 determinant comes from the two interleaved Vandermonde blocks
        let d = nonflatness_check(2, AnglePoint::new(0.0));
        assert!((d - 192.0).abs() < 1e-9);
        assert!(nonflatness_check(3, AnglePoint::new(0.0)) > 0.0);
    }

    #[test]
    fn nonflatness_is_rotation_invariant() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) * std::f64::consts::TAU
        };
        for k in 1..=6 {
            let base = nonflatness_check(k, AnglePoint::new(0.0));
            for _ in 0..100 {
                let d = nonflatness_check(k, AnglePoint::new(next()));
                assert!((d - base).abs() < 1e-8 * base, "k={k}");
            }
        }
    }
}
