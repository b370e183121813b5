//! Simultaneous root iteration for dense complex polynomials.
//!
//! Aberth–Ehrlich updates all root approximations at once; the mutual
//! repulsion term keeps approximations of a multiple root separated, so
//! multiplicities are recovered afterwards by clustering rather than by
//! deflation. Degrees in this crate stay at or below 22.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RootFindError {
    #[error("polynomial must have degree at least 1")]
    DegreeZero,
    #[error("leading coefficient vanishes")]
    ZeroLeading,
    #[error("root iteration did not converge after {iters} iterations")]
    NotConverged { iters: usize },
    #[error("non-finite value encountered during iteration")]
    NonFinite,
}

pub const MAX_ITERS: usize = 200;
pub const UPDATE_TOL: f64 = 1e-13;

/// Horner evaluation of p and p' at z. Coefficients ascending.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Scale used in the backward-error stopping test: sum |c_i| |z|^i.
fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    let mut s = 0.0;
    let mut pw = 1.0;
    for c in coeffs {
        s += c.norm() * pw;
        pw *= az;
    }
    s
}

/// All complex roots of the polynomial with ascending coefficients.
///
/// Convergence is declared per root when either the Aberth update is below
/// [`UPDATE_TOL`] or the residual is at rounding level for the evaluated
/// magnitude; the run fails after [`MAX_ITERS`] sweeps otherwise.
pub fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootFindError> {
    if coeffs.len() < 2 {
        return Err(RootFindError::DegreeZero);
    }
    let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_c == 0.0 || !max_c.is_finite() {
        return Err(RootFindError::ZeroLeading);
    }
    let coeffs: Vec<Complex64> = coeffs.iter().map(|c| c / max_c).collect();
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if lead.norm() < 1e-14 {
        return Err(RootFindError::ZeroLeading);
    }

    // initial ring: geometric mean of the root moduli when the constant
    // term is nonzero, otherwise unit radius
    let c0 = coeffs[0].norm();
    let radius = if c0 > 1e-300 {
        (c0 / lead.norm()).powf(1.0 / n as f64).clamp(0.25, 4.0)
    } else {
        1.0
    };
    let offset = 0.437; // breaks symmetry with any root configuration
    let mut zs: Vec<Complex64> = (0..n)
        .map(|i| {
            let ang = std::f64::consts::TAU * i as f64 / n as f64 + offset;
            Complex64::from_polar(radius, ang)
        })
        .collect();

    let mut converged = vec![false; n];
    for _sweep in 0..MAX_ITERS {
        let mut all_done = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let z = zs[i];
            let (p, dp) = eval_with_derivative(&coeffs, z);
            if !p.is_finite() || !dp.is_finite() {
                return Err(RootFindError::NonFinite);
            }
            let scale = eval_scale(&coeffs, z);
            if p.norm() <= 1e-15 * scale {
                converged[i] = true;
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut repulse = Complex64::new(0.0, 0.0);
            for (j, &w) in zs.iter().enumerate() {
                if j != i {
                    let d = z - w;
                    if d.norm() > 1e-300 {
                        repulse += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let update = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            if !update.is_finite() {
                return Err(RootFindError::NonFinite);
            }
            zs[i] = z - update;
            if update.norm() <= UPDATE_TOL * (1.0 + z.norm()) {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Ok(zs);
        }
    }
    // final residual audit: accept if every approximation is backward-stable
    let ok = zs.iter().all(|&z| {
        let (p, _) = eval_with_derivative(&coeffs, z);
        p.norm() <= 1e-12 * eval_scale(&coeffs, z)
    });
    if ok {
        Ok(zs)
    } else {
        Err(RootFindError::NotConverged { iters: MAX_ITERS })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_by_arg(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        v
    }

    #[test]
    fn quadratic_roots() {
        // z^2 + 1
        let roots = sort_by_arg(find_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((roots[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn double_roots_cluster_tightly() {
        // (z^3 - 1)^2 = z^6 - 2 z^3 + 1
        let mut coeffs = vec![c(0.0, 0.0); 7];
        coeffs[0] = c(1.0, 0.0);
        coeffs[3] = c(-2.0, 0.0);
        coeffs[6] = c(1.0, 0.0);
        let roots = find_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            let dist = (0..3)
                .map(|j| {
                    let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 3.0);
                    (r - w).norm()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(dist < 1e-7, "root {r} off by {dist}");
        }
    }

    #[test]
    fn random_polynomials_reconstruct() {
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as f64 / u64::MAX as f64 * 2.0 - 1.0
        };
        for _trial in 0..50 {
            let deg = 8;
            let mut coeffs: Vec<Complex64> = (0..=deg).map(|_| c(next(), next())).collect();
            coeffs[deg] += c(2.0, 0.0); // keep leading away from zero
            let roots = find_roots(&coeffs).unwrap();
            for &r in &roots {
                let (p, _) = eval_with_derivative(&coeffs, r);
                assert!(p.norm() < 1e-9 * eval_scale(&coeffs, r));
            }
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(find_roots(&[c(1.0, 0.0)]), Err(RootFindError::DegreeZero));
        assert!(matches!(
            find_roots(&[c(1.0, 0.0), c(0.0, 0.0)]),
            Err(RootFindError::ZeroLeading)
        ));
    }
}
