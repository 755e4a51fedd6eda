//! The Fourier transform of ‖x‖^{-q} on the unit sphere, through parallel
//! section functions, and angle scans of its sign.
//!
//! With k = n - 1 - q:
//! - even k:  (‖x‖^{-q})^∧(ξ) = (-1)^{k/2} π (n-k-1) A_ξ^{(k)}(0);
//! - odd k:   (-1)^{(k+1)/2} 2 (n-1-k) k! ∫₀^∞ (A_ξ(z) - T_{k-1}(z))/z^{k+1} dz,
//!   where T_{k-1} is the even Taylor polynomial of A at zero.  A vanishes
//!   beyond the support half-width Z, so the integral splits there and the
//!   tail of the subtracted polynomial integrates in closed form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::section::{a_derivative_at_zero, ParallelSectionFn};
use crate::geom::{Direction, Smoothness, StarBody};

/// (‖x‖_K^{-q})^∧ evaluated at the unit vector ξ.
pub fn ft_norm_power(body: &StarBody, q: usize, xi: &Direction) -> Result<f64> {
    let n = body.dim();
    if q < 1 || q > n - 2 {
        return Err(Error::Domain(format!(
            "norm power q = {q} outside 1..={} for dimension {n}",
            n - 2
        )));
    }
    if body.smoothness() < Smoothness::C2 {
        return Err(Error::Domain("body must be at least C2 for the section formulas".into()));
    }
    let k = n - 1 - q;
    let a = ParallelSectionFn::new(body, xi)?;
    if k % 2 == 0 {
        let (deriv, _, _) = derivative_adaptive(&a, k)?;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * std::f64::consts::PI * (n - k - 1) as f64 * deriv)
    } else {
        odd_branch(&a, n, k)
    }
}

/// Derivative at zero with the step halved until the extrapolation
/// settles; the support half-width can far exceed the analyticity scale
/// of A (tall capped bodies), making any fixed fraction of it too large.
/// Returns the estimate, its error estimate, and the step that settled.
fn derivative_adaptive(a: &ParallelSectionFn, order: usize) -> Result<(f64, f64, f64)> {
    let mut h = derivative_step(a.z_max(), order);
    let mut last: Result<(f64, f64)> =
        Err(Error::Numerical("derivative step iteration did not run".into()));
    for _ in 0..14 {
        last = a_derivative_at_zero(a, order, h);
        if let Ok((value, err)) = last {
            return Ok((value, err, h));
        }
        h *= 0.5;
    }
    last.map(|(value, err)| (value, err, h))
}

/// Larger steps for higher derivative orders keep the finite-difference
/// noise amplification ε/h^order in check.
fn derivative_step(z_max: f64, order: usize) -> f64 {
    let divisor = match order {
        0..=2 => 64.0,
        3..=4 => 32.0,
        5..=6 => 16.0,
        _ => 8.0,
    };
    z_max / divisor
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn odd_branch(a: &ParallelSectionFn, n: usize, k: usize) -> Result<f64> {
    let z = a.z_max();
    // Taylor coefficients c_j = A^{(j)}(0)/j! for even j ≤ k-1
    let mut taylor: Vec<(i32, f64)> = Vec::new();
    for j in (0..k).step_by(2) {
        let (d, _, _) = derivative_adaptive(a, j)?;
        taylor.push((j as i32, d / factorial(j)));
    }
    // Near zero the integrand (A - T)/z^{k+1} continues the even Taylor
    // series of A; evaluating it through the series avoids the cancellation
    // of nearly-equal sums divided by a vanishing power.
    let mut series = [0.0f64; 3];
    let mut settled_h = z;
    for (slot, i) in series.iter_mut().zip(1..) {
        let order = k + 2 * i - 1;
        let (d, _, h_used) = derivative_adaptive(a, order)?;
        *slot = d / factorial(order);
        settled_h = settled_h.min(h_used);
    }
    // The series is trusted only inside the window where the highest-order
    // stencil settled, a proxy for the analyticity radius of A at zero.
    let z_cut = (0.08 * z).min(2.0 * settled_h);
    let near = series[0] * z_cut
        + series[1] * z_cut.powi(3) / 3.0
        + series[2] * z_cut.powi(5) / 5.0;

    let integrand = |zz: f64| -> Result<f64> {
        let t: f64 = taylor.iter().map(|(j, c)| c * zz.powi(*j)).sum();
        Ok((a.eval(zz)? - t) / zz.powi(k as i32 + 1))
    };
    let far = adaptive_integral(&integrand, z_cut, z, 1e-8)?;
    // tail: A ≡ 0 beyond Z, so ∫_Z^∞ -T(z)/z^{k+1} dz in closed form
    let tail: f64 = taylor
        .iter()
        .map(|(j, c)| -c * z.powi(*j - k as i32) / (k as f64 - *j as f64))
        .sum();
    let regularized = near + far + tail;
    let sign = if ((k + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * 2.0 * (n - 1 - k) as f64 * factorial(k) * regularized)
}

/// Adaptive composite Gauss–Legendre: panels split until a 24- vs 48-node
/// comparison meets the requested relative tolerance.  Handles the
/// interior kinks of oblique section functions, whose slice topology
/// changes where the plane grazes rim and waist circles.
fn adaptive_integral(
    f: &dyn Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    let (x24, w24) = crate::quad::gauss_legendre(24);
    let (x48, w48) = crate::quad::gauss_legendre(48);
    let panel = |a: f64, b: f64, xs: &[f64], ws: &[f64]| -> Result<f64> {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(ws) {
            acc += w * f(mid + half * x)?;
        }
        Ok(acc * half)
    };
    // coarse magnitude scale for the absolute tolerance split
    let mut scale = panel(lo, hi, &x24, &w24)?.abs();
    scale = scale.max(1e-300);
    let tol = rel_tol * scale;
    // evaluation noise (root solves inside A) makes sub-panel agreement
    // below this density unattainable; accept panels at the floor
    let floor_density = 1e-9 * scale / (hi - lo);
    let mut stack = vec![(lo, hi, tol)];
    let mut total = 0.0;
    let mut panels_used = 0usize;
    while let Some((a, b, t)) = stack.pop() {
        panels_used += 1;
        if panels_used > 4000 {
            return Err(Error::Numerical(
                "regularized integral not converged: adaptive panel budget exhausted".into(),
            ));
        }
        let coarse = panel(a, b, &x24, &w24)?;
        let fine = panel(a, b, &x48, &w48)?;
        let accept = t.max(floor_density * (b - a));
        if (fine - coarse).abs() <= accept || (b - a) < 1e-12 * (hi - lo) {
            total += fine;
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid, 0.5 * t));
            stack.push((mid, b, 0.5 * t));
        }
    }
    Ok(total)
}

/// Sign profile of (‖x‖^{-q})^∧ over directions from the symmetry axis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FtProfile {
    pub q: usize,
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
    pub min_value: f64,
    pub argmin_angle: f64,
}

/// Evaluate the norm-power Fourier transform over a uniform angle grid on
/// [0, π/2]; axisymmetry and evenness make this a full sign scan.
pub fn pd_scan(body: &StarBody, q: usize, angle_count: usize) -> Result<FtProfile> {
    if body.as_revolution().is_none() {
        return Err(Error::Domain("pd_scan requires an axisymmetric body".into()));
    }
    if angle_count < 2 {
        return Err(Error::Domain("angle_count must be at least 2".into()));
    }
    let n = body.dim();
    let angles: Vec<f64> = (0..angle_count)
        .map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / (angle_count - 1) as f64)
        .collect();
    let values: Result<Vec<f64>> = angles
        .par_iter()
        .map(|&alpha| ft_norm_power(body, q, &Direction::from_axis_angle(n, alpha)))
        .collect();
    let values = values?;
    let (argmin, min_value) = values
        .iter()
        .enumerate()
        .fold((0usize, f64::INFINITY), |(ai, av), (i, &v)| if v < av { (i, v) } else { (ai, av) });
    Ok(FtProfile { q, angles: angles.clone(), values, min_value, argmin_angle: angles[argmin] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RevolutionBody;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn ball_revolution(n: usize, r: f64) -> StarBody {
        let profile = crate::geom::FnProfile {
            rho: Box::new(move |_| r),
            drho: Box::new(|_| 0.0),
            d2rho: Box::new(|_| 0.0),
            smoothness: Smoothness::Cinf,
        };
        RevolutionBody::new(n, Arc::new(profile)).unwrap().star_body()
    }

    #[test]
    fn unit_ball_odd_branch_recovers_riesz_constant() {
        // (|x|^{-1})^∧ = 4π/|ξ|² in three dimensions
        let body = StarBody::from_radial(3, Smoothness::Cinf, Arc::new(|_: &[f64]| 1.0));
        let v = ft_norm_power(&body, 1, &Direction::axis(3, 2)).unwrap();
        assert_relative_eq!(v, 4.0 * std::f64::consts::PI, max_relative = 1e-7);
    }

    #[test]
    fn scaled_ball_odd_branch_matches_multiplier() {
        // ‖x‖^{-q} = r^q |x|^{-q}
        let r = 0.8;
        let body = ball_revolution(3, r);
        let v = ft_norm_power(&body, 1, &Direction::from_axis_angle(3, 0.4)).unwrap();
        let expected = r * crate::fourier::harmonic_multiplier(3, 0, 1.0).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-7);
    }

    #[test]
    fn even_branch_matches_multiplier_on_balls() {
        // n = 5, q = 2 uses k = 2: value -π(n-3) A''(0)
        let r = 0.7;
        let body = ball_revolution(5, r);
        let v = ft_norm_power(&body, 2, &Direction::axis(5, 4)).unwrap();
        let expected = r * r * crate::fourier::harmonic_multiplier(5, 0, 2.0).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-8);
    }

    #[test]
    fn odd_branch_with_taylor_subtraction_on_balls() {
        // n = 5, q = 1 uses k = 3 with a second-order Taylor subtraction
        let r = 0.9;
        let body = ball_revolution(5, r);
        let v = ft_norm_power(&body, 1, &Direction::axis(5, 4)).unwrap();
        let expected = r * crate::fourier::harmonic_multiplier(5, 0, 1.0).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-6);
    }

    #[test]
    fn ball_scan_is_positive_for_all_valid_powers() {
        for n in [3usize, 4, 5] {
            let body = ball_revolution(n, 0.75);
            for q in 1..=(n - 2) {
                let profile = pd_scan(&body, q, 9).unwrap();
                assert!(
                    profile.min_value > 0.0,
                    "n={n} q={q} min {:.3e}",
                    profile.min_value
                );
                let expected = 0.75f64.powi(q as i32)
                    * crate::fourier::harmonic_multiplier(n, 0, q as f64).unwrap();
                for v in &profile.values {
                    assert_relative_eq!(*v, expected, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn scan_values_even_in_angle() {
        let body = ball_revolution(3, 0.6);
        for alpha in [0.3f64, 1.1] {
            let plus = ft_norm_power(&body, 1, &Direction::from_axis_angle(3, alpha)).unwrap();
            let minus = ft_norm_power(&body, 1, &Direction::from_axis_angle(3, -alpha)).unwrap();
            assert!((plus - minus).abs() <= 1e-9 * plus.abs());
        }
    }

    #[test]
    fn invalid_power_rejected() {
        let body = ball_revolution(3, 0.6);
        assert!(ft_norm_power(&body, 2, &Direction::axis(3, 2)).is_err());
        assert!(ft_norm_power(&body, 0, &Direction::axis(3, 2)).is_err());
    }
}
