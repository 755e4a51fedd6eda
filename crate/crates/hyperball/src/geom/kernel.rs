//! The radial kernel ∫₀^ρ r^{m-1}/(1-r²)^m dr and its inverse.
//!
//! Substituting r = tanh s turns the integrand into (sinh 2s / 2)^{m-1},
//! so the integral is 2^{-m} ∫₀^{2 atanh ρ} sinh^{m-1} u du, which reduces
//! by the standard recurrence.  Small ρ uses the binomial series instead to
//! avoid cancellation.

use crate::error::{Error, Result};

/// ∫₀^ρ r^{m-1}/(1-r²)^m dr, strictly increasing in ρ, divergent as ρ → 1.
pub fn radial_kernel_integral(rho: f64, m: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho = {rho} outside [0, 1)")));
    }
    if m == 0 {
        return Err(Error::Domain("kernel order m must be >= 1".into()));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    if rho <= 0.2 {
        return Ok(kernel_series(rho, m));
    }
    let t = 2.0 * rho.atanh();
    Ok(sinh_power_integral(m - 1, t) / 2f64.powi(m as i32))
}

/// Σ_j C(m-1+j, j) ρ^{m+2j}/(m+2j), the expansion of the kernel at 0.
fn kernel_series(rho: f64, m: usize) -> f64 {
    let r2 = rho * rho;
    let mut coeff = 1.0; // C(m-1+j, j)
    let mut power = rho.powi(m as i32);
    let mut sum = 0.0;
    for j in 0..200 {
        let term = coeff * power / (m + 2 * j) as f64;
        sum += term;
        if term < 1e-18 * sum.max(1e-300) {
            break;
        }
        coeff *= (m + j) as f64 / (j + 1) as f64;
        power *= r2;
    }
    sum
}

/// ∫₀^T sinh^j u du by the recurrence J_j = sinh^{j-1} T cosh T / j - (j-1)/j J_{j-2}.
fn sinh_power_integral(j: usize, t: f64) -> f64 {
    let (s, c) = (t.sinh(), t.cosh());
    let mut even = t; // J_0
    let mut odd = c - 1.0; // J_1
    if j == 0 {
        return even;
    }
    if j == 1 {
        return odd;
    }
    for k in 2..=j {
        let kf = k as f64;
        let next = s.powi(k as i32 - 1) * c / kf - (kf - 1.0) / kf * if k % 2 == 0 { even } else { odd };
        if k % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
    }
    if j % 2 == 0 {
        even
    } else {
        odd
    }
}

/// Integrand of the kernel: d/dρ ∫₀^ρ r^{m-1}/(1-r²)^m dr.
pub fn radial_kernel_derivative(rho: f64, m: usize) -> f64 {
    rho.powi(m as i32 - 1) / (1.0 - rho * rho).powi(m as i32)
}

/// Solve ∫₀^ρ r^{m-1}/(1-r²)^m dr = target for ρ ∈ (0, 1).
///
/// Bisection to bracket, Newton to polish; the kernel is strictly
/// increasing so the root is unique.
pub fn radial_kernel_inverse(target: f64, m: usize) -> Result<f64> {
    if target < 0.0 {
        return Err(Error::Domain(format!("kernel target {target} negative")));
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0 - 1e-15;
    if radial_kernel_integral(hi, m)? < target {
        return Err(Error::Domain(format!("kernel target {target} unreachable in f64")));
    }
    for _ in 0..70 {
        let mid = 0.5 * (lo + hi);
        if radial_kernel_integral(mid, m)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let f = radial_kernel_integral(x, m)? - target;
        let d = radial_kernel_derivative(x, m);
        let step = f / d;
        let next = x - step;
        if next > lo && next < hi {
            x = next;
        }
        if step.abs() < 1e-16 * x.max(1e-6) {
            break;
        }
    }
    let residual = radial_kernel_integral(x, m)? - target;
    if residual.abs() > 1e-12 * target.max(1.0) {
        return Err(Error::Numerical(format!(
            "kernel inverse residual {residual:.3e} exceeds tolerance"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(radial_kernel_integral(0.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn m2_closed_form_at_inverse_sqrt2() {
        // antiderivative 1/(2(1-r²)): value 1/(2·0.5) - 1/2 = 0.5
        let v = radial_kernel_integral(std::f64::consts::FRAC_1_SQRT_2, 2).unwrap();
        assert_relative_eq!(v, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn m1_is_atanh() {
        let v = radial_kernel_integral(0.5, 1).unwrap();
        assert_relative_eq!(v, 0.5f64.atanh(), epsilon = 1e-14);
        assert_relative_eq!(v, 0.549306, epsilon = 1e-6);
    }

    #[test]
    fn matches_quadrature_for_various_orders() {
        for &m in &[1usize, 2, 3, 4, 5, 6] {
            for &rho in &[0.05, 0.19, 0.21, 0.5, 0.9, 0.99] {
                let direct = crate::quad::integrate_panels(
                    |r| radial_kernel_derivative(r, m),
                    0.0,
                    rho,
                    8,
                    48,
                );
                let v = radial_kernel_integral(rho, m).unwrap();
                assert_relative_eq!(v, direct, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn strictly_increasing_in_rho() {
        let mut prev = 0.0;
        for i in 1..100 {
            let rho = i as f64 / 100.0;
            let v = radial_kernel_integral(rho, 3).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn series_and_recurrence_agree_at_threshold() {
        for &m in &[1usize, 2, 5] {
            let a = kernel_series(0.2, m);
            let b = sinh_power_integral(m - 1, 2.0 * 0.2f64.atanh()) / 2f64.powi(m as i32);
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn inverse_round_trips() {
        for &m in &[1usize, 2, 3, 4] {
            for &rho in &[0.1, 0.5, 0.9, 0.99] {
                let t = radial_kernel_integral(rho, m).unwrap();
                let back = radial_kernel_inverse(t, m).unwrap();
                assert_relative_eq!(back, rho, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(radial_kernel_integral(-0.1, 2).is_err());
        assert!(radial_kernel_integral(1.0, 2).is_err());
        assert!(radial_kernel_integral(0.5, 0).is_err());
    }
}
