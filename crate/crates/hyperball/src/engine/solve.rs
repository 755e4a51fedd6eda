//! The perturbed body K: radial solve of the defining integral equation
//! and the search for an admissible perturbation size.

use std::sync::Arc;

use crate::engine::zhang::PerturbationG;
use crate::error::{Error, Result};
use crate::geom::{
    e_convexity_check, radial_kernel_derivative, radial_kernel_integral, radial_kernel_inverse,
    Direction, Profile, RevolutionBody, Smoothness, StarBody,
};

/// d/dρ of the kernel integrand: used by the implicit derivatives of ρ_K.
fn kernel_weight_d1(rho: f64, m: usize) -> f64 {
    rho.powi(m as i32 - 2) * ((m as f64 - 1.0) + (m as f64 + 1.0) * rho * rho)
        / (1.0 - rho * rho).powi(m as i32 + 1)
}

/// Solve ∫₀^{ρ_K} r^{n-k-1}/(1-r²)^{n-k} dr = ∫₀^{ρ_L} (same) + ε g(θ)
/// for the radial value of K in the direction θ.
pub fn solve_k_radial(
    l: &StarBody,
    g: &PerturbationG,
    eps: f64,
    theta: &Direction,
) -> Result<f64> {
    let n = l.dim();
    let m = n - g.k;
    let rho_l = l.rho_dir(theta);
    let rhs = radial_kernel_integral(rho_l, m)? + eps * g.eval(theta.polar_angle());
    if rhs <= 0.0 {
        return Err(Error::EpsilonTooLarge { angle: theta.polar_angle() });
    }
    radial_kernel_inverse(rhs, m)
}

/// Profile of K, defined implicitly through the kernel equation; the
/// derivatives follow by differentiating both sides.
pub struct KProfile {
    l_profile: Arc<dyn Profile>,
    g: PerturbationG,
    eps: f64,
    m: usize,
}

impl KProfile {
    pub fn new(l: &RevolutionBody, g: PerturbationG, eps: f64, kernel_order: usize) -> Self {
        Self { l_profile: l.profile().clone(), g, eps, m: kernel_order }
    }

    fn rho_inner(&self, phi: f64) -> f64 {
        let rho_l = self.l_profile.rho(phi);
        let rhs = radial_kernel_integral(rho_l, self.m).expect("L inside the unit ball")
            + self.eps * self.g.eval(phi);
        radial_kernel_inverse(rhs, self.m).expect("admissible epsilon keeps the kernel target positive")
    }
}

impl Profile for KProfile {
    fn rho(&self, phi: f64) -> f64 {
        self.rho_inner(phi)
    }

    fn drho(&self, phi: f64) -> f64 {
        let rho_l = self.l_profile.rho(phi);
        let rho_k = self.rho_inner(phi);
        let w_l = radial_kernel_derivative(rho_l, self.m);
        let w_k = radial_kernel_derivative(rho_k, self.m);
        (w_l * self.l_profile.drho(phi) + self.eps * self.g.d1(phi)) / w_k
    }

    fn d2rho(&self, phi: f64) -> f64 {
        let rho_l = self.l_profile.rho(phi);
        let rho_k = self.rho_inner(phi);
        let dl = self.l_profile.drho(phi);
        let dk = self.drho(phi);
        let w_l = radial_kernel_derivative(rho_l, self.m);
        let w_k = radial_kernel_derivative(rho_k, self.m);
        (kernel_weight_d1(rho_l, self.m) * dl * dl + w_l * self.l_profile.d2rho(phi)
            + self.eps * self.g.d2(phi)
            - kernel_weight_d1(rho_k, self.m) * dk * dk)
            / w_k
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.l_profile.breakpoints()
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::Cinf
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

/// Build K as a body of revolution from an axisymmetric L.
pub fn build_k_body(l: &StarBody, g: &PerturbationG, eps: f64) -> Result<StarBody> {
    let rev = l
        .as_revolution()
        .ok_or_else(|| Error::Domain("perturbed body construction needs axisymmetric L".into()))?;
    let n = l.dim();
    let m = n - g.k;
    // fail early if the kernel target goes nonpositive anywhere
    let grid = 1024;
    for i in 0..=grid {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / grid as f64;
        let rhs = radial_kernel_integral(rev.rho_angle(phi), m)? + eps * g.eval(phi);
        if rhs <= 0.0 {
            return Err(Error::EpsilonTooLarge { angle: phi });
        }
    }
    let profile: Arc<dyn Profile> = Arc::new(KProfile::new(rev, g.clone(), eps, m));
    Ok(RevolutionBody::new(n, profile)?.star_body())
}

/// Outcome of the perturbation-size search.
#[derive(Debug, Clone, Copy)]
pub struct EpsilonChoice {
    pub epsilon: f64,
    /// sup over the grid of |ρ_K − ρ_L| at the chosen ε.
    pub sup_alpha: f64,
}

/// Largest tested ε ≤ eps_max (halving steps) for which K stays strictly
/// inside the ball, the kernel target stays positive, and K passes the
/// convexity check at tolerance `tol`.
pub fn choose_epsilon(
    l: &StarBody,
    g: &PerturbationG,
    eps_max: f64,
    tol: f64,
    seed: u64,
) -> Result<EpsilonChoice> {
    if !(eps_max > 0.0) {
        return Err(Error::Domain("eps_max must be positive".into()));
    }
    let mut eps = eps_max;
    for _ in 0..=20 {
        match try_epsilon(l, g, eps, tol, seed) {
            Ok(choice) => return Ok(choice),
            Err(_) => eps *= 0.5,
        }
    }
    Err(Error::Numerical(format!(
        "no admissible epsilon found down to {:.3e}",
        eps_max * 2f64.powi(-20)
    )))
}

fn try_epsilon(
    l: &StarBody,
    g: &PerturbationG,
    eps: f64,
    tol: f64,
    seed: u64,
) -> Result<EpsilonChoice> {
    let k_body = build_k_body(l, g, eps)?;
    let rev_k = k_body.as_revolution().unwrap();
    let rev_l = l.as_revolution().unwrap();
    let grid = 1024;
    let mut sup_alpha = 0.0f64;
    for i in 0..=grid {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / grid as f64;
        let rho_k = rev_k.rho_angle(phi);
        if rho_k >= 1.0 {
            return Err(Error::Domain("perturbed body escapes the unit ball".into()));
        }
        sup_alpha = sup_alpha.max((rho_k - rev_l.rho_angle(phi)).abs());
    }
    let report = e_convexity_check(&k_body, 400, tol, seed);
    if !report.convex {
        return Err(Error::Convexity {
            phi: report.min_curvature_angle.unwrap_or(f64::NAN),
            kappa: report.min_curvature.unwrap_or(f64::NAN),
        });
    }
    Ok(EpsilonChoice { epsilon: eps, sup_alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::HarmonicExpansion;
    use crate::geom::FnProfile;
    use approx::assert_relative_eq;

    fn ball_revolution(n: usize, r: f64) -> StarBody {
        let profile = FnProfile {
            rho: Box::new(move |_| r),
            drho: Box::new(|_| 0.0),
            d2rho: Box::new(|_| 0.0),
            smoothness: Smoothness::Cinf,
        };
        RevolutionBody::new(n, Arc::new(profile)).unwrap().star_body()
    }

    fn toy_g(n: usize, k: usize) -> PerturbationG {
        // small smooth even perturbation with both signs
        let e = HarmonicExpansion::new(n, vec![0.0, 1.0, -0.3]);
        let grid = 2048;
        let sup = (0..=grid)
            .map(|i| e.eval_phi(std::f64::consts::PI * i as f64 / grid as f64).abs())
            .fold(0.0f64, f64::max);
        PerturbationG { expansion: e.scaled(1.0 / sup), k, sup_abs: 1.0 }
    }

    #[test]
    fn zero_epsilon_reproduces_l() {
        let l = ball_revolution(3, 0.6);
        let g = toy_g(3, 1);
        for alpha in [0.0f64, 0.7, 1.5] {
            let theta = Direction::from_axis_angle(3, alpha);
            let rho = solve_k_radial(&l, &g, 0.0, &theta).unwrap();
            assert!((rho - 0.6).abs() < 1e-13);
        }
    }

    #[test]
    fn perturbation_sign_moves_radius() {
        let l = ball_revolution(3, 0.6);
        let g = toy_g(3, 1);
        for alpha in [0.1f64, 0.8, 1.4] {
            let theta = Direction::from_axis_angle(3, alpha);
            let gval = g.eval(alpha);
            let rho = solve_k_radial(&l, &g, 1e-3, &theta).unwrap();
            if gval > 0.0 {
                assert!(rho > 0.6);
            } else if gval < 0.0 {
                assert!(rho < 0.6);
            }
        }
    }

    #[test]
    fn solver_residual_below_tolerance() {
        let l = ball_revolution(4, 0.7);
        let g = toy_g(4, 2);
        let theta = Direction::from_axis_angle(4, 0.9);
        let eps = 5e-3;
        let rho = solve_k_radial(&l, &g, eps, &theta).unwrap();
        let m = 4 - 2;
        let lhs = radial_kernel_integral(rho, m).unwrap();
        let rhs = radial_kernel_integral(0.7, m).unwrap() + eps * g.eval(0.9);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn k_profile_derivatives_match_finite_differences() {
        let l = ball_revolution(3, 0.6);
        let g = toy_g(3, 1);
        let k_body = build_k_body(&l, &g, 2e-3).unwrap();
        let rev = k_body.as_revolution().unwrap();
        let h = 1e-5;
        for &phi in &[0.3, 0.9, 1.4] {
            let fd1 = (rev.rho_angle(phi + h) - rev.rho_angle(phi - h)) / (2.0 * h);
            let fd2 = (rev.rho_angle(phi + h) - 2.0 * rev.rho_angle(phi)
                + rev.rho_angle(phi - h))
                / (h * h);
            assert_relative_eq!(rev.drho_angle(phi), fd1, max_relative = 1e-6, epsilon = 1e-9);
            assert!((rev.d2rho_angle(phi) - fd2).abs() < 1e-4 * fd2.abs().max(1.0));
        }
    }

    #[test]
    fn epsilon_choice_on_strictly_convex_body() {
        let l = ball_revolution(3, 0.6);
        let g = toy_g(3, 1);
        let choice = choose_epsilon(&l, &g, 1e-2, 1e-9, 11).unwrap();
        assert!(choice.epsilon > 0.0);
        assert!(choice.sup_alpha > 0.0);
        // sup alpha shrinks with epsilon
        let half = try_epsilon(&l, &g, choice.epsilon / 2.0, 1e-9, 11).unwrap();
        assert!(half.sup_alpha < choice.sup_alpha);
    }

    #[test]
    fn oversized_epsilon_rejected_for_ball_escape() {
        let l = ball_revolution(3, 0.97);
        let g = toy_g(3, 1);
        // huge epsilon pushes rho beyond 1 where g > 0
        assert!(build_k_body(&l, &g, 50.0).is_err());
    }
}
