//! The cylinder-with-geodesic-caps body and its smoothed variant.
//!
//! The sharp body is the intersection of the infinite cylinder of radius
//! √2/2 about the x_n axis with the two balls whose boundary spheres are
//! totally geodesic in the spherical metric (planar equation
//! r² + a r cos φ = 1).  The cap parameter a is fixed by continuity at the
//! rim circle (radius √2/2, height √2/2 − λ).
//!
//! Smoothing happens on the concave height profile u(v) (distance from the
//! axis as a function of height): the sharp profile is the pointwise
//! minimum of the wall and cap branches, each concave, and a log-sum-exp
//! soft minimum of concave branches is concave, infinitely smooth, and
//! agrees with the exact minimum to machine precision outside a band
//! around the rim.  An optional strictification term bends the flat wall
//! branch into a strictly concave one so that downstream radial
//! perturbations cannot destroy convexity.

use std::any::Any;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Profile, RevolutionBody, Smoothness};

const CYLINDER_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Parameters of the sharp cylinder-with-caps body.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CylinderCapsParams {
    pub n: usize,
    /// Cap-height parameter: the cylindrical part has half-height √2/2 − λ.
    pub lambda: f64,
}

impl CylinderCapsParams {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension {n} must be >= 3")));
        }
        if !(lambda > 0.0 && lambda < CYLINDER_RADIUS) {
            return Err(Error::Domain(format!(
                "lambda = {lambda} outside (0, {CYLINDER_RADIUS})"
            )));
        }
        Ok(Self { n, lambda })
    }

    /// Half-height of the cylindrical part.
    pub fn rim_height(&self) -> f64 {
        CYLINDER_RADIUS - self.lambda
    }

    /// Euclidean distance from the origin to the rim circle.
    pub fn rim_radius(&self) -> f64 {
        (0.5 + self.rim_height() * self.rim_height()).sqrt()
    }

    /// Angle of the rim from the symmetry axis.
    pub fn rim_angle(&self) -> f64 {
        CYLINDER_RADIUS.atan2(self.rim_height())
    }

    /// Cap parameter a of r² + a r cos φ = 1, from rim continuity:
    /// a = (1 − r₀²)/(r₀ cos φ₀) = (1/2 − v₀²)/v₀.
    pub fn cap_parameter(&self) -> f64 {
        let v0 = self.rim_height();
        (0.5 - v0 * v0) / v0
    }

    /// Axial half-height of the image body under r ↦ r/(1−r²): N = 1/a.
    pub fn image_half_height(&self) -> f64 {
        1.0 / self.cap_parameter()
    }
}

/// Smoothing controls: angular half-width of the rim mollification and the
/// strict-convexity bend of the wall branch.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmoothingParams {
    pub blend_width: f64,
    pub eps_strict: f64,
}

impl SmoothingParams {
    pub fn new(blend_width: f64, eps_strict: f64) -> Result<Self> {
        if !(blend_width > 0.0) {
            return Err(Error::Domain("blend_width must be positive".into()));
        }
        if eps_strict < 0.0 {
            return Err(Error::Domain("eps_strict must be nonnegative".into()));
        }
        Ok(Self { blend_width, eps_strict })
    }
}

/// Half-height N of the image body M; grows without bound as λ → 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct HeightN(pub f64);

/// The sharp piecewise profile: cap for φ ∈ [0, φ₀], wall for φ ∈ [φ₀, π/2].
pub struct CylinderCapsProfile {
    pub(crate) params: CylinderCapsParams,
    phi0: f64,
    a: f64,
}

impl CylinderCapsProfile {
    pub fn new(params: CylinderCapsParams) -> Self {
        Self { params, phi0: params.rim_angle(), a: params.cap_parameter() }
    }

    fn cap_rho(&self, phi: f64) -> f64 {
        let ac = self.a * phi.cos();
        // positive root of ρ² + a ρ cos φ − 1 = 0
        0.5 * (-ac + (ac * ac + 4.0).sqrt())
    }

    fn cap_drho(&self, phi: f64) -> f64 {
        let r = self.cap_rho(phi);
        self.a * r * phi.sin() / (2.0 * r + self.a * phi.cos())
    }

    fn cap_d2rho(&self, phi: f64) -> f64 {
        let r = self.cap_rho(phi);
        let dr = self.cap_drho(phi);
        let d = 2.0 * r + self.a * phi.cos();
        let dd = 2.0 * dr - self.a * phi.sin();
        self.a * (dr * phi.sin() + r * phi.cos()) / d - self.a * r * phi.sin() * dd / (d * d)
    }

    fn wall_rho(&self, phi: f64) -> f64 {
        CYLINDER_RADIUS / phi.sin()
    }

    fn wall_drho(&self, phi: f64) -> f64 {
        -CYLINDER_RADIUS * phi.cos() / (phi.sin() * phi.sin())
    }

    fn wall_d2rho(&self, phi: f64) -> f64 {
        let s = phi.sin();
        CYLINDER_RADIUS * (1.0 / s + 2.0 * phi.cos() * phi.cos() / (s * s * s))
    }
}

impl Profile for CylinderCapsProfile {
    fn rho(&self, phi: f64) -> f64 {
        if phi <= self.phi0 {
            self.cap_rho(phi)
        } else {
            self.wall_rho(phi)
        }
    }

    fn drho(&self, phi: f64) -> f64 {
        if phi <= self.phi0 {
            self.cap_drho(phi)
        } else {
            self.wall_drho(phi)
        }
    }

    fn d2rho(&self, phi: f64) -> f64 {
        if phi <= self.phi0 {
            self.cap_d2rho(phi)
        } else {
            self.wall_d2rho(phi)
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.phi0]
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::C0
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Circular cylinder of radius √2/2 with totally-geodesic spherical caps.
pub fn make_cylinder_caps(params: CylinderCapsParams) -> Result<RevolutionBody> {
    RevolutionBody::new(params.n, Arc::new(CylinderCapsProfile::new(params)))
}

/// The smoothed (and optionally strictly convexified) profile.
pub struct SmoothedCylProfile {
    params: CylinderCapsParams,
    smoothing: SmoothingParams,
    sharp: CylinderCapsProfile,
    a: f64,
    beta: f64,
    /// Angles below this are pure cap to machine precision; evaluations
    /// there delegate to the closed-form cap piece, which stays stable at
    /// the pole where the soft-minimum branch derivative diverges.
    phi_cap: f64,
    /// Radial values on a uniform angle grid, seeding the per-query Newton
    /// polish so evaluation does not bisect from scratch.
    seed_table: Vec<f64>,
}

const SEED_TABLE_LEN: usize = 8192;

impl SmoothedCylProfile {
    pub fn new(params: CylinderCapsParams, smoothing: SmoothingParams) -> Result<Self> {
        let phi0 = params.rim_angle();
        let half_gap = 0.5 * phi0.min(std::f64::consts::FRAC_PI_2 - phi0);
        if smoothing.blend_width >= half_gap {
            return Err(Error::Domain(format!(
                "blend_width {} must be below half the breakpoint gap {half_gap:.6}",
                smoothing.blend_width
            )));
        }
        // Softness chosen so the non-dominant branch is suppressed below
        // e^-37 ≈ 9e-17 at angular distance blend_width from the rim, using
        // the smaller of the cap-side and wall-side angle-to-height factors.
        let sharp = CylinderCapsProfile::new(params);
        let v0 = params.rim_height();
        let a = params.cap_parameter();
        let cap_slope = (-a - 2.0 * v0) / (2.0 * CYLINDER_RADIUS);
        let wall_slope = -2.0 * smoothing.eps_strict;
        let gap_slope = (wall_slope - cap_slope).abs();
        let dv_wall = (sharp.wall_drho(phi0) * phi0.cos() - sharp.wall_rho(phi0) * phi0.sin()).abs();
        let dv_cap = (sharp.cap_drho(phi0) * phi0.cos() - sharp.cap_rho(phi0) * phi0.sin()).abs();
        let dvdphi = dv_wall.min(dv_cap);
        let beta = 37.0 / (gap_slope * dvdphi * smoothing.blend_width);
        let phi_cap = phi0 - 2.0 * smoothing.blend_width;
        let mut out =
            Self { params, smoothing, sharp, a, beta, phi_cap, seed_table: Vec::new() };
        let table: Vec<f64> = (0..SEED_TABLE_LEN)
            .map(|i| {
                let phi =
                    std::f64::consts::FRAC_PI_2 * i as f64 / (SEED_TABLE_LEN - 1) as f64;
                out.solve_rho_bisect(phi)
            })
            .collect();
        out.seed_table = table;
        Ok(out)
    }

    /// Height-profile branches at height v: curved wall, north cap, south
    /// cap.  Cap branches continue past their zero as the negative square
    /// root so that root bracketing along rays works at the poles.
    fn branches(&self, v: f64) -> [(f64, f64, f64); 3] {
        let e = self.smoothing.eps_strict;
        let v0 = self.params.rim_height();
        let wall = (CYLINDER_RADIUS - e * v * v / v0, -2.0 * e * v / v0, -2.0 * e / v0);
        let north = cap_branch(1.0 - self.a * v - v * v, -self.a - 2.0 * v);
        let south = cap_branch(1.0 + self.a * v - v * v, self.a - 2.0 * v);
        [wall, north, south]
    }

    /// Soft minimum of the branches with first and second v-derivatives.
    fn height_profile(&self, v: f64) -> (f64, f64, f64) {
        let branches = self.branches(v);
        let m = branches.iter().map(|b| b.0).fold(f64::INFINITY, f64::min);
        let mut wsum = 0.0;
        let mut d1 = 0.0;
        let mut d1sq = 0.0;
        let mut d2 = 0.0;
        for (u, du, d2u) in branches {
            let w = (-self.beta * (u - m)).exp();
            wsum += w;
            d1 += w * du;
            d1sq += w * du * du;
            d2 += w * d2u;
        }
        let u = m - (wsum.ln()) / self.beta;
        let d1 = d1 / wsum;
        let var = (d1sq / wsum - d1 * d1).max(0.0);
        let d2 = d2 / wsum - self.beta * var;
        (u, d1, d2)
    }

    /// Solve r sin φ = u(r cos φ) by bisection plus Newton polish.
    fn solve_rho_bisect(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        let f = |r: f64| r * s - self.height_profile(r * c).0;
        let mut lo = 1e-9;
        let mut hi = 0.9999;
        debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton polish
        let mut r = 0.5 * (lo + hi);
        for _ in 0..4 {
            let (u, du, _) = self.height_profile(r * c);
            let val = r * s - u;
            let deriv = s - du * c;
            let step = val / deriv;
            let next = r - step;
            if next > lo && next < hi {
                r = next;
            } else {
                break;
            }
        }
        r
    }

    /// Radial value at angle φ, seeded from the precomputed table.
    fn solve_rho(&self, phi: f64) -> f64 {
        if self.seed_table.is_empty() {
            return self.solve_rho_bisect(phi);
        }
        let step = std::f64::consts::FRAC_PI_2 / (SEED_TABLE_LEN - 1) as f64;
        let pos = (phi / step).clamp(0.0, (SEED_TABLE_LEN - 1) as f64);
        let idx = (pos as usize).min(SEED_TABLE_LEN - 2);
        let frac = pos - idx as f64;
        let mut r = self.seed_table[idx] * (1.0 - frac) + self.seed_table[idx + 1] * frac;
        let (s, c) = phi.sin_cos();
        for _ in 0..4 {
            let (u, du, _) = self.height_profile(r * c);
            let val = r * s - u;
            let deriv = s - du * c;
            let next = r - val / deriv;
            if !(0.0..1.0).contains(&next) {
                return self.solve_rho_bisect(phi);
            }
            if (next - r).abs() < 1e-15 {
                return next;
            }
            r = next;
        }
        r
    }
}

/// (u, u', u'') for a cap branch with Q = quadratic(v), Q' its derivative.
fn cap_branch(q: f64, dq: f64) -> (f64, f64, f64) {
    let aq = q.abs().max(1e-300);
    let root = aq.sqrt();
    if q >= 0.0 {
        (root, dq / (2.0 * root), -1.0 / root - dq * dq / (4.0 * aq * root))
    } else {
        // continuation u = -√(-Q); second derivative unused past the pole
        (-root, dq / (2.0 * root), 1.0 / root + dq * dq / (4.0 * aq * root))
    }
}

impl Profile for SmoothedCylProfile {
    fn rho(&self, phi: f64) -> f64 {
        if phi <= self.phi_cap {
            self.sharp.cap_rho(phi)
        } else {
            self.solve_rho(phi)
        }
    }

    fn drho(&self, phi: f64) -> f64 {
        if phi <= self.phi_cap {
            return self.sharp.cap_drho(phi);
        }
        let r = self.solve_rho(phi);
        let (s, c) = phi.sin_cos();
        let (_, du, _) = self.height_profile(r * c);
        -r * (c + du * s) / (s - du * c)
    }

    fn d2rho(&self, phi: f64) -> f64 {
        if phi <= self.phi_cap {
            return self.sharp.cap_d2rho(phi);
        }
        let r = self.solve_rho(phi);
        let dr = self.drho(phi);
        let kappa_num = self.curvature_numerator(phi);
        (r * r + 2.0 * dr * dr - kappa_num) / r
    }

    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::Cinf
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

impl SmoothedCylProfile {
    /// ρ² + 2ρ′² − ρρ″ evaluated through the graph curvature of u(v),
    /// which stays numerically stable where u′ diverges at the poles:
    /// κ_polar = −u″/(1+u′²)^{3/2} and the numerator is κ·(ρ²+ρ′²)^{3/2}.
    pub fn curvature_numerator(&self, phi: f64) -> f64 {
        if phi <= self.phi_cap {
            let r = self.sharp.cap_rho(phi);
            let dr = self.sharp.cap_drho(phi);
            let d2r = self.sharp.cap_d2rho(phi);
            return r * r + 2.0 * dr * dr - r * d2r;
        }
        let r = self.solve_rho(phi);
        let dr = self.drho(phi);
        let (_, du, d2u) = self.height_profile(r * phi.cos());
        let graph_kappa = -d2u / (1.0 + du * du).powf(1.5);
        graph_kappa * (r * r + dr * dr).powf(1.5)
    }
}

/// Replace the sharp rim by an infinitely smooth concave blend.
///
/// The result is identical to the input outside the blend band (soft-min
/// weights decay below machine epsilon there).  With `eps_strict > 0` the
/// flat wall branch is additionally bent into a strictly concave one; that
/// trades the exact-identity property on the wall for a strict convexity
/// margin, which the certification pipeline needs before perturbing radii.
pub fn smooth_edges(body: &RevolutionBody, params: &SmoothingParams) -> Result<RevolutionBody> {
    let profile = body
        .profile()
        .as_any()
        .downcast_ref::<CylinderCapsProfile>()
        .ok_or_else(|| {
            Error::Domain("smooth_edges expects a cylinder-caps profile with breakpoints".into())
        })?;
    let smoothed = SmoothedCylProfile::new(profile.params, *params)?;
    let body = RevolutionBody::new(body.dim(), Arc::new(smoothed))?;
    let report = crate::geom::e_convexity_check(&body.clone().star_body(), 400, 1e-9, 1);
    if !report.convex {
        let phi = report.min_curvature_angle.unwrap_or(f64::NAN);
        let kappa = report.min_curvature.unwrap_or(f64::NAN);
        return Err(Error::Convexity { phi, kappa });
    }
    Ok(body)
}

/// The smoothed body together with the image body M and its half-height.
pub struct BuiltM {
    pub l_smooth: RevolutionBody,
    pub m: RevolutionBody,
    pub n_half_height: HeightN,
}

/// Build M = push(smooth(cylinder-caps)) and report the half-height N.
pub fn build_m_for_ft(params: CylinderCapsParams, smoothing: &SmoothingParams) -> Result<BuiltM> {
    let sharp = make_cylinder_caps(params)?;
    let l_smooth = smooth_edges(&sharp, smoothing)?;
    let profile: Arc<dyn Profile> =
        Arc::new(crate::geom::PushedProfile::new(l_smooth.profile().clone()));
    let m = RevolutionBody::new_unchecked(params.n, profile);
    Ok(BuiltM { l_smooth, m, n_half_height: HeightN(params.image_half_height()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(lambda: f64) -> CylinderCapsParams {
        CylinderCapsParams::new(3, lambda).unwrap()
    }

    #[test]
    fn equatorial_radius_is_cylinder_radius() {
        let body = make_cylinder_caps(params(0.05)).unwrap();
        assert_relative_eq!(
            body.rho_angle(std::f64::consts::FRAC_PI_2),
            CYLINDER_RADIUS,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pole_radius_solves_cap_quadratic() {
        let p = params(0.05);
        let a = p.cap_parameter();
        let body = make_cylinder_caps(p).unwrap();
        let expected = 0.5 * (-a + (a * a + 4.0).sqrt());
        assert_relative_eq!(body.rho_angle(0.0), expected, epsilon = 1e-14);
    }

    #[test]
    fn profile_continuous_at_rim() {
        let p = params(0.1);
        let body = make_cylinder_caps(p).unwrap();
        let phi0 = p.rim_angle();
        let below = body.rho_angle(phi0 - 1e-13);
        let above = body.rho_angle(phi0 + 1e-13);
        assert!((below - above).abs() < 1e-12);
        assert_relative_eq!(below, p.rim_radius(), epsilon = 1e-12);
    }

    #[test]
    fn cap_piece_satisfies_geodesic_equation() {
        let p = params(0.07);
        let a = p.cap_parameter();
        let body = make_cylinder_caps(p).unwrap();
        for i in 0..=100 {
            let phi = p.rim_angle() * i as f64 / 100.0;
            let r = body.rho_angle(phi);
            let residual = r * r + a * r * phi.cos() - 1.0;
            assert!(residual.abs() < 1e-12, "residual {residual:.2e} at phi {phi}");
        }
    }

    #[test]
    fn small_lambda_degenerates_toward_sphere() {
        let p = params(1e-4);
        assert!(p.rim_radius() > 0.9999);
        assert!(p.cap_parameter() < 3e-4);
    }

    #[test]
    fn image_height_decreases_in_lambda() {
        let ns: Vec<f64> = [0.2, 0.1, 0.05, 0.02]
            .iter()
            .map(|&l| params(l).image_half_height())
            .collect();
        for w in ns.windows(2) {
            assert!(w[0] < w[1], "N must increase as lambda decreases: {ns:?}");
        }
    }

    #[test]
    fn sharp_derivatives_match_finite_differences() {
        let p = params(0.05);
        let prof = CylinderCapsProfile::new(p);
        for &phi in &[0.2, 0.5, p.rim_angle() + 0.1, 1.3] {
            let h = 1e-6;
            let fd1 = (prof.rho(phi + h) - prof.rho(phi - h)) / (2.0 * h);
            assert_relative_eq!(prof.drho(phi), fd1, max_relative = 1e-8);
            let h = 1e-4;
            let fd2 = (prof.rho(phi + h) - 2.0 * prof.rho(phi) + prof.rho(phi - h)) / (h * h);
            assert!((prof.d2rho(phi) - fd2).abs() < 1e-6 * fd2.abs().max(1.0));
        }
    }

    fn smoothing() -> SmoothingParams {
        SmoothingParams::new(0.08, 0.0).unwrap()
    }

    #[test]
    fn smoothed_profile_unchanged_outside_band() {
        let p = params(0.02);
        let sharp = make_cylinder_caps(p).unwrap();
        let smooth = smooth_edges(&sharp, &smoothing()).unwrap();
        let phi0 = p.rim_angle();
        let w = smoothing().blend_width;
        for &phi in &[phi0 - 2.0 * w, phi0 + 2.0 * w, 0.05, 1.5] {
            let a = sharp.rho_angle(phi);
            let b = smooth.rho_angle(phi);
            assert!(
                (a - b).abs() <= 4.0 * f64::EPSILON * a,
                "profiles differ at phi {phi}: {a:.17} vs {b:.17}"
            );
        }
    }

    #[test]
    fn smoothed_profile_is_c2_across_rim() {
        let p = params(0.02);
        let sharp_prof = CylinderCapsProfile::new(p);
        let smooth = smooth_edges(&make_cylinder_caps(p).unwrap(), &smoothing()).unwrap();
        let phi0 = p.rim_angle();
        // the sharp profile has an O(1) kink in the first derivative
        let sharp_jump = sharp_prof.drho(phi0 + 1e-9) - sharp_prof.drho(phi0 - 1e-9);
        assert!(sharp_jump.abs() > 0.5);
        // the smoothed derivatives vary continuously: over a step δ the
        // change is bounded by δ times the next derivative's local scale
        let delta = 1e-7;
        let d2_scale = smooth.d2rho_angle(phi0).abs().max(1.0);
        let d1_jump = smooth.drho_angle(phi0 + delta) - smooth.drho_angle(phi0 - delta);
        assert!(d1_jump.abs() < 4.0 * delta * d2_scale, "d1 jump {d1_jump:.3e}");
        let d2_jump = smooth.d2rho_angle(phi0 + delta) - smooth.d2rho_angle(phi0 - delta);
        assert!(d2_jump.abs() < 1e-3 * d2_scale, "d2 jump {d2_jump:.3e} vs scale {d2_scale:.3e}");
    }

    #[test]
    fn smoothed_derivatives_match_finite_differences() {
        let p = params(0.05);
        let prof = SmoothedCylProfile::new(p, smoothing()).unwrap();
        let h = 1e-5;
        for &phi in &[0.1, p.rim_angle() - 0.05, p.rim_angle(), p.rim_angle() + 0.05, 1.4] {
            let fd1 = (prof.rho(phi + h) - prof.rho(phi - h)) / (2.0 * h);
            let fd2 = (prof.rho(phi + h) - 2.0 * prof.rho(phi) + prof.rho(phi - h)) / (h * h);
            assert_relative_eq!(prof.drho(phi), fd1, max_relative = 1e-5);
            assert!((prof.d2rho(phi) - fd2).abs() < 1e-3 * fd2.abs().max(1.0));
        }
    }

    #[test]
    fn shrinking_blend_width_converges_to_sharp_profile() {
        let p = params(0.05);
        let sharp = make_cylinder_caps(p).unwrap();
        let mut sups = Vec::new();
        for &w in &[0.12, 0.06, 0.03] {
            let smooth =
                smooth_edges(&sharp, &SmoothingParams::new(w, 0.0).unwrap()).unwrap();
            let sup = (0..=2000)
                .map(|i| {
                    let phi = std::f64::consts::FRAC_PI_2 * i as f64 / 2000.0;
                    (sharp.rho_angle(phi) - smooth.rho_angle(phi)).abs()
                })
                .fold(0.0f64, f64::max);
            sups.push(sup);
        }
        assert!(sups[0] > sups[1] && sups[1] > sups[2], "sup norms {sups:?}");
        assert!(sups[2] < 0.02);
    }

    #[test]
    fn smoothed_body_passes_convexity_check() {
        for eps in [0.0, 1e-3] {
            let body = smooth_edges(
                &make_cylinder_caps(params(0.02)).unwrap(),
                &SmoothingParams::new(0.08, eps).unwrap(),
            )
            .unwrap();
            let rep = crate::geom::e_convexity_check(&body.star_body(), 500, 1e-9, 5);
            assert!(rep.convex, "min curvature {:?}", rep.min_curvature);
        }
    }

    #[test]
    fn strict_bend_gives_positive_curvature_margin() {
        let body = smooth_edges(
            &make_cylinder_caps(params(0.02)).unwrap(),
            &SmoothingParams::new(0.08, 1e-3).unwrap(),
        )
        .unwrap();
        let rep = crate::geom::e_convexity_check(&body.star_body(), 500, 1e-9, 5);
        let margin = rep.min_curvature.unwrap();
        assert!(margin > 1e-5, "expected strict margin, got {margin:.3e}");
    }

    #[test]
    fn excessive_blend_width_rejected() {
        let p = params(0.02);
        let err = SmoothedCylProfile::new(p, SmoothingParams::new(0.6, 0.0).unwrap());
        assert!(err.is_err());
    }
}
