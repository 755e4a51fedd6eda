//! The radial correspondence r ↦ r/(1-r²) between bodies inside the unit
//! ball and unbounded star bodies, together with its exact inverse.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{Profile, RevolutionBody, Smoothness, StarBody};

/// r/(1-r²), strictly increasing from (0,1) onto (0, ∞).
pub fn map_forward(rho: f64) -> Result<f64> {
    if !(0.0 < rho && rho < 1.0) {
        return Err(Error::Domain(format!("map_forward: rho = {rho} outside (0, 1)")));
    }
    Ok(rho / (1.0 - rho * rho))
}

/// Inverse of r/(1-r²): (-1 + √(1+4t²))/(2t), evaluated as 2t/(1+√(1+4t²))
/// to stay accurate for small t.
pub fn map_inverse(rho_m: f64) -> Result<f64> {
    if !(rho_m > 0.0) {
        return Err(Error::Domain(format!("map_inverse: rho = {rho_m} not positive")));
    }
    Ok(2.0 * rho_m / (1.0 + (1.0 + 4.0 * rho_m * rho_m).sqrt()))
}

fn forward_d1(r: f64) -> f64 {
    (1.0 + r * r) / (1.0 - r * r).powi(2)
}

fn forward_d2(r: f64) -> f64 {
    2.0 * r * (3.0 + r * r) / (1.0 - r * r).powi(3)
}

/// Profile of the image body: map_forward composed with an inner profile.
pub struct PushedProfile {
    inner: Arc<dyn Profile>,
}

impl PushedProfile {
    pub fn new(inner: Arc<dyn Profile>) -> Self {
        Self { inner }
    }
}

impl Profile for PushedProfile {
    fn rho(&self, phi: f64) -> f64 {
        let r = self.inner.rho(phi);
        r / (1.0 - r * r)
    }

    fn drho(&self, phi: f64) -> f64 {
        let r = self.inner.rho(phi);
        forward_d1(r) * self.inner.drho(phi)
    }

    fn d2rho(&self, phi: f64) -> f64 {
        let r = self.inner.rho(phi);
        let dr = self.inner.drho(phi);
        forward_d2(r) * dr * dr + forward_d1(r) * self.inner.d2rho(phi)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }

    fn smoothness(&self) -> Smoothness {
        self.inner.smoothness()
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

struct PulledProfile {
    inner: Arc<dyn Profile>,
}

impl Profile for PulledProfile {
    fn rho(&self, phi: f64) -> f64 {
        let t = self.inner.rho(phi);
        2.0 * t / (1.0 + (1.0 + 4.0 * t * t).sqrt())
    }

    fn drho(&self, phi: f64) -> f64 {
        let r = self.rho(phi);
        self.inner.drho(phi) / forward_d1(r)
    }

    fn d2rho(&self, phi: f64) -> f64 {
        let r = self.rho(phi);
        let dr = self.drho(phi);
        (self.inner.d2rho(phi) - forward_d2(r) * dr * dr) / forward_d1(r)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }

    fn smoothness(&self) -> Smoothness {
        self.inner.smoothness()
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

/// The image body M with ρ_M(θ) = ρ_L(θ)/(1-ρ_L(θ)²).
///
/// The radial function of the result composes map_forward with the input's
/// radial function, so values agree with the pointwise map bit for bit.
pub fn push_body(l: &StarBody) -> StarBody {
    match l.as_revolution() {
        Some(rev) => {
            // The image may leave the unit ball; bypass the RevolutionBody
            // range validation.
            let profile: Arc<dyn Profile> = Arc::new(PushedProfile::new(rev.profile().clone()));
            RevolutionBody::new_unchecked(l.dim(), profile)
                .star_body()
                .with_smoothness(l.smoothness())
        }
        None => {
            let inner = l.clone();
            StarBody::from_radial(
                l.dim(),
                l.smoothness(),
                Arc::new(move |d: &[f64]| {
                    let r = inner.rho(d);
                    r / (1.0 - r * r)
                }),
            )
        }
    }
}

/// The preimage body L with ρ_L = map_inverse(ρ_M); always inside the ball.
pub fn pull_body(m: &StarBody) -> StarBody {
    match m.as_revolution() {
        Some(rev) => {
            let profile: Arc<dyn Profile> = Arc::new(PulledProfile { inner: rev.profile().clone() });
            RevolutionBody::new(m.dim(), profile)
                .expect("pulled body lies inside the unit ball")
                .star_body()
                .with_smoothness(m.smoothness())
        }
        None => {
            let inner = m.clone();
            StarBody::from_radial(
                m.dim(),
                m.smoothness(),
                Arc::new(move |d: &[f64]| {
                    let t = inner.rho(d);
                    2.0 * t / (1.0 + (1.0 + 4.0 * t * t).sqrt())
                }),
            )
        }
    }
}

impl RevolutionBody {
    pub(crate) fn new_unchecked(dim: usize, profile: Arc<dyn Profile>) -> Self {
        Self { dim, profile }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn forward_at_half_is_two_thirds() {
        assert_relative_eq!(map_forward(0.5).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_at_two_thirds_is_half() {
        assert_relative_eq!(map_inverse(2.0 / 3.0).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn golden_ratio_maps_to_one() {
        let rho = (5f64.sqrt() - 1.0) / 2.0;
        assert_relative_eq!(map_forward(rho).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn round_trip_is_identity() {
        for i in 1..200 {
            let x = i as f64 / 200.0;
            let back = map_inverse(map_forward(x).unwrap()).unwrap();
            assert!((back - x).abs() < 1e-14, "round trip at {x}: {back}");
        }
    }

    #[test]
    fn inverse_stable_for_tiny_values() {
        let t = 1e-12;
        let r = map_inverse(t).unwrap();
        assert_relative_eq!(r, t, max_relative = 1e-10);
    }

    #[test]
    fn domain_violations_error() {
        assert!(map_forward(0.0).is_err());
        assert!(map_forward(1.0).is_err());
        assert!(map_inverse(0.0).is_err());
    }

    #[test]
    fn push_ball_gives_scaled_ball() {
        let l = StarBody::ball(3, 0.5).unwrap();
        let m = push_body(&l);
        let dir = [0.0, 0.0, 1.0];
        assert_relative_eq!(m.rho(&dir), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn pull_after_push_is_identity_pointwise() {
        let l = StarBody::ball(4, 0.73).unwrap();
        let back = pull_body(&push_body(&l));
        let rule = crate::quad::SphereRule::product(4, 12);
        for node in &rule.nodes {
            assert!((back.rho(node) - 0.73).abs() < 1e-14);
        }
    }
}
