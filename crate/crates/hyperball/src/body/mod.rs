//! Concrete body constructions and the named-construction registry.
//!
//! The two families used by the pipeline sit behind a common trait and are
//! looked up by name at run time, so the CLI can switch between them from
//! configuration alone: `cylinder-caps` (the rim-smoothed cylinder with
//! totally-geodesic caps) and `lq-ball` (an ℓ^q unit ball pulled back
//! through the radial map).

mod cylinder;
mod lq;

pub use cylinder::{
    build_m_for_ft, make_cylinder_caps, smooth_edges, BuiltM, CylinderCapsParams,
    CylinderCapsProfile, HeightN, SmoothedCylProfile, SmoothingParams,
};
pub use lq::make_lq_ball;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{pull_body, push_body, Profile, Smoothness, StarBody};

/// ρ_{L_ε}(θ) = ρ_L(θ) + ε: radial strictification.
///
/// Convexity is not preserved in general (a flat boundary piece bends the
/// wrong way for any ε > 0); callers re-verify with
/// [`crate::geom::e_convexity_check`].
pub fn strictify(body: &StarBody, eps_strict: f64) -> Result<StarBody> {
    if eps_strict < 0.0 {
        return Err(Error::Domain("eps_strict must be nonnegative".into()));
    }
    if eps_strict == 0.0 {
        return Ok(body.clone());
    }
    if let Some(rev) = body.as_revolution() {
        let grid = 512;
        for i in 0..=grid {
            let phi = std::f64::consts::FRAC_PI_2 * i as f64 / grid as f64;
            if rev.rho_angle(phi) + eps_strict >= 1.0 {
                return Err(Error::Domain("strictified body escapes the unit ball".into()));
            }
        }
        let profile: Arc<dyn Profile> =
            Arc::new(ShiftedProfile { inner: rev.profile().clone(), eps: eps_strict });
        return Ok(crate::geom::RevolutionBody::new(body.dim(), profile)?
            .star_body()
            .with_smoothness(body.smoothness()));
    }
    let rule = crate::quad::SphereRule::product(body.dim(), 48);
    for node in &rule.nodes {
        if body.rho(node) + eps_strict >= 1.0 {
            return Err(Error::Domain("strictified body escapes the unit ball".into()));
        }
    }
    let inner = body.clone();
    Ok(StarBody::from_radial(
        body.dim(),
        body.smoothness(),
        Arc::new(move |d: &[f64]| inner.rho(d) + eps_strict),
    ))
}

struct ShiftedProfile {
    inner: Arc<dyn Profile>,
    eps: f64,
}

impl Profile for ShiftedProfile {
    fn rho(&self, phi: f64) -> f64 {
        self.inner.rho(phi) + self.eps
    }
    fn drho(&self, phi: f64) -> f64 {
        self.inner.drho(phi)
    }
    fn d2rho(&self, phi: f64) -> f64 {
        self.inner.d2rho(phi)
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

/// Inputs shared by all registered constructions.
#[derive(Debug, Clone, Copy)]
pub struct FamilyParams {
    pub n: usize,
    pub lambda: f64,
    pub blend_width: f64,
    pub eps_strict: f64,
    pub lq_exponent: f64,
    pub lq_dilation: f64,
}

/// Output of a construction: the convex body L inside the unit ball and
/// its image M under r ↦ r/(1-r²).
pub struct ConstructionOutput {
    pub l: StarBody,
    pub m: StarBody,
    /// Axial half-height of M, when the construction controls it.
    pub half_height: Option<f64>,
}

/// A body construction selectable by name.
pub trait Construction: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, params: &FamilyParams) -> Result<ConstructionOutput>;
}

struct CylinderCapsConstruction;

impl Construction for CylinderCapsConstruction {
    fn name(&self) -> &'static str {
        "cylinder-caps"
    }

    fn build(&self, p: &FamilyParams) -> Result<ConstructionOutput> {
        let params = CylinderCapsParams::new(p.n, p.lambda)?;
        let smoothing = SmoothingParams::new(p.blend_width, p.eps_strict)?;
        let built = build_m_for_ft(params, &smoothing)?;
        Ok(ConstructionOutput {
            l: built.l_smooth.star_body(),
            m: built.m.star_body(),
            half_height: Some(built.n_half_height.0),
        })
    }
}

struct LqBallConstruction;

impl Construction for LqBallConstruction {
    fn name(&self) -> &'static str {
        "lq-ball"
    }

    fn build(&self, p: &FamilyParams) -> Result<ConstructionOutput> {
        let m = make_lq_ball(p.n, p.lq_exponent, p.lq_dilation)?;
        let l = pull_body(&m);
        // recover M bit-for-bit through the forward map so L and M stay
        // radially conjugate on the same evaluation path
        let m = push_body(&l);
        Ok(ConstructionOutput { l, m, half_height: None })
    }
}

/// All registered constructions.
pub fn registry() -> Vec<Box<dyn Construction>> {
    vec![Box::new(CylinderCapsConstruction), Box::new(LqBallConstruction)]
}

/// Look up a construction by its registered name.
pub fn lookup(name: &str) -> Result<Box<dyn Construction>> {
    registry()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| {
            let names: Vec<&str> = registry().iter().map(|c| c.name()).collect();
            Error::Config(format!("unknown construction {name:?}; available: {names:?}"))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn strictify_zero_is_identity() {
        let b = StarBody::ball(3, 0.5).unwrap();
        let s = strictify(&b, 0.0).unwrap();
        assert_eq!(s.rho(&[0.0, 0.0, 1.0]), 0.5);
    }

    #[test]
    fn strictify_shifts_ball_radius() {
        let b = StarBody::ball(3, 0.5).unwrap();
        let s = strictify(&b, 0.1).unwrap();
        assert_relative_eq!(s.rho(&[1.0, 0.0, 0.0]), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn strictify_rejects_escape() {
        let b = StarBody::ball(3, 0.95).unwrap();
        assert!(strictify(&b, 0.1).is_err());
    }

    #[test]
    fn radial_shift_of_flat_wall_is_not_convex() {
        // A flat boundary piece plus a constant radial shift bends outward
        // away from the normal foot, so the naive strictification loses
        // convexity; the pipeline uses the strict bend in SmoothingParams
        // instead.
        let sharp = make_cylinder_caps(CylinderCapsParams::new(3, 0.02).unwrap()).unwrap();
        let smooth = smooth_edges(&sharp, &SmoothingParams::new(0.08, 0.0).unwrap()).unwrap();
        let shifted = strictify(&smooth.star_body(), 1e-3).unwrap();
        let rep = crate::geom::e_convexity_check(&shifted, 500, 1e-9, 2);
        assert!(!rep.convex);
        assert!(rep.min_curvature.unwrap() < -1e-6);
    }

    #[test]
    fn registry_contains_both_families() {
        let names: Vec<&str> = registry().iter().map(|c| c.name()).collect();
        assert!(names.contains(&"cylinder-caps"));
        assert!(names.contains(&"lq-ball"));
        assert!(lookup("no-such-family").is_err());
    }

    #[test]
    fn lq_construction_round_trips_through_the_map() {
        let c = lookup("lq-ball").unwrap();
        let params = FamilyParams {
            n: 5,
            lambda: 0.05,
            blend_width: 0.08,
            eps_strict: 0.0,
            lq_exponent: 4.0,
            lq_dilation: 0.5,
        };
        let out = c.build(&params).unwrap();
        let rule = crate::quad::SphereRule::product(5, 8);
        for node in &rule.nodes {
            let rho_l = out.l.rho(node);
            let rho_m = out.m.rho(node);
            assert_relative_eq!(rho_m, rho_l / (1.0 - rho_l * rho_l), epsilon = 1e-14);
        }
        // pulled-back ℓ⁴ ball is s-convex, hence e-convex
        let rep = crate::geom::e_convexity_check(&out.l, 2000, 1e-9, 4);
        assert!(rep.convex);
    }
}
