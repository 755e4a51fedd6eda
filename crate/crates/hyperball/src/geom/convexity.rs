//! Euclidean convexity checks for star bodies.
//!
//! Bodies of revolution with twice-differentiable profiles are tested
//! through the sign of the polar-curve curvature numerator
//! ρ² + 2ρ′² − ρρ″ on a dense angle grid; every body additionally gets a
//! sampled midpoint test on random boundary pairs.

use rand::SeedableRng;

use crate::geom::{Smoothness, StarBody};

/// Outcome of a convexity check.
#[derive(Debug, Clone)]
pub struct ConvexityReport {
    pub convex: bool,
    /// A violating pair of boundary points, when one was found.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    /// Minimum of the curvature numerator over the tested grid (revolution
    /// bodies with smooth profiles only).
    pub min_curvature: Option<f64>,
    pub min_curvature_angle: Option<f64>,
}

/// Check Euclidean convexity of `body` with `samples` random midpoint
/// probes at absolute tolerance `tol`.
pub fn e_convexity_check(body: &StarBody, samples: usize, tol: f64, seed: u64) -> ConvexityReport {
    assert!(samples >= 100, "need at least 100 samples");
    let mut report = ConvexityReport {
        convex: true,
        witness: None,
        min_curvature: None,
        min_curvature_angle: None,
    };

    if let Some(rev) = body.as_revolution() {
        if body.smoothness() >= Smoothness::C2 {
            let grid = 4096;
            let mut min_k = f64::INFINITY;
            let mut min_phi = 0.0;
            for i in 0..=grid {
                let phi = std::f64::consts::FRAC_PI_2 * i as f64 / grid as f64;
                let r = rev.rho_angle(phi);
                let dr = rev.drho_angle(phi);
                let d2r = rev.d2rho_angle(phi);
                let kappa = r * r + 2.0 * dr * dr - r * d2r;
                if kappa < min_k {
                    min_k = kappa;
                    min_phi = phi;
                }
            }
            report.min_curvature = Some(min_k);
            report.min_curvature_angle = Some(min_phi);
            if min_k < -tol {
                report.convex = false;
            }
        }
    }

    let n = body.dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_direction(&mut rng, n);
        let b = random_direction(&mut rng, n);
        let pa: Vec<f64> = {
            let r = body.rho(&a);
            a.iter().map(|c| c * r).collect()
        };
        let pb: Vec<f64> = {
            let r = body.rho(&b);
            b.iter().map(|c| c * r).collect()
        };
        let mid: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| 0.5 * (x + y)).collect();
        let norm: f64 = mid.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue; // nearly antipodal pair, midpoint at the origin
        }
        let dir: Vec<f64> = mid.iter().map(|c| c / norm).collect();
        if norm > body.rho(&dir) + tol.max(1e-12) {
            report.convex = false;
            if report.witness.is_none() {
                report.witness = Some((pa, pb));
            }
            break;
        }
    }
    report
}

fn random_direction(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn ball_is_convex() {
        let body = StarBody::ball(3, 0.6).unwrap();
        let rep = e_convexity_check(&body, 500, 1e-9, 1);
        assert!(rep.convex);
        assert!(rep.witness.is_none());
    }

    #[test]
    fn flower_body_is_not_convex_with_witness() {
        // ρ(θ) = 0.5 + 0.2 cos(4 · polar angle)
        let body = StarBody::from_radial(
            3,
            Smoothness::Cinf,
            Arc::new(|d: &[f64]| {
                let phi = d[2].clamp(-1.0, 1.0).acos();
                0.5 + 0.2 * (4.0 * phi).cos()
            }),
        );
        let rep = e_convexity_check(&body, 2000, 1e-9, 3);
        assert!(!rep.convex);
        assert!(rep.witness.is_some());
    }
}
