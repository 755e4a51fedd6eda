//! Hyperbolic volume and totally-geodesic section volume by quadrature.

use rayon::prelude::*;

use crate::error::Result;
use crate::geom::{radial_kernel_integral, StarBody, Subspace, VolumeResult};
use crate::quad::{QuadratureSpec, SphereRule};

/// vol_n(K) = 2^n ∫_{S^{n-1}} ∫₀^{ρ(θ)} r^{n-1}/(1-r²)^n dr dθ.
///
/// The error estimate is the difference against one refinement with doubled
/// sphere nodes; the returned value is the refined one.
pub fn hyperbolic_volume(body: &StarBody, quad: &QuadratureSpec) -> Result<VolumeResult> {
    let n = body.dim();
    let coarse = volume_on_rule(body, n, &SphereRule::product(n, quad.sphere_nodes))?;
    let fine = volume_on_rule(body, n, &SphereRule::product(n, 2 * quad.sphere_nodes))?;
    Ok(VolumeResult { value: fine, error_estimate: (fine - coarse).abs() })
}

fn volume_on_rule(body: &StarBody, m: usize, rule: &SphereRule) -> Result<f64> {
    let terms: Result<Vec<f64>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(node, w)| Ok(w * radial_kernel_integral(body.rho(node), m)?))
        .collect();
    Ok(2f64.powi(m as i32) * terms?.iter().sum::<f64>())
}

/// vol_d(K ∩ H) = 2^d ∫_{S^{n-1} ∩ H} ∫₀^{ρ(θ)} r^{d-1}/(1-r²)^d dr dθ.
///
/// The sphere S^{n-1} ∩ H is parametrized through the orthonormal basis of
/// H, so the standard S^{d-1} rule applies without ambient clipping.
pub fn section_volume(body: &StarBody, h: &Subspace, quad: &QuadratureSpec) -> Result<VolumeResult> {
    let d = h.dim();
    let coarse = section_on_rule(body, h, &SphereRule::product(d, quad.sphere_nodes))?;
    let fine = section_on_rule(body, h, &SphereRule::product(d, 2 * quad.sphere_nodes))?;
    Ok(VolumeResult { value: fine, error_estimate: (fine - coarse).abs() })
}

fn section_on_rule(body: &StarBody, h: &Subspace, rule: &SphereRule) -> Result<f64> {
    let d = h.dim();
    let terms: Result<Vec<f64>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(node, w)| {
            let dir = h.embed(node);
            Ok(w * radial_kernel_integral(body.rho(&dir), d)?)
        })
        .collect();
    Ok(2f64.powi(d as i32) * terms?.iter().sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(64, 48, 7).unwrap()
    }

    #[test]
    fn hyperbolic_ball_volume_closed_form() {
        // ball of hyperbolic radius R has Euclidean radius tanh(R/2) and
        // volume π (sinh 2R - 2R) in three dimensions
        for &r_hyp in &[0.5f64, 1.0, 2.0] {
            let rho = (r_hyp / 2.0).tanh();
            let body = StarBody::ball(3, rho).unwrap();
            let v = hyperbolic_volume(&body, &spec()).unwrap();
            let exact = std::f64::consts::PI * ((2.0 * r_hyp).sinh() - 2.0 * r_hyp);
            assert_relative_eq!(v.value, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn tiny_ball_has_negligible_volume() {
        let body = StarBody::ball(3, 1e-6).unwrap();
        let v = hyperbolic_volume(&body, &spec()).unwrap();
        assert!(v.value < 1e-15);
        assert!(v.value > 0.0);
    }

    #[test]
    fn refinement_controls_error_for_large_ball() {
        let body = StarBody::ball(3, 0.9).unwrap();
        let v1 = hyperbolic_volume(&body, &spec()).unwrap();
        let v2 = hyperbolic_volume(&body, &spec().refined()).unwrap();
        assert!((v1.value - v2.value).abs() <= v1.error_estimate.max(1e-12));
    }

    #[test]
    fn two_plane_section_of_ball() {
        // 4π ρ²/(1-ρ²) for any 2-plane through the origin
        let body = StarBody::ball(3, 0.5).unwrap();
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        let v = section_volume(&body, &h, &spec()).unwrap();
        assert_relative_eq!(v.value, 4.0 * std::f64::consts::PI / 3.0, max_relative = 1e-10);
    }

    #[test]
    fn one_dimensional_section_is_hyperbolic_diameter() {
        let body = StarBody::ball(3, 0.5).unwrap();
        let h = Subspace::coordinate(3, &[2]).unwrap();
        let v = section_volume(&body, &h, &spec()).unwrap();
        assert_relative_eq!(v.value, 4.0 * 0.5f64.atanh(), max_relative = 1e-12);
    }

    #[test]
    fn sections_of_ball_are_rotation_invariant() {
        let body = StarBody::ball(4, 0.62).unwrap();
        let planes = crate::geom::subspace_sample(4, 2, 2, 99).unwrap();
        let a = section_volume(&body, &planes[0], &spec()).unwrap();
        let b = section_volume(&body, &planes[1], &spec()).unwrap();
        let tol = 2.0 * (a.error_estimate + b.error_estimate) + 1e-12;
        assert!((a.value - b.value).abs() <= tol);
    }

    #[test]
    fn kernel_consistency_for_sections() {
        // section volume of a ball equals |S^{d-1}| 2^d I_d(ρ)
        let body = StarBody::ball(5, 0.8).unwrap();
        for d in 1..5 {
            let h = Subspace::coordinate(5, &(0..d).collect::<Vec<_>>()).unwrap();
            let v = section_volume(&body, &h, &spec()).unwrap();
            let exact = crate::quad::sphere_area(d)
                * 2f64.powi(d as i32)
                * radial_kernel_integral(0.8, d).unwrap();
            assert_relative_eq!(v.value, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn monotone_bodies_have_monotone_volumes() {
        let small = StarBody::ball(3, 0.4).unwrap();
        let big = StarBody::ball(3, 0.55).unwrap();
        let vs = hyperbolic_volume(&small, &spec()).unwrap();
        let vb = hyperbolic_volume(&big, &spec()).unwrap();
        assert!(vs.value <= vb.value + vs.error_estimate + vb.error_estimate);
    }
}
