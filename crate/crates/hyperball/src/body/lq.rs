//! Unit balls of ℓ^q norms, dilated to fit inside the unit Euclidean ball.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{Smoothness, StarBody};

/// Star body with radial function ρ(θ) = dilation / ‖θ‖_q.
///
/// For q ≥ 2 the maximal radial value over the unit sphere is
/// dilation · n^{1/2 − 1/q} (attained at the diagonal), which must stay
/// below one.
pub fn make_lq_ball(n: usize, q: f64, dilation: f64) -> Result<StarBody> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension {n} must be >= 3")));
    }
    if q < 2.0 {
        return Err(Error::Domain(format!("exponent q = {q} must be >= 2")));
    }
    if dilation <= 0.0 {
        return Err(Error::Domain("dilation must be positive".into()));
    }
    let max_rho = dilation * (n as f64).powf(0.5 - 1.0 / q);
    if max_rho >= 1.0 {
        return Err(Error::Domain(format!(
            "body escapes the unit ball: max radial value {max_rho:.6}"
        )));
    }
    let smoothness = if q == 2.0 || (q.fract() == 0.0 && q as u64 % 2 == 0) {
        Smoothness::Cinf
    } else {
        Smoothness::C2
    };
    Ok(StarBody::from_radial(
        n,
        smoothness,
        Arc::new(move |dir: &[f64]| {
            let norm_q = dir
                .iter()
                .map(|c| c.abs().powf(q))
                .sum::<f64>()
                .powf(1.0 / q);
            dilation / norm_q
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn q_two_is_euclidean_ball() {
        let b = make_lq_ball(3, 2.0, 0.4).unwrap();
        let rule = crate::quad::SphereRule::product(3, 16);
        for node in &rule.nodes {
            assert_relative_eq!(b.rho(node), 0.4, epsilon = 1e-14);
        }
    }

    #[test]
    fn axis_direction_has_radial_value_dilation() {
        let b = make_lq_ball(5, 4.0, 0.5).unwrap();
        let e1 = [1.0, 0.0, 0.0, 0.0, 0.0];
        assert_relative_eq!(b.rho(&e1), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_direction_value() {
        // ‖θ‖₄ = 5^{-1/4} at the unit diagonal of R⁵
        let b = make_lq_ball(5, 4.0, 0.5).unwrap();
        let c = 1.0 / 5f64.sqrt();
        let diag = [c; 5];
        assert_relative_eq!(b.rho(&diag), 0.5 * 5f64.powf(0.25), max_relative = 1e-14);
        assert_relative_eq!(b.rho(&diag), 0.74767, max_relative = 1e-5);
    }

    #[test]
    fn symmetric_under_permutations_and_sign_flips() {
        let b = make_lq_ball(4, 4.0, 0.5).unwrap();
        let d = [0.1, -0.7, 0.5, 0.5019960159204453f64];
        let norm: f64 = d.iter().map(|c| c * c).sum::<f64>().sqrt();
        let d: Vec<f64> = d.iter().map(|c| c / norm).collect();
        let mut p = vec![d[2], d[0], -d[3], d[1]];
        let r1 = b.rho(&d);
        let r2 = b.rho(&p);
        assert!((r1 - r2).abs() < 1e-14);
        p.iter_mut().for_each(|c| *c = -*c);
        assert!((r1 - b.rho(&p)).abs() < 1e-14);
    }

    #[test]
    fn escaping_body_rejected() {
        assert!(make_lq_ball(5, 4.0, 0.9).is_err());
        assert!(make_lq_ball(5, 4.0, 0.6).is_ok());
    }
}
