//! Numerical residuals of the spherical Parseval identity and the
//! subspace Fourier identity, with the transform side evaluated through
//! zonal expansions and the direct side by sphere quadrature.

use crate::error::{Error, Result};
use crate::fourier::gegenbauer::{gegenbauer_expand, harmonic_multiplier, HarmonicExpansion};
use crate::geom::{StarBody, Subspace};
use crate::quad::{latitude_rule, sphere_area, QuadratureSpec, SphereRule};

fn zonal_power_expansion(
    body: &StarBody,
    power: f64,
    max_degree: usize,
    quad: &QuadratureSpec,
) -> Result<HarmonicExpansion> {
    let rev = body
        .as_revolution()
        .ok_or_else(|| Error::Domain("residual checks require axisymmetric bodies".into()))?
        .clone();
    let f = move |phi: f64| rev.rho_angle(phi).powf(power);
    gegenbauer_expand(&f, body.dim(), max_degree, quad)
}

/// Relative residual of
/// ∫ (‖x‖_K^{-p})^∧ (‖x‖_L^{-n+p})^∧ dξ = (2π)^n ∫ ‖x‖_K^{-p} ‖x‖_L^{-n+p} dx
/// over the unit sphere.  The left side goes through expansions and the
/// multiplier; the right side is a direct latitude quadrature.
pub fn parseval_residual(k: &StarBody, l: &StarBody, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::Domain("dimension mismatch".into()));
    }
    if !(p > 0.0 && p < n as f64) {
        return Err(Error::Domain(format!("p = {p} outside (0, {n})")));
    }
    let max_degree = 48;
    let ek = zonal_power_expansion(k, p, max_degree, quad)?;
    let el = zonal_power_expansion(l, n as f64 - p, max_degree, quad)?;
    let mut lhs = 0.0;
    for (i, (ck, cl)) in ek.coeffs.iter().zip(&el.coeffs).enumerate() {
        let m = 2 * i;
        lhs += harmonic_multiplier(n, m, p)? * ck * harmonic_multiplier(n, m, n as f64 - p)? * cl;
    }
    let rev_k = k.as_revolution().unwrap();
    let rev_l = l.as_revolution().unwrap();
    let (xs, ws) = latitude_rule(n - 2, quad.sphere_nodes.max(256));
    let mut rhs = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        let phi = x.clamp(-1.0, 1.0).acos();
        rhs += w * rev_k.rho_angle(phi).powf(p) * rev_l.rho_angle(phi).powf(n as f64 - p);
    }
    rhs *= sphere_area(n - 1) * (2.0 * std::f64::consts::PI).powi(n as i32);
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Relative residual of
/// (2π)^k ∫_{S ∩ H} ‖θ‖_L^{-n+k} dθ = ∫_{S ∩ H⊥} (‖x‖_L^{-n+k})^∧ dθ
/// for an (n-k)-dimensional subspace H.
pub fn subspace_ft_residual(
    l: &StarBody,
    k: usize,
    h: &Subspace,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let n = l.dim();
    if k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("codimension k = {k} outside 1..={}", n - 1)));
    }
    if h.dim() != n - k {
        return Err(Error::Domain(format!(
            "subspace dimension {} does not match n - k = {}",
            h.dim(),
            n - k
        )));
    }
    let rev = l
        .as_revolution()
        .ok_or_else(|| Error::Domain("residual checks require axisymmetric bodies".into()))?;

    // direct side over S ∩ H
    let rule = SphereRule::product(h.dim(), quad.sphere_nodes.max(128));
    let mut lhs = 0.0;
    for (node, w) in rule.nodes.iter().zip(&rule.weights) {
        let dir = h.embed(node);
        lhs += w * l.rho(&dir).powi((n - k) as i32);
    }
    lhs *= (2.0 * std::f64::consts::PI).powi(k as i32);

    // transform side over S ∩ H⊥ via the expansion of ρ^{n-k}
    let expansion = {
        let rev = rev.clone();
        let f = move |phi: f64| rev.rho_angle(phi).powi((n - k) as i32);
        gegenbauer_expand(&f, n, 48, quad)?
    };
    let transformed = {
        let mut e = expansion;
        for (i, c) in e.coeffs.iter_mut().enumerate() {
            *c *= harmonic_multiplier(n, 2 * i, (n - k) as f64)?;
        }
        e
    };
    let perp = h.orthogonal_complement();
    let perp_rule = SphereRule::product(k, quad.sphere_nodes.max(128));
    let mut rhs = 0.0;
    for (node, w) in perp_rule.nodes.iter().zip(&perp_rule.weights) {
        let dir = perp.embed(node);
        let polar = dir[n - 1].clamp(-1.0, 1.0).acos();
        rhs += w * transformed.eval_phi(polar);
    }
    Ok((lhs - rhs).abs() / rhs.abs().max(1e-300))
}
