//! Gegenbauer (zonal harmonic) expansions of even axisymmetric functions
//! and the multiplier of the Fourier transform on homogeneous extensions.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quad::{latitude_rule, sphere_area, QuadratureSpec};

/// C_m^λ(x) for m = 0..=max_degree via the three-term recurrence.
pub fn gegenbauer_values(lambda: f64, max_degree: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    if max_degree == 0 {
        return out;
    }
    out.push(2.0 * lambda * x);
    for m in 2..=max_degree {
        let mf = m as f64;
        let next = (2.0 * (mf + lambda - 1.0) * x * out[m - 1]
            - (mf + 2.0 * lambda - 2.0) * out[m - 2])
            / mf;
        out.push(next);
    }
    out
}

pub fn gegenbauer_value(lambda: f64, m: usize, x: f64) -> f64 {
    gegenbauer_values(lambda, m, x)[m]
}

/// d/dx C_m^λ = 2λ C_{m-1}^{λ+1}.
pub fn gegenbauer_d1(lambda: f64, m: usize, x: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    2.0 * lambda * gegenbauer_value(lambda + 1.0, m - 1, x)
}

/// d²/dx² C_m^λ = 4λ(λ+1) C_{m-2}^{λ+2}.
pub fn gegenbauer_d2(lambda: f64, m: usize, x: f64) -> f64 {
    if m < 2 {
        return 0.0;
    }
    4.0 * lambda * (lambda + 1.0) * gegenbauer_value(lambda + 2.0, m - 2, x)
}

/// L² norm of C_m^λ against the weight (1-x²)^{λ-1/2}:
/// π 2^{1-2λ} Γ(m+2λ) / (m! (m+λ) Γ(λ)²).
fn gegenbauer_norm_sq(lambda: f64, m: usize) -> f64 {
    let mf = m as f64;
    (std::f64::consts::PI.ln() + (1.0 - 2.0 * lambda) * 2f64.ln() + ln_gamma(mf + 2.0 * lambda)
        - ln_gamma(mf + 1.0)
        - (mf + lambda).ln()
        - 2.0 * ln_gamma(lambda))
    .exp()
}

/// Normalizer of the zonal harmonic of degree m on S^{n-1}: the function
/// C_m^λ(cos φ)/zonal_norm(n, m) has unit L²(S^{n-1}) norm.
pub fn zonal_norm(n: usize, m: usize) -> f64 {
    let lambda = (n as f64 - 2.0) / 2.0;
    (sphere_area(n - 1) * gegenbauer_norm_sq(lambda, m)).sqrt()
}

/// Coefficients of an even axisymmetric function in the orthonormal zonal
/// harmonic basis; only even degrees are stored (index i holds degree 2i).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarmonicExpansion {
    pub n: usize,
    pub coeffs: Vec<f64>,
    /// Max reconstruction error over the generating grid.
    pub reconstruction_error: f64,
    /// Set when the last coefficients are not yet below 1e-8 of the head.
    pub truncation_warning: bool,
    norms: Vec<f64>,
}

impl HarmonicExpansion {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Self {
        let norms = (0..coeffs.len()).map(|i| zonal_norm(n, 2 * i)).collect();
        Self { n, coeffs, reconstruction_error: 0.0, truncation_warning: false, norms }
    }

    pub fn max_degree(&self) -> usize {
        2 * (self.coeffs.len().saturating_sub(1))
    }

    fn lambda(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }

    /// Value at polar angle φ.
    pub fn eval_phi(&self, phi: f64) -> f64 {
        let x = phi.cos();
        let values = gegenbauer_values(self.lambda(), self.max_degree(), x);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * values[2 * i] / self.norms[i])
            .sum()
    }

    /// d/dφ at polar angle φ.
    pub fn d1_phi(&self, phi: f64) -> f64 {
        let x = phi.cos();
        let lambda = self.lambda();
        let md = self.max_degree();
        let dvals = if md == 0 { vec![0.0] } else { gegenbauer_values(lambda + 1.0, md - 1, x) };
        let sin = phi.sin();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let m = 2 * i;
                if m == 0 {
                    0.0
                } else {
                    let d1 = 2.0 * lambda * dvals[m - 1];
                    -c * d1 * sin / self.norms[i]
                }
            })
            .sum()
    }

    /// d²/dφ² at polar angle φ.
    pub fn d2_phi(&self, phi: f64) -> f64 {
        let x = phi.cos();
        let lambda = self.lambda();
        let md = self.max_degree();
        let dvals = if md == 0 { vec![0.0] } else { gegenbauer_values(lambda + 1.0, md - 1, x) };
        let d2vals = if md < 2 { vec![0.0] } else { gegenbauer_values(lambda + 2.0, md - 2, x) };
        let (sin, cos) = phi.sin_cos();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let m = 2 * i;
                if m == 0 {
                    return 0.0;
                }
                let d1 = 2.0 * lambda * dvals[m - 1];
                let d2 = if m < 2 {
                    0.0
                } else {
                    4.0 * lambda * (lambda + 1.0) * d2vals[m - 2]
                };
                c * (d2 * sin * sin - d1 * cos) / self.norms[i]
            })
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= factor);
        out
    }

    /// Largest |coefficient| in the top two stored degrees relative to the head.
    pub fn tail_fraction(&self) -> f64 {
        let head = self.coeffs.iter().map(|c| c.abs()).fold(0.0f64, f64::max);
        if head == 0.0 || self.coeffs.len() < 3 {
            return 0.0;
        }
        let k = self.coeffs.len();
        self.coeffs[k - 2..].iter().map(|c| c.abs()).fold(0.0f64, f64::max) / head
    }
}

/// Expand an even axisymmetric function (given as a function of the polar
/// angle) into orthonormal zonal harmonics up to `max_degree` (even).
pub fn gegenbauer_expand(
    f: &(dyn Fn(f64) -> f64 + Sync),
    n: usize,
    max_degree: usize,
    quad: &QuadratureSpec,
) -> Result<HarmonicExpansion> {
    if max_degree % 2 != 0 {
        return Err(Error::Domain("max_degree must be even".into()));
    }
    if !(3..=5).contains(&n) {
        return Err(Error::Domain(format!("ambient dimension {n} outside supported range 3..=5")));
    }
    let nodes = quad.sphere_nodes.max(2 * max_degree + 64);
    let (xs, ws) = latitude_rule(n - 2, nodes);
    let lambda = (n as f64 - 2.0) / 2.0;
    let fvals: Vec<f64> = xs.iter().map(|&x| f(x.clamp(-1.0, 1.0).acos())).collect();
    let gvals: Vec<Vec<f64>> = xs.iter().map(|&x| gegenbauer_values(lambda, max_degree, x)).collect();
    let mut coeffs = Vec::with_capacity(max_degree / 2 + 1);
    let eq_area = sphere_area(n - 1); // measure of the equatorial sphere S^{n-2}
    for m in (0..=max_degree).step_by(2) {
        let norm = zonal_norm(n, m);
        let mut acc = 0.0;
        for i in 0..xs.len() {
            acc += ws[i] * fvals[i] * gvals[i][m];
        }
        coeffs.push(eq_area * acc / norm);
    }
    let mut expansion = HarmonicExpansion::new(n, coeffs);
    // reconstruction check on the generating grid
    let mut max_err = 0.0f64;
    for (i, _x) in xs.iter().enumerate() {
        let recon: f64 = expansion
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * gvals[i][2 * j] / expansion.norms[j])
            .sum();
        max_err = max_err.max((recon - fvals[i]).abs());
    }
    expansion.reconstruction_error = max_err;
    expansion.truncation_warning = expansion.tail_fraction() > 1e-8;
    Ok(expansion)
}

/// The constant c(n, m, p) with
/// (h_m(x/|x|) |x|^{-p})^∧ = c(n, m, p) h_m(x/|x|) |x|^{-(n-p)}
/// for an even-degree spherical harmonic h_m:
/// c = (-1)^{m/2} π^{n/2} 2^{n-p} Γ((n-p+m)/2) / Γ((p+m)/2).
pub fn harmonic_multiplier(n: usize, m: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < n as f64) {
        return Err(Error::Domain(format!("homogeneity power p = {p} outside (0, {n})")));
    }
    if m % 2 != 0 {
        return Err(Error::Domain("multiplier defined for even degrees".into()));
    }
    let nf = n as f64;
    let mf = m as f64;
    let ln_mag = 0.5 * nf * std::f64::consts::PI.ln()
        + (nf - p) * 2f64.ln()
        + ln_gamma((nf - p + mf) / 2.0)
        - ln_gamma((p + mf) / 2.0);
    let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ln_mag.exp())
}

/// Degree-wise Fourier transform of Σ c_m h_m |x|^{-p}: multiplies each
/// coefficient by c(n, m, p); the result represents a function homogeneous
/// of degree -(n-p), restricted to the sphere.
pub fn ft_homogeneous(expansion: &HarmonicExpansion, p: f64) -> Result<HarmonicExpansion> {
    let mut out = expansion.clone();
    for (i, c) in out.coeffs.iter_mut().enumerate() {
        *c *= harmonic_multiplier(expansion.n, 2 * i, p)?;
    }
    Ok(out)
}
