//! Section-by-section comparison of the pair (K, L) and the final verdict.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    e_convexity_check, hyperbolic_volume, radial_kernel_integral, section_volume, subspace_sample,
    StarBody, Subspace,
};
use crate::quad::QuadratureSpec;

/// Additive slack allowed in each per-plane section comparison, on top of
/// the combined quadrature error estimates.
pub const SECTION_SLACK: f64 = 1e-8;

/// The volume gap must exceed this multiple of the combined volume error
/// estimates for a certificate.
pub const VOLUME_ERROR_FACTOR: f64 = 5.0;

/// Curvature tolerance of the convexity checks.
pub const CONVEXITY_TOL: f64 = 1e-9;

/// One plane comparison: section volumes, their errors, and the margin
/// vol(L ∩ H) + slack + errors − vol(K ∩ H) (nonnegative when satisfied).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneComparison {
    pub basis: Vec<Vec<f64>>,
    pub section_k: f64,
    pub section_k_error: f64,
    pub section_l: f64,
    pub section_l_error: f64,
    pub margin: f64,
}

/// The end-to-end verdict on a candidate pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub n: usize,
    pub k: usize,
    pub section_dim: usize,
    pub epsilon: f64,
    pub sup_alpha: f64,
    pub planes: Vec<PlaneComparison>,
    pub worst_plane_margin: f64,
    pub vol_k: f64,
    pub vol_k_error: f64,
    pub vol_l: f64,
    pub vol_l_error: f64,
    pub volume_gap: f64,
    pub combined_volume_error: f64,
    pub convex_k: bool,
    pub convex_l: bool,
    pub convexity_margin_k: Option<f64>,
    pub convexity_margin_l: Option<f64>,
    pub verdict: String,
}

impl CertificateReport {
    pub fn certified(&self) -> bool {
        self.verdict == "certified"
    }
}

/// Compare all sampled totally geodesic sections and the total volumes.
///
/// The verdict is `certified` only when every plane satisfies
/// vol(K∩H) ≤ vol(L∩H) + slack + quadrature errors, the volume gap
/// vol(K) − vol(L) exceeds five times the combined error estimate, and
/// both bodies pass the convexity check.
pub fn certify(
    k_body: &StarBody,
    l_body: &StarBody,
    k: usize,
    plane_count: usize,
    quad: &QuadratureSpec,
    seed: u64,
) -> Result<CertificateReport> {
    certify_with_epsilon(k_body, l_body, k, plane_count, quad, seed, f64::NAN, f64::NAN)
}

#[allow(clippy::too_many_arguments)]
pub fn certify_with_epsilon(
    k_body: &StarBody,
    l_body: &StarBody,
    k: usize,
    plane_count: usize,
    quad: &QuadratureSpec,
    seed: u64,
    epsilon: f64,
    sup_alpha: f64,
) -> Result<CertificateReport> {
    let n = k_body.dim();
    if l_body.dim() != n {
        return Err(Error::Domain("dimension mismatch between K and L".into()));
    }
    if k == 0 || k >= n - 1 {
        return Err(Error::Domain(format!(
            "codimension k = {k} outside 1..{} (section dimension n-k must be at least 2)",
            n - 1
        )));
    }
    let d = n - k;
    let mut planes: Vec<Subspace> = coordinate_planes(n, d);
    planes.extend(subspace_sample(n, d, plane_count, seed)?);

    let comparisons: Result<Vec<PlaneComparison>> = planes
        .par_iter()
        .map(|h| {
            let sec_k = section_volume(k_body, h, quad)?;
            let sec_l = section_volume(l_body, h, quad)?;
            let margin = sec_l.value + SECTION_SLACK + sec_k.error_estimate + sec_l.error_estimate
                - sec_k.value;
            Ok(PlaneComparison {
                basis: h.basis().to_vec(),
                section_k: sec_k.value,
                section_k_error: sec_k.error_estimate,
                section_l: sec_l.value,
                section_l_error: sec_l.error_estimate,
                margin,
            })
        })
        .collect();
    let comparisons = comparisons?;
    let worst_plane_margin =
        comparisons.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);

    let vol_k = hyperbolic_volume(k_body, quad)?;
    let vol_l = hyperbolic_volume(l_body, quad)?;
    let volume_gap = vol_k.value - vol_l.value;
    let combined_volume_error = vol_k.error_estimate + vol_l.error_estimate;

    let conv_k = e_convexity_check(k_body, 1000, CONVEXITY_TOL, seed.wrapping_add(1));
    let conv_l = e_convexity_check(l_body, 1000, CONVEXITY_TOL, seed.wrapping_add(2));

    let mut failures = Vec::new();
    if worst_plane_margin < 0.0 {
        failures.push("a sampled section of K exceeds the matching section of L".to_string());
    }
    if volume_gap <= VOLUME_ERROR_FACTOR * combined_volume_error {
        failures.push(format!(
            "volume gap {volume_gap:.6e} does not clear {VOLUME_ERROR_FACTOR} x error {combined_volume_error:.3e}"
        ));
    }
    if !conv_k.convex {
        failures.push("K fails the convexity check".to_string());
    }
    if !conv_l.convex {
        failures.push("L fails the convexity check".to_string());
    }
    let verdict = if failures.is_empty() {
        "certified".to_string()
    } else {
        format!("failed: {}", failures.join("; "))
    };

    Ok(CertificateReport {
        n,
        k,
        section_dim: d,
        epsilon,
        sup_alpha,
        planes: comparisons,
        worst_plane_margin,
        vol_k: vol_k.value,
        vol_k_error: vol_k.error_estimate,
        vol_l: vol_l.value,
        vol_l_error: vol_l.error_estimate,
        volume_gap,
        combined_volume_error,
        convex_k: conv_k.convex,
        convex_l: conv_l.convex,
        convexity_margin_k: conv_k.min_curvature,
        convexity_margin_l: conv_l.min_curvature,
        verdict,
    })
}

/// All coordinate subspaces of dimension d: the axis-aligned extremal
/// planes of axisymmetric bodies.
fn coordinate_planes(n: usize, d: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut indices: Vec<usize> = (0..d).collect();
    loop {
        out.push(Subspace::coordinate(n, &indices).expect("coordinate subspace"));
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if indices[i] + (d - i) < n {
                indices[i] += 1;
                for j in i + 1..d {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Signed residual of the elementary inequality
/// a^k/(1-a²)^k ∫_a^b r^{n-k-1}/(1-r²)^{n-k} dr ≤ ∫_a^b r^{n-1}/(1-r²)^n dr,
/// nonnegative for any a, b in (0,1) regardless of order.
pub fn elementary_inequality_check(a: f64, b: f64, n: usize, k: usize) -> Result<f64> {
    if !(0.0 < a && a < 1.0 && 0.0 < b && b < 1.0) {
        return Err(Error::Domain("a and b must lie in (0, 1)".into()));
    }
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("k = {k} outside 1..{n}")));
    }
    let weight = (a / (1.0 - a * a)).powi(k as i32);
    let lhs = weight
        * (radial_kernel_integral(b, n - k)? - radial_kernel_integral(a, n - k)?);
    let rhs = radial_kernel_integral(b, n)? - radial_kernel_integral(a, n)?;
    Ok(rhs - lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn nested_balls_fail_certification() {
        let small = StarBody::ball(3, 0.4).unwrap();
        let big = StarBody::ball(3, 0.5).unwrap();
        let quad = QuadratureSpec::new(64, 48, 3).unwrap();
        let report = certify(&small, &big, 1, 8, &quad, 3).unwrap();
        assert!(!report.certified());
        assert!(report.verdict.contains("volume gap"));
        // sections are fine in this direction, the volume comparison is not
        assert!(report.worst_plane_margin >= 0.0);
        assert!(report.volume_gap < 0.0);
    }

    #[test]
    fn coordinate_planes_enumerate_combinations() {
        let planes = coordinate_planes(4, 2);
        assert_eq!(planes.len(), 6);
        let planes = coordinate_planes(3, 2);
        assert_eq!(planes.len(), 3);
    }

    #[test]
    fn elementary_inequality_trivial_and_generic_cases() {
        assert_eq!(elementary_inequality_check(0.3, 0.3, 4, 2).unwrap(), 0.0);
        let r = elementary_inequality_check(0.3, 0.7, 4, 2).unwrap();
        assert!(r >= 0.0);
        // orientation does not matter
        let r2 = elementary_inequality_check(0.7, 0.3, 4, 2).unwrap();
        assert!(r2 >= 0.0);
    }

    #[test]
    fn elementary_inequality_fuzz() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..10_000 {
            let a: f64 = rng.gen_range(1e-3..0.999);
            let b: f64 = rng.gen_range(1e-3..0.999);
            let n = rng.gen_range(3..=5usize);
            let k = rng.gen_range(1..=(n - 2));
            let r = elementary_inequality_check(a, b, n, k).unwrap();
            assert!(r >= -1e-12, "residual {r:.3e} at a={a}, b={b}, n={n}, k={k}");
        }
    }
}
