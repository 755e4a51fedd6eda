//! From a negative set of the norm-power Fourier transform to the even
//! perturbation g: bump construction, the degree-wise transform, and the
//! two-sided check (positive pairing, nonpositive subspace integrals).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{ft_homogeneous, ft_norm_power, gegenbauer_expand, FtProfile, HarmonicExpansion};
use crate::geom::{Direction, StarBody, Subspace};
use crate::quad::{latitude_rule, sphere_area, QuadratureSpec};

/// Angle intervals (from the symmetry axis) where the transform is negative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativeSet {
    pub intervals: Vec<(f64, f64)>,
    pub q: usize,
}

impl NegativeSet {
    /// Whether [lo, hi] is contained in one of the intervals.
    pub fn contains(&self, lo: f64, hi: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= lo && hi <= b)
    }
}

/// Maximal negative intervals of a scanned transform profile, endpoints
/// refined by bisection on the sign to 1e-4 radians.
pub fn find_negative_set(body: &StarBody, profile: &FtProfile) -> Result<NegativeSet> {
    if profile.min_value >= 0.0 {
        return Err(Error::NotApplicable(
            "distribution appears positive definite on the grid".into(),
        ));
    }
    let n = body.dim();
    let sign_at = |alpha: f64| -> Result<f64> {
        ft_norm_power(body, profile.q, &Direction::from_axis_angle(n, alpha))
    };
    let mut intervals = Vec::new();
    let m = profile.angles.len();
    let mut i = 0;
    while i < m {
        if profile.values[i] < 0.0 {
            let mut j = i;
            while j + 1 < m && profile.values[j + 1] < 0.0 {
                j += 1;
            }
            // refine the endpoints against the grid neighbours
            let lo = if i == 0 {
                profile.angles[0]
            } else {
                refine_sign_change(&sign_at, profile.angles[i - 1], profile.angles[i])?
            };
            let hi = if j == m - 1 {
                profile.angles[m - 1]
            } else {
                refine_sign_change(&sign_at, profile.angles[j + 1], profile.angles[j])?
            };
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            // re-check the midpoint sign, per the type invariant
            let mid = 0.5 * (lo + hi);
            if sign_at(mid)? >= 0.0 {
                return Err(Error::Numerical(format!(
                    "negative interval failed midpoint re-check at {mid:.4}"
                )));
            }
            intervals.push((lo, hi));
            i = j + 1;
        } else {
            i += 1;
        }
    }
    Ok(NegativeSet { intervals, q: profile.q })
}

/// Bisection on the transform sign between a nonnegative and a negative
/// angle; returns the boundary to within 1e-4 radians.
fn refine_sign_change(
    sign_at: &dyn Fn(f64) -> Result<f64>,
    mut outside: f64,
    mut inside: f64,
) -> Result<f64> {
    while (outside - inside).abs() > 1e-4 {
        let mid = 0.5 * (outside + inside);
        if sign_at(mid)? < 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(inside)
}

/// Specification of the nonpositive bump v supported inside the negative set.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BumpSpec {
    pub center_angle: f64,
    pub half_width: f64,
    pub amplitude: f64,
}

impl BumpSpec {
    pub fn new(center_angle: f64, half_width: f64, amplitude: f64) -> Result<Self> {
        if !(half_width > 0.0 && amplitude > 0.0) {
            return Err(Error::Domain("bump half_width and amplitude must be positive".into()));
        }
        Ok(Self { center_angle, half_width, amplitude })
    }
}

/// The even, nonpositive, infinitely smooth bump
/// v(φ) = -amplitude·exp(-1/(1-s²)) with s the affine image of φ over the
/// support, reflected about the equator so v is even on the sphere.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    spec: BumpSpec,
}

impl Bump {
    pub fn eval(&self, phi: f64) -> f64 {
        let one = self.lobe((phi - self.spec.center_angle) / self.spec.half_width);
        let mirrored = self
            .lobe((std::f64::consts::PI - phi - self.spec.center_angle) / self.spec.half_width);
        -self.spec.amplitude * (one + mirrored)
    }

    fn lobe(&self, s: f64) -> f64 {
        if s.abs() < 1.0 {
            (-1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    }

    pub fn spec(&self) -> BumpSpec {
        self.spec
    }
}

/// Build the bump after validating its support against the negative set.
pub fn build_bump(omega: &NegativeSet, spec: BumpSpec) -> Result<Bump> {
    let lo = spec.center_angle - spec.half_width;
    let hi = spec.center_angle + spec.half_width;
    if !omega.contains(lo.max(0.0), hi) {
        return Err(Error::Domain(format!(
            "bump support [{lo:.4}, {hi:.4}] not inside the negative set {:?}",
            omega.intervals
        )));
    }
    Ok(Bump { spec })
}

/// The perturbation g: coefficients of the Fourier transform of
/// |x|^{-n+k} v(x/|x|) as a degree -k homogeneous function on the sphere.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationG {
    pub expansion: HarmonicExpansion,
    pub k: usize,
    /// sup |g| over the build grid, before any caller normalization.
    pub sup_abs: f64,
}

impl PerturbationG {
    pub fn eval(&self, phi: f64) -> f64 {
        self.expansion.eval_phi(phi)
    }

    pub fn d1(&self, phi: f64) -> f64 {
        self.expansion.d1_phi(phi)
    }

    pub fn d2(&self, phi: f64) -> f64 {
        self.expansion.d2_phi(phi)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { expansion: self.expansion.scaled(factor), k: self.k, sup_abs: self.sup_abs * factor.abs() }
    }
}

/// g = degree-wise multiplier image of the bump expansion at p = n - k.
pub fn build_g(
    bump: &Bump,
    n: usize,
    k: usize,
    max_degree: usize,
    quad: &QuadratureSpec,
) -> Result<PerturbationG> {
    if k == 0 || k > n - 1 {
        return Err(Error::Domain(format!("codimension k = {k} outside 1..={}", n - 1)));
    }
    let f = move |phi: f64| bump.eval(phi);
    let v_expansion = gegenbauer_expand(&f, n, max_degree, quad)?;
    if v_expansion.reconstruction_error > 1e-8 * bump.spec().amplitude.max(1e-300) {
        return Err(Error::Numerical(format!(
            "bump expansion tail too large at max_degree {max_degree}: reconstruction error {:.3e}; increase max_degree",
            v_expansion.reconstruction_error
        )));
    }
    let expansion = ft_homogeneous(&v_expansion, (n - k) as f64)?;
    let grid = 4096;
    let sup_abs = (0..=grid)
        .map(|i| expansion.eval_phi(std::f64::consts::PI * i as f64 / grid as f64).abs())
        .fold(0.0f64, f64::max);
    Ok(PerturbationG { expansion, k, sup_abs })
}

/// The density f(θ) = ρ_M(θ)^k = (ρ_L/(1-ρ_L²))^k on the sphere.
pub struct DensityF {
    l: StarBody,
    k: usize,
}

impl DensityF {
    pub fn new(l: StarBody, k: usize) -> Self {
        Self { l, k }
    }

    pub fn eval_phi(&self, phi: f64) -> f64 {
        let rev = self.l.as_revolution().expect("density built from axisymmetric bodies");
        let rho = rev.rho_angle(phi);
        (rho / (1.0 - rho * rho)).powi(self.k as i32)
    }

    pub fn eval_dir(&self, dir: &[f64]) -> f64 {
        let rho = self.l.rho(dir);
        (rho / (1.0 - rho * rho)).powi(self.k as i32)
    }
}

/// Outcome of the two Zhang-side checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZhangReport {
    pub pairing: f64,
    pub max_section_integral: f64,
    pub pass: bool,
}

/// pairing = ∫_{S^{n-1}} f g dθ (must be positive) and the maximum over the
/// given planes of ∫_{S∩H} g dθ (must not exceed 1e-9).
pub fn zhang_check(
    g: &PerturbationG,
    f: &DensityF,
    planes: &[Subspace],
    quad: &QuadratureSpec,
) -> Result<ZhangReport> {
    let n = f.l.dim();
    let (xs, ws) = latitude_rule(n - 2, quad.sphere_nodes.max(512));
    let mut pairing = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        let phi = x.clamp(-1.0, 1.0).acos();
        pairing += w * f.eval_phi(phi) * g.eval(phi);
    }
    pairing *= sphere_area(n - 1);

    let mut max_section = f64::NEG_INFINITY;
    for h in planes {
        if h.dim() != n - g.k {
            return Err(Error::Domain(format!(
                "plane dimension {} does not match n - k = {}",
                h.dim(),
                n - g.k
            )));
        }
        let v = section_integral_of_g(g, h, quad);
        max_section = max_section.max(v);
    }
    let pass = pairing > 0.0 && max_section <= 1e-9;
    Ok(ZhangReport { pairing, max_section_integral: max_section, pass })
}

/// ∫_{S ∩ H} g dθ over the sphere of the plane H.
pub fn section_integral_of_g(g: &PerturbationG, h: &Subspace, quad: &QuadratureSpec) -> f64 {
    let n = g.expansion.n;
    // enough nodes to integrate the truncated expansion exactly on circles
    let lat = quad.sphere_nodes.max(g.expansion.max_degree() + 8);
    let rule = crate::quad::SphereRule::product(h.dim(), lat);
    let mut acc = 0.0;
    for (node, w) in rule.nodes.iter().zip(&rule.weights) {
        let dir = h.embed(node);
        let polar = dir[n - 1].clamp(-1.0, 1.0).acos();
        acc += w * g.eval(polar);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::subspace_sample;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn bump_values() {
        let spec_b = BumpSpec::new(0.5, 0.2, 2.0).unwrap();
        let omega = NegativeSet { intervals: vec![(0.0, 0.8)], q: 1 };
        let bump = build_bump(&omega, spec_b).unwrap();
        // at the center s = 0: v = -amplitude e^{-1}
        let v = bump.eval(0.5);
        assert!((v - (-2.0 * (-1.0f64).exp())).abs() < 1e-15);
        assert_eq!(bump.eval(0.71), 0.0);
        assert_eq!(bump.eval(0.29), 0.0);
        // nonpositive everywhere
        for i in 0..=1000 {
            let phi = std::f64::consts::PI * i as f64 / 1000.0;
            assert!(bump.eval(phi) <= 0.0);
        }
        // even on the sphere
        for phi in [0.45f64, 0.55, 0.62] {
            assert!((bump.eval(phi) - bump.eval(std::f64::consts::PI - phi)).abs() < 1e-16);
        }
    }

    #[test]
    fn bump_outside_negative_set_rejected() {
        let omega = NegativeSet { intervals: vec![(0.0, 0.3)], q: 1 };
        assert!(build_bump(&omega, BumpSpec::new(0.5, 0.2, 1.0).unwrap()).is_err());
    }

    #[test]
    fn constant_bump_image_has_multiplier_sign() {
        // a degree-0-only expansion transforms by c(n, 0, n-k) > 0, so the
        // image of a negative function stays negative
        let e = HarmonicExpansion::new(3, vec![-1.0]);
        let out = ft_homogeneous(&e, 2.0).unwrap();
        assert!(out.coeffs[0] < 0.0);
        assert!(crate::fourier::harmonic_multiplier(3, 0, 2.0).unwrap() > 0.0);
    }

    #[test]
    fn zhang_failure_modes_on_constant_g() {
        let l = crate::body::make_lq_ball(3, 2.0, 0.6).unwrap();
        // constant positive g: every section integral is |S^{n-k-1}| > 0
        let g_plus = PerturbationG {
            expansion: HarmonicExpansion::new(3, vec![crate::fourier::zonal_norm(3, 0)]),
            k: 1,
            sup_abs: 1.0,
        };
        let planes = subspace_sample(3, 2, 4, 3).unwrap();
        let f = DensityF::new(pull_to_revolution(l.clone()), 1);
        let rep = zhang_check(&g_plus, &f, &planes, &spec()).unwrap();
        assert!(!rep.pass);
        assert!(rep.max_section_integral > 1.0);
        assert!(rep.pairing > 0.0);
        // constant negative g: pairing is negative
        let rep2 = zhang_check(&g_plus.scaled(-1.0), &f, &planes, &spec()).unwrap();
        assert!(!rep2.pass);
        assert!(rep2.pairing < 0.0);
        assert!(rep2.max_section_integral <= 1e-9);
    }

    fn pull_to_revolution(_b: StarBody) -> StarBody {
        // the density only needs an axisymmetric body; use a ball profile
        use crate::geom::{FnProfile, RevolutionBody, Smoothness};
        use std::sync::Arc;
        let profile = FnProfile {
            rho: Box::new(|_| 0.6),
            drho: Box::new(|_| 0.0),
            d2rho: Box::new(|_| 0.0),
            smoothness: Smoothness::Cinf,
        };
        RevolutionBody::new(3, Arc::new(profile)).unwrap().star_body()
    }
}
