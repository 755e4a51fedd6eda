//! Poincaré-ball primitives: radial bodies, the hyperbolic volume element,
//! the r/(1-r²) correspondence, convexity checks, and subspaces.

mod convexity;
mod kernel;
mod map;
mod subspace;
mod volume;

pub use convexity::{e_convexity_check, ConvexityReport};
pub use kernel::{radial_kernel_derivative, radial_kernel_integral, radial_kernel_inverse};
pub use map::{map_forward, map_inverse, pull_body, push_body, PushedProfile};
pub use subspace::subspace_sample;
pub use volume::{hyperbolic_volume, section_volume};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A unit vector in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    coords: Vec<f64>,
}

impl Direction {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm: f64 = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "direction must be a unit vector, |v| = {norm:.15}"
            )));
        }
        Ok(Self { coords })
    }

    /// Unit vector obtained by normalizing `v`.
    pub fn normalized(mut v: Vec<f64>) -> Result<Self> {
        let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Domain("cannot normalize zero or non-finite vector".into()));
        }
        v.iter_mut().for_each(|c| *c /= norm);
        Ok(Self { coords: v })
    }

    /// The coordinate axis e_i in R^n.
    pub fn axis(n: usize, i: usize) -> Self {
        let mut coords = vec![0.0; n];
        coords[i] = 1.0;
        Self { coords }
    }

    /// Direction at angle `alpha` from the symmetry axis e_n, in the
    /// (e_1, e_n) plane.
    pub fn from_axis_angle(n: usize, alpha: f64) -> Self {
        let mut coords = vec![0.0; n];
        coords[0] = alpha.sin();
        coords[n - 1] = alpha.cos();
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Angle from the symmetry axis e_n.
    pub fn polar_angle(&self) -> f64 {
        self.coords[self.coords.len() - 1].clamp(-1.0, 1.0).acos()
    }

    pub fn negated(&self) -> Self {
        Self { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// Smoothness tag carried by bodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Smoothness {
    C0,
    C2,
    Cinf,
}

/// Radial function of a star body, evaluated on unit vectors.
pub trait RadialFn: Send + Sync {
    fn rho(&self, dir: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64 + Send + Sync> RadialFn for F {
    fn rho(&self, dir: &[f64]) -> f64 {
        self(dir)
    }
}

/// Planar profile of a body of revolution: ρ as a function of the angle
/// φ ∈ [0, π/2] from the symmetry axis, with derivatives and breakpoints.
pub trait Profile: Send + Sync {
    fn rho(&self, phi: f64) -> f64;
    fn drho(&self, phi: f64) -> f64;
    fn d2rho(&self, phi: f64) -> f64;
    /// Interior breakpoints between analytic pieces, strictly inside (0, π/2).
    fn breakpoints(&self) -> Vec<f64>;
    fn smoothness(&self) -> Smoothness;
    fn as_any(&self) -> &dyn std::any::Any;
}

/// Axisymmetric star body: a profile revolved about the last coordinate axis.
#[derive(Clone)]
pub struct RevolutionBody {
    dim: usize,
    profile: Arc<dyn Profile>,
}

impl RevolutionBody {
    pub fn new(dim: usize, profile: Arc<dyn Profile>) -> Result<Self> {
        if dim < 3 {
            return Err(Error::Domain(format!("dimension must be >= 3, got {dim}")));
        }
        let body = Self { dim, profile };
        body.check_profile()?;
        Ok(body)
    }

    fn check_profile(&self) -> Result<()> {
        // Range check on a grid, plus continuity across breakpoints.
        let m = 512;
        for i in 0..=m {
            let phi = std::f64::consts::FRAC_PI_2 * i as f64 / m as f64;
            let r = self.profile.rho(phi);
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Domain(format!(
                    "profile value {r:.15} at phi = {phi:.6} outside (0, 1)"
                )));
            }
        }
        for bp in self.profile.breakpoints() {
            let below = self.profile.rho(bp - 1e-13);
            let above = self.profile.rho(bp + 1e-13);
            if (below - above).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "profile discontinuous at breakpoint {bp:.6}: {below:.15} vs {above:.15}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn profile(&self) -> &Arc<dyn Profile> {
        &self.profile
    }

    /// Profile value with the even extension to [0, π].
    pub fn rho_angle(&self, phi: f64) -> f64 {
        self.profile.rho(fold(phi))
    }

    pub fn drho_angle(&self, phi: f64) -> f64 {
        let (f, sign) = fold_signed(phi);
        sign * self.profile.drho(f)
    }

    pub fn d2rho_angle(&self, phi: f64) -> f64 {
        self.profile.d2rho(fold(phi))
    }

    /// Height of the boundary point at angle φ: ρ(φ) cos φ.
    pub fn boundary_height(&self, phi: f64) -> f64 {
        self.rho_angle(phi) * phi.cos()
    }

    /// Distance from the axis of the boundary point at angle φ.
    pub fn boundary_radius(&self, phi: f64) -> f64 {
        self.rho_angle(phi) * phi.sin()
    }

    pub fn star_body(self) -> StarBody {
        let smoothness = self.profile.smoothness();
        StarBody { dim: self.dim, smoothness, shape: Shape::Revolution(self) }
    }
}

/// Golden-section maximization on [lo, hi] for a unimodal-near-peak function.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    f1.max(f2)
}

/// Fold φ ∈ [0, π] onto [0, π/2] by the even extension.
fn fold(phi: f64) -> f64 {
    let phi = phi.abs();
    if phi > std::f64::consts::FRAC_PI_2 {
        std::f64::consts::PI - phi
    } else {
        phi
    }
}

fn fold_signed(phi: f64) -> (f64, f64) {
    let phi = phi.abs();
    if phi > std::f64::consts::FRAC_PI_2 {
        (std::f64::consts::PI - phi, -1.0)
    } else {
        (phi, 1.0)
    }
}

/// Profile backed by closures, for analytically-defined axisymmetric bodies.
pub struct FnProfile {
    pub rho: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub drho: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub d2rho: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub smoothness: Smoothness,
}

impl Profile for FnProfile {
    fn rho(&self, phi: f64) -> f64 {
        (self.rho)(phi)
    }
    fn drho(&self, phi: f64) -> f64 {
        (self.drho)(phi)
    }
    fn d2rho(&self, phi: f64) -> f64 {
        (self.d2rho)(phi)
    }
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    fn smoothness(&self) -> Smoothness {
        self.smoothness
    }
    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

#[derive(Clone)]
enum Shape {
    General(Arc<dyn RadialFn>),
    Revolution(RevolutionBody),
}

/// Origin-symmetric star body in the open unit ball.
#[derive(Clone)]
pub struct StarBody {
    dim: usize,
    smoothness: Smoothness,
    shape: Shape,
}

impl StarBody {
    /// Body given by an arbitrary radial function; the function is trusted to
    /// be even, call [`StarBody::validate`] to spot-check.
    pub fn from_radial(dim: usize, smoothness: Smoothness, radial: Arc<dyn RadialFn>) -> Self {
        Self { dim, smoothness, shape: Shape::General(radial) }
    }

    /// Euclidean ball of radius `r` centered at the origin.
    pub fn ball(dim: usize, r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("ball radius {r} outside (0, 1)")));
        }
        Ok(Self::from_radial(dim, Smoothness::Cinf, Arc::new(move |_: &[f64]| r)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn with_smoothness(mut self, s: Smoothness) -> Self {
        self.smoothness = s;
        self
    }

    /// Radial function at a unit vector.
    pub fn rho(&self, dir: &[f64]) -> f64 {
        match &self.shape {
            Shape::General(f) => f.rho(dir),
            Shape::Revolution(rev) => {
                let c = dir[self.dim - 1].clamp(-1.0, 1.0);
                rev.rho_angle(c.acos())
            }
        }
    }

    pub fn rho_dir(&self, dir: &Direction) -> f64 {
        self.rho(dir.coords())
    }

    pub fn as_revolution(&self) -> Option<&RevolutionBody> {
        match &self.shape {
            Shape::Revolution(rev) => Some(rev),
            Shape::General(_) => None,
        }
    }

    /// Spot-check the star-body invariants on a coarse grid.
    pub fn validate(&self) -> Result<()> {
        let rule = crate::quad::SphereRule::product(self.dim, 24);
        for node in &rule.nodes {
            let r = self.rho(node);
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Domain(format!("radial value {r:.15} outside (0, 1)")));
            }
            let neg: Vec<f64> = node.iter().map(|c| -c).collect();
            let rn = self.rho(&neg);
            if (r - rn).abs() > 1e-10 * r.max(1e-3) {
                return Err(Error::Domain(format!(
                    "radial function not origin-symmetric: {r:.15} vs {rn:.15}"
                )));
            }
        }
        Ok(())
    }

    /// Support half-width in direction ξ: max over the boundary of ⟨x, ξ⟩.
    pub fn support(&self, xi: &Direction) -> f64 {
        match &self.shape {
            Shape::Revolution(rev) => {
                // boundary point at profile angle φ has ⟨x, ξ⟩ = ρ(φ) cos(φ - α)
                // for ξ at polar angle α, maximized over the longitude already.
                let alpha = xi.polar_angle();
                let height = |phi: f64| rev.rho_angle(phi) * (phi - alpha).cos();
                let m = 2048;
                let mut best = f64::NEG_INFINITY;
                let mut best_phi = 0.0;
                for i in 0..=m {
                    let phi = std::f64::consts::PI * i as f64 / m as f64;
                    let v = height(phi);
                    if v > best {
                        best = v;
                        best_phi = phi;
                    }
                }
                let step = std::f64::consts::PI / m as f64;
                let lo = (best_phi - step).max(0.0);
                let hi = (best_phi + step).min(std::f64::consts::PI);
                golden_max(height, lo, hi).max(best)
            }
            Shape::General(f) => {
                let value = |dir: &[f64]| {
                    let dot: f64 = dir.iter().zip(xi.coords()).map(|(a, b)| a * b).sum();
                    f.rho(dir) * dot
                };
                let rule = crate::quad::SphereRule::product(self.dim, 32);
                let mut best = f64::NEG_INFINITY;
                let mut best_dir: Vec<f64> = xi.coords().to_vec();
                for node in &rule.nodes {
                    let v = value(node);
                    if v > best {
                        best = v;
                        best_dir = node.clone();
                    }
                }
                // pattern search on the sphere from the best grid node
                let mut step = 0.1;
                while step > 1e-9 {
                    let mut improved = false;
                    for i in 0..self.dim {
                        for sgn in [1.0, -1.0] {
                            let mut cand = best_dir.clone();
                            cand[i] += sgn * step;
                            let norm: f64 = cand.iter().map(|c| c * c).sum::<f64>().sqrt();
                            cand.iter_mut().for_each(|c| *c /= norm);
                            let v = value(&cand);
                            if v > best {
                                best = v;
                                best_dir = cand;
                                improved = true;
                            }
                        }
                    }
                    if !improved {
                        step *= 0.5;
                    }
                }
                best
            }
        }
    }
}

/// Hyperbolic volume (or section volume) together with a refinement-based
/// absolute error estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// A d-dimensional linear subspace of R^n through the origin, stored as an
/// orthonormal basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    dim: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<f64>>) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 || dim >= ambient_dim {
            return Err(Error::Domain(format!(
                "subspace dimension {dim} must satisfy 1 <= d <= n-1 with n = {ambient_dim}"
            )));
        }
        for v in &basis {
            if v.len() != ambient_dim {
                return Err(Error::Domain("basis vector of wrong length".into()));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let dot: f64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (dot - target).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "basis not orthonormal: <b{i}, b{j}> = {dot:.15}"
                    )));
                }
            }
        }
        Ok(Self { ambient_dim, dim, basis })
    }

    /// Span of coordinate axes e_{i} for i in `axes`.
    pub fn coordinate(ambient_dim: usize, axes: &[usize]) -> Result<Self> {
        let basis = axes
            .iter()
            .map(|&i| {
                let mut v = vec![0.0; ambient_dim];
                v[i] = 1.0;
                v
            })
            .collect();
        Self::new(ambient_dim, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Map coordinates in the subspace to an ambient vector.
    pub fn embed(&self, coords: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += c * bi;
            }
        }
        out
    }

    /// An orthonormal basis of the orthogonal complement.
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.ambient_dim;
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for i in 0..n {
            if basis.len() == n - self.dim {
                break;
            }
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            for b in self.basis.iter().chain(basis.iter()) {
                let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= dot * bi;
                }
            }
            let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-8 {
                v.iter_mut().for_each(|c| *c /= norm);
                basis.push(v);
            }
        }
        Subspace { ambient_dim: n, dim: n - self.dim, basis }
    }
}
