//! Parallel section functions A_ξ(z) and their derivatives at zero.
//!
//! Three evaluation paths:
//! - axis direction on a body of revolution: the slice is a ball whose
//!   radius solves ρ(φ) cos φ = z, so A(z) = ω_{n-1} R(z)^{n-1};
//! - oblique direction on a body of revolution: Fubini along the
//!   directions orthogonal to the (axis, ξ)-plane gives a one-dimensional
//!   integral A(z) = ω_{n-2} ∫ (f(τ)² − σ²)_+^{(n-2)/2} ds with f the
//!   radius-at-height function;
//! - arbitrary star bodies: quadrature over the slice sphere with per-ray
//!   boundary root solving about the slice center zξ.

use crate::error::{Error, Result};
use crate::geom::{Direction, RevolutionBody, StarBody, Subspace};
use crate::quad::{ball_volume, gauss_legendre, SphereRule};

/// A parallel section function of a fixed body and direction.
pub struct ParallelSectionFn {
    dim: usize,
    z_max: f64,
    path: Path,
}

enum Path {
    Axis {
        table: HeightTable,
    },
    Oblique {
        table: HeightTable,
        /// |sin| and cos of the polar angle of ξ; evenness in z lets the
        /// evaluation canonicalize to the first quadrant.
        sin_alpha: f64,
        cos_alpha: f64,
        axial_height: f64,
        max_radius: f64,
    },
    General {
        body: StarBody,
        xi: Direction,
        perp: Subspace,
        rule: SphereRule,
        rho_max: f64,
    },
}

/// Sampled boundary of a body of revolution, indexed by height, backing
/// fast radius-at-height queries.
struct HeightTable {
    rev: RevolutionBody,
    phis: Vec<f64>,
    heights: Vec<f64>,
    monotone: bool,
    /// Last index of the polar height plateau (flat top disk); zero when
    /// the height decreases strictly from the pole.
    plateau_end: usize,
}

impl HeightTable {
    fn build(rev: RevolutionBody) -> Self {
        let samples = 8192;
        let phis: Vec<f64> = (0..=samples)
            .map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / samples as f64)
            .collect();
        let heights: Vec<f64> = phis.iter().map(|&p| rev.boundary_height(p)).collect();
        // plateaus carry root-solver noise proportional to the height scale
        let tol = 1e-12 * (1.0 + heights[0].abs());
        let monotone = heights.windows(2).all(|w| w[1] <= w[0] + tol);
        let mut plateau_end = 0;
        while plateau_end + 1 < heights.len() && heights[plateau_end + 1] >= heights[0] - tol {
            plateau_end += 1;
        }
        Self { rev, phis, heights, monotone, plateau_end }
    }

    fn pole_height(&self) -> f64 {
        self.heights[0]
    }

    /// Distance from the axis of the boundary at height v ≥ 0.
    fn radius_at(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return self.rev.rho_angle(std::f64::consts::FRAC_PI_2);
        }
        if v >= self.heights[0] {
            return 0.0;
        }
        if self.monotone {
            // queries inside the plateau noise band resolve to its outer
            // edge, the radius of the flat top disk
            if v >= self.heights[self.plateau_end] {
                return self.rev.boundary_radius(self.phis[self.plateau_end]);
            }
            // binary search on the strictly decreasing part
            let (mut lo, mut hi) = (self.plateau_end, self.heights.len() - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if self.heights[mid] >= v {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            self.refine_bracket(lo, v)
        } else {
            // non-monotone boundary height: take the outermost crossing
            let mut best = 0.0f64;
            for i in 0..self.heights.len() - 1 {
                let (a, b) = (self.heights[i], self.heights[i + 1]);
                if (a >= v && b < v) || (a < v && b >= v) {
                    best = best.max(self.refine_bracket(i, v));
                }
            }
            best
        }
    }

    fn refine_bracket(&self, idx: usize, v: f64) -> f64 {
        let (lo, hi) = (self.phis[idx], self.phis[idx + 1]);
        let (h_lo, h_hi) = (self.heights[idx], self.heights[idx + 1]);
        let denom = h_hi - h_lo;
        // Inverse-linear seed inside the narrow table bracket, then Newton.
        // Height plateaus leave the seed at the bracket edge; the radius
        // varies by at most the bracket span there, which only affects
        // slices within solver noise of the top of the body.
        let mut phi = if denom.abs() < 1e-14 * (1.0 + v.abs()) {
            0.5 * (lo + hi)
        } else {
            (lo + (v - h_lo) / denom * (hi - lo)).clamp(lo, hi)
        };
        for _ in 0..3 {
            let r = self.rev.rho_angle(phi);
            let dr = self.rev.drho_angle(phi);
            let h = r * phi.cos() - v;
            if h.abs() < 1e-14 * v.max(1.0) {
                break;
            }
            let dh = dr * phi.cos() - r * phi.sin();
            if dh.abs() < 1e-300 {
                break;
            }
            phi = (phi - h / dh).clamp(lo, hi);
        }
        self.rev.boundary_radius(phi)
    }
}

impl ParallelSectionFn {
    pub fn new(body: &StarBody, xi: &Direction) -> Result<Self> {
        if xi.dim() != body.dim() {
            return Err(Error::Domain("direction dimension mismatch".into()));
        }
        let dim = body.dim();
        let z_max = body.support(xi);
        if let Some(rev) = body.as_revolution() {
            let alpha = xi.polar_angle();
            let sin_alpha = alpha.sin().abs();
            if sin_alpha < 1e-12 {
                let table = HeightTable::build(rev.clone());
                return Ok(Self { dim, z_max, path: Path::Axis { table } });
            }
            let cos_alpha = alpha.cos().abs();
            let axial_height = rev.boundary_height(0.0);
            let max_radius = max_boundary_radius(rev);
            let table = HeightTable::build(rev.clone());
            return Ok(Self {
                dim,
                z_max,
                path: Path::Oblique { table, sin_alpha, cos_alpha, axial_height, max_radius },
            });
        }
        // The general path solves rays from the slice center zξ, which must
        // lie inside the body; support slivers beyond the radial value are
        // below the path's quadrature floor for near-spherical bodies and
        // are treated as empty.
        let z_max = body.rho_dir(xi);
        let perp = Subspace::new(dim, vec![xi.coords().to_vec()])?.orthogonal_complement();
        let rule = SphereRule::product(dim - 1, 64);
        let rho_max = max_radial_value(body);
        Ok(Self {
            dim,
            z_max,
            path: Path::General { body: body.clone(), xi: xi.clone(), perp, rule, rho_max },
        })
    }

    /// Support half-width: A vanishes for |z| beyond this.
    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// Euclidean (n-1)-volume of the slice at signed height z.
    pub fn eval(&self, z: f64) -> Result<f64> {
        let z = z.abs();
        if z >= self.z_max {
            return Ok(0.0);
        }
        match &self.path {
            Path::Axis { table } => {
                let r = table.radius_at(z);
                Ok(ball_volume(self.dim - 1) * r.powi(self.dim as i32 - 1))
            }
            Path::Oblique { table, sin_alpha, cos_alpha, axial_height, max_radius } => {
                Ok(self.oblique_area(table, z, *sin_alpha, *cos_alpha, *axial_height, *max_radius))
            }
            Path::General { body, xi, perp, rule, rho_max } => {
                self.general_area(body, xi, perp, rule, *rho_max, z)
            }
        }
    }

    fn oblique_area(
        &self,
        table: &HeightTable,
        z: f64,
        sin_a: f64,
        cos_a: f64,
        axial_height: f64,
        max_radius: f64,
    ) -> f64 {
        let n = self.dim;
        // τ(s) = z cos α − s sin α, σ(s) = z sin α + s cos α
        let g = |s: f64| {
            let tau = z * cos_a - s * sin_a;
            let sigma = z * sin_a + s * cos_a;
            let f = if tau.abs() >= axial_height { 0.0 } else { table.radius_at(tau.abs()) };
            f * f - sigma * sigma
        };
        // restrict sampling to where both |τ| ≤ height and |σ| ≤ max radius
        let (mut lo, mut hi) = ((z * cos_a - axial_height) / sin_a, (z * cos_a + axial_height) / sin_a);
        if cos_a > 1e-12 {
            let sig_lo = (-max_radius - z * sin_a) / cos_a;
            let sig_hi = (max_radius - z * sin_a) / cos_a;
            lo = lo.max(sig_lo);
            hi = hi.min(sig_hi);
        }
        if !(hi > lo) {
            return 0.0;
        }
        let intervals = positive_intervals(&g, lo, hi, 160);
        let power = (n as f64 - 2.0) / 2.0;
        let mut area = 0.0;
        for iv in intervals {
            area += integrate_clipped_power(&g, power, iv);
        }
        ball_volume(n - 2) * area
    }

    fn general_area(
        &self,
        body: &StarBody,
        xi: &Direction,
        perp: &Subspace,
        rule: &SphereRule,
        rho_max: f64,
        z: f64,
    ) -> Result<f64> {
        let n = self.dim;
        let center: Vec<f64> = xi.coords().iter().map(|c| c * z).collect();
        let inside = |point: &[f64]| -> bool {
            let norm: f64 = point.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-14 {
                return true;
            }
            let dir: Vec<f64> = point.iter().map(|c| c / norm).collect();
            norm <= body.rho(&dir)
        };
        if !inside(&center) {
            return Err(Error::Domain(format!(
                "slice center at z = {z:.6} lies outside the body; slice not star-shaped about its center"
            )));
        }
        let t_cap = (rho_max * rho_max - z * z).max(0.0).sqrt() + 1e-9;
        let mut acc = 0.0;
        for (omega, w) in rule.nodes.iter().zip(&rule.weights) {
            let dir_ambient = perp.embed(omega);
            let point_at = |t: f64| -> Vec<f64> {
                center.iter().zip(&dir_ambient).map(|(c, d)| c + t * d).collect()
            };
            let mut lo = 0.0;
            let mut hi = t_cap;
            if inside(&point_at(hi)) {
                return Err(Error::Numerical("ray bracket failed: body larger than bound".into()));
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(&point_at(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t_star = 0.5 * (lo + hi);
            // star-shapedness probe past the crossing
            for probe in [1.05, 1.25] {
                let t = probe * t_star + 1e-9;
                if t < t_cap && inside(&point_at(t)) {
                    return Err(Error::Domain(
                        "slice not star-shaped about its center beyond tolerance".into(),
                    ));
                }
            }
            acc += w * t_star.powi(n as i32 - 1);
        }
        Ok(acc / (n as f64 - 1.0))
    }
}

fn max_boundary_radius(rev: &RevolutionBody) -> f64 {
    let m = 2048;
    (0..=m)
        .map(|i| rev.boundary_radius(std::f64::consts::FRAC_PI_2 * i as f64 / m as f64))
        .fold(0.0f64, f64::max)
        * (1.0 + 1e-9)
        + 1e-12
}

fn max_radial_value(body: &StarBody) -> f64 {
    let rule = SphereRule::product(body.dim(), 48);
    rule.nodes.iter().map(|d| body.rho(d)).fold(0.0f64, f64::max) * 1.05 + 1e-9
}

/// Maximal subintervals of [lo, hi] where g > 0, endpoints refined by
/// bisection.  Sampled local maxima are polished by golden search before
/// the sign test, so positive blobs narrower than the grid are still
/// found as long as the grid resolves the hump of g around them.
/// Endpoints of [lo, hi] where g > 0 are kept as hard clips.
fn positive_intervals<G: Fn(f64) -> f64>(
    g: &G,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Vec<ClippedInterval> {
    let h = (hi - lo) / samples as f64;
    let mut xs: Vec<f64> = (0..=samples).map(|i| lo + i as f64 * h).collect();
    xs[samples] = hi;
    let vals: Vec<f64> = xs.iter().map(|&x| g(x)).collect();

    // refined node list: grid points plus golden-polished interior
    // extrema, so the sign pattern between consecutive nodes is reliable
    let mut nodes: Vec<(f64, f64)> = xs.iter().copied().zip(vals.iter().copied()).collect();
    for i in 1..samples {
        let is_max = vals[i - 1] <= vals[i] && vals[i + 1] <= vals[i];
        let is_min = vals[i - 1] >= vals[i] && vals[i + 1] >= vals[i];
        if is_max {
            let (x, v) = golden_peak(g, xs[i - 1], xs[i + 1]);
            nodes.push((x, v));
        } else if is_min {
            let (x, v) = golden_peak(&|s| -g(s), xs[i - 1], xs[i + 1]);
            nodes.push((x, -v));
        }
    }
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out: Vec<ClippedInterval> = Vec::new();
    let mut start: Option<(f64, bool)> =
        if nodes[0].1 > 0.0 { Some((nodes[0].0, false)) } else { None };
    for w in 0..nodes.len() - 1 {
        let (xa, va) = nodes[w];
        let (xb, vb) = nodes[w + 1];
        if va <= 0.0 && vb > 0.0 {
            start = Some((bisect_root(g, xa, xb), true));
        } else if va > 0.0 && vb <= 0.0 {
            if let Some((s, s_is_root)) = start.take() {
                let root = bisect_root(g, xa, xb);
                out.push(ClippedInterval { lo: s, hi: root, lo_is_root: s_is_root, hi_is_root: true });
            }
        }
    }
    if let Some((s, s_is_root)) = start {
        out.push(ClippedInterval { lo: s, hi, lo_is_root: s_is_root, hi_is_root: false });
    }
    out
}

/// Golden-section maximum of g on [a, b]: location and value.
fn golden_peak<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..60 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = g(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

struct ClippedInterval {
    lo: f64,
    hi: f64,
    lo_is_root: bool,
    hi_is_root: bool,
}

fn bisect_root<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64) -> f64 {
    // g(lo) and g(hi) straddle zero
    let lo_nonpositive = g(lo) <= 0.0;
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) <= 0.0) == lo_nonpositive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// ∫ g(s)^p over a positive interval.  Halves with a root endpoint use the
/// substitution s = root ± u², which removes the fractional-power endpoint
/// singularity; hard (clipped) endpoints integrate directly.  Each half is
/// refined adaptively so the value does not depend on how the endpoint was
/// classified, which matters where a clip sits on a steep boundary cusp.
fn integrate_clipped_power<G: Fn(f64) -> f64>(g: &G, p: f64, iv: ClippedInterval) -> f64 {
    let mid = 0.5 * (iv.lo + iv.hi);
    let mut total = 0.0;
    // left half [lo, mid]
    total += if iv.lo_is_root {
        let umax = (mid - iv.lo).sqrt();
        adaptive_gl(&|u| 2.0 * u * g(iv.lo + u * u).max(0.0).powf(p), 0.0, umax)
    } else {
        adaptive_gl(&|s| g(s).max(0.0).powf(p), iv.lo, mid)
    };
    // right half [mid, hi]
    total += if iv.hi_is_root {
        let umax = (iv.hi - mid).sqrt();
        adaptive_gl(&|u| 2.0 * u * g(iv.hi - u * u).max(0.0).powf(p), 0.0, umax)
    } else {
        adaptive_gl(&|s| g(s).max(0.0).powf(p), mid, iv.hi)
    };
    total
}

/// Adaptive Gauss–Legendre (16 vs 32 nodes per panel) to a fixed relative
/// target, with a bounded panel budget.
fn adaptive_gl(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (x16, w16) = gauss_legendre(16);
    let (x32, w32) = gauss_legendre(32);
    let panel = |a: f64, b: f64, xs: &[f64], ws: &[f64]| -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        xs.iter().zip(ws).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    };
    let first = panel(lo, hi, &x16, &w16);
    let scale = first.abs().max(1e-300);
    let mut stack = vec![(lo, hi, 3e-10 * scale)];
    let mut total = 0.0;
    let mut used = 0usize;
    while let Some((a, b, t)) = stack.pop() {
        used += 1;
        let coarse = panel(a, b, &x16, &w16);
        let fine = panel(a, b, &x32, &w32);
        if (fine - coarse).abs() <= t || (b - a) < 1e-10 * (hi - lo) || used > 220 {
            total += fine;
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid, 0.5 * t));
            stack.push((mid, b, 0.5 * t));
        }
    }
    total
}

/// Central finite difference of even `order` with Richardson extrapolation.
///
/// Returns the derivative estimate and an internal error estimate; errors
/// out when the extrapolation fails to settle (step too large).
pub fn a_derivative_at_zero(a: &ParallelSectionFn, order: usize, h: f64) -> Result<(f64, f64)> {
    if order == 0 {
        return Ok((a.eval(0.0)?, 0.0));
    }
    if order % 2 != 0 {
        // odd derivatives of an even function vanish identically
        return Ok((0.0, 0.0));
    }
    if !(h > 0.0) || (order as f64 / 2.0) * h >= a.z_max() {
        return Err(Error::Domain(format!("step h = {h} too large for support {}", a.z_max())));
    }
    let stencil = |step: f64| -> Result<f64> {
        let half = order / 2;
        let mut acc = 0.0;
        let mut binom = 1.0f64; // C(order, i)
        for i in 0..=order {
            let offset = (half as f64 - i as f64) * step;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * a.eval(offset)?;
            binom = binom * (order - i) as f64 / (i + 1) as f64;
        }
        Ok(acc / step.powi(order as i32))
    };
    let levels = 4;
    let mut tableau = vec![vec![0.0f64; levels]; levels];
    for (i, row) in tableau.iter_mut().enumerate().take(levels) {
        row[0] = stencil(h / 2f64.powi(i as i32))?;
    }
    for j in 1..levels {
        for i in j..levels {
            let pow = 4f64.powi(j as i32);
            tableau[i][j] = (pow * tableau[i][j - 1] - tableau[i - 1][j - 1]) / (pow - 1.0);
        }
    }
    let estimate = tableau[levels - 1][levels - 1];
    let err = (tableau[levels - 1][levels - 1] - tableau[levels - 2][levels - 2]).abs();
    // Floating noise of the finest stencil: ε 2^order |A| / (h/8)^order.
    // Derivatives that vanish identically settle onto this floor.
    let a0 = a.eval(0.0)?.abs().max(1e-300);
    let fine_h = h / 2f64.powi(levels as i32 - 1);
    let noise_floor = f64::EPSILON * 2f64.powi(order as i32) * a0 / fine_h.powi(order as i32);
    if err > 0.05 * estimate.abs() && err > 50.0 * noise_floor {
        return Err(Error::Numerical(format!(
            "derivative extrapolation did not settle: estimate {estimate:.6e}, error {err:.3e}"
        )));
    }
    Ok((estimate, err.max(noise_floor)))
}

/// Euclidean (n-1)-volume of the slice of `body` at height z along ξ.
pub fn parallel_section(body: &StarBody, xi: &Direction, z: f64) -> Result<f64> {
    ParallelSectionFn::new(body, xi)?.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Smoothness;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn ball_general(n: usize, r: f64) -> StarBody {
        StarBody::from_radial(n, Smoothness::Cinf, Arc::new(move |_: &[f64]| r))
    }

    fn ball_revolution(n: usize, r: f64) -> StarBody {
        let profile = crate::geom::FnProfile {
            rho: Box::new(move |_| r),
            drho: Box::new(|_| 0.0),
            d2rho: Box::new(|_| 0.0),
            smoothness: Smoothness::Cinf,
        };
        RevolutionBody::new(n, Arc::new(profile)).unwrap().star_body()
    }

    #[test]
    fn ball_slice_area_axis_path() {
        let body = ball_revolution(3, 0.5);
        let xi = Direction::axis(3, 2);
        let a = parallel_section(&body, &xi, 0.3).unwrap();
        assert_relative_eq!(a, std::f64::consts::PI * 0.16, max_relative = 1e-10);
    }

    #[test]
    fn ball_slice_area_oblique_path() {
        let body = ball_revolution(3, 0.5);
        let xi = Direction::from_axis_angle(3, 0.7);
        let a = parallel_section(&body, &xi, 0.3).unwrap();
        assert_relative_eq!(a, std::f64::consts::PI * 0.16, max_relative = 1e-9);
    }

    #[test]
    fn ball_slice_area_general_path() {
        let body = ball_general(3, 0.5);
        let xi = Direction::normalized(vec![0.3, -0.5, 0.8]).unwrap();
        let a = parallel_section(&body, &xi, 0.3).unwrap();
        assert_relative_eq!(a, std::f64::consts::PI * 0.16, max_relative = 1e-9);
    }

    #[test]
    fn oblique_path_matches_axis_values_in_higher_dimensions() {
        for n in [4usize, 5] {
            let body = ball_revolution(n, 0.6);
            let a_ax = parallel_section(&body, &Direction::axis(n, n - 1), 0.2).unwrap();
            let a_ob =
                parallel_section(&body, &Direction::from_axis_angle(n, 0.9), 0.2).unwrap();
            assert_relative_eq!(a_ax, a_ob, max_relative = 1e-8);
            let exact = ball_volume(n - 1) * (0.36f64 - 0.04).powf((n as f64 - 1.0) / 2.0);
            assert_relative_eq!(a_ax, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn slice_beyond_support_is_empty() {
        let body = ball_revolution(3, 0.5);
        let xi = Direction::from_axis_angle(3, 0.3);
        assert_eq!(parallel_section(&body, &xi, 0.51).unwrap(), 0.0);
    }

    #[test]
    fn second_derivative_of_ball_slice() {
        // A(z) = π(ρ² − z²) gives A'' = −2π
        let body = ball_revolution(3, 0.5);
        let a = ParallelSectionFn::new(&body, &Direction::axis(3, 2)).unwrap();
        let (d2, err) = a_derivative_at_zero(&a, 2, 0.5 / 64.0).unwrap();
        assert_relative_eq!(d2, -2.0 * std::f64::consts::PI, max_relative = 1e-9);
        assert!(err < 1e-6);
    }

    #[test]
    fn first_derivative_vanishes_by_symmetry() {
        let body = ball_revolution(3, 0.5);
        let a = ParallelSectionFn::new(&body, &Direction::axis(3, 2)).unwrap();
        let (d1, _) = a_derivative_at_zero(&a, 1, 0.01).unwrap();
        assert_eq!(d1, 0.0);
    }

    #[test]
    fn fourth_derivative_of_quartic_slice_profile() {
        // n = 5 ball: A(z) = ω₄ (ρ² − z²)², A⁗(0) = 24 ω₄
        let body = ball_revolution(5, 0.8);
        let a = ParallelSectionFn::new(&body, &Direction::axis(5, 4)).unwrap();
        let (d4, _) = a_derivative_at_zero(&a, 4, 0.8 / 16.0).unwrap();
        assert_relative_eq!(d4, 24.0 * ball_volume(4), max_relative = 1e-7);
    }
}

/// Debug helper: detected positive intervals and their contributions for
/// an oblique slice.
#[doc(hidden)]
pub fn debug_oblique_intervals(
    body: &StarBody,
    xi: &Direction,
    z: f64,
) -> crate::error::Result<Vec<(f64, f64, bool, bool, f64)>> {
    let a = ParallelSectionFn::new(body, xi)?;
    if let Path::Oblique { table, sin_alpha, cos_alpha, axial_height, max_radius } = &a.path {
        let (sin_a, cos_a) = (*sin_alpha, *cos_alpha);
        let g = |s: f64| {
            let tau = z * cos_a - s * sin_a;
            let sigma = z * sin_a + s * cos_a;
            let f = if tau.abs() >= *axial_height { 0.0 } else { table.radius_at(tau.abs()) };
            f * f - sigma * sigma
        };
        let (mut lo, mut hi) =
            ((z * cos_a - axial_height) / sin_a, (z * cos_a + axial_height) / sin_a);
        if *cos_alpha > 1e-12 {
            lo = lo.max((-max_radius - z * sin_a) / cos_a);
            hi = hi.min((max_radius - z * sin_a) / cos_a);
        }
        let intervals = positive_intervals(&g, lo, hi, 160);
        let out = intervals
            .into_iter()
            .map(|iv| {
                let c = integrate_clipped_power(&g, 0.5, ClippedInterval { ..iv });
                (iv.lo, iv.hi, iv.lo_is_root, iv.hi_is_root, c)
            })
            .collect();
        return Ok(out);
    }
    Err(crate::error::Error::Domain("not oblique".into()))
}
