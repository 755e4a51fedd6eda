//! One-dimensional Gauss rules and product quadrature on spheres.
//!
//! Latitude integrals ∫₀^π f(cos φ) sin^ν φ dφ reduce to ∫_{-1}^{1} f(x)
//! (1-x²)^{(ν-1)/2} dx.  For odd ν the weight is a polynomial and plain
//! Gauss–Legendre is exact; for even ν it is a half-integer Jacobi weight
//! handled by the closed-form Gauss–Chebyshev rule of the second kind and
//! its polynomial multiples.  Ambient dimensions up to five (spheres up to
//! S⁴) are covered this way without general Jacobi machinery.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node/weight counts and seed for randomized grids.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct QuadratureSpec {
    /// Nodes for radial (one-dimensional) integrals.
    pub radial_nodes: usize,
    /// Latitude nodes of sphere product rules; longitudes use 2x this count.
    pub sphere_nodes: usize,
    /// Seed for randomized grids (subspace sampling, convexity sampling).
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(radial_nodes: usize, sphere_nodes: usize, seed: u64) -> Result<Self> {
        if radial_nodes < 8 || sphere_nodes < 8 {
            return Err(Error::Domain(format!(
                "node counts must be >= 8, got radial {radial_nodes}, sphere {sphere_nodes}"
            )));
        }
        Ok(Self { radial_nodes, sphere_nodes, seed })
    }

    /// A spec with the same seed and doubled node counts.
    pub fn refined(&self) -> Self {
        Self { radial_nodes: 2 * self.radial_nodes, sphere_nodes: 2 * self.sphere_nodes, seed: self.seed }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { radial_nodes: 96, sphere_nodes: 192, seed: 0 }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the three-term recurrence; nodes converge to
/// machine precision in a handful of steps.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Chebyshev rule of the second kind: ∫ f(x) √(1-x²) dx.
pub fn gauss_chebyshev2(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64 + 1.0;
    for k in 1..=n {
        let t = k as f64 * std::f64::consts::PI / nf;
        nodes.push(t.cos());
        weights.push(std::f64::consts::PI / nf * t.sin() * t.sin());
    }
    (nodes, weights)
}

/// Rule for the latitude weight sin^ν φ, returned in x = cos φ:
/// nodes x_i and weights w_i with Σ w_i f(x_i) ≈ ∫₀^π f(cos φ) sin^ν φ dφ.
pub fn latitude_rule(nu: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    match nu {
        0 | 1 | 3 | 5 => {
            // polynomial weight (1-x²)^{(ν-1)/2}... for ν=0 integrate in φ directly
            if nu == 0 {
                // midpoint in φ; only used for completeness
                let h = std::f64::consts::PI / n as f64;
                let nodes = (0..n).map(|i| ((i as f64 + 0.5) * h).cos()).collect();
                let weights = vec![h; n];
                return (nodes, weights);
            }
            let (x, w) = gauss_legendre(n);
            let p = (nu - 1) / 2;
            let w = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * (1.0 - xi * xi).powi(p as i32))
                .collect();
            (x, w)
        }
        2 | 4 => {
            let (x, w) = gauss_chebyshev2(n);
            if nu == 2 {
                (x, w)
            } else {
                let w = x
                    .iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * (1.0 - xi * xi))
                    .collect();
                (x, w)
            }
        }
        _ => panic!("latitude weight sin^{nu} not supported (ambient dimension too large)"),
    }
}

/// A quadrature rule on the unit sphere S^{d-1} ⊂ R^d.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Product rule with `lat` latitude nodes per angular level and `2*lat`
    /// longitude nodes.  The polar axis is the last coordinate.
    pub fn product(dim: usize, lat: usize) -> Self {
        assert!(dim >= 1 && dim <= 5, "sphere rules implemented for R^1..R^5");
        match dim {
            1 => SphereRule {
                dim,
                nodes: vec![vec![1.0], vec![-1.0]],
                weights: vec![1.0, 1.0],
            },
            2 => {
                let m = 2 * lat;
                let h = 2.0 * std::f64::consts::PI / m as f64;
                let nodes = (0..m)
                    .map(|i| {
                        let t = i as f64 * h;
                        vec![t.sin(), t.cos()]
                    })
                    .collect();
                SphereRule { dim, nodes, weights: vec![h; m] }
            }
            _ => {
                // point = (sin φ · ω, cos φ), ω ∈ S^{d-2}, weight sin^{d-2} φ
                let sub = SphereRule::product(dim - 1, lat);
                let (xs, ws) = latitude_rule(dim - 2, lat);
                let mut nodes = Vec::with_capacity(xs.len() * sub.nodes.len());
                let mut weights = Vec::with_capacity(nodes.capacity());
                for (x, wx) in xs.iter().zip(&ws) {
                    let s = (1.0 - x * x).max(0.0).sqrt();
                    for (omega, wo) in sub.nodes.iter().zip(&sub.weights) {
                        let mut p: Vec<f64> = omega.iter().map(|c| c * s).collect();
                        p.push(*x);
                        nodes.push(p);
                        weights.push(wx * wo);
                    }
                }
                SphereRule { dim, nodes, weights }
            }
        }
    }

    /// Total weight; equals the surface measure of S^{d-1} up to quadrature error.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Surface measure of S^{d-1}.
pub fn sphere_area(d: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / statrs::function::gamma::gamma(d as f64 / 2.0)
}

/// Volume of the unit ball in R^d.
pub fn ball_volume(d: usize) -> f64 {
    std::f64::consts::PI.powf(d as f64 / 2.0)
        / statrs::function::gamma::gamma(d as f64 / 2.0 + 1.0)
}

/// Composite Gauss–Legendre integration of `f` over [a, b] with `panels`
/// panels of `nodes` points each.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, nodes: usize) -> f64 {
    let (xs, ws) = gauss_legendre(nodes);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            s += w * f(mid + half * x);
        }
        total += s * half;
    }
    total
}
