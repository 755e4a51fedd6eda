//! Star bodies in the Poincaré ball model of hyperbolic space.
//!
//! The crate builds origin-symmetric star bodies inside the open unit ball,
//! computes their hyperbolic volumes and totally-geodesic section volumes,
//! evaluates Fourier transforms of negative powers of Minkowski functionals
//! through parallel section functions, and assembles certified pairs of
//! convex bodies (K, L) for which every sampled section of K is no larger
//! than the matching section of L while the total hyperbolic volume of K
//! strictly exceeds that of L.
//!
//! Module map:
//! - [`quad`]: Gauss–Legendre / Gauss–Chebyshev rules and product rules on
//!   spheres of dimension up to four.
//! - [`geom`]: radial kernels, the r/(1-r²) correspondence, volumes,
//!   convexity checks, subspace sampling.
//! - [`body`]: concrete constructions (cylinder with geodesic caps, ℓ^q
//!   balls), edge smoothing, strictification, and the named-construction
//!   registry.
//! - [`fourier`]: parallel section functions, derivative and regularized
//!   integral branches of the norm-power Fourier transform, Gegenbauer
//!   expansions and the homogeneous multiplier, spherical Parseval and
//!   subspace residuals.
//! - [`engine`]: negative-set extraction, bump and perturbation
//!   construction, the volume-comparison solver, and certification.
//! - [`config`], [`report`], [`cli`]: batch orchestration and artifacts.

pub mod body;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod fourier;
pub mod geom;
pub mod quad;
pub mod report;

pub use error::{Error, Result};
