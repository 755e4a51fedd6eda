//! Parallel section functions, the norm-power Fourier transform on the
//! sphere, zonal harmonic expansions, and identity residual checks.

pub mod gegenbauer;
mod ft;
mod residual;
mod section;

pub use ft::{ft_norm_power, pd_scan, FtProfile};
pub use gegenbauer::{
    ft_homogeneous, gegenbauer_d1, gegenbauer_d2, gegenbauer_expand, gegenbauer_value,
    gegenbauer_values, harmonic_multiplier, zonal_norm, HarmonicExpansion,
};
pub use residual::{parseval_residual, subspace_ft_residual};
pub use section::{a_derivative_at_zero, parallel_section, ParallelSectionFn};
#[doc(hidden)]
pub use section::debug_oblique_intervals;
