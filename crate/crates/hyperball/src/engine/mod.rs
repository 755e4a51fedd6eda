//! From a sign failure of the norm-power Fourier transform to a certified
//! pair of convex bodies whose section volumes and total volumes compare
//! in opposite directions.

mod certify;
mod solve;
mod zhang;

pub use certify::{
    certify, certify_with_epsilon, elementary_inequality_check, CertificateReport,
    PlaneComparison, CONVEXITY_TOL, SECTION_SLACK, VOLUME_ERROR_FACTOR,
};
pub use solve::{build_k_body, choose_epsilon, solve_k_radial, EpsilonChoice, KProfile};
pub use zhang::{
    build_bump, build_g, find_negative_set, section_integral_of_g, zhang_check, Bump, BumpSpec,
    DensityF, NegativeSet, PerturbationG, ZhangReport,
};

use serde::{Deserialize, Serialize};

use crate::body::{lookup, FamilyParams};
use crate::error::{Error, Result};
use crate::fourier::{pd_scan, FtProfile};
use crate::geom::subspace_sample;
use crate::quad::QuadratureSpec;

/// Inputs of the end-to-end pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineParams {
    pub n: usize,
    /// Codimension: sections have dimension n - k.
    pub k: usize,
    pub construction: String,
    pub lambda: f64,
    pub blend_width: f64,
    pub eps_strict: f64,
    pub lq_exponent: f64,
    pub lq_dilation: f64,
    pub max_degree: usize,
    pub eps_max: f64,
    pub scan_angles: usize,
    pub plane_count: usize,
    pub zhang_plane_count: usize,
    pub quad: QuadratureSpec,
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        Self {
            n: 3,
            k: 1,
            construction: "cylinder-caps".to_string(),
            lambda: 0.02,
            blend_width: 0.08,
            eps_strict: 1e-3,
            lq_exponent: 4.0,
            lq_dilation: 0.5,
            max_degree: 520,
            eps_max: 1e-3,
            scan_angles: 25,
            plane_count: 64,
            zhang_plane_count: 500,
            quad: QuadratureSpec::default(),
            seed: 7,
        }
    }
}

impl PipelineParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.n > 5 {
            return Err(Error::Config(format!("n = {} outside 3..=5", self.n)));
        }
        if self.k == 0 || self.k >= self.n - 1 {
            return Err(Error::Config(format!(
                "k = {} outside the valid range 1..={} (sections must have dimension >= 2)",
                self.k,
                self.n - 2
            )));
        }
        if !(self.lambda > 0.0 && self.lambda < std::f64::consts::FRAC_1_SQRT_2) {
            return Err(Error::Config(format!(
                "lambda = {} outside (0, {})",
                self.lambda,
                std::f64::consts::FRAC_1_SQRT_2
            )));
        }
        if self.max_degree % 2 != 0 {
            return Err(Error::Config("max_degree must be even".into()));
        }
        if self.eps_max <= 0.0 {
            return Err(Error::Config("eps_max must be positive".into()));
        }
        if self.scan_angles < 2 {
            return Err(Error::Config("scan_angles must be at least 2".into()));
        }
        Ok(())
    }

    pub fn family_params(&self) -> FamilyParams {
        FamilyParams {
            n: self.n,
            lambda: self.lambda,
            blend_width: self.blend_width,
            eps_strict: self.eps_strict,
            lq_exponent: self.lq_exponent,
            lq_dilation: self.lq_dilation,
        }
    }
}

/// Everything the pipeline produced on the way to the verdict.
pub struct PipelineOutput {
    pub report: CertificateReport,
    pub scan: FtProfile,
    pub omega: NegativeSet,
    pub bump: BumpSpec,
    pub zhang: ZhangReport,
    pub epsilon: EpsilonChoice,
    pub half_height: Option<f64>,
}

/// Run construct → scan → perturb → solve → certify.
pub fn run_pipeline(p: &PipelineParams) -> Result<PipelineOutput> {
    p.validate()?;
    let t0 = std::time::Instant::now();
    let construction = lookup(&p.construction)?;
    let built = construction.build(&p.family_params())?;
    eprintln!("[construct] {} built in {:.1?}", p.construction, t0.elapsed());

    let t = std::time::Instant::now();
    let scan = pd_scan(&built.m, p.k, p.scan_angles)?;
    eprintln!(
        "[scan] {} angles, min {:.4} at {:.4} rad in {:.1?}",
        p.scan_angles, scan.min_value, scan.argmin_angle, t.elapsed()
    );

    let t = std::time::Instant::now();
    let omega = find_negative_set(&built.m, &scan)?;
    let (lo, hi) = *omega
        .intervals
        .iter()
        .find(|(lo, hi)| (*lo..=*hi).contains(&scan.argmin_angle))
        .or_else(|| omega.intervals.first())
        .ok_or_else(|| Error::Numerical("negative set is empty".into()))?;
    let width = hi - lo;
    let bump_spec = BumpSpec::new(lo + 0.5 * width, 0.35 * width, 1.0)?;
    let bump = build_bump(&omega, bump_spec)?;
    eprintln!(
        "[perturb] negative set {:?}, bump center {:.4} half-width {:.4} in {:.1?}",
        omega.intervals, bump_spec.center_angle, bump_spec.half_width, t.elapsed()
    );

    let t = std::time::Instant::now();
    let mut g = build_g(&bump, p.n, p.k, p.max_degree, &p.quad);
    if g.is_err() {
        g = build_g(&bump, p.n, p.k, 2 * p.max_degree, &p.quad);
    }
    let g = g?;
    let g = g.scaled(1.0 / g.sup_abs);
    let density = DensityF::new(built.l.clone(), p.k);
    let zhang_planes = subspace_sample(p.n, p.n - p.k, p.zhang_plane_count, p.seed ^ 0x5a)?;
    let zhang = zhang_check(&g, &density, &zhang_planes, &p.quad)?;
    eprintln!(
        "[perturb] pairing {:.6e}, max section integral {:.3e} in {:.1?}",
        zhang.pairing, zhang.max_section_integral, t.elapsed()
    );
    if !zhang.pass {
        return Err(Error::Numerical(format!(
            "perturbation checks failed: pairing {:.3e}, max section integral {:.3e}",
            zhang.pairing, zhang.max_section_integral
        )));
    }

    let t = std::time::Instant::now();
    let epsilon = choose_epsilon(&built.l, &g, p.eps_max, CONVEXITY_TOL, p.seed)?;
    let k_body = build_k_body(&built.l, &g, epsilon.epsilon)?;
    eprintln!(
        "[solve] epsilon {:.3e}, sup|alpha| {:.3e} in {:.1?}",
        epsilon.epsilon, epsilon.sup_alpha, t.elapsed()
    );

    let t = std::time::Instant::now();
    let report = certify_with_epsilon(
        &k_body,
        &built.l,
        p.k,
        p.plane_count,
        &p.quad,
        p.seed,
        epsilon.epsilon,
        epsilon.sup_alpha,
    )?;
    eprintln!("[certify] verdict {:?} in {:.1?}", report.verdict, t.elapsed());

    Ok(PipelineOutput {
        report,
        scan,
        omega,
        bump: bump_spec,
        zhang,
        epsilon,
        half_height: built.half_height,
    })
}
