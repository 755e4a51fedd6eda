use hyperball::body::{build_m_for_ft, CylinderCapsParams, SmoothingParams};
use hyperball::fourier::ft_norm_power;
use hyperball::geom::Direction;
use std::time::Instant;

fn main() {
    // axis negativity and trend
    for lambda in [0.05f64, 0.02] {
        let t = Instant::now();
        let params = CylinderCapsParams::new(3, lambda).unwrap();
        let sm = SmoothingParams::new(0.08, 0.0).unwrap();
        let built = build_m_for_ft(params, &sm).unwrap();
        let m = built.m.star_body();
        let v = ft_norm_power(&m, 1, &Direction::axis(3, 2)).unwrap();
        eprintln!("lambda={lambda}: N={:.4} ft(axis)={v:.6} [{} ms]", built.n_half_height.0, t.elapsed().as_millis());
    }
    // n=5 even branch on M
    {
        let params = CylinderCapsParams::new(5, 0.05).unwrap();
        let sm = SmoothingParams::new(0.08, 0.0).unwrap();
        let built = build_m_for_ft(params, &sm).unwrap();
        let m = built.m.star_body();
        let v = ft_norm_power(&m, 2, &Direction::axis(5, 4)).unwrap();
        let expected = -16.0 * std::f64::consts::PI.powi(3);
        eprintln!("n=5 q=2: ft = {v:.6} vs -16pi^3 = {expected:.6} (rel {:.2e})", (v-expected).abs()/expected.abs());
    }
    // scan shape (lambda = 0.02, strictified smoothing)
    let params = CylinderCapsParams::new(3, 0.02).unwrap();
    let sm = SmoothingParams::new(0.08, 1e-3).unwrap();
    let built = build_m_for_ft(params, &sm).unwrap();
    let m = built.m.star_body();
    for alpha in [0.0f64, 0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.8, 1.0, 1.2, 1.4, std::f64::consts::FRAC_PI_2] {
        let t = Instant::now();
        let xi = Direction::from_axis_angle(3, alpha);
        match ft_norm_power(&m, 1, &xi) {
            Ok(v) => eprintln!("alpha={alpha:.3}: ft = {v:.6}  [{} ms]", t.elapsed().as_millis()),
            Err(e) => eprintln!("alpha={alpha:.3}: ERROR {e}"),
        }
    }
}
