use hyperball::body::{build_m_for_ft, CylinderCapsParams, SmoothingParams};
use hyperball::fourier::ParallelSectionFn;
use hyperball::geom::Direction;
use std::time::Instant;

fn main() {
    let params = CylinderCapsParams::new(3, 0.02).unwrap();
    let sm = SmoothingParams::new(0.08, 1e-3).unwrap();
    let built = build_m_for_ft(params, &sm).unwrap();
    let m = built.m.star_body();
    let xi = Direction::from_axis_angle(3, 0.8);
    let a = ParallelSectionFn::new(&m, &xi).unwrap();
    eprintln!("zmax = {:.6}", a.z_max());
    let t = Instant::now();
    let grid = 2000;
    let mut prev = 0.0f64;
    let mut max_jump = 0.0f64;
    let mut max_jump_z = 0.0f64;
    for i in 0..=grid {
        let z = a.z_max() * i as f64 / grid as f64;
        let v = a.eval(z).unwrap();
        if i > 0 {
            let jump = (v - prev).abs();
            if jump > max_jump { max_jump = jump; max_jump_z = z; }
        }
        prev = v;
    }
    eprintln!("2001 evals in {:.1?}; max consecutive jump {max_jump:.6} at z={max_jump_z:.4}", t.elapsed());
    // noise test at a few z: evaluate at z and z+1e-12
    for frac in [0.1, 0.3, 0.5, 0.7, 0.9, 0.97] {
        let z = a.z_max() * frac;
        let v1 = a.eval(z).unwrap();
        let v2 = a.eval(z + 1e-12).unwrap();
        let v3 = a.eval(z + 1e-9).unwrap();
        eprintln!("z={z:.4}: A={v1:.10}, dA(1e-12)={:.3e}, dA(1e-9)={:.3e}", v2-v1, v3-v1);
    }
}
