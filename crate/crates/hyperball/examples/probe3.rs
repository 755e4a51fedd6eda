use hyperball::body::{build_m_for_ft, CylinderCapsParams, SmoothingParams};
use hyperball::fourier::{debug_oblique_intervals, ParallelSectionFn};
use hyperball::geom::Direction;

fn main() {
    let params = CylinderCapsParams::new(3, 0.02).unwrap();
    let sm = SmoothingParams::new(0.08, 1e-3).unwrap();
    let built = build_m_for_ft(params, &sm).unwrap();
    let m = built.m.star_body();
    let xi = Direction::from_axis_angle(3, 0.8);
    let a = ParallelSectionFn::new(&m, &xi).unwrap();
    let z0 = a.z_max() * 0.3;
    for z in [z0, z0 + 1e-12] {
        let info = debug_oblique_intervals(&m, &xi, z).unwrap();
        eprintln!("z = {z:.17} A = {:.12}", a.eval(z).unwrap());
        for (lo, hi, lo_root, hi_root, contrib) in info {
            eprintln!("  [{lo:.14}, {hi:.14}] roots ({lo_root},{hi_root}) contrib {contrib:.12}");
        }
    }
}
