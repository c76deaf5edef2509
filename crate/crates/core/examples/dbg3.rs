use porism::euler_cone::*;
use porism::sampling;
use nalgebra::{Matrix3, Unit};

fn main() {
    let mut rng = sampling::instance_rng(7, "pseudo-alt", 0);
    for case in 0..3 {
        let tri = loop {
            let e = [sampling::random_dir(&mut rng), sampling::random_dir(&mut rng), sampling::random_dir(&mut rng)];
            let m = Matrix3::from_columns(&[e[0].into_inner(), e[1].into_inner(), e[2].into_inner()]);
            if m.determinant().abs() > 0.25 {
                let mut edges = e;
                if m.determinant() < 0.0 { edges.swap(1, 2); }
                break SphericalTriangle::new(edges);
            }
        };
        println!("=== case {case}, excess {:.4}", tri.excess());
        let med: Vec<_> = (0..3).map(|i| mediator(&tri, i).unwrap()).collect();
        for s0 in [1.0f64, -1.0] { for s1 in [1.0f64, -1.0] { for s2 in [1.0f64, -1.0] {
            let signs = [s0, s1, s2];
            let sols = debug_pseudo_solutions(&tri, signs, 6);
            for (t, res) in &sols {
                // Reconstruct feet and measure concurrency + feet-cone fit.
                let mut feet = Vec::new();
                let interior = tri.interior();
                let mut ok = true;
                for i in 0..3 {
                    let (p, q, arc) = {
                        // re-derive side basis
                        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                        let pp = tri.verts[j].into_inner();
                        let raw = tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * pp;
                        let qq = raw.normalize();
                        let arc = pp.cross(&tri.verts[k].into_inner()).norm().atan2(pp.dot(&tri.verts[k].into_inner()));
                        (pp, qq, arc)
                    };
                    // skip near endpoints
                    let d0 = {
                        let mut d = (t[i] - 0.0).rem_euclid(2.0*std::f64::consts::PI);
                        if d > std::f64::consts::PI { d = 2.0*std::f64::consts::PI - d; }
                        d.min((d - std::f64::consts::PI).abs())
                    };
                    let da = {
                        let mut d = (t[i] - arc).rem_euclid(2.0*std::f64::consts::PI);
                        if d > std::f64::consts::PI { d = 2.0*std::f64::consts::PI - d; }
                        d.min((d - std::f64::consts::PI).abs())
                    };
                    if d0 < 1e-5 || da < 1e-5 { ok = false; }
                    let raw = t[i].cos() * p + t[i].sin() * q;
                    let f = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
                    feet.push(Unit::new_normalize(f));
                }
                if !ok { continue; }
                let normals: Vec<_> = (0..3).map(|i| {
                    Unit::new_normalize(tri.verts[i].into_inner().cross(&feet[i].into_inner()))
                }).collect();
                let (_, sv) = common_line(&normals);
                let fs = FootSet {
                    mediator_feet: [med[0].foot, med[1].foot, med[2].foot],
                    altitude_feet: [feet[0], feet[1], feet[2]],
                };
                let fit = feet_cone(&fs, porism::geom::Vec3::zeros()).map(|(_, r)| r).unwrap_or(f64::INFINITY);
                println!("signs {:?} t=({:.4},{:.4},{:.4}) res {:.1e} sv {:.2e} feetfit {:.2e}", signs, t[0], t[1], t[2], res, sv, fit);
            }
        }}}
    }
}
