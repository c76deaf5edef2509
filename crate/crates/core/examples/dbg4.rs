use porism::euler_cone::*;
use nalgebra::{Unit, Vector3};
type Vec3 = Vector3<f64>;

fn survey(tri: &SphericalTriangle, label: &str) {
    println!("=== {label}, excess {:.6}", tri.excess());
    let med: Vec<_> = (0..3).map(|i| mediator(tri, i).unwrap()).collect();
    let interior = tri.interior();
    for s0 in [1.0f64, -1.0] { for s1 in [1.0f64, -1.0] { for s2 in [1.0f64, -1.0] {
        let signs = [s0, s1, s2];
        let sols = debug_pseudo_solutions(tri, signs, 8);
        for (t, res) in &sols {
            let mut feet = Vec::new();
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let p = tri.verts[j].into_inner();
                let raw_q = tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p;
                let q = raw_q.normalize();
                let raw = t[i].cos() * p + t[i].sin() * q;
                let f = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
                feet.push(Unit::new_normalize(f));
            }
            // reject endpoint-degenerate
            let mut degenerate = false;
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                for v in [tri.verts[j], tri.verts[k]] {
                    if feet[i].dot(&v).abs() > 1.0 - 1e-9 { degenerate = true; }
                }
            }
            if degenerate { continue; }
            let normals: Vec<_> = (0..3).map(|i| {
                Unit::new_normalize(tri.verts[i].into_inner().cross(&feet[i].into_inner()))
            }).collect();
            let (_, sv) = common_line(&normals);
            let fs = FootSet {
                mediator_feet: [med[0].foot, med[1].foot, med[2].foot],
                altitude_feet: [feet[0], feet[1], feet[2]],
            };
            let fit = feet_cone(&fs, Vec3::zeros()).map(|(_, r)| r).unwrap_or(f64::INFINITY);
            println!("signs {:?} t=({:.4},{:.4},{:.4}) res {:.1e} sv {:.2e} feetfit {:.2e}", signs, t[0], t[1], t[2], res, sv, fit);
        }
    }}}
}

fn main() {
    // Small, nearly planar triangle around the z-axis.
    let tri_small = SphericalTriangle::new([
        Unit::new_normalize(Vec3::new(0.10, 0.02, 1.0)),
        Unit::new_normalize(Vec3::new(-0.07, 0.09, 1.0)),
        Unit::new_normalize(Vec3::new(0.01, -0.11, 1.0)),
    ]);
    survey(&tri_small, "small");
}
