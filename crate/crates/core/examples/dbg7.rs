use porism::euler_cone::*;
use porism::sampling;
use porism::tetra::*;
use porism::tol::Tolerance;
use nalgebra::{Matrix3, Unit, Vector3};
type Vec3 = Vector3<f64>;

fn main() {
    // Regular tetrahedron first.
    let t = Tetrahedron::new([
        Vec3::new(1.0, 1.0, 1.0),
        Vec3::new(1.0, -1.0, -1.0),
        Vec3::new(-1.0, 1.0, -1.0),
        Vec3::new(-1.0, -1.0, 1.0),
    ]).unwrap();
    let tol = Tolerance::closed_form(t.scale);
    let ts = tangent_spheres(&t, &tol).unwrap();
    match euler_cone_at_vertex(&t, 0, &ts, 1e-7) {
        Ok(res) => {
            println!("regular: max sphere residual {:.3e}", res.max_sphere_residual());
            println!("  axis {:?} half {:.6}", res.cone.axis.into_inner().as_slice(), res.cone.half_angle);
            println!("  feet residual {:.3e} axis gap {:.3e} half gap {:.3e}", res.feet_residual, res.axis_angle_gap, res.half_angle_gap);
            println!("  per-sphere: {:?}", res.sphere_residuals.iter().map(|r| format!("{:.1e}", r)).collect::<Vec<_>>());
        }
        Err(e) => println!("regular: {e}"),
    }
    // Random trihedral failures.
    let mut rng = sampling::instance_rng(7, "pseudo-alt", 0);
    let mut fails = 0;
    for case in 0..60 {
        let tri = loop {
            let e = [sampling::random_dir(&mut rng), sampling::random_dir(&mut rng), sampling::random_dir(&mut rng)];
            let m = Matrix3::from_columns(&[e[0].into_inner(), e[1].into_inner(), e[2].into_inner()]);
            if m.determinant().abs() > 0.25 {
                let mut edges = e;
                if m.determinant() < 0.0 { edges.swap(1, 2); }
                break SphericalTriangle::new(edges);
            }
        };
        match pseudo_altitudes(&tri) {
            Ok(a) => {
                let normals: Vec<_> = a.cevians.iter().map(|c| c.plane_normal).collect();
                let (_, sv) = common_line(&normals);
                if sv > 1e-8 || a.residual > 1e-11 || a.cluster_spread > 1e-9 {
                    println!("case {case}: res {:.1e} spread {:.1e} sv {:.1e} excess {:.3}", a.residual, a.cluster_spread, sv, tri.excess());
                    fails += 1;
                }
            }
            Err(e) => { println!("case {case}: ERR {e} (excess {:.3})", tri.excess()); fails += 1; }
        }
    }
    println!("total bad: {fails}/60");
}
