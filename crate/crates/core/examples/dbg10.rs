use porism::euler_cone::*;
use porism::sampling;
use nalgebra::{Matrix3, Unit, Vector3};
type Vec3 = Vector3<f64>;

fn feet_fit(tri: &SphericalTriangle, t: &[f64;3]) -> (f64, f64) {
    let med: Vec<_> = (0..3).map(|i| mediator(tri, i).unwrap()).collect();
    let interior = tri.interior();
    let mut feet = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let p = tri.verts[j].into_inner();
        let q = (tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p).normalize();
        let raw = t[i].cos()*p + t[i].sin()*q;
        let f = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
        feet.push(Unit::new_normalize(f));
    }
    let normals: Vec<_> = (0..3).map(|i| Unit::new_normalize(tri.verts[i].into_inner().cross(&feet[i].into_inner()))).collect();
    let (_, sv) = common_line(&normals);
    let fs = FootSet { mediator_feet: [med[0].foot, med[1].foot, med[2].foot], altitude_feet: [feet[0], feet[1], feet[2]] };
    let fit = feet_cone(&fs, Vec3::zeros()).map(|(_, r)| r).unwrap_or(f64::INFINITY);
    (sv, fit)
}

fn main() {
    let mut rng = sampling::instance_rng(7, "pseudo-alt", 0);
    let mut tris = Vec::new();
    for _ in 0..60 {
        let tri = loop {
            let e = [sampling::random_dir(&mut rng), sampling::random_dir(&mut rng), sampling::random_dir(&mut rng)];
            let m = Matrix3::from_columns(&[e[0].into_inner(), e[1].into_inner(), e[2].into_inner()]);
            if m.determinant().abs() > 0.25 {
                let mut edges = e;
                if m.determinant() < 0.0 { edges.swap(1, 2); }
                break SphericalTriangle::new(edges);
            }
        };
        tris.push(tri);
    }
    // case 3 solutions from the dense scan:
    let sols3: [[f64;3];2] = [[0.434, 0.264, 1.414], [0.488, 0.939, 0.701]];
    let sols17: [[f64;3];2] = [[1.807, 0.286, 0.887], [0.881, 2.795, 1.568]];
    for (case, sols) in [(3usize, sols3), (17, sols17)] {
        println!("=== case {case}");
        for s in sols {
            // polish with undamped newton first (reuse pseudo? just report raw)
            let (sv, fit) = feet_fit(&tris[case], &s);
            println!("  t=({:.3},{:.3},{:.3}) sv {:.1e} feetfit {:.2e}", s[0], s[1], s[2], sv, fit);
        }
    }
    // And for a tetra-derived trihedral: compare the found solution's feet fit.
    let mut rng2 = sampling::instance_rng(17, "euler-cone", 0);
    let t = sampling::random_tetrahedron(&mut rng2);
    let tri = TrihedralAngle::at_vertex(&t, 0).unwrap().triangle();
    let alts = pseudo_altitudes(&tri).unwrap();
    println!("tetra trihedral: residual {:.1e}", alts.residual);
    let tt = [0.0;3]; let _ = tt;
    let med: Vec<_> = (0..3).map(|i| mediator(&tri, i).unwrap()).collect();
    let fs = FootSet {
        mediator_feet: [med[0].foot, med[1].foot, med[2].foot],
        altitude_feet: [alts.cevians[0].foot, alts.cevians[1].foot, alts.cevians[2].foot],
    };
    let (_, fit) = feet_cone(&fs, Vec3::zeros()).unwrap();
    println!("tetra trihedral: feet fit {:.2e}", fit);
}
