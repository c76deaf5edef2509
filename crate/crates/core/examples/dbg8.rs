use porism::euler_cone::*;
use porism::sampling;
use nalgebra::{Matrix3, Unit};

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
    for &case in &[3usize, 16, 17, 19] {
        let tri = &tris[case];
        println!("=== case {case} excess {:.3}", tri.excess());
        let interior = tri.interior();
        for (l, signs) in [("+++", [1.0f64,1.0,1.0]), ("++-", [1.0f64,1.0,-1.0]), ("+-+", [1.0f64,-1.0,1.0]), ("+--", [1.0f64,-1.0,-1.0]), ("-++", [-1.0f64,1.0,1.0]), ("-+-", [-1.0f64,1.0,-1.0]), ("--+", [-1.0f64,-1.0,1.0]), ("---", [-1.0f64,-1.0,-1.0])] {
            let sols = debug_pseudo_solutions(tri, signs, 10);
            for (t, res) in &sols {
                let mut feet = Vec::new();
                let mut deg = false;
                for i in 0..3 {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    let p = tri.verts[j].into_inner();
                    let q = (tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p).normalize();
                    let raw = t[i].cos()*p + t[i].sin()*q;
                    for v in [tri.verts[j], tri.verts[k]] {
                        if raw.dot(&v).abs() > 1.0 - 1e-8 { deg = true; }
                    }
                    let f = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
                    feet.push(Unit::new_normalize(f));
                }
                if deg { continue; }
                let normals: Vec<_> = (0..3).map(|i| Unit::new_normalize(tri.verts[i].into_inner().cross(&feet[i].into_inner()))).collect();
                let (_, sv) = common_line(&normals);
                println!("  {l} t=({:.3},{:.3},{:.3}) res {:.0e} sv {:.1e}", t[0], t[1], t[2], res, sv);
            }
        }
    }
}
