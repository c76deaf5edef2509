use porism::euler_cone::*;
use porism::sampling;
use nalgebra::{Matrix3, Unit, Vector3};
type Vec3 = Vector3<f64>;

fn newton_from_seeds(tri: &SphericalTriangle, signs: [f64; 3]) -> Option<([f64;3], f64)> {
    // replicate bases/seeds
    let mut bases = [(Vec3::zeros(), Vec3::zeros()); 3];
    let mut seeds = [0.0f64; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let p = tri.verts[j].into_inner();
        let rawq = tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p;
        let q = rawq.normalize();
        bases[i] = (p, q);
        let pole = tri.side_poles[i];
        let proj = tri.verts[i].into_inner() - tri.verts[i].dot(&pole) * pole.into_inner();
        let arc = p.cross(&tri.verts[k].into_inner()).norm().atan2(p.dot(&tri.verts[k].into_inner()));
        seeds[i] = if proj.norm() > 1e-9 {
            let u = proj.normalize();
            u.dot(&q).atan2(u.dot(&p))
        } else { arc / 2.0 };
    }
    let v = [tri.verts[0].into_inner(), tri.verts[1].into_inner(), tri.verts[2].into_inner()];
    let foot = |i: usize, t: f64| { let (p, q) = bases[i]; t.cos()*p + t.sin()*q };
    let dfoot = |i: usize, t: f64| { let (p, q) = bases[i]; -t.sin()*p + t.cos()*q };
    const QUADS: [(usize, usize, usize, usize); 3] = [(0,1,0,1),(0,2,0,2),(1,2,1,2)];
    let resid = |t: &[f64;3]| -> [f64;3] {
        let mut out = [0.0;3];
        for (qi,&(e1,e2,f1,f2)) in QUADS.iter().enumerate() {
            let base = v[e1];
            out[qi] = Matrix3::from_columns(&[signs[qi]*v[e2]-base, foot(f1,t[f1])-base, foot(f2,t[f2])-base]).determinant();
        }
        out
    };
    let mut t = seeds;
    for _ in 0..200 {
        let f = resid(&t);
        let fmax = f.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if fmax < 1e-15 { break; }
        let mut jac = Matrix3::zeros();
        for (qi,&(e1,e2,f1,f2)) in QUADS.iter().enumerate() {
            let base = v[e1];
            let col1 = signs[qi]*v[e2]-base;
            let cf1 = foot(f1,t[f1])-base;
            let cf2 = foot(f2,t[f2])-base;
            jac[(qi,f1)] = Matrix3::from_columns(&[col1, dfoot(f1,t[f1]), cf2]).determinant();
            jac[(qi,f2)] = Matrix3::from_columns(&[col1, cf1, dfoot(f2,t[f2])]).determinant();
        }
        let delta = jac.lu().solve(&Vec3::new(f[0],f[1],f[2]))?;
        for k in 0..3 { t[k] -= delta[k]; }
        if delta.amax() < 1e-16 { break; }
    }
    let f = resid(&t);
    let fmax = f.iter().map(|x| x.abs()).fold(0.0, f64::max);
    Some((t, fmax))
}

fn survey(tri: &SphericalTriangle, label: &str) {
    let med: Vec<_> = (0..3).map(|i| mediator(tri, i).unwrap()).collect();
    if let Some((t, res)) = newton_from_seeds(tri, [1.0,1.0,1.0]) {
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
        println!("{label}: pure-Newton +++ res {:.1e} sv {:.2e} feetfit {:.2e}", res, sv, fit);
    } else {
        println!("{label}: newton failed");
    }
}

fn main() {
    let tri_small = SphericalTriangle::new([
        Unit::new_normalize(Vec3::new(0.10, 0.02, 1.0)),
        Unit::new_normalize(Vec3::new(-0.07, 0.09, 1.0)),
        Unit::new_normalize(Vec3::new(0.01, -0.11, 1.0)),
    ]);
    survey(&tri_small, "small");
    let mut rng = sampling::instance_rng(7, "pseudo-alt", 0);
    for case in 0..8 {
        let tri = loop {
            let e = [sampling::random_dir(&mut rng), sampling::random_dir(&mut rng), sampling::random_dir(&mut rng)];
            let m = Matrix3::from_columns(&[e[0].into_inner(), e[1].into_inner(), e[2].into_inner()]);
            if m.determinant().abs() > 0.25 {
                let mut edges = e;
                if m.determinant() < 0.0 { edges.swap(1, 2); }
                break SphericalTriangle::new(edges);
            }
        };
        survey(&tri, &format!("random{case}"));
    }
}
