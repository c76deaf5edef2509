use porism::euler_cone::*;
use porism::sampling;
use nalgebra::{Matrix3, Unit, Vector3};
type Vec3 = Vector3<f64>;

fn newton(tri: &SphericalTriangle, signs: [f64;3], seed: [f64;3]) -> ([f64;3], f64) {
    let mut bases = [(Vec3::zeros(), Vec3::zeros()); 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let p = tri.verts[j].into_inner();
        let q = (tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p).normalize();
        bases[i] = (p, q);
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
    let mut t = seed;
    for _ in 0..300 {
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
        let Some(delta) = jac.lu().solve(&Vec3::new(f[0],f[1],f[2])) else { break };
        for k in 0..3 { t[k] -= delta[k]; }
        if delta.amax() < 1e-16 { break; }
    }
    let f = resid(&t);
    (t, f.iter().map(|x| x.abs()).fold(0.0, f64::max))
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
    for &case in &[3usize, 17] {
        let tri = &tris[case];
        println!("=== case {case} excess {:.3}", tri.excess());
        let interior = tri.interior();
        let n = 10;
        let mut found: Vec<([f64;3], f64, f64)> = Vec::new();
        for a in 0..n { for b in 0..n { for c in 0..n {
            let seed = [a as f64 * 0.628, b as f64 * 0.628, c as f64 * 0.628];
            let (t, res) = newton(tri, [1.0,1.0,1.0], seed);
            if res > 1e-12 { continue; }
            let mut deg = false;
            let mut feet = Vec::new();
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let p = tri.verts[j].into_inner();
                let q = (tri.verts[k].into_inner() - tri.verts[k].dot(&tri.verts[j]) * p).normalize();
                let raw = t[i].cos()*p + t[i].sin()*q;
                for vv in [tri.verts[j], tri.verts[k]] {
                    if raw.dot(&vv).abs() > 1.0 - 1e-8 { deg = true; }
                }
                let f = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
                feet.push(Unit::new_normalize(f));
            }
            if deg { continue; }
            let normals: Vec<_> = (0..3).map(|i| Unit::new_normalize(tri.verts[i].into_inner().cross(&feet[i].into_inner()))).collect();
            let (_, sv) = common_line(&normals);
            let key = [t[0].rem_euclid(std::f64::consts::PI), t[1].rem_euclid(std::f64::consts::PI), t[2].rem_euclid(std::f64::consts::PI)];
            if !found.iter().any(|(kk, _, _)| (0..3).all(|i| (kk[i] - key[i]).abs() < 1e-6 || (kk[i]-key[i]).abs() > std::f64::consts::PI - 1e-6)) {
                found.push((key, res, sv));
            }
        }}}
        for (k, res, sv) in &found {
            println!("  +++ sol t~({:.3},{:.3},{:.3}) res {:.0e} sv {:.1e}", k[0], k[1], k[2], res, sv);
        }
    }
}
// (second pass appended below via a separate module is easier; rerun main with feet-fit check)
