use porism::euler_cone::*;
use nalgebra::{Matrix3, Unit, Vector3};
type Vec3 = Vector3<f64>;

fn main() {
    let tri = SphericalTriangle::new([
        Unit::new_normalize(Vec3::new(0.10, 0.02, 1.0)),
        Unit::new_normalize(Vec3::new(-0.07, 0.09, 1.0)),
        Unit::new_normalize(Vec3::new(0.01, -0.11, 1.0)),
    ]);
    // True spherical altitude feet.
    let mut feet = Vec::new();
    for i in 0..3 {
        let pole = tri.side_poles[i];
        let proj = tri.verts[i].into_inner() - tri.verts[i].dot(&pole) * pole.into_inner();
        feet.push(Unit::new_normalize(proj));
    }
    let v = [tri.verts[0].into_inner(), tri.verts[1].into_inner(), tri.verts[2].into_inner()];
    let f = [feet[0].into_inner(), feet[1].into_inner(), feet[2].into_inner()];
    let det4 = |p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3| {
        Matrix3::from_columns(&[p2 - p1, p3 - p1, p4 - p1]).determinant()
    };
    // Quadruples {a,b,h_a,h_b}, {a,c,h_a,h_c}, {b,c,h_b,h_c} with all signs +.
    println!("Q1 det at altitude feet: {:.3e}", det4(v[0], v[1], f[0], f[1]));
    println!("Q2 det at altitude feet: {:.3e}", det4(v[0], v[2], f[0], f[2]));
    println!("Q3 det at altitude feet: {:.3e}", det4(v[1], v[2], f[1], f[2]));
    // Altitude-feet concurrency of planes <a h_a>:
    let normals: Vec<_> = (0..3).map(|i| Unit::new_normalize(v[i].cross(&f[i]))).collect();
    let (_, sv) = common_line(&normals);
    println!("altitude plane concurrency sv: {:.3e}", sv);
}
