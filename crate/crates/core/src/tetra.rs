//! The eight tangent spheres of a tetrahedron, their vertex-homothetic
//! pairing, the sixteen Grace spheres, and the associated metric relations
//! (tangency-point radii and the sphere-angle cosine product).
//!
//! Face `i` is the face opposite vertex `i`; its outward normal points away
//! from vertex `i`. A tangent sphere touches all four face planes; with
//! outward normals its signed pattern is `n_i . x - d_i = -eps_i r`, so the
//! insphere is `(+,+,+,+)` and the exsphere beyond face `i` has `-1` at `i`.

use crate::apollonius::{
    m_class, spheres_through_circle_tangent_to, PencilMember, RefObject, TangencyClass,
};
use crate::error::{GeomError, Result};
use crate::geom::{
    tangent_point, Circle3, Plane, Point3, Sphere, Vec3,
};
use crate::tol::Tolerance;
use nalgebra::{Matrix4, Unit, Vector4};

/// Tetrahedron with derived face data.
#[derive(Debug, Clone)]
pub struct Tetrahedron {
    pub vertices: [Point3; 4],
    /// Face `i` is opposite vertex `i`, outward unit normal.
    pub faces: [Plane; 4],
    pub face_areas: [f64; 4],
    pub volume: f64,
    /// Configuration diameter: maximum pairwise vertex distance.
    pub scale: f64,
}

impl Tetrahedron {
    pub fn new(vertices: [Point3; 4]) -> Result<Self> {
        let scale = {
            let mut m: f64 = 0.0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    m = m.max((vertices[i] - vertices[j]).norm());
                }
            }
            m
        };
        if scale <= 0.0 {
            return Err(GeomError::Degenerate("coincident vertices".into()));
        }
        let e1 = vertices[1] - vertices[0];
        let e2 = vertices[2] - vertices[0];
        let e3 = vertices[3] - vertices[0];
        let det = e1.cross(&e2).dot(&e3);
        let volume = det.abs() / 6.0;
        if volume <= 1e-12 * scale * scale * scale {
            return Err(GeomError::Degenerate("flat tetrahedron".into()));
        }
        let mut faces = [Plane::from_point_normal(Vec3::zeros(), Unit::new_normalize(Vec3::z())); 4];
        let mut face_areas = [0.0; 4];
        for i in 0..4 {
            let idx: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let (a, b, c) = (vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]);
            let n = (b - a).cross(&(c - a));
            face_areas[i] = n.norm() / 2.0;
            let mut normal = Unit::new_normalize(n);
            // Outward: away from the opposite vertex.
            if normal.dot(&(vertices[i] - a)) > 0.0 {
                normal = -normal;
            }
            faces[i] = Plane::from_point_normal(a, normal);
        }
        Ok(Tetrahedron { vertices, faces, face_areas, volume, scale })
    }
}

/// Sign vector of a tangent sphere, canonicalized so the first entry is +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector(pub [i8; 4]);

/// The three classes of tangent spheres.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereClass {
    Insphere,
    /// Exsphere beyond face `i`.
    Exsphere(usize),
    /// Twice-exscribed ("goof") sphere; the two indices are the minus
    /// positions of the canonical representative.
    Goof(usize, usize),
}

impl SignVector {
    pub fn canonical(mut v: [i8; 4]) -> Self {
        if v[0] < 0 {
            for e in &mut v {
                *e = -*e;
            }
        }
        SignVector(v)
    }

    /// All eight canonical sign vectors, insphere first.
    pub fn all() -> [SignVector; 8] {
        let mut out = [SignVector([1; 4]); 8];
        let mut k = 0;
        for b in 0..16u8 {
            let v = [
                1i8,
                if b & 1 == 0 { 1 } else { -1 },
                if b & 2 == 0 { 1 } else { -1 },
                if b & 4 == 0 { 1 } else { -1 },
            ];
            if b < 8 {
                out[k] = SignVector(v);
                k += 1;
            }
        }
        out.sort_by_key(|s| s.0.iter().filter(|&&e| e < 0).count());
        out
    }

    pub fn class(&self) -> SphereClass {
        let minus: Vec<usize> = (0..4).filter(|&i| self.0[i] < 0).collect();
        match minus.len() {
            0 => SphereClass::Insphere,
            1 => SphereClass::Exsphere(minus[0]),
            2 => SphereClass::Goof(minus[0], minus[1]),
            3 => SphereClass::Exsphere((0..4).find(|&i| self.0[i] > 0).unwrap()),
            _ => unreachable!("canonical sign vectors have at most 3 minuses"),
        }
    }

    /// Flip one coordinate and re-canonicalize.
    pub fn flip(&self, i: usize) -> SignVector {
        let mut v = self.0;
        v[i] = -v[i];
        SignVector::canonical(v)
    }

    /// Whether the two classes differ in exactly one coordinate modulo a
    /// global sign flip; returns that coordinate.
    pub fn pair_coordinate(&self, other: &SignVector) -> Option<usize> {
        let diff: Vec<usize> = (0..4).filter(|&i| self.0[i] != other.0[i]).collect();
        match diff.len() {
            1 => Some(diff[0]),
            3 => (0..4).find(|i| !diff.contains(i)),
            _ => None,
        }
    }
}

/// One realized tangent sphere.
#[derive(Debug, Clone, Copy)]
pub struct TangentSphere {
    pub sign: SignVector,
    pub sphere: Sphere,
    /// Geometric tangency pattern: `sign(d_i - n_i . x)` per face; equal to
    /// the canonical sign vector or its negation.
    pub geometric_sign: [i8; 4],
    /// Maximum per-face tangency residual (length).
    pub residual: f64,
}

/// Map from canonical sign vectors to realized tangent spheres; an entry is
/// absent exactly when the signed area sum vanishes.
#[derive(Debug, Clone)]
pub struct TangentSphereSet {
    pub entries: Vec<TangentSphere>,
    /// Sign vectors skipped because `|sum eps_i S_i|` fell below threshold.
    pub absent: Vec<SignVector>,
    /// Sign vectors near the absence threshold, flagged as ill-conditioned.
    pub ill_conditioned: Vec<SignVector>,
}

impl TangentSphereSet {
    pub fn get(&self, sign: &SignVector) -> Option<&TangentSphere> {
        self.entries.iter().find(|e| e.sign == *sign)
    }

    /// Entry whose sphere matches the given one within tolerance.
    pub fn find_matching(&self, s: &Sphere, tol: &Tolerance) -> Option<&TangentSphere> {
        self.entries.iter().find(|e| {
            (e.sphere.center - s.center).norm() <= 1e3 * tol.len()
                && (e.sphere.r - s.r).abs() <= 1e3 * tol.len()
        })
    }
}

/// All tangent spheres of a tetrahedron.
///
/// For each canonical sign vector the radius follows from
/// `r = 3V / sum(eps_i S_i)` (a consequence of `sum S_i n_i = 0`); the
/// center and radius together solve the 4x4 linear system
/// `n_i . x + eps_i r = d_i`. A negative solved radius means the geometric
/// pattern is the negation of the canonical representative.
pub fn tangent_spheres(t: &Tetrahedron, tol: &Tolerance) -> Result<TangentSphereSet> {
    let mut set = TangentSphereSet { entries: Vec::new(), absent: Vec::new(), ill_conditioned: Vec::new() };
    let absent_threshold = tol.pow().max(1e-12 * t.scale * t.scale);
    for sign in SignVector::all() {
        let denom: f64 = (0..4).map(|i| sign.0[i] as f64 * t.face_areas[i]).sum();
        if denom.abs() <= absent_threshold {
            set.absent.push(sign);
            continue;
        }
        if denom.abs() <= 100.0 * absent_threshold {
            set.ill_conditioned.push(sign);
        }
        let mut m = Matrix4::zeros();
        let mut rhs = Vector4::zeros();
        for i in 0..4 {
            let n = t.faces[i].normal.into_inner();
            m[(i, 0)] = n.x;
            m[(i, 1)] = n.y;
            m[(i, 2)] = n.z;
            m[(i, 3)] = sign.0[i] as f64;
            rhs[i] = t.faces[i].d;
        }
        let sol = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| GeomError::Degenerate("tangent-sphere system singular".into()))?;
        let center = Vec3::new(sol[0], sol[1], sol[2]);
        let r_signed = sol[3];
        let radius = r_signed.abs();
        let closed_form = 3.0 * t.volume / denom;
        debug_assert!((closed_form - r_signed).abs() <= 1e-6 * t.scale);
        if radius <= tol.len() {
            set.absent.push(sign);
            continue;
        }
        let mut geometric_sign = [0i8; 4];
        let mut residual: f64 = 0.0;
        for i in 0..4 {
            let sd = t.faces[i].signed_distance(center);
            geometric_sign[i] = if sd <= 0.0 { 1 } else { -1 };
            residual = residual.max((sd.abs() - radius).abs());
        }
        set.entries.push(TangentSphere {
            sign,
            sphere: Sphere::new(center, radius),
            geometric_sign,
            residual,
        });
    }
    Ok(set)
}

/// A vertex-homothetic pair of tangent spheres.
#[derive(Debug, Clone, Copy)]
pub struct GracePair {
    pub first: SignVector,
    pub second: SignVector,
    /// Coordinate (= face index) at which the pair differs.
    pub face_index: usize,
    /// The homothety center is the vertex opposite that face.
    pub homothety_vertex: usize,
    /// Signed homothety coefficient mapping `first` to `second`.
    pub k: f64,
    /// Collinearity residual of the two centers with the vertex (length).
    pub collinearity_residual: f64,
}

/// All homothetic pairs among the present tangent spheres (sixteen when all
/// eight spheres exist). Pairs always join the group {insphere, goofs} with
/// the group {exspheres}.
pub fn grace_pairs(ts: &TangentSphereSet, t: &Tetrahedron) -> Result<Vec<GracePair>> {
    let mut out = Vec::new();
    for (ai, a) in ts.entries.iter().enumerate() {
        for b in ts.entries.iter().skip(ai + 1) {
            let Some(face_index) = a.sign.pair_coordinate(&b.sign) else {
                continue;
            };
            let group = |s: &SignVector| matches!(s.class(), SphereClass::Insphere | SphereClass::Goof(_, _));
            if group(&a.sign) == group(&b.sign) {
                return Err(GeomError::TheoremViolation {
                    check: "grace pairs must cross sphere groups".into(),
                    residual: f64::INFINITY,
                });
            }
            let v = t.vertices[face_index];
            let wa = a.sphere.center - v;
            let wb = b.sphere.center - v;
            let k_mag = b.sphere.r / a.sphere.r;
            let k = if wa.dot(&wb) >= 0.0 { k_mag } else { -k_mag };
            let collinearity_residual = (wb - k * wa).norm();
            out.push(GracePair {
                first: a.sign,
                second: b.sign,
                face_index,
                homothety_vertex: face_index,
                k,
                collinearity_residual,
            });
        }
    }
    Ok(out)
}

/// A Grace sphere: through the three vertices of the pair's face, tangent to
/// both pair members.
#[derive(Debug, Clone)]
pub struct GraceSphere {
    pub pair: GracePair,
    pub face_index: usize,
    pub sphere: Sphere,
    /// Tangency points with the two pair members.
    pub touch_first: Point3,
    pub touch_second: Point3,
    /// Residuals: through-vertices (max over 3), tangency to first, second.
    pub vertex_residual: f64,
    pub tangency_residuals: (f64, f64),
    /// Set when the class rule admitted two candidates; the reported sphere
    /// is the one with the smaller tangency residual to the second member.
    pub ambiguous: bool,
}

/// Circumcircle of face `i` of a tetrahedron.
pub fn face_circumcircle(t: &Tetrahedron, i: usize) -> Result<Circle3> {
    let idx: Vec<usize> = (0..4).filter(|&j| j != i).collect();
    Circle3::circumcircle(t.vertices[idx[0]], t.vertices[idx[1]], t.vertices[idx[2]])
}

/// Construct the Grace sphere of a homothetic pair.
///
/// Candidates are the members of the sphere pencil through the face's
/// circumcircle tangent to the first pair member; the selected candidate is
/// the one whose tangency class w.r.t. the pair differs from the class of
/// the face plane itself, and it must also touch the second member.
pub fn grace_sphere(
    t: &Tetrahedron,
    ts: &TangentSphereSet,
    pair: &GracePair,
    tol: &Tolerance,
) -> Result<GraceSphere> {
    let first = ts.get(&pair.first).ok_or_else(|| GeomError::Degenerate("pair member absent".into()))?;
    let second = ts.get(&pair.second).ok_or_else(|| GeomError::Degenerate("pair member absent".into()))?;
    let circ = face_circumcircle(t, pair.face_index)?;
    let candidates = spheres_through_circle_tangent_to(&circ, &first.sphere, tol)?;

    let loose = tol.with_rel((1e-6f64).max(tol.rel));
    let ref2 = RefObject::Sphere(second.sphere);
    let plane_member = PencilMember::Plane(t.faces[pair.face_index]);
    let plane_class = m_class(&plane_member, &first.sphere, &ref2, &loose)?;

    let mut selected: Vec<(Sphere, TangencyClass, f64)> = Vec::new();
    for (member, _) in &candidates {
        let PencilMember::Sphere(cand) = member else { continue };
        let Ok(class) = m_class(member, &first.sphere, &ref2, &loose) else {
            continue;
        };
        if class.sign == plane_class.sign {
            continue;
        }
        let d = (cand.center - second.sphere.center).norm();
        let gap = (d - (cand.r + second.sphere.r))
            .abs()
            .min((d - (cand.r - second.sphere.r).abs()).abs());
        selected.push((*cand, class, gap));
    }
    selected.sort_by(|a, b| a.2.total_cmp(&b.2));
    let Some((sphere, _, second_gap)) = selected.first().copied() else {
        return Err(GeomError::TheoremViolation {
            check: "grace sphere: no pencil candidate in the opposite class touches both members"
                .into(),
            residual: f64::INFINITY,
        });
    };

    let d1 = (sphere.center - first.sphere.center).norm();
    let first_gap = (d1 - (sphere.r + first.sphere.r))
        .abs()
        .min((d1 - (sphere.r - first.sphere.r).abs()).abs());
    let idx: Vec<usize> = (0..4).filter(|&j| j != pair.face_index).collect();
    let vertex_residual = idx
        .iter()
        .map(|&j| sphere.surface_distance(t.vertices[j]).abs())
        .fold(0.0, f64::max);
    Ok(GraceSphere {
        pair: *pair,
        face_index: pair.face_index,
        sphere,
        touch_first: tangent_point(&sphere, &first.sphere),
        touch_second: tangent_point(&sphere, &second.sphere),
        vertex_residual,
        tangency_residuals: (first_gap, second_gap),
        ambiguous: selected.len() > 1,
    })
}

/// Residuals of the tangency-point radius relations for a Grace sphere.
///
/// With `Sigma` the face circumcircle, `F` the touch point of a pair member
/// with the face plane and `S` the matching pole of the Grace sphere in the
/// direction normal to the face, the member radius is
/// `|power_Sigma(F)| / (2 dist(S, plane))`. The two poles also satisfy
/// `dist(S1, plane) * dist(S2, plane) = R^2`.
#[derive(Debug, Clone, Copy)]
pub struct GraceRadiiResiduals {
    pub first: f64,
    pub second: f64,
    /// `|h1 * h2 - R^2|` (power units).
    pub product: f64,
}

pub fn grace_radii_check(
    t: &Tetrahedron,
    ts: &TangentSphereSet,
    g: &GraceSphere,
    tol: &Tolerance,
) -> Result<GraceRadiiResiduals> {
    let plane = t.faces[g.face_index];
    let circ = face_circumcircle(t, g.face_index)?;
    let n = plane.normal.into_inner();
    let poles = [g.sphere.center + g.sphere.r * n, g.sphere.center - g.sphere.r * n];

    let member_residual = |sign: &SignVector, touch_grace: Point3| -> Result<f64> {
        let member = ts.get(sign).ok_or_else(|| GeomError::Degenerate("member absent".into()))?;
        let sd = plane.signed_distance(member.sphere.center);
        if (sd.abs() - member.sphere.r).abs() > 1e3 * tol.len() {
            return Err(GeomError::Degenerate("pair member not tangent to the face plane".into()));
        }
        let f = member.sphere.center - sd * n;
        // The matching pole is the one collinear with the two touch points.
        let line = crate::geom::Line3::through(f, touch_grace)
            .map_err(|_| GeomError::Degenerate("coincident touch points".into()))?;
        let which = if line.distance(poles[0]) <= line.distance(poles[1]) { 0 } else { 1 };
        let h = plane.distance(poles[which]);
        let pw = crate::geom::power_of_point_circle(f, &circ, tol)?;
        Ok((member.sphere.r - pw.abs() / (2.0 * h)).abs())
    };

    let first = member_residual(&g.pair.first, g.touch_first)?;
    let second = member_residual(&g.pair.second, g.touch_second)?;
    let h1 = plane.distance(poles[0]);
    let h2 = plane.distance(poles[1]);
    let product = (h1 * h2 - circ.r * circ.r).abs();
    Ok(GraceRadiiResiduals { first, second, product })
}

/// Residual of the sphere-angle cosine product identity for a pair: the
/// product of the cosines of the angles the face's circum-diametral sphere
/// makes with the two members equals the sign of the homothety coefficient.
pub fn cos_product_check(t: &Tetrahedron, ts: &TangentSphereSet, pair: &GracePair) -> Result<f64> {
    let first = ts.get(&pair.first).ok_or_else(|| GeomError::Degenerate("member absent".into()))?;
    let second = ts.get(&pair.second).ok_or_else(|| GeomError::Degenerate("member absent".into()))?;
    let circ = face_circumcircle(t, pair.face_index)?;
    let diametral = Sphere::new(circ.center, circ.r);
    let c1 = crate::geom::sphere_angle_cos(&diametral, &first.sphere);
    let c2 = crate::geom::sphere_angle_cos(&diametral, &second.sphere);
    Ok((c1 * c2 - pair.k.signum()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn regular() -> Tetrahedron {
        Tetrahedron::new([
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn regular_tetrahedron_sphere_inventory() {
        let t = regular();
        let tol = Tolerance::closed_form(t.scale);
        let ts = tangent_spheres(&t, &tol).unwrap();
        assert_eq!(ts.entries.len(), 5, "insphere + 4 exspheres");
        assert_eq!(ts.absent.len(), 3, "goof spheres absent for equal face areas");
        let r_in = 1.0 / 3.0f64.sqrt();
        let ins = ts.get(&SignVector([1, 1, 1, 1])).unwrap();
        assert!((ins.sphere.r - r_in).abs() < 1e-12);
        assert!(ins.sphere.center.norm() < 1e-12);
        for e in &ts.entries {
            if e.sign.class() != SphereClass::Insphere {
                assert!((e.sphere.r - 2.0 * r_in).abs() < 1e-12, "exsphere radius 2/sqrt(3)");
            }
            assert!(e.residual < 1e-12 * t.scale);
        }
    }

    #[test]
    fn insphere_radius_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t = sampling::random_tetrahedron(&mut rng);
            let tol = Tolerance::closed_form(t.scale);
            let ts = tangent_spheres(&t, &tol).unwrap();
            let ins = ts.get(&SignVector([1, 1, 1, 1])).unwrap();
            let sum: f64 = t.face_areas.iter().sum();
            assert!((ins.sphere.r - 3.0 * t.volume / sum).abs() < 1e-10 * t.scale);
        }
    }

    #[test]
    fn tangency_residuals_on_random_tetrahedra() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let t = sampling::random_tetrahedron(&mut rng);
            let tol = Tolerance::closed_form(t.scale);
            let ts = tangent_spheres(&t, &tol).unwrap();
            assert_eq!(ts.entries.len(), 8, "generic tetrahedra have all eight spheres");
            for e in &ts.entries {
                assert!(e.residual <= 1e-9 * t.scale);
            }
        }
    }

    #[test]
    fn sign_vector_classes() {
        assert_eq!(SignVector([1, 1, 1, 1]).class(), SphereClass::Insphere);
        assert_eq!(SignVector([1, -1, 1, 1]).class(), SphereClass::Exsphere(1));
        assert_eq!(SignVector([1, -1, -1, -1]).class(), SphereClass::Exsphere(0));
        assert_eq!(SignVector([1, -1, -1, 1]).class(), SphereClass::Goof(1, 2));
        assert_eq!(SignVector::canonical([-1, 1, 1, 1]).class(), SphereClass::Exsphere(0));
    }

    #[test]
    fn pair_coordinate_mod_flip() {
        let ins = SignVector([1, 1, 1, 1]);
        let ex0 = SignVector([1, -1, -1, -1]);
        assert_eq!(ins.pair_coordinate(&ex0), Some(0));
        let ex1 = SignVector([1, -1, 1, 1]);
        assert_eq!(ins.pair_coordinate(&ex1), Some(1));
        let goof12 = SignVector([1, -1, -1, 1]);
        assert_eq!(ex1.pair_coordinate(&goof12), Some(2));
        // Same group: no pairing.
        assert_eq!(ins.pair_coordinate(&goof12), None);
        assert_eq!(ex0.pair_coordinate(&ex1), None);
    }

    #[test]
    fn grace_pair_counts() {
        let t = regular();
        let tol = Tolerance::closed_form(t.scale);
        let ts = tangent_spheres(&t, &tol).unwrap();
        let pairs = grace_pairs(&ts, &t).unwrap();
        assert_eq!(pairs.len(), 4, "regular tetrahedron: insphere with each exsphere");

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = sampling::random_tetrahedron(&mut rng);
        let tol = Tolerance::closed_form(t.scale);
        let ts = tangent_spheres(&t, &tol).unwrap();
        let pairs = grace_pairs(&ts, &t).unwrap();
        assert_eq!(pairs.len(), 16);
        for face in 0..4 {
            assert_eq!(pairs.iter().filter(|p| p.face_index == face).count(), 4);
        }
        for p in &pairs {
            assert!(p.collinearity_residual < 1e-9 * t.scale);
        }
    }

    #[test]
    fn grace_spheres_touch_both_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let t = sampling::random_tetrahedron(&mut rng);
            let tol = Tolerance::closed_form(t.scale);
            let ts = tangent_spheres(&t, &tol).unwrap();
            for pair in grace_pairs(&ts, &t).unwrap() {
                let g = grace_sphere(&t, &ts, &pair, &tol).unwrap();
                assert!(g.vertex_residual <= 1e-9 * t.scale, "passes through the face vertices");
                assert!(g.tangency_residuals.0 <= 1e-8 * t.scale);
                assert!(g.tangency_residuals.1 <= 1e-8 * t.scale);
            }
        }
    }

    #[test]
    fn grace_touch_points_align_with_similitude_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = sampling::random_tetrahedron(&mut rng);
        let tol = Tolerance::closed_form(t.scale);
        let ts = tangent_spheres(&t, &tol).unwrap();
        for pair in grace_pairs(&ts, &t).unwrap() {
            let g = grace_sphere(&t, &ts, &pair, &tol).unwrap();
            let line = crate::geom::Line3::through(g.touch_first, g.touch_second).unwrap();
            // The homothety vertex is a similitude center of the pair; the
            // chord of tangency points passes through it.
            let v = t.vertices[pair.homothety_vertex];
            assert!(line.distance(v) <= 1e-7 * t.scale);
        }
    }

    #[test]
    fn grace_radii_and_product_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let t = sampling::random_tetrahedron(&mut rng);
            let tol = Tolerance::closed_form(t.scale);
            let ts = tangent_spheres(&t, &tol).unwrap();
            for pair in grace_pairs(&ts, &t).unwrap() {
                let g = grace_sphere(&t, &ts, &pair, &tol).unwrap();
                let rr = grace_radii_check(&t, &ts, &g, &tol).unwrap();
                assert!(rr.first <= 1e-8 * t.scale, "radius relation, first member: {}", rr.first);
                assert!(rr.second <= 1e-8 * t.scale, "radius relation, second member: {}", rr.second);
                assert!(rr.product <= 1e-9 * t.scale * t.scale, "pole-height product: {}", rr.product);
            }
        }
    }

    #[test]
    fn cos_product_is_sign_of_homothety() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut saw_positive = false;
        let mut saw_negative = false;
        for _ in 0..30 {
            let t = sampling::random_tetrahedron(&mut rng);
            let tol = Tolerance::closed_form(t.scale);
            let ts = tangent_spheres(&t, &tol).unwrap();
            for pair in grace_pairs(&ts, &t).unwrap() {
                let res = cos_product_check(&t, &ts, &pair).unwrap();
                assert!(res <= 1e-8, "cosine product residual {res}");
                if pair.k > 0.0 {
                    saw_positive = true;
                } else {
                    saw_negative = true;
                }
            }
        }
        assert!(saw_positive && saw_negative, "both homothety signs exercised");
    }

    #[test]
    fn similarity_invariance_of_tangent_spheres() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let t = sampling::random_tetrahedron(&mut rng);
        let tol = Tolerance::closed_form(t.scale);
        let ts = tangent_spheres(&t, &tol).unwrap();
        let rot = nalgebra::Rotation3::from_axis_angle(&Unit::new_normalize(Vec3::new(1.0, 2.0, -0.5)), 0.83);
        let s = 2.5;
        let shift = Vec3::new(3.0, -1.0, 2.0);
        let mapped = Tetrahedron::new([
            rot * (s * t.vertices[0]) + shift,
            rot * (s * t.vertices[1]) + shift,
            rot * (s * t.vertices[2]) + shift,
            rot * (s * t.vertices[3]) + shift,
        ])
        .unwrap();
        let ts2 = tangent_spheres(&mapped, &tol.with_scale(mapped.scale)).unwrap();
        for e in &ts.entries {
            let m = ts2.get(&e.sign).unwrap();
            let expect_c = rot * (s * e.sphere.center) + shift;
            assert!((m.sphere.center - expect_c).norm() < 1e-9 * mapped.scale);
            assert!((m.sphere.r - s * e.sphere.r).abs() < 1e-9 * mapped.scale);
        }
    }

    #[test]
    fn flat_tetrahedron_rejected() {
        let e = Tetrahedron::new([
            Vec3::zeros(),
            Vec3::x(),
            Vec3::y(),
            Vec3::new(0.3, 0.7, 0.0),
        ]);
        assert!(e.is_err());
    }

    #[test]
    fn grace_sphere_far_vertex_limit_is_circumdiametral() {
        // Pushing the apex far away turns the insphere into a lifted-incircle
        // sphere and the Grace sphere of the (insphere, far exsphere) pair
        // approaches the diametral sphere of the base circumcircle.
        let h = 2000.0;
        let base = [
            Vec3::new(0.0, 3.0, 0.0),
            Vec3::new(4.0, 0.0, 0.0),
            Vec3::new(0.0, 0.0, 0.0),
        ];
        let centroid = (base[0] + base[1] + base[2]) / 3.0;
        let t = Tetrahedron::new([base[0], base[1], base[2], centroid + Vec3::new(0.0, 0.0, h)]).unwrap();
        let tol = Tolerance::closed_form(5.0);
        let ts = tangent_spheres(&t, &tol).unwrap();
        let pairs = grace_pairs(&ts, &t).unwrap();
        let pair = pairs
            .iter()
            .find(|p| p.face_index == 3 && {
                let c1 = p.first.class();
                c1 == SphereClass::Insphere || p.second.class() == SphereClass::Insphere
            })
            .expect("insphere pair on the base face");
        let g = grace_sphere(&t, &ts, pair, &tol).unwrap();
        // Base face is 3-4-5: circumcenter (2, 1.5, 0), R = 2.5.
        assert!((g.sphere.center - Vec3::new(2.0, 1.5, 0.0)).norm() < 1e-2);
        assert!((g.sphere.r - 2.5).abs() < 1e-2);
    }
}
