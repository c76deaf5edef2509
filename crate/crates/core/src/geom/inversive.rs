//! Powers, angles, tangency, inversion, radical loci, similitude centers,
//! coaxial pencils and tangent cones.

use super::primitives::{Circle3, Cone, Line3, Plane, Point3, Sphere};
#[cfg(test)]
use super::primitives::{Dir3, Vec3};
use crate::error::{GeomError, Result};
use crate::tol::Tolerance;
use nalgebra::Unit;

/// Power of a point with respect to a sphere: `|p - center|^2 - r^2`.
pub fn power_of_point_sphere(p: Point3, s: &Sphere) -> f64 {
    (p - s.center).norm_squared() - s.r * s.r
}

/// Power of an in-plane point with respect to a circle. The point must lie on
/// the carrier plane; no projection is performed.
pub fn power_of_point_circle(p: Point3, c: &Circle3, tol: &Tolerance) -> Result<f64> {
    let off = c.plane.distance(p);
    if off > tol.len() {
        return Err(GeomError::OffPlane { dist: off });
    }
    Ok((p - c.center).norm_squared() - c.r * c.r)
}

/// Cosine of the intersection angle of two spheres,
/// `(r1^2 + r2^2 - D^2) / (2 r1 r2)`.
///
/// Takes the value +1 at internal and -1 at external tangency and exceeds 1
/// in magnitude for disjoint spheres (the "imaginary angle").
pub fn sphere_angle_cos(s1: &Sphere, s2: &Sphere) -> f64 {
    let d2 = (s1.center - s2.center).norm_squared();
    (s1.r * s1.r + s2.r * s2.r - d2) / (2.0 * s1.r * s2.r)
}

/// Tangency type between two spheres, or between a sphere and a plane.
///
/// For a plane, `External`/`Internal` encodes the side of the plane the
/// sphere center lies on (the normal side maps to `External`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tangency {
    External,
    Internal,
    NotTangent,
}

impl Tangency {
    /// Sign convention used by tangency classes: External -> +1, Internal -> -1.
    pub fn sign(&self) -> Option<i8> {
        match self {
            Tangency::External => Some(1),
            Tangency::Internal => Some(-1),
            Tangency::NotTangent => None,
        }
    }
}

/// Classify the tangency of two spheres.
pub fn tangency_classify(s1: &Sphere, s2: &Sphere, tol: &Tolerance) -> Result<Tangency> {
    let d = (s1.center - s2.center).norm();
    let ext = (d - (s1.r + s2.r)).abs() <= tol.len();
    let int = (d - (s1.r - s2.r).abs()).abs() <= tol.len();
    match (ext, int) {
        (true, true) => Err(GeomError::AmbiguousTangency),
        (true, false) => Ok(Tangency::External),
        (false, true) => Ok(Tangency::Internal),
        (false, false) => Ok(Tangency::NotTangent),
    }
}

/// Classify the tangency of a sphere to a plane; the side of the center
/// (w.r.t. the plane's normal) distinguishes `External` from `Internal`.
pub fn tangency_classify_plane(s: &Sphere, p: &Plane, tol: &Tolerance) -> Tangency {
    let sd = p.signed_distance(s.center);
    if (sd.abs() - s.r).abs() > tol.len() {
        Tangency::NotTangent
    } else if sd >= 0.0 {
        Tangency::External
    } else {
        Tangency::Internal
    }
}

/// Tangency point of two tangent spheres: the similitude center realizing
/// the tangency (internal center for external tangency and vice versa).
pub fn tangent_point(s1: &Sphere, s2: &Sphere) -> Point3 {
    let u = s2.center - s1.center;
    let d = u.norm();
    let ext_gap = (d - (s1.r + s2.r)).abs();
    let int_gap = (d - (s1.r - s2.r).abs()).abs();
    if ext_gap <= int_gap {
        // External tangency: point between the centers.
        s1.center + (s1.r / d) * u
    } else if s1.r >= s2.r {
        s1.center + (s1.r / d) * u
    } else {
        s1.center - (s1.r / d) * u
    }
}

/// Objects that inversion acts on.
#[derive(Debug, Clone, Copy)]
pub enum Invertible {
    Sphere(Sphere),
    Plane(Plane),
    Point(Point3),
}

/// Image of an inversion: a sphere through the center maps to a plane and a
/// plane not through the center maps to a sphere.
#[derive(Debug, Clone, Copy)]
pub enum InversionImage {
    Sphere(Sphere),
    Plane(Plane),
    Point(Point3),
}

impl InversionImage {
    pub fn as_sphere(&self) -> Option<&Sphere> {
        match self {
            InversionImage::Sphere(s) => Some(s),
            _ => None,
        }
    }
    pub fn as_plane(&self) -> Option<&Plane> {
        match self {
            InversionImage::Plane(p) => Some(p),
            _ => None,
        }
    }
    pub fn as_point(&self) -> Option<&Point3> {
        match self {
            InversionImage::Point(p) => Some(p),
            _ => None,
        }
    }
}

/// Inversion `x -> center + k (x - center) / |x - center|^2`; `k` may be
/// negative. Spheres through the center map to planes and vice versa.
pub fn invert(center: Point3, k: f64, obj: &Invertible) -> Result<InversionImage> {
    match obj {
        Invertible::Point(p) => {
            let w = p - center;
            let d2 = w.norm_squared();
            if d2 <= 1e-300 {
                return Err(GeomError::Degenerate("cannot invert the inversion center".into()));
            }
            Ok(InversionImage::Point(center + (k / d2) * w))
        }
        Invertible::Sphere(s) => {
            let w = s.center - center;
            let d2 = w.norm_squared();
            let pw = d2 - s.r * s.r; // power of the center w.r.t. the sphere
            let thickness = pw.abs() / s.r.max(1e-300);
            if thickness <= 1e-12 * (d2.sqrt() + s.r) {
                // Sphere through the inversion center: image is a plane. The
                // point diametrically opposite the center, center + 2w, maps
                // to center + k w / (2 d^2); the image plane passes through it
                // perpendicular to the center line.
                let img = center + (k / (2.0 * d2)) * w;
                let normal = Unit::new_normalize(w);
                return Ok(InversionImage::Plane(Plane::from_point_normal(img, normal)));
            }
            let f = k / pw;
            Ok(InversionImage::Sphere(Sphere::new(center + f * w, (f * s.r).abs())))
        }
        Invertible::Plane(p) => {
            let h = p.signed_distance(center);
            if h.abs() <= 1e-12 {
                // Plane through the center is invariant.
                return Ok(InversionImage::Plane(*p));
            }
            // Nearest plane point maps to the far end of the image diameter.
            let q_img = center - (k / h) * p.normal.into_inner();
            let c = (center + q_img) / 2.0;
            Ok(InversionImage::Sphere(Sphere::new(c, (k / (2.0 * h)).abs())))
        }
    }
}

/// Radical plane of two spheres: locus of equal power.
pub fn radical_plane(s1: &Sphere, s2: &Sphere) -> Result<Plane> {
    let u = s2.center - s1.center;
    let d = u.norm();
    let span = s1.r.max(s2.r);
    if d <= 1e-12 * span {
        return Err(GeomError::Concentric);
    }
    let t = (d * d + s1.r * s1.r - s2.r * s2.r) / (2.0 * d * d);
    let m = s1.center + t * u;
    Ok(Plane::from_point_normal(m, Unit::new_normalize(u)))
}

/// Radical axis of two coplanar circles as an in-plane line.
pub fn radical_axis(c1: &Circle3, c2: &Circle3) -> Result<Line3> {
    let u = c2.center - c1.center;
    let d = u.norm();
    let span = c1.r.max(c2.r);
    if d <= 1e-12 * span {
        return Err(GeomError::Concentric);
    }
    let t = (d * d + c1.r * c1.r - c2.r * c2.r) / (2.0 * d * d);
    let m = c1.center + t * u;
    let dir = c1.plane.normal.cross(&u);
    Ok(Line3::new(m, Unit::new_normalize(dir)))
}

/// External and internal centers of similitude of two spheres. The external
/// center is unavailable (at infinity) when the radii are equal.
#[derive(Debug, Clone, Copy)]
pub struct SimilitudeCenters {
    pub external: Option<Point3>,
    pub internal: Point3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilitudeKind {
    External,
    Internal,
}

pub fn similitude_centers(s1: &Sphere, s2: &Sphere) -> Result<SimilitudeCenters> {
    let d = (s1.center - s2.center).norm();
    if d <= 1e-12 * s1.r.max(s2.r) && (s1.r - s2.r).abs() <= 1e-12 * s1.r.max(s2.r) {
        return Err(GeomError::Degenerate("coincident spheres have no similitude".into()));
    }
    let internal = (s2.r * s1.center + s1.r * s2.center) / (s1.r + s2.r);
    let external = if (s1.r - s2.r).abs() <= 1e-12 * (s1.r + s2.r) {
        None
    } else {
        Some((s2.r * s1.center - s1.r * s2.center) / (s2.r - s1.r))
    };
    Ok(SimilitudeCenters { external, internal })
}

/// The two limit points (zero-radius members) of the coaxial pencil spanned
/// by two spheres. Real exactly when the spheres do not intersect; `None`
/// when they do. Tangent spheres yield a doubled point.
pub fn pencil_limit_points(s1: &Sphere, s2: &Sphere) -> Result<Option<(Point3, Point3)>> {
    let rad = radical_plane(s1, s2)?;
    let u = (s2.center - s1.center).normalize();
    // Radical plane crosses the center line at m; power there is the squared
    // tangent length, negative iff the spheres intersect.
    let m = rad.project(s1.center);
    let p = power_of_point_sphere(m, s1);
    if p < 0.0 {
        return Ok(None);
    }
    let h = p.sqrt();
    Ok(Some((m + h * u, m - h * u)))
}

/// Cone from an external apex tangent to a sphere.
pub fn tangent_cone_from_apex(apex: Point3, s: &Sphere) -> Result<Cone> {
    let v = s.center - apex;
    let l = v.norm();
    if l <= s.r {
        return Err(GeomError::Degenerate("apex inside or on the sphere".into()));
    }
    Cone::new(apex, Unit::new_normalize(v), (s.r / l).asin())
}

/// Cone circumscribed about two spheres, with apex at the chosen similitude
/// center. The external cone does not exist for equal radii.
pub fn tangent_cone(s1: &Sphere, s2: &Sphere, kind: SimilitudeKind) -> Result<Cone> {
    let centers = similitude_centers(s1, s2)?;
    let apex = match kind {
        SimilitudeKind::External => centers.external.ok_or_else(|| {
            GeomError::Unsupported("equal radii: external cone degenerates to a cylinder".into())
        })?,
        SimilitudeKind::Internal => centers.internal,
    };
    tangent_cone_from_apex(apex, s1)
}

/// Signed tangency residual of a sphere against a (double) cone:
/// distance from the center to the cone surface minus the radius.
pub fn cone_sphere_tangency_residual(k: &Cone, s: &Sphere) -> f64 {
    let v = s.center - k.apex;
    let l = v.norm();
    if l <= 1e-300 {
        return -s.r;
    }
    // atan2 keeps full precision near the axis, where acos would lose half
    // the significant digits.
    let theta = v.cross(&k.axis).norm().atan2(v.dot(&k.axis));
    // Nearest generator over both nappes of the double cone.
    let d_near = (theta - k.half_angle).sin().abs().min((theta + k.half_angle).sin().abs());
    l * d_near - s.r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::closed_form(10.0)
    }

    #[test]
    fn power_on_surface_is_zero() {
        let s = Sphere::new(Vec3::new(1.0, 2.0, 3.0), 2.0);
        let p = s.center + Vec3::new(2.0, 0.0, 0.0);
        assert!(power_of_point_sphere(p, &s).abs() < 1e-14);
    }

    #[test]
    fn power_circle_345_orthocenter() {
        // 3-4-5 triangle with the right angle at the origin; circle on the
        // leg CA as diameter has center (0, 1.5) and radius 1.5.
        let plane = Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()));
        let c = Circle3::new(plane, Vec3::new(0.0, 1.5, 0.0), 1.5).unwrap();
        let p = power_of_point_circle(Vec3::zeros(), &c, &tol()).unwrap();
        assert!(p.abs() < 1e-14, "2.25 - 2.25 = 0, got {p}");
    }

    #[test]
    fn power_circle_rejects_off_plane_point() {
        let plane = Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()));
        let c = Circle3::new(plane, Vec3::zeros(), 1.0).unwrap();
        let e = power_of_point_circle(Vec3::new(0.0, 0.0, 1.0), &c, &tol());
        assert!(matches!(e, Err(GeomError::OffPlane { .. })));
    }

    #[test]
    fn power_matches_center_distance_formula() {
        // Power of a point at distance d from the center of a radius-R circle
        // is d^2 - R^2.
        let plane = Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()));
        let c = Circle3::new(plane, Vec3::new(1.0, 1.0, 0.0), 2.0).unwrap();
        let f = Vec3::new(4.0, 5.0, 0.0);
        let d2 = (f - c.center).norm_squared();
        let p = power_of_point_circle(f, &c, &tol()).unwrap();
        assert!((p - (d2 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn angle_cos_at_tangency() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let ext = Sphere::new(Vec3::new(3.0, 0.0, 0.0), 2.0);
        let int = Sphere::new(Vec3::new(1.0, 0.0, 0.0), 2.0);
        assert!((sphere_angle_cos(&s1, &ext) + 1.0).abs() < 1e-14);
        assert!((sphere_angle_cos(&s1, &int) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn angle_cos_concentric() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::zeros(), 3.0);
        assert!((sphere_angle_cos(&s1, &s2) - 5.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn classify_external_internal() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(3.0, 0.0, 0.0), 2.0);
        assert_eq!(tangency_classify(&s1, &s2, &tol()).unwrap(), Tangency::External);
        let s3 = Sphere::new(Vec3::new(1.0, 0.0, 0.0), 2.0);
        assert_eq!(tangency_classify(&s1, &s3, &tol()).unwrap(), Tangency::Internal);
        let s4 = Sphere::new(Vec3::new(10.0, 0.0, 0.0), 2.0);
        assert_eq!(tangency_classify(&s1, &s4, &tol()).unwrap(), Tangency::NotTangent);
    }

    #[test]
    fn classify_plane_side() {
        let p = Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()));
        let above = Sphere::new(Vec3::new(0.0, 0.0, 1.0), 1.0);
        let below = Sphere::new(Vec3::new(0.0, 0.0, -1.0), 1.0);
        assert_eq!(tangency_classify_plane(&above, &p, &tol()), Tangency::External);
        assert_eq!(tangency_classify_plane(&below, &p, &tol()), Tangency::Internal);
    }

    #[test]
    fn invert_fixed_sphere() {
        let s = Sphere::new(Vec3::zeros(), 2.0);
        let img = invert(Vec3::zeros(), 4.0, &Invertible::Sphere(s)).unwrap();
        let t = img.as_sphere().unwrap();
        assert!(t.center.norm() < 1e-14 && (t.r - 2.0).abs() < 1e-14);
    }

    #[test]
    fn invert_plane_to_sphere() {
        // Plane at distance h: image sphere of radius k/(2h) through center.
        let h = 1.7;
        let k = 3.0;
        let p = Plane::from_point_normal(Vec3::new(0.0, 0.0, h), Dir3::new_normalize(Vec3::z()));
        let img = invert(Vec3::zeros(), k, &Invertible::Plane(p)).unwrap();
        let s = img.as_sphere().unwrap();
        assert!((s.r - k / (2.0 * h)).abs() < 1e-13);
        assert!(s.surface_distance(Vec3::zeros()).abs() < 1e-13);
        // Cross-check by mapping three sample points of the plane.
        let (u, v) = super::super::primitives::orthonormal_basis(&p.normal);
        for q in [p.base_point(), p.base_point() + u, p.base_point() - 0.4 * u + 2.0 * v] {
            let iq = invert(Vec3::zeros(), k, &Invertible::Point(q)).unwrap();
            assert!(s.surface_distance(*iq.as_point().unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn invert_circumdiametral_sphere_of_345_about_incircle() {
        // Inverting the circum-diametral sphere of the 3-4-5 triangle in the
        // sphere built diametrally on the incircle gives radius r/2.
        let delta = Sphere::new(Vec3::new(2.0, 1.5, 0.0), 2.5);
        let incenter = Vec3::new(1.0, 1.0, 0.0);
        let img = invert(incenter, 1.0, &Invertible::Sphere(delta)).unwrap();
        let s = img.as_sphere().unwrap();
        assert!((s.r - 0.5).abs() < 1e-13);
    }

    #[test]
    fn radical_plane_of_equal_spheres_is_bisector() {
        let s1 = Sphere::new(Vec3::zeros(), 1.5);
        let s2 = Sphere::new(Vec3::new(4.0, 0.0, 0.0), 1.5);
        let p = radical_plane(&s1, &s2).unwrap();
        assert!(p.distance(Vec3::new(2.0, 7.0, -3.0)) < 1e-12);
    }

    #[test]
    fn radical_axis_345_legs_is_altitude() {
        // Circles on the two legs of the 3-4-5 triangle as diameters: their
        // radical axis is the altitude from the right-angle vertex C = (0,0),
        // which here is also the orthocenter H.
        let plane = Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()));
        let ca = Circle3::new(plane, Vec3::new(0.0, 1.5, 0.0), 1.5).unwrap();
        let bc = Circle3::new(plane, Vec3::new(2.0, 0.0, 0.0), 2.0).unwrap();
        let ax = radical_axis(&ca, &bc).unwrap();
        // Both circles pass through C=(0,0) and through the foot of the
        // altitude from C onto AB; check equal powers along the axis.
        for t in [-1.0, 0.5, 2.0] {
            let q = ax.at(t);
            let p1 = power_of_point_circle(q, &ca, &tol()).unwrap();
            let p2 = power_of_point_circle(q, &bc, &tol()).unwrap();
            assert!((p1 - p2).abs() < 1e-12);
        }
        assert!(ax.distance(Vec3::zeros()) < 1e-12, "axis passes through C = H");
    }

    #[test]
    fn similitude_example() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(3.0, 0.0, 0.0), 2.0);
        let sc = similitude_centers(&s1, &s2).unwrap();
        assert!((sc.external.unwrap() - Vec3::new(-3.0, 0.0, 0.0)).norm() < 1e-14);
        assert!((sc.internal - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn similitude_equal_radii() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(4.0, 0.0, 0.0), 1.0);
        let sc = similitude_centers(&s1, &s2).unwrap();
        assert!(sc.external.is_none());
        assert!((sc.internal - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn tangent_spheres_internal_center_is_tangency_point() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(3.0, 0.0, 0.0), 2.0);
        let sc = similitude_centers(&s1, &s2).unwrap();
        assert!((sc.internal - tangent_point(&s1, &s2)).norm() < 1e-14);
    }

    #[test]
    fn limit_points_example() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(4.0, 0.0, 0.0), 1.0);
        let (l1, l2) = pencil_limit_points(&s1, &s2).unwrap().unwrap();
        let e = 3.0f64.sqrt();
        let a = Vec3::new(2.0 + e, 0.0, 0.0);
        let b = Vec3::new(2.0 - e, 0.0, 0.0);
        assert!((l1 - a).norm().min((l1 - b).norm()) < 1e-12);
        assert!((l2 - a).norm().min((l2 - b).norm()) < 1e-12);
        // The radical point m has equal power w.r.t. both spheres, and that
        // power is the squared tangent length |l - m|^2 >= 0.
        let m = Vec3::new(2.0, 0.0, 0.0);
        let p1 = power_of_point_sphere(m, &s1);
        let p2 = power_of_point_sphere(m, &s2);
        assert!((p1 - p2).abs() < 1e-12);
        for l in [l1, l2] {
            assert!(((l - m).norm_squared() - p1).abs() < 1e-12);
        }
        // Inversion centered at a limit point makes the pencil concentric.
        for l in [l1, l2] {
            let i1 = invert(l, 1.0, &Invertible::Sphere(s1)).unwrap();
            let i2 = invert(l, 1.0, &Invertible::Sphere(s2)).unwrap();
            let d = (i1.as_sphere().unwrap().center - i2.as_sphere().unwrap().center).norm();
            assert!(d < 1e-12, "limit-point inversion must concentrate the pencil, off by {d}");
        }
    }

    #[test]
    fn limit_points_imaginary_for_intersecting() {
        let s1 = Sphere::new(Vec3::zeros(), 2.0);
        let s2 = Sphere::new(Vec3::new(1.0, 0.0, 0.0), 2.0);
        assert!(pencil_limit_points(&s1, &s2).unwrap().is_none());
    }

    #[test]
    fn tangent_cone_touches_both_spheres() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(5.0, 0.0, 0.0), 2.0);
        for kind in [SimilitudeKind::External, SimilitudeKind::Internal] {
            let k = tangent_cone(&s1, &s2, kind).unwrap();
            assert!(cone_sphere_tangency_residual(&k, &s1).abs() < 1e-12);
            assert!(cone_sphere_tangency_residual(&k, &s2).abs() < 1e-12);
        }
    }

    #[test]
    fn tangent_cone_equal_radii_internal() {
        let s1 = Sphere::new(Vec3::zeros(), 1.0);
        let s2 = Sphere::new(Vec3::new(4.0, 0.0, 0.0), 1.0);
        assert!(tangent_cone(&s1, &s2, SimilitudeKind::External).is_err());
        let k = tangent_cone(&s1, &s2, SimilitudeKind::Internal).unwrap();
        // Internal apex at the midpoint; half-angle arcsin(2r/D).
        assert!((k.half_angle - (2.0 * 1.0 / 4.0f64).asin()).abs() < 1e-13);
        assert!(cone_sphere_tangency_residual(&k, &s2).abs() < 1e-12);
    }

    #[test]
    fn inscribed_sphere_on_axis_has_zero_residual() {
        let k = Cone::new(Vec3::zeros(), Dir3::new_normalize(Vec3::z()), 0.5).unwrap();
        let l = 3.0;
        let s = Sphere::new(Vec3::new(0.0, 0.0, l), l * 0.5f64.sin());
        assert!(cone_sphere_tangency_residual(&k, &s).abs() < 1e-13);
        // Perturbing along the axis moves the residual away from zero.
        let eps = 1e-3;
        let sp = Sphere::new(Vec3::new(0.0, 0.0, l + eps), s.r);
        let res = cone_sphere_tangency_residual(&k, &sp).abs();
        assert!(res > 1e-5 && res < 1e-2);
    }

    #[test]
    fn opposite_nappe_tangency_detected() {
        let k = Cone::new(Vec3::zeros(), Dir3::new_normalize(Vec3::z()), 0.5).unwrap();
        let l = 3.0;
        let s = Sphere::new(Vec3::new(0.0, 0.0, -l), l * 0.5f64.sin());
        assert!(cone_sphere_tangency_residual(&k, &s).abs() < 1e-13);
    }

    fn arb_vec3(range: f64) -> impl Strategy<Value = Vec3> {
        (-range..range, -range..range, -range..range).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    fn arb_sphere() -> impl Strategy<Value = Sphere> {
        (arb_vec3(5.0), 0.1f64..4.0).prop_map(|(c, r)| Sphere::new(c, r))
    }

    proptest! {
        #[test]
        fn inversion_is_involution_on_points(p in arb_vec3(5.0), c in arb_vec3(2.0), k in 0.5f64..4.0) {
            prop_assume!((p - c).norm() > 1e-3);
            let i1 = invert(c, k, &Invertible::Point(p)).unwrap();
            let i2 = invert(c, k, &Invertible::Point(*i1.as_point().unwrap())).unwrap();
            prop_assert!((i2.as_point().unwrap() - p).norm() < 1e-9);
        }

        #[test]
        fn inversion_is_involution_on_spheres(s in arb_sphere(), c in arb_vec3(2.0), k in 0.5f64..4.0) {
            let pw = power_of_point_sphere(c, &s);
            prop_assume!(pw.abs() > 1e-2 * s.r);
            let i1 = invert(c, k, &Invertible::Sphere(s)).unwrap();
            let s1 = i1.as_sphere().unwrap();
            let i2 = invert(c, k, &Invertible::Sphere(*s1)).unwrap();
            let s2 = i2.as_sphere().unwrap();
            prop_assert!((s2.center - s.center).norm() < 1e-8 * (1.0 + s.center.norm()));
            prop_assert!((s2.r - s.r).abs() < 1e-8 * s.r);
        }

        #[test]
        fn power_preserved_under_rigid_motion(p in arb_vec3(5.0), s in arb_sphere(),
                                              axis in arb_vec3(1.0), angle in 0.0f64..6.28,
                                              t in arb_vec3(3.0)) {
            prop_assume!(axis.norm() > 1e-3);
            let rot = nalgebra::Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle);
            let mp = rot * p + t;
            let ms = Sphere::new(rot * s.center + t, s.r);
            let d = (power_of_point_sphere(p, &s) - power_of_point_sphere(mp, &ms)).abs();
            prop_assert!(d < 1e-9 * (1.0 + p.norm_squared() + s.center.norm_squared()));
        }

        #[test]
        fn angle_cos_characterizes_tangency(c in arb_vec3(4.0), dir in arb_vec3(1.0),
                                            r1 in 0.2f64..2.0, r2 in 0.2f64..2.0,
                                            external in proptest::bool::ANY) {
            prop_assume!(dir.norm() > 1e-3);
            prop_assume!(external || (r1 - r2).abs() > 1e-2);
            let u = dir.normalize();
            let d = if external { r1 + r2 } else { (r1 - r2).abs() };
            let s1 = Sphere::new(c, r1);
            let s2 = Sphere::new(c + d * u, r2);
            let cosv = sphere_angle_cos(&s1, &s2);
            let tl = Tolerance::closed_form(1.0 + c.norm());
            let cls = tangency_classify(&s1, &s2, &tl).unwrap();
            if external {
                prop_assert!((cosv + 1.0).abs() < 1e-9);
                prop_assert_eq!(cls, Tangency::External);
            } else {
                prop_assert!((cosv - 1.0).abs() < 1e-9);
                prop_assert_eq!(cls, Tangency::Internal);
            }
        }

        #[test]
        fn radical_plane_has_equal_powers(s1 in arb_sphere(), s2 in arb_sphere(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
            prop_assume!((s1.center - s2.center).norm() > 1e-2);
            let p = radical_plane(&s1, &s2).unwrap();
            let (u, v) = super::super::primitives::orthonormal_basis(&p.normal);
            let q = p.base_point() + a * u + b * v;
            let d = (power_of_point_sphere(q, &s1) - power_of_point_sphere(q, &s2)).abs();
            prop_assert!(d < 1e-8 * (1.0 + q.norm_squared()));
        }
    }
}
