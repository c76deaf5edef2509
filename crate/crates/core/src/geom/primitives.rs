//! Geometric value types with unit-vector invariants.

use crate::error::{GeomError, Result};
use nalgebra::{Unit, Vector3};

pub type Vec3 = Vector3<f64>;
/// Points are plain 3-vectors; the alias marks intent in signatures.
pub type Point3 = Vec3;
/// Unit direction; the `Unit` wrapper maintains the norm invariant.
pub type Dir3 = Unit<Vec3>;

/// Unoriented plane `{x : n·x = d}`. `(n, d)` and `(-n, -d)` denote the same
/// plane; orientation is meaningful only where an operation says so.
#[derive(Debug, Clone, Copy)]
pub struct Plane {
    pub normal: Dir3,
    pub d: f64,
}

impl Plane {
    pub fn new(normal: Dir3, d: f64) -> Self {
        Plane { normal, d }
    }

    /// Plane through `point` with the given normal.
    pub fn from_point_normal(point: Point3, normal: Dir3) -> Self {
        Plane { normal, d: normal.dot(&point) }
    }

    /// Plane through three points. Errors when the points are near-collinear.
    pub fn from_points(a: Point3, b: Point3, c: Point3) -> Result<Self> {
        let n = (b - a).cross(&(c - a));
        let scale = (b - a).norm().max((c - a).norm()).max(1e-300);
        if n.norm() <= 1e-12 * scale * scale {
            return Err(GeomError::Degenerate("collinear points define no plane".into()));
        }
        let normal = Unit::new_normalize(n);
        Ok(Plane { normal, d: normal.dot(&a) })
    }

    /// Signed distance of `p` from the plane (positive on the normal side).
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(&p) - self.d
    }

    pub fn distance(&self, p: Point3) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Orthogonal projection of `p` onto the plane.
    pub fn project(&self, p: Point3) -> Point3 {
        p - self.signed_distance(p) * self.normal.into_inner()
    }

    /// A point of the plane (foot of the origin).
    pub fn base_point(&self) -> Point3 {
        self.d * self.normal.into_inner()
    }

    /// Same plane with the normal flipped.
    pub fn flipped(&self) -> Self {
        Plane { normal: -self.normal, d: -self.d }
    }

    /// Whether `other` is the same unoriented plane within tolerances.
    pub fn same_plane(&self, other: &Plane, ang_tol: f64, len_tol: f64) -> bool {
        let c = self.normal.dot(&other.normal);
        if c.abs() < 1.0 - ang_tol {
            return false;
        }
        let d_other = if c >= 0.0 { other.d } else { -other.d };
        (self.d - d_other).abs() <= len_tol
    }
}

/// Sphere with positive radius.
#[derive(Debug, Clone, Copy)]
pub struct Sphere {
    pub center: Point3,
    pub r: f64,
}

impl Sphere {
    pub fn new(center: Point3, r: f64) -> Self {
        assert!(r > 0.0, "sphere radius must be positive");
        Sphere { center, r }
    }

    /// |p - center| - r; zero on the surface.
    pub fn surface_distance(&self, p: Point3) -> f64 {
        (p - self.center).norm() - self.r
    }
}

/// Circle in 3-space: a carrier plane, an in-plane center and a radius.
#[derive(Debug, Clone, Copy)]
pub struct Circle3 {
    pub plane: Plane,
    pub center: Point3,
    pub r: f64,
}

impl Circle3 {
    pub fn new(plane: Plane, center: Point3, r: f64) -> Result<Self> {
        assert!(r > 0.0, "circle radius must be positive");
        let off = plane.distance(center);
        if off > 1e-9 * r.max(1.0) {
            return Err(GeomError::OffPlane { dist: off });
        }
        Ok(Circle3 { plane, center: plane.project(center), r })
    }

    /// Circumcircle of three points (in their common plane).
    pub fn circumcircle(a: Point3, b: Point3, c: Point3) -> Result<Self> {
        let plane = Plane::from_points(a, b, c)?;
        // Circumcenter: intersect the perpendicular bisector planes of AB and
        // AC with the carrier plane.
        let n = plane.normal.into_inner();
        let ab = b - a;
        let ac = c - a;
        let m = nalgebra::Matrix3::from_rows(&[ab.transpose(), ac.transpose(), n.transpose()]);
        let rhs = Vec3::new(ab.dot(&(a + b)) / 2.0, ac.dot(&(a + c)) / 2.0, plane.d);
        let center = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| GeomError::Degenerate("circumcircle solve failed".into()))?;
        let r = (a - center).norm();
        Circle3::new(plane, center, r)
    }

    /// Point of the circle at angle `theta` in a deterministic in-plane frame.
    pub fn point_at(&self, theta: f64) -> Point3 {
        let (u, v) = orthonormal_basis(&self.plane.normal);
        self.center + self.r * (theta.cos() * u + theta.sin() * v)
    }
}

/// Right circular cone. The half-angle is strictly interior to (0, pi/2);
/// the constructor canonicalizes an obtuse aperture to the antipodal axis.
#[derive(Debug, Clone, Copy)]
pub struct Cone {
    pub apex: Point3,
    pub axis: Dir3,
    pub half_angle: f64,
}

impl Cone {
    pub fn new(apex: Point3, axis: Dir3, half_angle: f64) -> Result<Self> {
        let (axis, half_angle) = if half_angle > std::f64::consts::FRAC_PI_2 {
            (-axis, std::f64::consts::PI - half_angle)
        } else {
            (axis, half_angle)
        };
        if half_angle <= 1e-12 || half_angle >= std::f64::consts::FRAC_PI_2 - 1e-12 {
            return Err(GeomError::Degenerate(format!(
                "cone half-angle {half_angle} outside (0, pi/2)"
            )));
        }
        Ok(Cone { apex, axis, half_angle })
    }
}

/// Line through `point` with unit direction `dir`.
#[derive(Debug, Clone, Copy)]
pub struct Line3 {
    pub point: Point3,
    pub dir: Dir3,
}

impl Line3 {
    pub fn new(point: Point3, dir: Dir3) -> Self {
        Line3 { point, dir }
    }

    pub fn through(a: Point3, b: Point3) -> Result<Self> {
        let v = b - a;
        if v.norm() <= 1e-300 {
            return Err(GeomError::Degenerate("coincident points define no line".into()));
        }
        Ok(Line3 { point: a, dir: Unit::new_normalize(v) })
    }

    pub fn distance(&self, p: Point3) -> f64 {
        let w = p - self.point;
        (w - w.dot(&self.dir) * self.dir.into_inner()).norm()
    }

    pub fn at(&self, t: f64) -> Point3 {
        self.point + t * self.dir.into_inner()
    }
}

/// Deterministic orthonormal basis of the plane orthogonal to `n`.
pub fn orthonormal_basis(n: &Dir3) -> (Vec3, Vec3) {
    let n = n.into_inner();
    let helper = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let u = n.cross(&helper).normalize();
    let v = n.cross(&u);
    (u, v)
}
