//! Tangency solvers: the pencil of spheres through a circle tangent to a
//! sphere, planar Apollonius circles with prescribed tangency signs, the
//! stereographic chart reducing spherical tangency problems to planar ones,
//! and the Hart circle tangent to the four in/ex circles of a spherical
//! triangle.

use crate::error::{GeomError, Result};
use crate::geom::{
    orthonormal_basis, tangency_classify, tangency_classify_plane, Circle3, Dir3, Plane, Point3,
    Sphere, Tangency,
};
use crate::geom::Vec3;
use crate::tol::Tolerance;
use nalgebra::{Unit, Vector2};

pub type Vec2 = Vector2<f64>;

/// Orthonormal in-plane chart: origin plus two in-plane axes.
#[derive(Debug, Clone, Copy)]
pub struct Frame2 {
    pub origin: Point3,
    pub u: Dir3,
    pub v: Dir3,
}

impl Frame2 {
    /// Deterministic frame spanning the plane orthogonal to `normal`.
    pub fn from_normal(origin: Point3, normal: &Dir3) -> Self {
        let (u, v) = orthonormal_basis(normal);
        Frame2 { origin, u: Unit::new_normalize(u), v: Unit::new_normalize(v) }
    }

    pub fn to_world(&self, q: Vec2) -> Point3 {
        self.origin + q.x * self.u.into_inner() + q.y * self.v.into_inner()
    }

    pub fn to_chart(&self, p: Point3) -> Vec2 {
        let w = p - self.origin;
        Vec2::new(w.dot(&self.u), w.dot(&self.v))
    }
}

/// Circle in a 2D chart.
#[derive(Debug, Clone, Copy)]
pub struct Circle2 {
    pub center: Vec2,
    pub r: f64,
}

impl Circle2 {
    pub fn new(center: Vec2, r: f64) -> Self {
        assert!(r > 0.0, "circle radius must be positive");
        Circle2 { center, r }
    }
}

/// Circle on the unit sphere: pole direction and angular radius.
///
/// `(pole, rho)` and `(-pole, pi - rho)` describe the same circle; the
/// constructor canonicalizes to `rho <= pi/2`.
#[derive(Debug, Clone, Copy)]
pub struct SphericalCircle {
    pub pole: Dir3,
    pub rho: f64,
}

impl SphericalCircle {
    pub fn new(pole: Dir3, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < std::f64::consts::PI) {
            return Err(GeomError::Degenerate(format!("angular radius {rho} outside (0, pi)")));
        }
        if rho > std::f64::consts::FRAC_PI_2 {
            Ok(SphericalCircle { pole: -pole, rho: std::f64::consts::PI - rho })
        } else {
            Ok(SphericalCircle { pole, rho })
        }
    }

    /// Angular distance of a unit point from the circle curve.
    pub fn angular_distance(&self, p: &Dir3) -> f64 {
        (self.pole.dot(p).clamp(-1.0, 1.0).acos() - self.rho).abs()
    }

    /// The antipodal image of the circle (same angular radius, opposite
    /// pole). A circle and its antipode span the same double cone.
    pub fn antipodal(&self) -> SphericalCircle {
        SphericalCircle { pole: -self.pole, rho: self.rho }
    }

    /// Whether this is the same circle, as a point set, as `other`:
    /// `(p, rho)` equals `(-p, pi - rho)`.
    pub fn same_circle(&self, other: &SphericalCircle, tol: f64) -> bool {
        let d = self.pole.dot(&other.pole);
        (d > tol.cos() && (self.rho - other.rho).abs() <= tol)
            || (d < -(tol.cos()) && (self.rho + other.rho - std::f64::consts::PI).abs() <= tol)
    }
}

/// Tangency residual of two spherical circles: zero iff they touch.
///
/// Covers internal and external tangency on either side of the sphere.
pub fn spherical_tangency_residual(c1: &SphericalCircle, c2: &SphericalCircle) -> f64 {
    let d = c1.pole.dot(&c2.pole).clamp(-1.0, 1.0).acos();
    let sum = c1.rho + c2.rho;
    let diff = (c1.rho - c2.rho).abs();
    let far = 2.0 * std::f64::consts::PI - sum;
    (d - sum).abs().min((d - diff).abs()).min((d - far).abs())
}

/// Antipode-class tangency residual: zero iff the double cones spanned by
/// the circles are tangent, i.e. one circle touches the other or its
/// antipodal image.
pub fn class_tangency_residual(c1: &SphericalCircle, c2: &SphericalCircle) -> f64 {
    spherical_tangency_residual(c1, c2).min(spherical_tangency_residual(&c1.antipodal(), c2))
}

/// One member of the pencil of spheres through a fixed circle.
#[derive(Debug, Clone, Copy)]
pub enum PencilMember {
    Sphere(Sphere),
    Plane(Plane),
}

/// Spheres through the circle `c` tangent to the sphere `s`.
///
/// The pencil through `c` is parametrized by center `c.center + t n` and
/// radius `sqrt(r_c^2 + t^2)`; the tangency condition squares to a single
/// quadratic in `t` whose real roots cover both tangency types. The plane of
/// `c` itself is reported when it is tangent to `s`. Each member is labeled
/// with its tangency type to `s` (for the plane member, by the side of `s`).
pub fn spheres_through_circle_tangent_to(
    c: &Circle3,
    s: &Sphere,
    tol: &Tolerance,
) -> Result<Vec<(PencilMember, Tangency)>> {
    let n = c.plane.normal.into_inner();
    let w = c.center - s.center;
    let a = w.norm_squared() - c.r * c.r - s.r * s.r;
    let b = 2.0 * w.dot(&n);

    let qa = b * b - 4.0 * s.r * s.r;
    let qb = 2.0 * a * b;
    let qc = a * a - 4.0 * s.r * s.r * c.r * c.r;

    let mut out = Vec::new();
    let mut push_root = |t: f64| {
        let radius = (c.r * c.r + t * t).sqrt();
        let cand = Sphere::new(c.center + t * n, radius);
        // Sign of (a + b t) selects the branch the root actually satisfies.
        let kind = if a + b * t >= 0.0 { Tangency::External } else { Tangency::Internal };
        // Guard against squaring artifacts.
        let d = (cand.center - s.center).norm();
        let gap = match kind {
            Tangency::External => (d - (radius + s.r)).abs(),
            _ => (d - (radius - s.r).abs()).abs(),
        };
        if gap <= 1e3 * tol.len() {
            out.push((PencilMember::Sphere(cand), kind));
        }
    };

    let lead_scale = 4.0 * s.r * s.r + b * b;
    if qa.abs() <= 1e-13 * lead_scale {
        // Degenerate leading coefficient: at most one root per sign branch.
        if qb.abs() > 1e-300 {
            push_root(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            // Numerically stable quadratic roots.
            let sd = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * sd);
            let t1 = q / qa;
            push_root(t1);
            if qc.abs() > 1e-300 && q.abs() > 1e-300 {
                push_root(qc / q);
            } else {
                let t2 = if qa.abs() > 1e-300 { -qb / qa - t1 } else { t1 };
                if (t2 - t1).abs() > 1e-12 * (1.0 + t1.abs()) {
                    push_root(t2);
                }
            }
        }
    }

    let plane_tangency = tangency_classify_plane(s, &c.plane, tol);
    if plane_tangency != Tangency::NotTangent {
        out.push((PencilMember::Plane(c.plane), plane_tangency));
    }
    Ok(out)
}

/// Equivalence class of a sphere tangent to two reference objects, encoded
/// as the product of the per-reference tangency signs.
///
/// The labels are orientation-dependent where a plane is involved, but the
/// two-class partition is not; class values should only be compared between
/// members computed against the same references.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangencyClass {
    pub sign: i8,
}

/// The second reference of a tangency class may be a sphere or a plane.
#[derive(Debug, Clone, Copy)]
pub enum RefObject {
    Sphere(Sphere),
    Plane(Plane),
}

fn member_sign_to_sphere(x: &PencilMember, r: &Sphere, tol: &Tolerance) -> Result<i8> {
    let t = match x {
        PencilMember::Sphere(xs) => tangency_classify(xs, r, tol)?,
        PencilMember::Plane(xp) => tangency_classify_plane(r, xp, tol),
    };
    t.sign().ok_or_else(|| GeomError::Degenerate("member not tangent to reference".into()))
}

fn member_sign_to_plane(x: &PencilMember, p: &Plane, tol: &Tolerance) -> Result<i8> {
    match x {
        PencilMember::Sphere(xs) => tangency_classify_plane(xs, p, tol)
            .sign()
            .ok_or_else(|| GeomError::Degenerate("member not tangent to reference plane".into())),
        PencilMember::Plane(_) => {
            Err(GeomError::Unsupported("plane-plane tangency has no class".into()))
        }
    }
}

/// Tangency class of `x` with respect to two references, both of which it
/// must touch within tolerance.
pub fn m_class(x: &PencilMember, ref1: &Sphere, ref2: &RefObject, tol: &Tolerance) -> Result<TangencyClass> {
    let s1 = member_sign_to_sphere(x, ref1, tol)?;
    let s2 = match ref2 {
        RefObject::Sphere(s) => member_sign_to_sphere(x, s, tol)?,
        RefObject::Plane(p) => member_sign_to_plane(x, p, tol)?,
    };
    Ok(TangencyClass { sign: s1 * s2 })
}

/// Circles tangent to three given circles with prescribed tangency signs
/// (`+1`: externally tangent offset, `-1`: internally), via the algebraic
/// elimination: two pairwise-difference linear equations plus one quadratic.
pub fn planar_apollonius(
    circles: &[Circle2; 3],
    signs: [f64; 3],
    tol: &Tolerance,
) -> Result<Vec<Circle2>> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            let d = (circles[i].center - circles[j].center).norm();
            if d <= 1e-12 && (circles[i].r - circles[j].r).abs() <= 1e-12 {
                return Err(GeomError::Degenerate("coincident input circles".into()));
            }
        }
    }
    // |x - c_i| = rho + s_i r_i  =>  |x|^2 - 2 c_i.x + |c_i|^2 - r_i^2 = rho^2 + 2 s_i r_i rho
    // Subtracting pairs eliminates the quadratic terms.
    let lin = |i: usize, j: usize| -> (Vec2, f64, f64) {
        let ci = circles[i].center;
        let cj = circles[j].center;
        // coeffs: (-2(ci - cj)) . x - 2 rho (s_i r_i - s_j r_j) + const = 0
        let k = ci.norm_squared() - circles[i].r * circles[i].r
            - (cj.norm_squared() - circles[j].r * circles[j].r);
        (-2.0 * (ci - cj), -2.0 * (signs[i] * circles[i].r - signs[j] * circles[j].r), k)
    };
    let (a1, b1, k1) = lin(0, 1);
    let (a2, b2, k2) = lin(0, 2);
    // Solve for x as an affine function of rho: A x = -(b rho + k).
    let det = a1.x * a2.y - a1.y * a2.x;
    let span = a1.norm().max(a2.norm()).max(1e-300);
    if det.abs() <= 1e-12 * span * span {
        return Err(GeomError::Degenerate("apollonius linear system is singular".into()));
    }
    let solve2 = |r1: f64, r2: f64| Vec2::new((r1 * a2.y - r2 * a1.y) / det, (a1.x * r2 - a2.x * r1) / det);
    let x0 = solve2(-k1, -k2);
    let x1 = solve2(-b1, -b2);
    // x(rho) = x0 + rho x1; substitute into circle 0's equation.
    let c0 = circles[0].center;
    let r0 = circles[0].r;
    let w = x0 - c0;
    let qa = x1.norm_squared() - 1.0;
    let qb = 2.0 * (w.dot(&x1) - signs[0] * r0);
    let qc = w.norm_squared() - r0 * r0;
    let mut roots = Vec::new();
    if qa.abs() <= 1e-13 * (1.0 + x1.norm_squared()) {
        if qb.abs() > 1e-300 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sd = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * sd);
            roots.push(q / qa);
            if q.abs() > 1e-300 {
                roots.push(qc / q);
            }
        }
    }
    let mut out: Vec<Circle2> = Vec::new();
    for rho in roots {
        if rho <= tol.len() {
            continue;
        }
        let cand = Circle2::new(x0 + rho * x1, rho);
        // Squaring admits sign-flipped ghosts; check true tangency.
        let ok = (0..3).all(|i| {
            let d = (cand.center - circles[i].center).norm();
            (d - (cand.r + signs[i] * circles[i].r)).abs() <= 1e3 * tol.len()
        });
        let dup = out.iter().any(|c| (c.center - cand.center).norm() <= tol.len() && (c.r - cand.r).abs() <= tol.len());
        if ok && !dup {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Image of a spherical circle in a stereographic chart.
#[derive(Debug, Clone, Copy)]
pub enum ChartImage {
    Circle(Circle2),
    /// Circle through the projection pole: a line `{p + t d}` in the chart.
    Line { point: Vec2, dir: Vec2 },
}

/// Stereographic chart: projection from `pole` onto the equatorial plane
/// through the sphere center. Circles map to circles (or lines when through
/// the pole) and tangency is preserved.
#[derive(Debug, Clone, Copy)]
pub struct Stereographic {
    pub pole: Dir3,
    u: Vec3,
    v: Vec3,
}

impl Stereographic {
    pub fn new(pole: Dir3) -> Self {
        let (u, v) = orthonormal_basis(&pole);
        Stereographic { pole, u, v }
    }

    /// Project a unit point (not the pole itself).
    pub fn project_point(&self, p: &Dir3) -> Result<Vec2> {
        let z = self.pole.dot(p);
        if 1.0 - z <= 1e-14 {
            return Err(GeomError::Degenerate("cannot project the chart pole".into()));
        }
        let w = (p.into_inner() - z * self.pole.into_inner()) / (1.0 - z);
        Ok(Vec2::new(w.dot(&self.u), w.dot(&self.v)))
    }

    /// Unproject a chart point back to the unit sphere.
    pub fn unproject_point(&self, q: Vec2) -> Dir3 {
        let w = q.x * self.u + q.y * self.v;
        let n2 = w.norm_squared();
        Unit::new_normalize((2.0 * w + (n2 - 1.0) * self.pole.into_inner()) / (n2 + 1.0))
    }

    /// Project a spherical circle; returns a line when the circle passes
    /// through the chart pole (within angular tolerance).
    pub fn project_circle(&self, c: &SphericalCircle, ang_tol: f64) -> Result<ChartImage> {
        let through_pole = (self.pole.dot(&c.pole).clamp(-1.0, 1.0).acos() - c.rho).abs() <= ang_tol;
        // In-circle-plane direction towards the chart pole: the chart pole's
        // component orthogonal to the circle pole.
        let axis = {
            let raw = self.pole.into_inner() - self.pole.dot(&c.pole) * c.pole.into_inner();
            if raw.norm() > 1e-9 {
                raw.normalize()
            } else {
                self.u
            }
        };
        // Extreme points of the circle in the plane spanned by the two poles
        // project to a diameter of the image circle.
        let e1 = Unit::new_normalize(c.rho.cos() * c.pole.into_inner() + c.rho.sin() * axis);
        let e2 = Unit::new_normalize(c.rho.cos() * c.pole.into_inner() - c.rho.sin() * axis);
        if through_pole {
            // Sample two generic points of the circle instead.
            let side = c.pole.into_inner().cross(&axis);
            let p1 = Unit::new_normalize(c.rho.cos() * c.pole.into_inner() + c.rho.sin() * side);
            let p2 = Unit::new_normalize(c.rho.cos() * c.pole.into_inner() - c.rho.sin() * side);
            let q1 = self.project_point(&p1)?;
            let q2 = self.project_point(&p2)?;
            let d = q2 - q1;
            if d.norm() <= 1e-12 {
                return Err(GeomError::Degenerate("degenerate line image".into()));
            }
            return Ok(ChartImage::Line { point: q1, dir: d.normalize() });
        }
        let q1 = self.project_point(&e1)?;
        let q2 = self.project_point(&e2)?;
        Ok(ChartImage::Circle(Circle2::new((q1 + q2) / 2.0, (q1 - q2).norm() / 2.0)))
    }

    /// Unproject a chart circle to a spherical circle via three points.
    pub fn unproject_circle(&self, c: &Circle2) -> Result<SphericalCircle> {
        let mut pts = Vec::with_capacity(3);
        for k in 0..3 {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / 3.0;
            let q = c.center + c.r * Vec2::new(th.cos(), th.sin());
            pts.push(self.unproject_point(q));
        }
        let n = (pts[1].into_inner() - pts[0].into_inner())
            .cross(&(pts[2].into_inner() - pts[0].into_inner()));
        if n.norm() <= 1e-14 {
            return Err(GeomError::Degenerate("chart circle unprojects degenerately".into()));
        }
        let pole = Unit::new_normalize(n);
        let cosr = pole.dot(&pts[0]).clamp(-1.0, 1.0);
        SphericalCircle::new(pole, cosr.acos())
    }
}

/// Choose a stereographic pole well away from all the given circles:
/// maximizes the minimum angular distance over a deterministic 92-point
/// Fibonacci sampling of the sphere.
pub fn well_conditioned_pole(circles: &[SphericalCircle]) -> Dir3 {
    let n = 92usize;
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let mut best = (f64::NEG_INFINITY, Vec3::z());
    for i in 0..n {
        let y = 1.0 - 2.0 * (i as f64 + 0.5) / (n as f64);
        let r = (1.0 - y * y).sqrt();
        let th = golden * i as f64;
        let p = Vec3::new(r * th.cos(), y, r * th.sin());
        let pd = Unit::new_normalize(p);
        let score = circles.iter().map(|c| c.angular_distance(&pd)).fold(f64::INFINITY, f64::min);
        if score > best.0 {
            best = (score, p);
        }
    }
    Unit::new_normalize(best.1)
}

/// A Hart-circle candidate with its tangency residual to the fourth circle.
#[derive(Debug, Clone, Copy)]
pub struct HartCandidate {
    pub circle: SphericalCircle,
    pub fourth_residual: f64,
}

/// All circles tangent to the four in/ex circles of a spherical triangle,
/// excluding the triangle's own side great-circles (which are tangent to all
/// four by construction).
///
/// Solves the planar Apollonius problem for the first three circles in a
/// well-conditioned stereographic chart over all 8 sign patterns, maps the
/// candidates back and keeps those tangent to the fourth circle within `tol`
/// (an angle). Candidates are sorted by the fourth-circle residual; rejected
/// candidates are returned too so callers can assess separation.
pub fn hart_circles(
    side_poles: &[Dir3; 3],
    inscribed: &[SphericalCircle; 4],
    tol: f64,
) -> Result<(Vec<HartCandidate>, Vec<HartCandidate>)> {
    let mut all: Vec<SphericalCircle> = inscribed.to_vec();
    for p in side_poles {
        all.push(SphericalCircle::new(*p, std::f64::consts::FRAC_PI_2)?);
    }
    let pole = well_conditioned_pole(&all);
    let chart = Stereographic::new(pole);

    let mut projected = Vec::with_capacity(3);
    for c in &inscribed[..3] {
        match chart.project_circle(c, 1e-9)? {
            ChartImage::Circle(pc) => projected.push(pc),
            ChartImage::Line { .. } => {
                return Err(GeomError::Unsupported(
                    "input circle projects to a line in the chosen chart".into(),
                ))
            }
        }
    }
    let chart_circles = [projected[0], projected[1], projected[2]];
    let sides: Vec<SphericalCircle> = all[4..].to_vec();

    let ptol = Tolerance::closed_form(
        chart_circles.iter().map(|c| c.center.norm() + c.r).fold(1.0, f64::max),
    );
    let mut accepted: Vec<HartCandidate> = Vec::new();
    let mut rejected: Vec<HartCandidate> = Vec::new();
    for pattern in 0..8u32 {
        let signs = [
            if pattern & 1 == 0 { 1.0 } else { -1.0 },
            if pattern & 2 == 0 { 1.0 } else { -1.0 },
            if pattern & 4 == 0 { 1.0 } else { -1.0 },
        ];
        let sols = match planar_apollonius(&chart_circles, signs, &ptol) {
            Ok(s) => s,
            Err(_) => continue,
        };
        for sol in sols {
            let sc = match chart.unproject_circle(&sol) {
                Ok(sc) => sc,
                Err(_) => continue,
            };
            if sides.iter().any(|s| sc.same_circle(s, 1e-6)) {
                continue;
            }
            let res = class_tangency_residual(&sc, &inscribed[3]);
            let list = if res <= tol { &mut accepted } else { &mut rejected };
            if !list.iter().any(|c| c.circle.same_circle(&sc, 1e-9)) {
                list.push(HartCandidate { circle: sc, fourth_residual: res });
            }
        }
    }
    accepted.sort_by(|a, b| a.fourth_residual.total_cmp(&b.fourth_residual));
    rejected.sort_by(|a, b| a.fourth_residual.total_cmp(&b.fourth_residual));
    Ok((accepted, rejected))
}

/// Best circle tangent to all four in/ex circles of a spherical triangle.
///
/// Errors with `TheoremViolation` when no candidate passes the fourth
/// tangency; the caller surfaces that in reports rather than dropping it.
pub fn hart_circle(
    side_poles: &[Dir3; 3],
    inscribed: &[SphericalCircle; 4],
    tol: f64,
) -> Result<SphericalCircle> {
    let (accepted, rejected) = hart_circles(side_poles, inscribed, tol)?;
    accepted.first().map(|c| c.circle).ok_or_else(|| GeomError::TheoremViolation {
        check: "hart-circle fourth tangency".into(),
        residual: rejected.first().map(|c| c.fourth_residual).unwrap_or(f64::INFINITY),
    })
}
