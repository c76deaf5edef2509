//! Conic sections of cones: extraction in focal form, Dandelin-sphere
//! cross-checks, tangent lines, and support-line tangency gaps.

use crate::error::{GeomError, Result};
use crate::geom::{orthonormal_basis, Cone, Line3, Plane, Point3, Sphere, Vec3};
use crate::tol::Tolerance;
use nalgebra::{Matrix2, Unit, Vector2};

pub type Vec2 = Vector2<f64>;

/// Central conic in focal form: carrier plane, the two foci, and the signed
/// squared semi-minor axis (negative for hyperbolas, where the minor axis is
/// imaginary). The squared semi-major axis is `b_sq + |f1 - f2|^2 / 4`.
#[derive(Debug, Clone, Copy)]
pub struct ConicFoci {
    pub plane: Plane,
    pub f1: Point3,
    pub f2: Point3,
    pub b_sq: f64,
}

impl ConicFoci {
    pub fn new(plane: Plane, f1: Point3, f2: Point3, b_sq: f64) -> Result<Self> {
        if b_sq == 0.0 {
            return Err(GeomError::Degenerate("b^2 must be nonzero".into()));
        }
        let c_sq = (f1 - f2).norm_squared() / 4.0;
        if b_sq + c_sq <= 0.0 {
            return Err(GeomError::Degenerate("inconsistent focal data: a^2 <= 0".into()));
        }
        for f in [f1, f2] {
            if plane.distance(f) > 1e-9 * (1.0 + f.norm()) {
                return Err(GeomError::OffPlane { dist: plane.distance(f) });
            }
        }
        Ok(ConicFoci { plane, f1: plane.project(f1), f2: plane.project(f2), b_sq })
    }

    pub fn center(&self) -> Point3 {
        (self.f1 + self.f2) / 2.0
    }

    pub fn a_sq(&self) -> f64 {
        self.b_sq + (self.f1 - self.f2).norm_squared() / 4.0
    }

    pub fn is_ellipse(&self) -> bool {
        self.b_sq > 0.0
    }

    /// Principal in-plane axes: unit major direction and its in-plane normal.
    pub fn axes(&self) -> (Vec3, Vec3) {
        let d = self.f2 - self.f1;
        let e1 = if d.norm() > 1e-12 {
            d.normalize()
        } else {
            orthonormal_basis(&self.plane.normal).0
        };
        let e2 = self.plane.normal.cross(&e1);
        (e1, e2)
    }

    /// Frame coordinates of an in-plane point relative to the center.
    fn frame_coords(&self, p: Point3) -> Vec2 {
        let (e1, e2) = self.axes();
        let w = p - self.center();
        Vec2::new(w.dot(&e1), w.dot(&e2))
    }

    /// Tangent lines through an in-plane point (0, 1 or 2).
    ///
    /// Dual-conic solve: lines `u xi + v eta = 1` in the principal frame are
    /// tangent iff `a^2 u^2 + b^2 v^2 = 1`; lines through a fixed point form
    /// a linear slice of that dual conic.
    pub fn tangent_lines_from(&self, p: Point3, tol: &Tolerance) -> Result<Vec<Line3>> {
        if self.plane.distance(p) > tol.len() {
            return Err(GeomError::OffPlane { dist: self.plane.distance(p) });
        }
        let q = self.frame_coords(p);
        let n2 = q.norm_squared();
        if n2 <= tol.len() * tol.len() {
            return Ok(Vec::new());
        }
        let u0 = q / n2;
        let w = Vec2::new(-q.y, q.x);
        let a_sq = self.a_sq();
        let qa = a_sq * w.x * w.x + self.b_sq * w.y * w.y;
        let qb = 2.0 * (a_sq * u0.x * w.x + self.b_sq * u0.y * w.y);
        let qc = a_sq * u0.x * u0.x + self.b_sq * u0.y * u0.y - 1.0;
        let mut ts = Vec::new();
        let scale_q = a_sq.abs() + self.b_sq.abs();
        if qa.abs() <= 1e-14 * scale_q {
            if qb.abs() > 1e-300 {
                ts.push(-qc / qb);
            }
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            let disc_scale = qb * qb + 4.0 * qa.abs() * qc.abs() + 1e-300;
            if disc.abs() <= 1e-12 * disc_scale {
                ts.push(-qb / (2.0 * qa));
            } else if disc > 0.0 {
                let sd = disc.sqrt();
                let qq = -0.5 * (qb + qb.signum() * sd);
                ts.push(qq / qa);
                if qq.abs() > 1e-300 {
                    ts.push(qc / qq);
                }
            }
        }
        let (e1, e2) = self.axes();
        let center = self.center();
        let mut out = Vec::new();
        for t in ts {
            let uv = u0 + t * w;
            let m2 = uv.norm_squared();
            if m2 <= 1e-300 {
                continue;
            }
            // Line {x : uv . xi(x) = 1} in the frame.
            let base = center + (uv.x * e1 + uv.y * e2) / m2;
            let dir3 = self.plane.normal.into_inner().cross(&(uv.x * e1 + uv.y * e2));
            if dir3.norm() <= 1e-300 {
                continue;
            }
            out.push(Line3::new(base, Unit::new_normalize(dir3)));
        }
        Ok(out)
    }

    /// Tangency gap of an in-plane line: distance from exact tangency, via
    /// the support function. Positive for secants and for external misses;
    /// zero exactly at tangency.
    pub fn support_gap(&self, line: &Line3) -> f64 {
        // In-plane unit normal of the line.
        let m3 = self.plane.normal.into_inner().cross(&line.dir.into_inner());
        let m3 = if m3.norm() > 1e-300 { m3.normalize() } else { return f64::INFINITY };
        let (e1, e2) = self.axes();
        let m = Vec2::new(m3.dot(&e1), m3.dot(&e2));
        let c_line = m3.dot(&(line.point - self.center()));
        let s2 = self.a_sq() * m.x * m.x + self.b_sq * m.y * m.y;
        if s2 >= 0.0 {
            let s = s2.sqrt();
            (c_line - s).abs().min((c_line + s).abs())
        } else {
            // No tangent of this direction (hyperbola): continuous positive
            // extension of the gap.
            c_line.hypot((-s2).sqrt())
        }
    }

    /// Product of the focal distances to a line, signed negative when the
    /// foci lie on opposite sides; equals `b_sq` for tangents.
    pub fn focal_product(&self, line: &Line3) -> f64 {
        let m3 = self.plane.normal.into_inner().cross(&line.dir.into_inner());
        let m3 = m3.normalize();
        let d1 = m3.dot(&(self.f1 - line.point));
        let d2 = m3.dot(&(self.f2 - line.point));
        d1 * d2
    }
}

/// Parabola in a carrier plane: focus and directrix.
#[derive(Debug, Clone, Copy)]
pub struct Parabola2 {
    pub plane: Plane,
    pub focus: Point3,
    pub directrix: Line3,
}

impl Parabola2 {
    /// Vertex, axis direction (from vertex towards focus) and focal distance.
    fn vertex_frame(&self) -> (Point3, Vec3, Vec3, f64) {
        let foot = {
            let w = self.focus - self.directrix.point;
            self.directrix.point + w.dot(&self.directrix.dir) * self.directrix.dir.into_inner()
        };
        let axis = self.focus - foot;
        let p = axis.norm() / 2.0;
        let ex = axis.normalize();
        let ey = self.plane.normal.into_inner().cross(&ex);
        ((foot + self.focus) / 2.0, ex, ey, p)
    }

    /// Tangent lines through an in-plane point.
    pub fn tangent_lines_from(&self, pt: Point3, _tol: &Tolerance) -> Result<Vec<Line3>> {
        let (vertex, ex, ey, p) = self.vertex_frame();
        let w = pt - vertex;
        let (x0, y0) = (w.dot(&ex), w.dot(&ey));
        // Tangent with slope m in the vertex frame: y = m x + p/m.
        let slope_line = |m: f64| {
            Line3::new(vertex + (p / m) * ey, Unit::new_normalize(ex + m * ey))
        };
        let mut out = Vec::new();
        if x0.abs() <= 1e-12 * (1.0 + y0.abs()) {
            // Vertical tangent at the vertex passes through every (0, y).
            out.push(Line3::new(vertex, Unit::new_normalize(ey)));
            if y0.abs() > 1e-12 {
                out.push(slope_line(p / y0));
            }
        } else {
            let disc = y0 * y0 - 4.0 * p * x0;
            if disc >= 0.0 {
                let sd = disc.sqrt();
                for m in [(y0 + sd) / (2.0 * x0), (y0 - sd) / (2.0 * x0)] {
                    if m.abs() > 1e-300 {
                        out.push(slope_line(m));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Tangency gap of an in-plane line.
    pub fn support_gap(&self, line: &Line3) -> f64 {
        let (vertex, ex, ey, p) = self.vertex_frame();
        let m3 = self.plane.normal.into_inner().cross(&line.dir.into_inner());
        let m3 = if m3.norm() > 1e-300 { m3.normalize() } else { return f64::INFINITY };
        let (m1, m2) = (m3.dot(&ex), m3.dot(&ey));
        let c_line = m3.dot(&(line.point - vertex));
        if m1.abs() <= 1e-12 {
            // Lines parallel to the axis are always secant.
            return c_line.abs() + p;
        }
        let c_tan = -p * m2 * m2 / m1;
        (c_line - c_tan).abs()
    }
}

/// A conic section of a cone by a plane.
#[derive(Debug, Clone, Copy)]
pub enum ConicSection {
    Central(ConicFoci),
    Parabola(Parabola2),
}

impl ConicSection {
    pub fn tangent_lines_from(&self, p: Point3, tol: &Tolerance) -> Result<Vec<Line3>> {
        match self {
            ConicSection::Central(c) => c.tangent_lines_from(p, tol),
            ConicSection::Parabola(c) => c.tangent_lines_from(p, tol),
        }
    }

    pub fn support_gap(&self, line: &Line3) -> f64 {
        match self {
            ConicSection::Central(c) => c.support_gap(line),
            ConicSection::Parabola(c) => c.support_gap(line),
        }
    }

    pub fn as_central(&self) -> Option<&ConicFoci> {
        match self {
            ConicSection::Central(c) => Some(c),
            _ => None,
        }
    }
}

/// Intersection conic of a cone and a plane, classified by the restricted
/// quadratic form and returned in focal form.
pub fn conic_from_cone_plane(cone: &Cone, plane: &Plane, tol: &Tolerance) -> Result<ConicSection> {
    let sd = plane.signed_distance(cone.apex);
    if sd.abs() <= tol.len() {
        return Err(GeomError::Degenerate("plane through the apex cuts a line pair".into()));
    }
    let origin = cone.apex - sd * plane.normal.into_inner();
    let (u, v) = orthonormal_basis(&plane.normal);
    let a = cone.axis.into_inner();
    let (au, av) = (a.dot(&u), a.dot(&v));
    let a0 = -sd * a.dot(&plane.normal);
    let c2 = cone.half_angle.cos().powi(2);
    let h2 = sd * sd;

    let qa = au * au - c2;
    let qb = au * av;
    let qc = av * av - c2;
    let qd = a0 * au;
    let qe = a0 * av;
    let qf = a0 * a0 - c2 * h2;

    let m = Matrix2::new(qa, qb, qb, qc);
    let det = qa * qc - qb * qb;
    let norm = qa.abs().max(qc.abs()).max(qb.abs()).max(1e-300);
    if det.abs() <= 1e-12 * norm * norm {
        // Parabolic branch.
        let eig = nalgebra::SymmetricEigen::new(m);
        // Index of the (near-)zero eigenvalue.
        let (i0, i1) = if eig.eigenvalues[0].abs() < eig.eigenvalues[1].abs() { (0, 1) } else { (1, 0) };
        let ev0 = eig.eigenvectors.column(i0).into_owned();
        let ev1 = eig.eigenvectors.column(i1).into_owned();
        let lam = eig.eigenvalues[i1];
        let dp = qd * ev0.x + qe * ev0.y;
        let eq = qd * ev1.x + qe * ev1.y;
        if dp.abs() <= 1e-12 * norm {
            return Err(GeomError::Degenerate("section degenerates to parallel lines".into()));
        }
        // lam q^2 + 2 dp p + 2 eq q + qf = 0, vertex at (p0, q0).
        let q0 = -eq / lam;
        let p0 = -(qf - eq * eq / lam) / (2.0 * dp);
        let four_p = -2.0 * dp / lam;
        let focal = four_p / 4.0;
        let dir_p = ev0.x * u + ev0.y * v;
        let dir_q = ev1.x * u + ev1.y * v;
        let vertex = origin + p0 * dir_p + q0 * dir_q;
        let focus = vertex + focal * dir_p;
        let dx_pt = vertex - focal * dir_p;
        let directrix = Line3::new(dx_pt, Unit::new_normalize(dir_q));
        return Ok(ConicSection::Parabola(Parabola2 { plane: *plane, focus, directrix }));
    }

    let center2 = -m
        .lu()
        .solve(&Vec2::new(qd, qe))
        .ok_or_else(|| GeomError::Degenerate("singular central solve".into()))?;
    let f_c = qf + qd * center2.x + qe * center2.y;
    let eig = nalgebra::SymmetricEigen::new(m);
    let s0 = -f_c / eig.eigenvalues[0];
    let s1 = -f_c / eig.eigenvalues[1];
    // Transverse/major axis carries the larger semi-axis square.
    let (major_idx, a_sq, b_sq) = if s0 >= s1 { (0, s0, s1) } else { (1, s1, s0) };
    if a_sq <= 0.0 {
        return Err(GeomError::NoRealSolution("section has no real points".into()));
    }
    let ev = eig.eigenvectors.column(major_idx).into_owned();
    let major3 = ev.x * u + ev.y * v;
    let center3 = origin + center2.x * u + center2.y * v;
    let c_dist = (a_sq - b_sq).max(0.0).sqrt();
    let f1 = center3 - c_dist * major3;
    let f2 = center3 + c_dist * major3;
    Ok(ConicSection::Central(ConicFoci::new(*plane, f1, f2, b_sq)?))
}

/// Spheres inscribed in the cone tangent to the plane, with their tangency
/// points (the conic's foci, by Dandelin's argument).
pub fn dandelin_spheres(cone: &Cone, plane: &Plane) -> Vec<(Sphere, Point3)> {
    let mut out = Vec::new();
    let sin = cone.half_angle.sin();
    let n = plane.normal.into_inner();
    let a = cone.axis.into_inner();
    let s0 = plane.signed_distance(cone.apex);
    let na = n.dot(&a);
    // Center apex + t a has radius |t| sin and signed plane distance s0 + t na.
    for sign_t in [1.0f64, -1.0] {
        for sign_d in [1.0f64, -1.0] {
            // s0 + t na = sign_d * |t| sin, |t| = sign_t * t.
            let denom = na - sign_d * sign_t * sin;
            if denom.abs() <= 1e-14 {
                continue;
            }
            let t = -s0 / denom;
            if t * sign_t <= 1e-12 {
                continue;
            }
            let center = cone.apex + t * a;
            let r = t.abs() * sin;
            if r <= 1e-12 {
                continue;
            }
            if (plane.distance(center) - r).abs() <= 1e-9 * (1.0 + r) {
                let touch = center - plane.signed_distance(center) * n;
                if !out
                    .iter()
                    .any(|(s, _): &(Sphere, Point3)| (s.center - center).norm() < 1e-9 * (1.0 + r))
                {
                    out.push((Sphere::new(center, r), touch));
                }
            }
        }
    }
    out
}

/// A cone circumscribed about two spheres with its apex off the given plane
/// (the similitude-center choice is forced by that requirement), plus the
/// sign of the homothety relating the spheres through the apex.
pub fn circumscribed_cone_off_plane(
    s1: &Sphere,
    s2: &Sphere,
    plane: &Plane,
    tol: &Tolerance,
) -> Result<(Cone, f64)> {
    let centers = crate::geom::similitude_centers(s1, s2)?;
    let mut candidates = Vec::new();
    if let Some(e) = centers.external {
        candidates.push(e);
    }
    candidates.push(centers.internal);
    for apex in candidates {
        if plane.distance(apex) <= 1e3 * tol.len() {
            continue;
        }
        if (apex - s1.center).norm() <= s1.r || (apex - s2.center).norm() <= s2.r {
            continue;
        }
        let cone = crate::geom::tangent_cone_from_apex(apex, s1)?;
        if crate::geom::cone_sphere_tangency_residual(&cone, s2).abs() > 1e3 * tol.len() {
            continue;
        }
        let sign_k = if (s1.center - apex).dot(&(s2.center - apex)) > 0.0 { 1.0 } else { -1.0 };
        return Ok((cone, sign_k));
    }
    Err(GeomError::Unsupported("no circumscribed cone with apex off the plane".into()))
}
