//! Triangle sphere-lifts and the spatial route to Feuerbach's theorem:
//! the up-in-ex-touch configuration, the inversion argument for the
//! Euler-Chapple relations, the xi/chi circle apparatus with its pencil
//! lemmas, the radical-center theorem, and the full lift chain.
//!
//! Triangles are embedded in 3D with an explicit carrier plane so that the
//! sphere machinery of [`crate::geom`] applies unchanged; lifted spheres
//! touch the carrier plane at their circle's center on the normal side.

use crate::error::{GeomError, Result};
use crate::geom::{
    invert, power_of_point_circle, power_of_point_sphere, radical_axis, Circle3, InversionImage,
    Invertible, Line3, Plane, Point3, Sphere, Vec3,
};
use crate::tol::Tolerance;

/// A triangle with its classical derived data, all embedded in a carrier
/// plane in 3-space.
#[derive(Debug, Clone)]
pub struct TriangleFrame {
    pub a: Point3,
    pub b: Point3,
    pub c: Point3,
    pub plane: Plane,
    /// Side lengths opposite each vertex.
    pub sides: [f64; 3],
    pub area: f64,
    pub incircle: Circle3,
    /// Excircles opposite A, B, C.
    pub excircles: [Circle3; 3],
    pub circumcircle: Circle3,
    pub orthocenter: Point3,
    pub nine_point: Circle3,
    /// Midpoints of AH, BH, CH.
    pub euler_midpoints: [Point3; 3],
    /// Midpoint of IH.
    pub incenter_mid: Point3,
    pub scale: f64,
}

impl TriangleFrame {
    pub fn new(a: Point3, b: Point3, c: Point3) -> Result<Self> {
        let plane = Plane::from_points(a, b, c)?;
        let la = (b - c).norm();
        let lb = (c - a).norm();
        let lc = (a - b).norm();
        let scale = la.max(lb).max(lc);
        let area = 0.5 * (b - a).cross(&(c - a)).norm();
        if area <= 1e-12 * scale * scale {
            return Err(GeomError::Degenerate("flat triangle".into()));
        }
        let s = (la + lb + lc) / 2.0;
        let incenter = (la * a + lb * b + lc * c) / (la + lb + lc);
        let incircle = Circle3::new(plane, incenter, area / s)?;
        let exc = |sa: f64, sb: f64, sc: f64, pa: Point3, pb: Point3, pc: Point3, rs: f64| {
            Circle3::new(plane, (-sa * pa + sb * pb + sc * pc) / (-sa + sb + sc), area / rs)
        };
        let excircles = [
            exc(la, lb, lc, a, b, c, s - la)?,
            exc(lb, lc, la, b, c, a, s - lb)?,
            exc(lc, la, lb, c, a, b, s - lc)?,
        ];
        let circumcircle = Circle3::circumcircle(a, b, c)?;
        let o = circumcircle.center;
        let orthocenter = a + b + c - 2.0 * o;
        let n = (o + orthocenter) / 2.0;
        let nine_point = Circle3::new(plane, n, circumcircle.r / 2.0)?;
        let euler_midpoints = [
            (a + orthocenter) / 2.0,
            (b + orthocenter) / 2.0,
            (c + orthocenter) / 2.0,
        ];
        let incenter_mid = (incenter + orthocenter) / 2.0;
        Ok(TriangleFrame {
            a,
            b,
            c,
            plane,
            sides: [la, lb, lc],
            area,
            incircle,
            excircles,
            circumcircle,
            orthocenter,
            nine_point,
            euler_midpoints,
            incenter_mid,
            scale,
        })
    }

    pub fn vertices(&self) -> [Point3; 3] {
        [self.a, self.b, self.c]
    }

    /// Unit normal of the carrier plane (the lift side).
    pub fn normal(&self) -> Vec3 {
        self.plane.normal.into_inner()
    }

    /// Contact point of the incircle with the side opposite vertex `i`.
    pub fn incircle_contact(&self, i: usize) -> Point3 {
        let v = self.vertices();
        let (p, q) = (v[(i + 1) % 3], v[(i + 2) % 3]);
        let side = (q - p).norm();
        let s = (self.sides[0] + self.sides[1] + self.sides[2]) / 2.0;
        // Distance from p to the contact point is s - |side opposite p|.
        let d = s - self.sides[(i + 1) % 3];
        p + (d / side) * (q - p)
    }

    /// Sphere built diametrally on the circumcircle.
    pub fn circum_diametral(&self) -> Sphere {
        Sphere::new(self.circumcircle.center, self.circumcircle.r)
    }

    /// Sphere built diametrally on the nine-point circle.
    pub fn nine_point_diametral(&self) -> Sphere {
        Sphere::new(self.nine_point.center, self.nine_point.r)
    }

    /// Sphere built diametrally on the incircle.
    pub fn incircle_diametral(&self) -> Sphere {
        Sphere::new(self.incircle.center, self.incircle.r)
    }

    /// Lift of a coplanar circle: the sphere of the same radius tangent to
    /// the carrier plane at the circle's center (`side` = +-1).
    pub fn lift(&self, circle: &Circle3, side: f64) -> Sphere {
        Sphere::new(circle.center + side * circle.r * self.normal(), circle.r)
    }
}

/// Tangency gap of two spheres: distance of the center gap from exact
/// (internal or external) tangency.
pub fn sphere_tangency_gap(s1: &Sphere, s2: &Sphere) -> f64 {
    let d = (s1.center - s2.center).norm();
    (d - (s1.r + s2.r)).abs().min((d - (s1.r - s2.r).abs()).abs())
}

/// Tangency gap of two coplanar circles.
pub fn circle_tangency_gap(c1: &Circle3, c2: &Circle3) -> f64 {
    let d = (c1.center - c2.center).norm();
    (d - (c1.r + c2.r)).abs().min((d - (c1.r - c2.r).abs()).abs())
}

/// Residuals of the up-in-ex-touch configuration: the circum-diametral
/// sphere touches the lifted incircle sphere (internally) and the three
/// lifted excircle spheres (externally), and the four mirror lifts.
#[derive(Debug, Clone)]
pub struct UpInExReport {
    /// Tangency residuals: [incircle +, incircle -, ex_a +, ex_a -, ...].
    pub residuals: [f64; 8],
}

impl UpInExReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn up_in_ex_touch(tf: &TriangleFrame) -> UpInExReport {
    let delta = tf.circum_diametral();
    let r = tf.circumcircle.r;
    let mut residuals = [0.0; 8];
    let mut k = 0;
    for side in [1.0, -1.0] {
        let lifted = tf.lift(&tf.incircle, side);
        let d = (lifted.center - delta.center).norm();
        residuals[k] = (d - (r - tf.incircle.r)).abs();
        k += 1;
    }
    for exc in &tf.excircles {
        for side in [1.0, -1.0] {
            let lifted = tf.lift(exc, side);
            let d = (lifted.center - delta.center).norm();
            residuals[k] = (d - (r + exc.r)).abs();
            k += 1;
        }
    }
    UpInExReport { residuals }
}

/// Residuals of the inversion argument behind the Euler-Chapple relations:
/// inverting the circum-diametral sphere in the incircle-diametral sphere
/// yields the diametral sphere (radius r/2) on the circle through the side
/// midpoints of the contact (Gergonne) triangle, while the lifted incircle
/// sphere maps to a plane parallel to the carrier at height r/2.
#[derive(Debug, Clone, Copy)]
pub struct InversionProofReport {
    pub image_radius_residual: f64,
    pub midpoint_circle_residual: f64,
    pub image_plane_height_residual: f64,
    /// Tangency of the two images (plane and sphere), which transports back
    /// to the tangency of the originals.
    pub image_tangency_residual: f64,
}

pub fn inversion_proof_check(tf: &TriangleFrame, _tol: &Tolerance) -> Result<InversionProofReport> {
    let i = tf.incircle.center;
    let r = tf.incircle.r;
    let k = r * r;
    let delta = tf.circum_diametral();
    let img = invert(i, k, &Invertible::Sphere(delta))?;
    let InversionImage::Sphere(delta_img) = img else {
        return Err(GeomError::Degenerate("circumsphere passes through the incenter".into()));
    };
    let image_radius_residual = (delta_img.r - r / 2.0).abs();

    let contacts = [tf.incircle_contact(0), tf.incircle_contact(1), tf.incircle_contact(2)];
    let mids = [
        (contacts[1] + contacts[2]) / 2.0,
        (contacts[2] + contacts[0]) / 2.0,
        (contacts[0] + contacts[1]) / 2.0,
    ];
    let mid_circle = Circle3::circumcircle(mids[0], mids[1], mids[2])?;
    let midpoint_circle_residual = (delta_img.center - mid_circle.center)
        .norm()
        .max((delta_img.r - mid_circle.r).abs());

    let lifted = tf.lift(&tf.incircle, 1.0);
    let img_plane = invert(i, k, &Invertible::Sphere(lifted))?;
    let InversionImage::Plane(plane_img) = img_plane else {
        return Err(GeomError::Degenerate("lifted incircle sphere must map to a plane".into()));
    };
    let image_plane_height_residual = (plane_img.distance(i) - r / 2.0).abs();
    let image_tangency_residual = (plane_img.distance(delta_img.center) - delta_img.r).abs();
    Ok(InversionProofReport {
        image_radius_residual,
        midpoint_circle_residual,
        image_plane_height_residual,
        image_tangency_residual,
    })
}

/// Circle of radius r*sqrt(2) about the incenter; it cuts chords of length
/// 2r on each side line of the triangle.
pub fn xi_circle(tf: &TriangleFrame) -> Circle3 {
    Circle3::new(tf.plane, tf.incircle.center, tf.incircle.r * 2.0f64.sqrt())
        .expect("incenter lies on the carrier plane")
}

/// Circle whose diameter is the cevian from vertex `i` to the incircle's
/// contact point on the opposite side.
pub fn chi_circle(tf: &TriangleFrame, i: usize) -> Circle3 {
    let v = tf.vertices()[i];
    let t = tf.incircle_contact(i);
    Circle3::new(tf.plane, (v + t) / 2.0, (v - t).norm() / 2.0)
        .expect("cevian endpoints lie on the carrier plane")
}

/// Circle on the side opposite vertex `i` as diameter.
pub fn side_diameter_circle(tf: &TriangleFrame, i: usize) -> Circle3 {
    let v = tf.vertices();
    let (p, q) = (v[(i + 1) % 3], v[(i + 2) % 3]);
    Circle3::new(tf.plane, (p + q) / 2.0, (p - q).norm() / 2.0)
        .expect("side endpoints lie on the carrier plane")
}

/// Distance between two coplanar lines, as the maximum offset of probe
/// points of one from the other over the span `scale`.
fn coplanar_line_distance(l1: &Line3, l2: &Line3, scale: f64) -> f64 {
    let mut d: f64 = 0.0;
    for t in [-scale, 0.0, scale] {
        d = d.max(l1.distance(l2.at(t)));
    }
    d
}

/// Coaxiality residual of three coplanar circles, via two routes:
/// (a) collinear centers plus agreement of the pairwise radical axes, and
/// (b) collinear centers plus the power-ratio relation at a point of the
/// third circle. Returns `(max combined residual, |route_a - route_b|)`.
pub fn coaxial_test(c1: &Circle3, c2: &Circle3, c3: &Circle3, tol: &Tolerance) -> Result<(f64, f64)> {
    let center_line = Line3::through(c1.center, c2.center)
        .map_err(|_| GeomError::Concentric)?;
    let collinearity = center_line.distance(c3.center);
    let ax12 = radical_axis(c1, c2)?;
    let ax13 = radical_axis(c1, c3)?;
    let scale = tol.scale;
    let route_a = collinearity.max(coplanar_line_distance(&ax12, &ax13, scale));

    // Route (b): power-ratio relation at a point of c3, avoiding points
    // where the denominator power vanishes.
    let mut ratio_residual = f64::INFINITY;
    for k in 0..8 {
        let p = c3.point_at(0.37 + k as f64 * std::f64::consts::FRAC_PI_4);
        let pa = power_of_point_circle(p, c1, tol)?;
        let pb = power_of_point_circle(p, c2, tol)?;
        if pb.abs() <= 1e-6 * scale * scale {
            continue;
        }
        let u = (c2.center - c1.center).normalize();
        let da = (c1.center - c3.center).dot(&u);
        let db = (c2.center - c3.center).dot(&u);
        if db.abs() <= 1e-12 * scale {
            continue;
        }
        // Scale the dimensionless ratio gap back to power units.
        let res = (pa / pb - da / db).abs() * pb.abs() / (scale * scale);
        ratio_residual = ratio_residual.min(res * scale * scale);
        break;
    }
    if !ratio_residual.is_finite() {
        return Err(GeomError::Unresolved("no usable probe point on the third circle".into()));
    }
    let route_b = collinearity.max(ratio_residual / scale);
    Ok((route_a.max(route_b), (route_a - route_b).abs()))
}

/// Residual of the pencil power-ratio relation at a point `p` of the third
/// circle; `None` when the denominator power vanishes (point on `beta`).
pub fn pencil_ratio_residual(
    alpha: &Circle3,
    beta: &Circle3,
    gamma: &Circle3,
    p: Point3,
    tol: &Tolerance,
) -> Result<Option<f64>> {
    let on_gamma = ((p - gamma.center).norm() - gamma.r).abs();
    if on_gamma > tol.len() {
        return Err(GeomError::OffPlane { dist: on_gamma });
    }
    let pa = power_of_point_circle(p, alpha, tol)?;
    let pb = power_of_point_circle(p, beta, tol)?;
    if pb.abs() <= tol.pow() {
        return Ok(None);
    }
    let u = (beta.center - alpha.center).normalize();
    let da = (alpha.center - gamma.center).dot(&u);
    let db = (beta.center - gamma.center).dot(&u);
    if db.abs() <= tol.len() {
        return Ok(None);
    }
    Ok(Some((pa / pb - da / db).abs()))
}

/// Residual of the common-radical-center property: the xi circle and the
/// three side-diameter circles have equal powers at the orthocenter.
pub fn radical_center_check(tf: &TriangleFrame, tol: &Tolerance) -> Result<f64> {
    let h = tf.orthocenter;
    let xi = xi_circle(tf);
    let p_xi = power_of_point_circle(h, &xi, tol)?;
    let mut res: f64 = 0.0;
    for i in 0..3 {
        let c = side_diameter_circle(tf, i);
        let p = power_of_point_circle(h, &c, tol)?;
        res = res.max((p - p_xi).abs());
    }
    Ok(res / (tf.scale * tf.scale))
}

/// Step-by-step residuals of the lift proof of Feuerbach's theorem.
#[derive(Debug, Clone)]
pub struct FeuerbachChainReport {
    /// The nine-point diametral sphere matches the circum-diametral sphere
    /// of the Euler-midpoint triangle.
    pub nine_point_match_residual: f64,
    /// The Euler-midpoint triangle's incenter is the midpoint of IH and its
    /// inradius is r/2.
    pub medial_incircle_residual: f64,
    /// Tangency of the nine-point diametral sphere with the lifted incircle
    /// sphere of the Euler-midpoint triangle (up-in-ex-touch applied there).
    pub medial_touch_residual: f64,
    /// The inversion centered above H at height r with power |IH|^2/2 maps
    /// the incircle-diametral sphere to the lifted medial incircle sphere.
    pub inversion_map_residual: f64,
    /// Power identity `Theta(S) = |IH|^2 / 2` (power units).
    pub theta_power_residual: f64,
    /// Independent identity `Theta(S) = theta(H) + r^2` (power units).
    pub theta_split_residual: f64,
    /// Relation `|IH|^2 - 2 r^2 = 2 theta(H)` (power units).
    pub eq_power_relation_residual: f64,
    /// Final tangency of the incircle and the nine-point circle, plus the
    /// classical distance check `|IN| = R/2 - r`.
    pub feuerbach_tangency_residual: f64,
    pub incenter_distance_residual: f64,
    /// Excircle tangencies: `|N I_a| = R/2 + r_a`.
    pub excircle_residuals: [f64; 3],
    /// Set for (near-)equilateral input, where only the direct checks run.
    pub equilateral_fallback: bool,
}

impl FeuerbachChainReport {
    pub fn max_residual(&self) -> f64 {
        let mut m = self
            .feuerbach_tangency_residual
            .max(self.incenter_distance_residual)
            .max(self.excircle_residuals.iter().copied().fold(0.0, f64::max));
        if !self.equilateral_fallback {
            m = m
                .max(self.nine_point_match_residual)
                .max(self.medial_incircle_residual)
                .max(self.medial_touch_residual)
                .max(self.inversion_map_residual);
        }
        m
    }
}

pub fn feuerbach_lift_chain(tf: &TriangleFrame, tol: &Tolerance) -> Result<FeuerbachChainReport> {
    let i = tf.incircle.center;
    let r = tf.incircle.r;
    let h = tf.orthocenter;
    let n9 = tf.nine_point.center;
    let big_r = tf.circumcircle.r;

    let feuerbach_tangency_residual = circle_tangency_gap(&tf.incircle, &tf.nine_point);
    let incenter_distance_residual = ((i - n9).norm() - (big_r / 2.0 - r)).abs();
    let mut excircle_residuals = [0.0; 3];
    for (k, exc) in tf.excircles.iter().enumerate() {
        excircle_residuals[k] = ((exc.center - n9).norm() - (big_r / 2.0 + exc.r)).abs();
    }

    let ih = (i - h).norm();
    if ih <= 1e3 * tol.len() {
        return Ok(FeuerbachChainReport {
            nine_point_match_residual: 0.0,
            medial_incircle_residual: 0.0,
            medial_touch_residual: 0.0,
            inversion_map_residual: 0.0,
            theta_power_residual: 0.0,
            theta_split_residual: 0.0,
            eq_power_relation_residual: 0.0,
            feuerbach_tangency_residual,
            incenter_distance_residual,
            excircle_residuals,
            equilateral_fallback: true,
        });
    }

    // (i) Up-in-ex-touch for the Euler-midpoint triangle: its circumcircle
    // is the nine-point circle and its circum-diametral sphere is Theta.
    let medial = TriangleFrame::new(tf.euler_midpoints[0], tf.euler_midpoints[1], tf.euler_midpoints[2])?;
    let theta = tf.nine_point_diametral();
    let nine_point_match_residual = (medial.circumcircle.center - theta.center)
        .norm()
        .max((medial.circumcircle.r - theta.r).abs());
    let medial_incircle_residual = (medial.incircle.center - tf.incenter_mid)
        .norm()
        .max((medial.incircle.r - r / 2.0).abs());
    // Lift on the same side as the main frame.
    let side = if medial.normal().dot(&tf.normal()) >= 0.0 { 1.0 } else { -1.0 };
    let upsilon = medial.lift(&medial.incircle, side);
    let medial_touch_residual = sphere_tangency_gap(&theta, &upsilon);

    // (ii) The inversion at S (above H at height r) with power |IH|^2/2
    // exchanges the incircle-diametral sphere and the lifted medial
    // incircle sphere, and fixes Theta.
    let s = h + r * tf.normal();
    let k = ih * ih / 2.0;
    let delta_in = tf.incircle_diametral();
    let img = invert(s, k, &Invertible::Sphere(delta_in))?;
    let inversion_map_residual = match img {
        InversionImage::Sphere(im) => {
            (im.center - upsilon.center).norm().max((im.r - upsilon.r).abs())
        }
        _ => f64::INFINITY,
    };
    let theta_power_residual = (power_of_point_sphere(s, &theta) - k).abs();
    let theta_h = power_of_point_circle(h, &tf.nine_point, tol)?;
    let theta_split_residual = (power_of_point_sphere(s, &theta) - theta_h - r * r).abs();

    // (iii) |IH|^2 - 2 r^2 = 2 theta(H).
    let eq_power_relation_residual = ((ih * ih - 2.0 * r * r) - 2.0 * theta_h).abs();

    Ok(FeuerbachChainReport {
        nine_point_match_residual,
        medial_incircle_residual,
        medial_touch_residual,
        inversion_map_residual,
        theta_power_residual,
        theta_split_residual,
        eq_power_relation_residual,
        feuerbach_tangency_residual,
        incenter_distance_residual,
        excircle_residuals,
        equilateral_fallback: false,
    })
}
