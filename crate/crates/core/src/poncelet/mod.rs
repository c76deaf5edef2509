//! Circle-conic Poncelet 3-pairs: the Laguerre criterion, an explicit
//! rotation/closure oracle, Thebault's semi-axis lemma, conic extraction
//! from cone sections, the cross-class 3-pair family sampler, and the
//! Euler-Chapple distance relations.

mod conic;

pub use conic::{
    circumscribed_cone_off_plane, conic_from_cone_plane, dandelin_spheres, ConicFoci,
    ConicSection, Parabola2, Vec2,
};

use crate::apollonius::{m_class, PencilMember, RefObject};
use crate::error::{GeomError, Result};
use crate::feuerbach::TriangleFrame;
use crate::geom::{Circle3, Line3, Plane, Point3, Sphere};
#[cfg(test)]
use crate::geom::Vec3;
use crate::tol::Tolerance;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Outcome of the triangle-closure oracle.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub closed: bool,
    /// Maximum closing tangency gap over usable starts (length units).
    pub residual: f64,
    /// Per-start gaps; `None` for skipped (degenerate) starts.
    pub per_start: Vec<Option<f64>>,
    pub usable: usize,
    pub skipped: usize,
}

/// Dimensionless Laguerre residual of a circle/central-conic pair:
/// `((R^2 - d1^2)(R^2 - d2^2) - 4 R^2 b^2) / R^4`; zero exactly on
/// Poncelet 3-pairs.
pub fn laguerre_residual(circle: &Circle3, conic: &ConicFoci) -> f64 {
    let r2 = circle.r * circle.r;
    let d1 = (circle.center - conic.f1).norm_squared();
    let d2 = (circle.center - conic.f2).norm_squared();
    ((r2 - d1) * (r2 - d2) - 4.0 * r2 * conic.b_sq) / (r2 * r2)
}

/// Criterion residual for a circle/parabola 3-pair: the focus must lie on
/// the circle, so the residual is `||O - F| - R|`.
pub fn parabola_criterion(circle: &Circle3, parabola: &Parabola2) -> f64 {
    ((circle.center - parabola.focus).norm() - circle.r).abs()
}

/// Second intersection of an in-plane line through a point of the circle.
fn other_circle_intersection(circle: &Circle3, from: Point3, line: &Line3, tol: &Tolerance) -> Option<Point3> {
    let d = line.dir.into_inner();
    let t = -2.0 * d.dot(&(from - circle.center));
    if t.abs() <= tol.len() {
        return None; // line tangent to the circle at `from`
    }
    Some(from + t * d)
}

/// Step the inscribed-circumscribed triangle construction from a start
/// point, returning the three vertices and the closing line's tangency gap.
fn triangle_from_start(
    circle: &Circle3,
    conic: &ConicSection,
    start: Point3,
    branch: usize,
    tol: &Tolerance,
) -> Option<([Point3; 3], f64)> {
    let lines_a = conic.tangent_lines_from(start, tol).ok()?;
    if lines_a.len() < 2 {
        return None; // start on or inside the conic
    }
    let first = lines_a.get(branch % lines_a.len())?;
    let b = other_circle_intersection(circle, start, first, tol)?;
    let lines_b = conic.tangent_lines_from(b, tol).ok()?;
    // Exclude the incoming tangent by direction comparison.
    let incoming = first.dir.into_inner();
    let mut next = None;
    let mut ambiguous = false;
    for l in &lines_b {
        let cross = l.dir.into_inner().cross(&incoming).norm();
        if cross <= 1e-9 {
            continue;
        }
        if next.is_some() {
            ambiguous = true;
        }
        next = Some(*l);
    }
    if ambiguous {
        return None;
    }
    let second = next?;
    let c = other_circle_intersection(circle, b, &second, tol)?;
    let closing = Line3::through(c, start).ok()?;
    Some(([start, b, c], conic.support_gap(&closing)))
}

/// Poncelet closure oracle: from each of `n_starts` points of the circle,
/// build the two tangent chords and measure the tangency gap of the closing
/// side. Closed iff every usable start's gap is below tolerance.
pub fn closure_oracle(
    circle: &Circle3,
    conic: &ConicSection,
    n_starts: usize,
    tol: &Tolerance,
) -> Result<ClosureResult> {
    let mut per_start = Vec::with_capacity(n_starts);
    let mut max_gap: f64 = 0.0;
    let mut usable = 0;
    for j in 0..n_starts {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_starts as f64) + 0.1234;
        let start = circle.point_at(theta);
        match triangle_from_start(circle, conic, start, 0, tol) {
            Some((_, gap)) => {
                per_start.push(Some(gap));
                max_gap = max_gap.max(gap);
                usable += 1;
            }
            None => per_start.push(None),
        }
    }
    if usable < 3 {
        return Err(GeomError::Unresolved(format!(
            "closure oracle inconclusive: only {usable} usable starts"
        )));
    }
    Ok(ClosureResult {
        closed: max_gap <= tol.len(),
        residual: max_gap,
        skipped: n_starts - usable,
        per_start,
        usable,
    })
}

/// Result of the Thebault semi-axis check for two spheres and a common
/// tangent plane.
#[derive(Debug, Clone, Copy)]
pub struct ThebaultResult {
    pub b_sq: f64,
    pub sign_k: f64,
    /// `|b^2 - r1 r2 sign k|` (power units).
    pub residual: f64,
}

/// Check that the conic cut by the circumscribed cone of two spheres on a
/// common tangent plane has signed semi-minor square `r1 r2 sign k`, the
/// sign being that of the homothety through the cone's apex.
pub fn thebault_b2(s1: &Sphere, s2: &Sphere, plane: &Plane, tol: &Tolerance) -> Result<ThebaultResult> {
    for s in [s1, s2] {
        if (plane.distance(s.center) - s.r).abs() > 1e3 * tol.len() {
            return Err(GeomError::Degenerate("sphere not tangent to the plane".into()));
        }
    }
    let (cone, sign_k) = circumscribed_cone_off_plane(s1, s2, plane, tol)?;
    let section = conic_from_cone_plane(&cone, plane, tol)?;
    let central = section
        .as_central()
        .ok_or_else(|| GeomError::Degenerate("tangent-plane section is parabolic".into()))?;
    let expected = s1.r * s2.r * sign_k;
    Ok(ThebaultResult { b_sq: central.b_sq, sign_k, residual: (central.b_sq - expected).abs() })
}

/// Euler-Chapple residuals of a triangle: the incircle relation
/// `d^2 = R^2 - 2 R r` and the three excircle relations
/// `d_a^2 = R^2 + 2 R r_a`, all normalized by `R^2`.
pub fn euler_chapple_residuals(a: Point3, b: Point3, c: Point3) -> Result<(f64, [f64; 3])> {
    let tf = TriangleFrame::new(a, b, c)?;
    let o = tf.circumcircle.center;
    let big_r = tf.circumcircle.r;
    let r2 = big_r * big_r;
    let d2 = (tf.incircle.center - o).norm_squared();
    let res_in = (d2 - (r2 - 2.0 * big_r * tf.incircle.r)).abs() / r2;
    let mut res_ex = [0.0; 3];
    for (k, exc) in tf.excircles.iter().enumerate() {
        let da2 = (exc.center - o).norm_squared();
        res_ex[k] = (da2 - (r2 + 2.0 * big_r * exc.r)).abs() / r2;
    }
    Ok((res_in, res_ex))
}

/// One trial of the cross-class 3-pair family check.
#[derive(Debug, Clone, Copy)]
pub struct PairTrial {
    pub laguerre: f64,
    pub closure: f64,
    pub closed: bool,
    /// `|b^2 - r1 r2 sign k|`, the Thebault consistency inside the family.
    pub thebault_residual: f64,
}

/// Report of the 3-pair family sampler.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub trials: Vec<PairTrial>,
    pub resampled: usize,
}

impl FamilyReport {
    pub fn max_laguerre(&self) -> f64 {
        self.trials.iter().map(|t| t.laguerre.abs()).fold(0.0, f64::max)
    }
    pub fn all_closed(&self) -> bool {
        self.trials.iter().all(|t| t.closed)
    }
}

/// Sphere tangent to `plane` at `touch` (on the `side` of the normal) and
/// tangent to `gamma` with the given tangency sign (+1 external).
fn sphere_touching_plane_and_sphere(
    gamma: &Sphere,
    plane: &Plane,
    touch: Point3,
    side: f64,
    tangency: f64,
) -> Option<Sphere> {
    let n = side * plane.normal.into_inner();
    let w = gamma.center - touch;
    let denom = 2.0 * (w.dot(&n) + tangency * gamma.r);
    if denom.abs() <= 1e-12 {
        return None;
    }
    let r = (w.norm_squared() - gamma.r * gamma.r) / denom;
    if r <= 1e-9 {
        return None;
    }
    Some(Sphere::new(touch + r * n, r))
}

/// Sample spheres tangent to both `gamma` and `plane`; `want_class` selects
/// the tangency class relative to `(gamma, plane)`.
fn sample_class_member(
    gamma: &Sphere,
    plane: &Plane,
    circle: &Circle3,
    want_class: i8,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Option<Sphere> {
    for _ in 0..64 {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let rho = rng.random_range(0.15..1.8) * circle.r;
        if (rho - circle.r).abs() < 0.08 * circle.r {
            continue;
        }
        let touch = circle.center
            + rho * (circle.point_at(theta) - circle.center) / circle.r;
        let side = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let tangency = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let Some(s) = sphere_touching_plane_and_sphere(gamma, plane, touch, side, tangency) else {
            continue;
        };
        let member = PencilMember::Sphere(s);
        let Ok(class) = m_class(&member, gamma, &RefObject::Plane(*plane), tol) else {
            continue;
        };
        if class.sign == want_class {
            return Some(s);
        }
    }
    None
}

/// Sample `n` sphere pairs from the two tangency classes of `(gamma, plane)`
/// (or from the same class, for the negative control), cut the circumscribed
/// cone on the plane, and record Laguerre and closure results against the
/// circle `gamma ∩ plane`.
pub fn cross_class_family(
    plane: &Plane,
    circle: &Circle3,
    gamma: &Sphere,
    n: usize,
    cross: bool,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<FamilyReport> {
    // Pre: the circle is the section of gamma by the plane.
    let h = plane.distance(gamma.center);
    let r_section = (gamma.r * gamma.r - h * h).max(0.0).sqrt();
    let center_gap = (plane.project(gamma.center) - circle.center).norm();
    if center_gap > 1e3 * tol.len() || (r_section - circle.r).abs() > 1e3 * tol.len() {
        return Err(GeomError::Degenerate("circle is not the sphere's plane section".into()));
    }
    let loose = tol.with_rel(tol.rel.max(1e-6));
    let mut trials = Vec::with_capacity(n);
    let mut resampled = 0usize;
    while trials.len() < n {
        let Some(alpha) = sample_class_member(gamma, plane, circle, 1, &loose, rng) else {
            resampled += 1;
            continue;
        };
        let second_class = if cross { -1 } else { 1 };
        let Some(beta) = sample_class_member(gamma, plane, circle, second_class, &loose, rng) else {
            resampled += 1;
            continue;
        };
        let Ok((cone, sign_k)) = circumscribed_cone_off_plane(&alpha, &beta, plane, tol) else {
            resampled += 1;
            continue;
        };
        let Ok(section) = conic_from_cone_plane(&cone, plane, tol) else {
            resampled += 1;
            continue;
        };
        let Some(central) = section.as_central().copied() else {
            resampled += 1;
            continue;
        };
        let laguerre = laguerre_residual(circle, &central);
        let thebault_residual = (central.b_sq - alpha.r * beta.r * sign_k).abs();
        match closure_oracle(circle, &section, 20, tol) {
            Ok(cl) => trials.push(PairTrial {
                laguerre,
                closure: cl.residual,
                closed: cl.closed,
                thebault_residual,
            }),
            Err(_) => {
                if cross {
                    resampled += 1;
                } else {
                    // Same-class controls may fail to admit chords at all;
                    // record them as decisively non-closed.
                    trials.push(PairTrial {
                        laguerre,
                        closure: f64::INFINITY,
                        closed: false,
                        thebault_residual,
                    });
                }
            }
        }
        if resampled > 200 * n {
            return Err(GeomError::Unresolved("family sampler stalled".into()));
        }
    }
    Ok(FamilyReport { trials, resampled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Dir3;
    use crate::sampling;
    use nalgebra::Unit;
    use rand::prelude::*;

    fn zplane() -> Plane {
        Plane::from_point_normal(Vec3::zeros(), Dir3::new_normalize(Vec3::z()))
    }

    fn tol6() -> Tolerance {
        Tolerance::closed_form(6.0)
    }

    #[test]
    fn laguerre_345_incircle() {
        let plane = zplane();
        let circ = Circle3::new(plane, Vec3::new(2.0, 1.5, 0.0), 2.5).unwrap();
        let inc = ConicFoci::new(plane, Vec3::new(1.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0), 1.0)
            .unwrap();
        // (6.25 - 1.25)^2 = 25 = 4 * 6.25 * 1.
        assert!(laguerre_residual(&circ, &inc).abs() < 1e-12);
    }

    #[test]
    fn laguerre_chapple_offset_circle() {
        // Incircle-as-conic: residual vanishes iff d^2 = R^2 - 2 R r.
        let plane = zplane();
        let big_r = 2.0f64;
        let r = 0.5f64;
        let d = (big_r * big_r - 2.0 * big_r * r).sqrt();
        let circ = Circle3::new(plane, Vec3::zeros(), big_r).unwrap();
        let f = Vec3::new(d, 0.0, 0.0);
        let inc = ConicFoci::new(plane, f, f, r * r).unwrap();
        assert!(laguerre_residual(&circ, &inc).abs() < 1e-12);
        let bad = ConicFoci::new(plane, f, f, r * r * 1.1).unwrap();
        assert!(laguerre_residual(&circ, &bad).abs() > 1e-3);
    }

    #[test]
    fn closure_triangle_circumcircle_incircle() {
        // The 3-4-5 triangle's circumcircle and incircle close from every
        // start (Poncelet porism at n = 3).
        let plane = zplane();
        let circ = Circle3::new(plane, Vec3::new(2.0, 1.5, 0.0), 2.5).unwrap();
        let inc = ConicSection::Central(
            ConicFoci::new(plane, Vec3::new(1.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0), 1.0).unwrap(),
        );
        let tol = Tolerance::closed_form(5.0);
        let res = closure_oracle(&circ, &inc, 20, &tol).unwrap();
        assert!(res.closed, "max gap {}", res.residual);
        assert!(res.residual < 1e-9);
        assert_eq!(res.skipped, 0);
    }

    #[test]
    fn closure_fails_for_perturbed_incircle() {
        let plane = zplane();
        let circ = Circle3::new(plane, Vec3::new(2.0, 1.5, 0.0), 2.5).unwrap();
        let inc = ConicSection::Central(
            ConicFoci::new(plane, Vec3::new(1.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0), 1.0201)
                .unwrap(),
        );
        let tol = Tolerance::closed_form(5.0);
        let res = closure_oracle(&circ, &inc, 20, &tol).unwrap();
        assert!(!res.closed);
        assert!(res.residual > 1e-3 * 5.0, "perturbation visible: {}", res.residual);
    }

    #[test]
    fn closure_start_independence() {
        let plane = zplane();
        let circ = Circle3::new(plane, Vec3::new(2.0, 1.5, 0.0), 2.5).unwrap();
        let inc = ConicSection::Central(
            ConicFoci::new(plane, Vec3::new(1.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0), 1.0).unwrap(),
        );
        let tol = Tolerance::closed_form(5.0);
        let res = closure_oracle(&circ, &inc, 20, &tol).unwrap();
        let single = res.per_start.iter().flatten().next().copied().unwrap();
        assert!(res.residual <= (10.0 * single).max(1e-12 * 5.0));
    }

    fn laguerre_pair(
        rng: &mut rand_chacha::ChaCha8Rng,
        hyperbola: bool,
        satisfy: bool,
    ) -> Option<(Circle3, ConicFoci)> {
        let plane = zplane();
        let big_r = rng.random_range(1.0..2.5);
        let o = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0);
        let circ = Circle3::new(plane, o, big_r).ok()?;
        let dir = |rng: &mut rand_chacha::ChaCha8Rng| {
            let th = rng.random_range(0.0..std::f64::consts::TAU);
            Vec3::new(th.cos(), th.sin(), 0.0)
        };
        let f1 = o + rng.random_range(0.05..0.8) * big_r * dir(rng);
        let f2 = if hyperbola {
            o + rng.random_range(1.3..2.5) * big_r * dir(rng)
        } else {
            o + rng.random_range(0.05..0.8) * big_r * dir(rng)
        };
        let r2 = big_r * big_r;
        let b_sq = (r2 - (o - f1).norm_squared()) * (r2 - (o - f2).norm_squared()) / (4.0 * r2);
        let b_sq = if satisfy {
            b_sq
        } else {
            let u = rng.random_range(0.05..0.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            b_sq * (1.0 + u)
        };
        let conic = ConicFoci::new(plane, f1, f2, b_sq).ok()?;
        Some((circ, conic))
    }

    #[test]
    fn laguerre_iff_closure() {
        let mut rng = sampling::instance_rng(2024, "laguerre-iff", 0);
        let mut checked = 0;
        let mut disagreements = 0;
        for k in 0..500 {
            let hyperbola = k % 3 == 0;
            let satisfy = k % 2 == 0;
            let Some((circ, conic)) = laguerre_pair(&mut rng, hyperbola, satisfy) else { continue };
            let lag = laguerre_residual(&circ, &conic).abs();
            // Exclude the indeterminate band.
            if lag > 1e-8 && lag < 1e-4 {
                continue;
            }
            let tol = Tolerance::closed_form(circ.r);
            let Ok(res) = closure_oracle(&circ, &ConicSection::Central(conic), 20, &tol) else {
                continue;
            };
            checked += 1;
            let lag_pass = lag <= 1e-8;
            if lag_pass != res.closed {
                disagreements += 1;
            }
        }
        assert!(checked >= 300, "enough decisive samples: {checked}");
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn thebault_same_side_equal_spheres_is_hyperbola() {
        // Mirror-symmetric spheres tangent to the plane from the same side:
        // the circumscribed cone's apex is the internal similitude center,
        // the homothety is negative, and the section is a hyperbola with
        // b^2 = -r^2.
        let plane = zplane();
        let tol = tol6();
        let s1 = Sphere::new(Vec3::new(-2.0, 0.0, 1.0), 1.0);
        let s2 = Sphere::new(Vec3::new(2.0, 0.0, 1.0), 1.0);
        let res = thebault_b2(&s1, &s2, &plane, &tol).unwrap();
        assert!(res.sign_k < 0.0);
        assert!((res.b_sq + 1.0).abs() < 1e-9, "b^2 = -r1 r2, got {}", res.b_sq);
        assert!(res.residual < 1e-9);
    }

    #[test]
    fn thebault_opposite_side_is_ellipse() {
        let plane = zplane();
        let tol = tol6();
        let s1 = Sphere::new(Vec3::new(0.0, 0.0, 1.0), 1.0);
        let s2 = Sphere::new(Vec3::new(1.5, 0.0, -2.0), 2.0);
        let res = thebault_b2(&s1, &s2, &plane, &tol).unwrap();
        assert!(res.sign_k > 0.0);
        assert!((res.b_sq - 2.0).abs() < 1e-9, "b^2 = +r1 r2, got {}", res.b_sq);
        assert!(res.residual < 1e-9);
    }

    #[test]
    fn thebault_random_admissible_triples() {
        let mut rng = sampling::instance_rng(7, "thebault", 1);
        let plane = zplane();
        let mut done = 0;
        let mut pos = 0;
        let mut neg = 0;
        while done < 200 {
            let r1 = rng.random_range(0.3..1.5);
            let r2 = rng.random_range(0.3..1.5);
            let side2 = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let s1 = Sphere::new(Vec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), r1), r1);
            let s2 = Sphere::new(
                Vec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), side2 * r2),
                r2,
            );
            if (s1.center - s2.center).norm() < 0.3 + r1 + r2 {
                continue;
            }
            let tol = Tolerance::closed_form(4.0);
            let Ok(res) = thebault_b2(&s1, &s2, &plane, &tol) else { continue };
            assert!(res.residual < 1e-8 * 16.0, "thebault residual {}", res.residual);
            if res.sign_k > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
            done += 1;
        }
        assert!(pos > 10 && neg > 10, "both sign branches exercised: {pos}/{neg}");
    }

    #[test]
    fn parabola_pair_criterion_and_closure() {
        let plane = zplane();
        let mut rng = sampling::instance_rng(7, "parabola", 3);
        let mut done = 0;
        while done < 20 {
            let big_r = rng.random_range(1.0..2.0);
            let o = Vec3::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5), 0.0);
            let circ = Circle3::new(plane, o, big_r).unwrap();
            // Focus on the circle.
            let th = rng.random_range(0.0..std::f64::consts::TAU);
            let focus = circ.point_at(th);
            let p = rng.random_range(0.2..0.8);
            let axis_th = rng.random_range(0.0..std::f64::consts::TAU);
            let ax = Vec3::new(axis_th.cos(), axis_th.sin(), 0.0);
            let dirx = Vec3::new(-axis_th.sin(), axis_th.cos(), 0.0);
            let parab = Parabola2 {
                plane,
                focus,
                directrix: Line3::new(focus - 2.0 * p * ax, Unit::new_normalize(dirx)),
            };
            assert!(parabola_criterion(&circ, &parab) < 1e-12);
            let tol = Tolerance::iterative(big_r);
            let Ok(res) = closure_oracle(&circ, &ConicSection::Parabola(parab), 12, &tol) else {
                continue;
            };
            assert!(res.closed, "parabola 3-pair closes, gap {}", res.residual);
            done += 1;
        }
        // Focus at the center instead: criterion residual R.
        let circ = Circle3::new(plane, Vec3::zeros(), 1.5).unwrap();
        let parab = Parabola2 {
            plane,
            focus: Vec3::zeros(),
            directrix: Line3::new(Vec3::new(-1.0, 0.0, 0.0), Unit::new_normalize(Vec3::y())),
        };
        assert!((parabola_criterion(&circ, &parab) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn euler_chapple_345() {
        let (res_in, res_ex) = euler_chapple_residuals(
            Vec3::new(0.0, 3.0, 0.0),
            Vec3::new(4.0, 0.0, 0.0),
            Vec3::zeros(),
        )
        .unwrap();
        assert!(res_in < 1e-12, "d^2 = 1.25 = R^2 - 2 R r");
        for r in res_ex {
            assert!(r < 1e-12, "excircle relation, residual {r}");
        }
    }

    #[test]
    fn euler_chapple_equilateral_and_random() {
        let (res_in, _) = euler_chapple_residuals(
            Vec3::zeros(),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.5, 3.0f64.sqrt() / 2.0, 0.0),
        )
        .unwrap();
        assert!(res_in < 1e-14, "equilateral: d = 0 and R = 2r");
        let mut rng = sampling::instance_rng(5, "chapple", 0);
        for _ in 0..500 {
            let [a, b, c] = sampling::random_triangle3(&mut rng);
            let (ri, re) = euler_chapple_residuals(a, b, c).unwrap();
            assert!(ri < 1e-10);
            for r in re {
                assert!(r < 1e-10);
            }
        }
    }

    #[test]
    fn cross_class_family_closes() {
        let plane = zplane();
        let gamma = Sphere::new(Vec3::new(0.2, -0.1, 0.5), 2.0);
        let h = plane.distance(gamma.center);
        let circle = Circle3::new(
            plane,
            plane.project(gamma.center),
            (gamma.r * gamma.r - h * h).sqrt(),
        )
        .unwrap();
        let tol = Tolerance::closed_form(4.0);
        let mut rng = sampling::instance_rng(11, "family", 0);
        let rep = cross_class_family(&plane, &circle, &gamma, 25, true, &tol, &mut rng).unwrap();
        assert!(rep.all_closed(), "cross-class pairs all close");
        assert!(rep.max_laguerre() < 1e-8, "max laguerre {}", rep.max_laguerre());
        for t in &rep.trials {
            assert!(t.thebault_residual < 1e-8 * 16.0);
        }
    }

    #[test]
    fn same_class_family_fails() {
        let plane = zplane();
        let gamma = Sphere::new(Vec3::new(0.0, 0.0, 0.4), 1.8);
        let h = plane.distance(gamma.center);
        let circle = Circle3::new(
            plane,
            plane.project(gamma.center),
            (gamma.r * gamma.r - h * h).sqrt(),
        )
        .unwrap();
        let tol = Tolerance::closed_form(4.0);
        let mut rng = sampling::instance_rng(11, "family-neg", 0);
        let rep = cross_class_family(&plane, &circle, &gamma, 15, false, &tol, &mut rng).unwrap();
        let generically_failing =
            rep.trials.iter().filter(|t| t.laguerre.abs() > 1e-3).count();
        assert!(
            generically_failing * 10 >= rep.trials.len() * 9,
            "same-class pairs generically violate the relation: {generically_failing}/{}",
            rep.trials.len()
        );
    }

    #[test]
    fn equal_touch_points_give_circle_section() {
        // Both spheres touching the plane at the same point (from opposite
        // sides, different radii so the circumscribed cone stays a cone):
        // the section is a circle centered at the shared touch point, i.e.
        // coincident foci. An exactly mirrored equal-radius pair would
        // degenerate the cone to a cylinder, which is excluded.
        let plane = zplane();
        let tol = tol6();
        let touch = Vec3::new(0.9, 0.0, 0.0);
        let alpha = Sphere::new(touch + Vec3::new(0.0, 0.0, 0.7), 0.7);
        let beta = Sphere::new(touch - Vec3::new(0.0, 0.0, 1.4), 1.4);
        let (cone, sign_k) = circumscribed_cone_off_plane(&alpha, &beta, &plane, &tol).unwrap();
        let sec = conic_from_cone_plane(&cone, &plane, &tol).unwrap();
        let c = sec.as_central().unwrap();
        assert!((c.f1 - c.f2).norm() < 1e-9, "equal touch points force a circle");
        assert!((c.f1 - touch).norm() < 1e-9);
        assert!((c.b_sq - alpha.r * beta.r * sign_k).abs() < 1e-9);
    }
}
