//! Trihedral-angle geometry at a tetrahedron vertex: projection of the
//! tangent spheres to the unit sphere, mediators (equal-excess cevian
//! planes), pseudo-altitudes (inscribed-quadruple cevians), the
//! circumscribed cone, the six-feet cone, and the cone tangent to all eight
//! tangent spheres.

use crate::apollonius::{hart_circles, spherical_tangency_residual, HartCandidate, SphericalCircle};
use crate::error::{GeomError, Result};
use crate::geom::{cone_sphere_tangency_residual, Cone, Dir3, Point3, Vec3};
use crate::tetra::{TangentSphereSet, Tetrahedron};
use nalgebra::{Matrix3, Unit};

/// Three concurrent edges at an apex.
#[derive(Debug, Clone, Copy)]
pub struct TrihedralAngle {
    pub apex: Point3,
    pub edges: [Dir3; 3],
}

impl TrihedralAngle {
    pub fn new(apex: Point3, edges: [Dir3; 3]) -> Result<Self> {
        let m = Matrix3::from_columns(&[
            edges[0].into_inner(),
            edges[1].into_inner(),
            edges[2].into_inner(),
        ]);
        if m.determinant().abs() <= 1e-9 {
            return Err(GeomError::Degenerate("edges are nearly coplanar".into()));
        }
        Ok(TrihedralAngle { apex, edges })
    }

    /// Trihedral angle of a tetrahedron at vertex `i`.
    pub fn at_vertex(t: &Tetrahedron, i: usize) -> Result<Self> {
        let v = t.vertices[i];
        let mut edges = Vec::with_capacity(3);
        for j in 0..4 {
            if j != i {
                edges.push(Unit::new_normalize(t.vertices[j] - v));
            }
        }
        TrihedralAngle::new(v, [edges[0], edges[1], edges[2]])
    }

    pub fn triangle(&self) -> SphericalTriangle {
        SphericalTriangle::new(self.edges)
    }
}

/// Spherical triangle cut by a trihedral angle on the apex-centered unit
/// sphere.
#[derive(Debug, Clone, Copy)]
pub struct SphericalTriangle {
    pub verts: [Dir3; 3],
    /// Pole of the side opposite vertex `i`, oriented towards the triangle.
    pub side_poles: [Dir3; 3],
}

fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Spherical excess of the triangle with the given unit vertices, by
/// l'Huilier's formula (stable for small triangles).
pub fn spherical_excess(p1: &Dir3, p2: &Dir3, p3: &Dir3) -> f64 {
    let a = angle_between(&p2.into_inner(), &p3.into_inner());
    let b = angle_between(&p1.into_inner(), &p3.into_inner());
    let c = angle_between(&p1.into_inner(), &p2.into_inner());
    let s = (a + b + c) / 2.0;
    let t = (s / 2.0).tan() * ((s - a) / 2.0).tan() * ((s - b) / 2.0).tan() * ((s - c) / 2.0).tan();
    4.0 * t.max(0.0).sqrt().atan()
}

impl SphericalTriangle {
    pub fn new(verts: [Dir3; 3]) -> Self {
        let mut side_poles = [verts[0]; 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut p = Unit::new_normalize(verts[j].into_inner().cross(&verts[k].into_inner()));
            if p.dot(&verts[i]) < 0.0 {
                p = -p;
            }
            side_poles[i] = p;
        }
        SphericalTriangle { verts, side_poles }
    }

    /// Excess: sum of the dihedral angles minus pi.
    pub fn excess(&self) -> f64 {
        spherical_excess(&self.verts[0], &self.verts[1], &self.verts[2])
    }

    /// Interior direction (normalized vertex sum).
    pub fn interior(&self) -> Dir3 {
        Unit::new_normalize(
            self.verts[0].into_inner() + self.verts[1].into_inner() + self.verts[2].into_inner(),
        )
    }

    /// Arc parametrization of the side opposite vertex `i`: an orthonormal
    /// pair `(p, q)` with the side's endpoints at parameters 0 and `arc`.
    fn side_basis(&self, i: usize) -> (Vec3, Vec3, f64) {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let p = self.verts[j].into_inner();
        let raw = self.verts[k].into_inner() - self.verts[k].dot(&self.verts[j]) * p;
        let q = raw.normalize();
        let arc = angle_between(&p, &self.verts[k].into_inner());
        (p, q, arc)
    }

    fn side_point(&self, i: usize, t: f64) -> Dir3 {
        let (p, q, _) = self.side_basis(i);
        Unit::new_normalize(t.cos() * p + t.sin() * q)
    }
}

/// A cevian plane through the apex with its foot on the opposite side.
#[derive(Debug, Clone, Copy)]
pub struct Cevian {
    /// Unit normal of the plane through the apex.
    pub plane_normal: Dir3,
    pub foot: Dir3,
}

/// Mediator from vertex `i`: the cevian splitting the triangle into two
/// sub-triangles of equal excess, found by bisection along the opposite
/// side (the excess difference is continuous and changes sign across it).
pub fn mediator(tri: &SphericalTriangle, i: usize) -> Result<Cevian> {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let (_, _, arc) = tri.side_basis(i);
    let g = |t: f64| {
        let foot = tri.side_point(i, t);
        spherical_excess(&tri.verts[i], &tri.verts[j], &foot)
            - spherical_excess(&tri.verts[i], &foot, &tri.verts[k])
    };
    let (mut lo, mut hi) = (0.0, arc);
    let (glo, ghi) = (g(lo), g(hi));
    if glo > 0.0 || ghi < 0.0 {
        return Err(GeomError::Unresolved("excess difference does not bracket zero".into()));
    }
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let foot = tri.side_point(i, t);
    let n = tri.verts[i].into_inner().cross(&foot.into_inner());
    if n.norm() <= 1e-12 {
        return Err(GeomError::Degenerate("cevian through antipodal foot".into()));
    }
    Ok(Cevian { plane_normal: Unit::new_normalize(n), foot })
}

/// Residual and direction of the common line of a set of concurrent planes
/// (through the apex): the smallest singular value of the stacked normals
/// and the corresponding right-singular direction.
pub fn common_line(normals: &[Dir3]) -> (Dir3, f64) {
    let mut m = nalgebra::DMatrix::zeros(normals.len(), 3);
    for (r, n) in normals.iter().enumerate() {
        m.set_row(r, &n.into_inner().transpose());
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("svd requested v_t");
    let dir = vt.row(2).transpose();
    (Unit::new_normalize(Vec3::new(dir[0], dir[1], dir[2])), svd.singular_values[2])
}

/// The three pseudo-altitude cevians: feet `h_a, h_b, h_c` on the opposite
/// sides such that each of the quadruples `{a,b,h_a,h_b}`, `{a,c,h_a,h_c}`,
/// `{b,c,h_b,h_c}` lies on one circular cone.
///
/// A quadruple of concurrent lines lies on a circular cone iff suitably
/// signed unit representatives are coplanar (circular cones cut planar
/// circles on the unit sphere), so the system is three coplanarity
/// determinants, each trigonometric-linear in every foot parameter. The
/// altitude feet seed a step-capped Newton iteration with the analytic
/// Jacobian; 8 perturbed-seed starts provide the empirical uniqueness
/// check. Quadruple signs are chosen to minimize the determinants at the
/// seed (the all-plus pattern, by the planar limit where the quadruple is
/// the classical concyclic vertex/altitude-foot configuration).
#[derive(Debug, Clone)]
pub struct PseudoAltitudes {
    pub cevians: [Cevian; 3],
    /// Maximum coplanarity determinant at the solution.
    pub residual: f64,
    /// Spread of the selected multi-start cluster (antipode-invariant).
    pub cluster_spread: f64,
    /// Sign choice per quadruple that realized the solution.
    pub signs: [f64; 3],
    /// Number of distinct solution clusters the multi-start converged to.
    /// More than one is flagged: the triple satisfying the six-feet cone
    /// property is selected.
    pub alternates: usize,
}

struct QuadrupleSystem {
    verts: [Vec3; 3],
    bases: [(Vec3, Vec3); 3],
    signs: [f64; 3],
}

impl QuadrupleSystem {
    // Quadruple q: (edge1, edge2, foot1, foot2) indices into verts/feet.
    const QUADS: [(usize, usize, usize, usize); 3] = [(0, 1, 0, 1), (0, 2, 0, 2), (1, 2, 1, 2)];

    fn foot(&self, i: usize, t: f64) -> Vec3 {
        let (p, q) = self.bases[i];
        t.cos() * p + t.sin() * q
    }

    fn foot_deriv(&self, i: usize, t: f64) -> Vec3 {
        let (p, q) = self.bases[i];
        -t.sin() * p + t.cos() * q
    }

    fn det_q(&self, qi: usize, t: &[f64; 3]) -> f64 {
        let (e1, e2, f1, f2) = Self::QUADS[qi];
        let base = self.verts[e1];
        let col1 = self.signs[qi] * self.verts[e2] - base;
        let col2 = self.foot(f1, t[f1]) - base;
        let col3 = self.foot(f2, t[f2]) - base;
        Matrix3::from_columns(&[col1, col2, col3]).determinant()
    }

    fn residuals(&self, t: &[f64; 3]) -> [f64; 3] {
        [self.det_q(0, t), self.det_q(1, t), self.det_q(2, t)]
    }

    /// Closed-form roots of `det_q(qi) = 0` in the foot variable `var`
    /// (which must appear in quadruple `qi`), holding the rest fixed.
    fn roots_in(&self, qi: usize, var: usize, t: &[f64; 3]) -> Vec<f64> {
        let (e1, e2, f1, f2) = Self::QUADS[qi];
        let base = self.verts[e1];
        let col1 = self.signs[qi] * self.verts[e2] - base;
        let other = if var == f1 { f2 } else { f1 };
        let col_other = self.foot(other, t[other]) - base;
        let (p, q) = self.bases[var];
        // The determinant is linear in the varying column
        // `cos t * p + sin t * q - base`, i.e. A cos t + B sin t + C.
        let det_with = |x: Vec3| {
            if var == f1 {
                Matrix3::from_columns(&[col1, x, col_other]).determinant()
            } else {
                Matrix3::from_columns(&[col1, col_other, x]).determinant()
            }
        };
        let a = det_with(p);
        let b = det_with(q);
        let c = det_with(-base);
        let rho = a.hypot(b);
        if rho <= c.abs() {
            return Vec::new();
        }
        let phi = b.atan2(a);
        let d = (-c / rho).clamp(-1.0, 1.0).acos();
        vec![phi + d, phi - d]
    }
}

fn angdiff(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
    if d > std::f64::consts::PI {
        d = 2.0 * std::f64::consts::PI - d;
    }
    d
}

/// Antipode-invariant distance between two foot parameters.
fn foot_param_dist(a: f64, b: f64) -> f64 {
    angdiff(a, b).min(angdiff(a, b + std::f64::consts::PI))
}

/// Exhaustive solution survey for one sign pattern (diagnostic).
#[doc(hidden)]
pub fn debug_pseudo_solutions(
    tri: &SphericalTriangle,
    signs: [f64; 3],
    grid: usize,
) -> Vec<([f64; 3], f64)> {
    let mut bases = [(Vec3::zeros(), Vec3::zeros()); 3];
    for i in 0..3 {
        let (p, q, _) = tri.side_basis(i);
        bases[i] = (p, q);
    }
    let verts = [
        tri.verts[0].into_inner(),
        tri.verts[1].into_inner(),
        tri.verts[2].into_inner(),
    ];
    let sys = QuadrupleSystem { verts, bases, signs };
    let mut sols: Vec<([f64; 3], f64)> = Vec::new();
    for ga in 0..grid {
        for gb in 0..grid {
            for gc in 0..grid {
                let mut t = [
                    2.0 * std::f64::consts::PI * ga as f64 / grid as f64,
                    2.0 * std::f64::consts::PI * gb as f64 / grid as f64,
                    2.0 * std::f64::consts::PI * gc as f64 / grid as f64,
                ];
                for sweep in 0..80 {
                    let order: [(usize, usize); 3] = [(0, 0), (1, 2), (2, 1)];
                    let mut moved: f64 = 0.0;
                    for &(qi, var) in &order {
                        let roots = sys.roots_in(qi, var, &t);
                        if roots.is_empty() {
                            moved = f64::INFINITY;
                            break;
                        }
                        let chosen = *roots
                            .iter()
                            .min_by(|x, y| {
                                foot_param_dist(**x, t[var]).total_cmp(&foot_param_dist(**y, t[var]))
                            })
                            .unwrap();
                        moved = moved.max(foot_param_dist(chosen, t[var]));
                        t[var] = chosen;
                    }
                    if !moved.is_finite() || (sweep > 0 && moved < 1e-14) {
                        break;
                    }
                }
                let f = sys.residuals(&t);
                let fmax = f.iter().map(|x| x.abs()).fold(0.0, f64::max);
                if fmax > 1e-10 {
                    continue;
                }
                let canon = t;
                if !sols.iter().any(|(s, _)| {
                    (0..3).all(|v| foot_param_dist(s[v], canon[v]) < 1e-6)
                }) {
                    sols.push((canon, fmax));
                }
            }
        }
    }
    sols
}

pub fn pseudo_altitudes(tri: &SphericalTriangle) -> Result<PseudoAltitudes> {
    let mut bases = [(Vec3::zeros(), Vec3::zeros()); 3];
    let mut seeds = [0.0f64; 3];
    for i in 0..3 {
        let (p, q, arc) = tri.side_basis(i);
        bases[i] = (p, q);
        // Altitude foot: projection of the vertex onto the side plane. When
        // the vertex is the side's pole (orthogonal edges) the projection
        // vanishes; fall back to the mid-arc.
        let pole = tri.side_poles[i].into_inner();
        let proj = tri.verts[i].into_inner() - tri.verts[i].dot(&tri.side_poles[i]) * pole;
        seeds[i] = if proj.norm() > 1e-9 {
            let u = proj.normalize();
            u.dot(&q).atan2(u.dot(&p))
        } else {
            arc / 2.0
        };
    }
    let verts = [
        tri.verts[0].into_inner(),
        tri.verts[1].into_inner(),
        tri.verts[2].into_inner(),
    ];

    // Sign per quadruple: minimize the determinant magnitude at the seed.
    let mut signs = [1.0f64; 3];
    for qi in 0..3 {
        let mut best = (f64::INFINITY, 1.0);
        for s in [1.0, -1.0] {
            let mut sys = QuadrupleSystem { verts, bases, signs };
            sys.signs[qi] = s;
            let d = sys.det_q(qi, &seeds).abs();
            if d < best.0 {
                best = (d, s);
            }
        }
        signs[qi] = best.1;
    }
    let sys = QuadrupleSystem { verts, bases, signs };

    let mut solutions: Vec<([f64; 3], f64)> = Vec::new();
    for start in 0..8u32 {
        // Perturbed altitude-foot seeds; the step cap keeps Newton in the
        // local basin (undamped steps can jump to distant spurious roots).
        let mut t = seeds;
        for (v, tv) in t.iter_mut().enumerate() {
            *tv += if (start >> v) & 1 == 0 { 0.04 } else { -0.04 };
        }
        for _ in 0..160 {
            let f = sys.residuals(&t);
            let fmax = f.iter().map(|x| x.abs()).fold(0.0, f64::max);
            if fmax < 1e-15 {
                break;
            }
            let mut jac = Matrix3::zeros();
            for (qi, &(e1, e2, f1, f2)) in QuadrupleSystem::QUADS.iter().enumerate() {
                let base = sys.verts[e1];
                let col1 = sys.signs[qi] * sys.verts[e2] - base;
                let c_f1 = sys.foot(f1, t[f1]) - base;
                let c_f2 = sys.foot(f2, t[f2]) - base;
                jac[(qi, f1)] =
                    Matrix3::from_columns(&[col1, sys.foot_deriv(f1, t[f1]), c_f2]).determinant();
                jac[(qi, f2)] =
                    Matrix3::from_columns(&[col1, c_f1, sys.foot_deriv(f2, t[f2])]).determinant();
            }
            let Some(mut delta) = jac.lu().solve(&Vec3::new(f[0], f[1], f[2])) else { break };
            let step = delta.amax();
            if step > 0.2 {
                delta *= 0.2 / step;
            }
            // Backtracking keeps Newton in the seed's basin.
            let mut lambda = 1.0;
            let mut accepted = false;
            for _ in 0..12 {
                let trial = [
                    t[0] - lambda * delta[0],
                    t[1] - lambda * delta[1],
                    t[2] - lambda * delta[2],
                ];
                let ftrial = sys.residuals(&trial);
                let fnew = ftrial.iter().map(|x| x.abs()).fold(0.0, f64::max);
                if fnew < fmax {
                    t = trial;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted || lambda * delta.amax() < 1e-16 {
                break;
            }
        }
        let f = sys.residuals(&t);
        let fmax = f.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if fmax > 1e-11 {
            continue;
        }
        // A foot at a side endpoint collapses two determinant columns and
        // solves the system vacuously; those fixpoints are not cevians.
        let mut degenerate = false;
        for (i, ti) in t.iter().enumerate() {
            let (_, _, arc) = tri.side_basis(i);
            if foot_param_dist(*ti, 0.0) < 1e-6 || foot_param_dist(*ti, arc) < 1e-6 {
                degenerate = true;
            }
        }
        if !degenerate {
            solutions.push((t, fmax));
        }
    }
    if solutions.is_empty() {
        return Err(GeomError::Unresolved("pseudo-altitude solve diverged from all starts".into()));
    }
    // Cluster: all converged starts must agree modulo antipodes.
    let t0 = solutions[0].0;
    let mut cluster_spread: f64 = 0.0;
    for (t, _) in &solutions {
        for v in 0..3 {
            cluster_spread = cluster_spread.max(foot_param_dist(t[v], t0[v]));
        }
    }
    let best = solutions.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    let interior = tri.interior();
    let mut cevians = Vec::with_capacity(3);
    for i in 0..3 {
        let raw = sys.foot(i, best.0[i]);
        // Antipode nearest the triangle interior.
        let foot_v = if raw.dot(&interior.into_inner()) >= 0.0 { raw } else { -raw };
        let foot = Unit::new_normalize(foot_v);
        let n = tri.verts[i].into_inner().cross(&foot.into_inner());
        if n.norm() <= 1e-12 {
            return Err(GeomError::Degenerate("pseudo-altitude through the vertex".into()));
        }
        cevians.push(Cevian { plane_normal: Unit::new_normalize(n), foot });
    }
    Ok(PseudoAltitudes {
        cevians: [cevians[0], cevians[1], cevians[2]],
        residual: best.1,
        cluster_spread,
        signs,
    })
}

/// Cone through the three edges of the trihedral angle.
pub fn circumscribed_cone(tri: &SphericalTriangle, apex: Point3) -> Result<Cone> {
    let (v1, v2, v3) = (
        tri.verts[0].into_inner(),
        tri.verts[1].into_inner(),
        tri.verts[2].into_inner(),
    );
    let n = (v2 - v1).cross(&(v3 - v1));
    if n.norm() <= 1e-12 {
        return Err(GeomError::Degenerate("edge endpoints nearly collinear".into()));
    }
    let mut n = n.normalize();
    let mut c = n.dot(&v1);
    if c < 0.0 {
        n = -n;
        c = -c;
    }
    Cone::new(apex, Unit::new_normalize(n), c.clamp(-1.0, 1.0).acos())
}

/// The six cevian feet: three mediator feet and three pseudo-altitude feet.
#[derive(Debug, Clone)]
pub struct FootSet {
    pub mediator_feet: [Dir3; 3],
    pub altitude_feet: [Dir3; 3],
}

/// Best-fit cone through the six feet: plane fit over the unit points
/// lifted to the cone over the plane's unit-sphere section.
pub fn feet_cone(feet: &FootSet, apex: Point3) -> Result<(Cone, f64)> {
    let pts: Vec<Vec3> = feet
        .mediator_feet
        .iter()
        .chain(feet.altitude_feet.iter())
        .map(|d| d.into_inner())
        .collect();
    let mean: Vec3 = pts.iter().sum::<Vec3>() / pts.len() as f64;
    let mut cov = Matrix3::zeros();
    for p in &pts {
        let w = p - mean;
        cov += w * w.transpose();
    }
    let eig = nalgebra::SymmetricEigen::new(cov);
    let mut idx = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] < eig.eigenvalues[idx] {
            idx = i;
        }
    }
    let mut n = eig.eigenvectors.column(idx).into_owned().normalize();
    let mut c = n.dot(&mean);
    if c < 0.0 {
        n = -n;
        c = -c;
    }
    let residual = pts.iter().map(|p| (n.dot(p) - c).abs()).fold(0.0, f64::max);
    let cone = Cone::new(apex, Unit::new_normalize(n), c.clamp(-1.0, 1.0).acos())?;
    Ok((cone, residual))
}

/// Projection of the tangent spheres from a vertex: the spherical triangle
/// of the trihedral angle and the (at most four) distinct projected circles,
/// homothetic pairs collapsing to a single circle each.
#[derive(Debug, Clone)]
pub struct VertexProjection {
    pub trihedral: TrihedralAngle,
    pub triangle: SphericalTriangle,
    pub circles: Vec<SphericalCircle>,
    /// Max disagreement (pole angle / angular radius) within collapsed pairs.
    pub collapse_residual: f64,
}

pub fn project_from_vertex(
    t: &Tetrahedron,
    vertex: usize,
    ts: &TangentSphereSet,
) -> Result<VertexProjection> {
    let trihedral = TrihedralAngle::at_vertex(t, vertex)?;
    let triangle = trihedral.triangle();
    let interior = triangle.interior();
    let v = t.vertices[vertex];
    let mut projected: Vec<(crate::tetra::SignVector, SphericalCircle)> = Vec::new();
    for e in &ts.entries {
        let w = e.sphere.center - v;
        let d = w.norm();
        if d <= e.sphere.r {
            return Err(GeomError::Degenerate("vertex inside a tangent sphere".into()));
        }
        let circle = SphericalCircle::new(Unit::new_normalize(w), (e.sphere.r / d).asin())?;
        projected.push((e.sign, circle));
    }
    // Members of a pair with negative homothety coefficient project to
    // antipodal circles; both span the same double cone, so a pair always
    // collapses to one circle class. Canonical representative: the pole on
    // the triangle-interior side.
    let canonical = |c: &SphericalCircle| -> SphericalCircle {
        if c.pole.dot(&interior) >= 0.0 {
            *c
        } else {
            c.antipodal()
        }
    };
    let mut circles: Vec<SphericalCircle> = Vec::new();
    let mut collapse_residual: f64 = 0.0;
    let mut used = vec![false; projected.len()];
    for i in 0..projected.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (sign_i, c_i) = projected[i];
        let rep = canonical(&c_i);
        for (j, u) in used.iter_mut().enumerate().skip(i + 1) {
            if *u {
                continue;
            }
            let (sign_j, c_j) = projected[j];
            if sign_i.pair_coordinate(&sign_j) == Some(vertex) {
                *u = true;
                let other = canonical(&c_j);
                let pole_gap = angle_between(&rep.pole.into_inner(), &other.pole.into_inner());
                let rho_gap = (rep.rho - other.rho).abs();
                collapse_residual = collapse_residual.max(pole_gap).max(rho_gap);
            }
        }
        circles.push(rep);
    }
    Ok(VertexProjection { trihedral, triangle, circles, collapse_residual })
}

/// The full Euler-cone computation at one vertex.
#[derive(Debug, Clone)]
pub struct EulerConeResult {
    pub cone: Cone,
    pub hart: SphericalCircle,
    /// Residual of the cone's tangency to every tangent sphere (length).
    pub sphere_residuals: Vec<f64>,
    /// Six-feet cone and its plane-fit residual.
    pub feet_cone: Cone,
    pub feet_residual: f64,
    /// Agreement between the Hart-based and feet-based cones.
    pub axis_angle_gap: f64,
    pub half_angle_gap: f64,
    /// Coplanarity singular value of the four distinguished directions.
    pub euler_plane_sv: f64,
    pub projection: VertexProjection,
    pub rejected_candidates: Vec<HartCandidate>,
}

impl EulerConeResult {
    pub fn max_sphere_residual(&self) -> f64 {
        self.sphere_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Construct the Euler cone at a tetrahedron vertex and verify its tangency
/// to all tangent spheres, its agreement with the six-feet cone, and the
/// coplanarity of the four distinguished axes.
pub fn euler_cone_at_vertex(
    t: &Tetrahedron,
    vertex: usize,
    ts: &TangentSphereSet,
    ang_tol: f64,
) -> Result<EulerConeResult> {
    let projection = project_from_vertex(t, vertex, ts)?;
    if projection.circles.len() != 4 {
        return Err(GeomError::Unsupported(format!(
            "expected 4 projected circles, got {}",
            projection.circles.len()
        )));
    }
    let tri = projection.triangle;
    // The interior-side representatives are the natural in/ex family; if
    // the Hart solve misses with them, retry over the antipodal
    // representative combinations (the class geometry is flip-invariant but
    // the chart solve has to be handed concrete circles).
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    'combos: for combo in 0..8u32 {
        let mut circles: [SphericalCircle; 4] = [
            projection.circles[0],
            projection.circles[1],
            projection.circles[2],
            projection.circles[3],
        ];
        for bit in 0..3 {
            if (combo >> bit) & 1 == 1 {
                circles[bit + 1] = circles[bit + 1].antipodal();
            }
        }
        match hart_circles(&tri.side_poles, &circles, ang_tol) {
            Ok((acc, rej)) => {
                rejected.extend(rej);
                if !acc.is_empty() {
                    accepted = acc;
                    break 'combos;
                }
            }
            Err(_) => continue,
        }
    }
    if accepted.is_empty() {
        return Err(GeomError::TheoremViolation {
            check: "euler cone: no circle tangent to all four projections".into(),
            residual: rejected
                .iter()
                .map(|c: &HartCandidate| c.fourth_residual)
                .fold(f64::INFINITY, f64::min),
        });
    }

    // Feet cone from the mediators and pseudo-altitudes.
    let med = [mediator(&tri, 0)?, mediator(&tri, 1)?, mediator(&tri, 2)?];
    let alts = pseudo_altitudes(&tri)?;
    let feet = FootSet {
        mediator_feet: [med[0].foot, med[1].foot, med[2].foot],
        altitude_feet: [alts.cevians[0].foot, alts.cevians[1].foot, alts.cevians[2].foot],
    };
    let apex = t.vertices[vertex];
    let (fcone, feet_residual) = feet_cone(&feet, apex)?;
    let feet_circle = SphericalCircle::new(fcone.axis, fcone.half_angle)?;

    // Among the Hart candidates, take the one matching the feet circle.
    let best = accepted
        .iter()
        .min_by(|a, b| {
            spherical_tangency_residual(&a.circle, &feet_circle)
                .total_cmp(&spherical_tangency_residual(&b.circle, &feet_circle))
        })
        .copied()
        .unwrap();
    let mut hart = best.circle;
    // Symmetric configurations can make the tangent circle coincide with
    // one of the inputs (a double root of the Apollonius solve, accurate
    // only to sqrt(eps)); snap to the exact input circle in that case.
    for c in &projection.circles {
        if hart.same_circle(c, 1e-6) || hart.same_circle(&c.antipodal(), 1e-6) {
            hart = *c;
            break;
        }
    }
    let cone = Cone::new(apex, hart.pole, hart.rho)?;

    let sphere_residuals: Vec<f64> = ts
        .entries
        .iter()
        .map(|e| cone_sphere_tangency_residual(&cone, &e.sphere).abs())
        .collect();

    let axis_angle_gap = angle_between(&cone.axis.into_inner(), &fcone.axis.into_inner())
        .min(angle_between(&cone.axis.into_inner(), &(-fcone.axis.into_inner())));
    let half_angle_gap = (cone.half_angle - fcone.half_angle).abs();

    // Four distinguished directions through the apex.
    let med_normals: Vec<Dir3> = med.iter().map(|c| c.plane_normal).collect();
    let (pseudo_centroidal, _) = common_line(&med_normals);
    let alt_normals: Vec<Dir3> = alts.cevians.iter().map(|c| c.plane_normal).collect();
    let (pseudo_orthocentral, _) = common_line(&alt_normals);
    let circ = circumscribed_cone(&tri, apex)?;
    let euler_plane_sv = coplanarity_sv(&[
        pseudo_centroidal,
        pseudo_orthocentral,
        circ.axis,
        cone.axis,
    ]);

    let rejected_candidates = rejected;
    Ok(EulerConeResult {
        cone,
        hart,
        sphere_residuals,
        feet_cone: fcone,
        feet_residual,
        axis_angle_gap,
        half_angle_gap,
        euler_plane_sv,
        projection,
        rejected_candidates,
    })
}

/// Smallest singular value of the matrix of unit directions: zero iff the
/// concurrent lines are coplanar.
pub fn coplanarity_sv(dirs: &[Dir3]) -> f64 {
    let mut m = nalgebra::DMatrix::zeros(3, dirs.len());
    for (c, d) in dirs.iter().enumerate() {
        m.set_column(c, &d.into_inner());
    }
    let svd = m.svd(false, false);
    svd.singular_values[2]
}
