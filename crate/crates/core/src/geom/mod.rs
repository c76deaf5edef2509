//! Euclidean primitives and inversive-geometry utilities shared by all
//! modules: powers, sphere angles, tangency classification, inversion,
//! radical loci, similitude centers, pencils and tangent cones.

mod inversive;
mod primitives;

pub use inversive::{
    cone_sphere_tangency_residual, invert, pencil_limit_points, power_of_point_circle,
    power_of_point_sphere, radical_axis, radical_plane, similitude_centers, sphere_angle_cos,
    tangency_classify, tangency_classify_plane, tangent_cone, tangent_cone_from_apex,
    tangent_point, InversionImage, Invertible, SimilitudeCenters, SimilitudeKind, Tangency,
};
pub use primitives::{orthonormal_basis, Circle3, Cone, Dir3, Line3, Plane, Point3, Sphere, Vec3};
