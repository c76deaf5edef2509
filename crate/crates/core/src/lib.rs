//! Inversive-geometry toolkit for tangent-sphere configurations of tetrahedra
//! and Poncelet-type closure, with a deterministic verification harness.
//!
//! The library constructs, at desk scale, the classical configurations around
//! Grace's theorem: the eight tangent spheres of a tetrahedron and their
//! homothetic pairing, the sixteen Grace spheres, the Euler cones of trihedral
//! angles, circle/conic Poncelet 3-pairs and the Laguerre relation, bicentric
//! (inscribed-circumscribed) tetrahedra for a sphere pair, and the sphere
//! lifts behind Feuerbach's theorem. Every construction comes with residual
//! checks so that the theorems can be verified numerically over seeded random
//! instances; the `suites` module packages those checks into reproducible
//! report-producing runs.
//!
//! All operations are pure functions of their inputs; values are freely
//! shareable across threads.

pub mod apollonius;
pub mod error;
pub mod euler_cone;
pub mod feuerbach;
pub mod geom;
pub mod poncelet;
pub mod sampling;
pub mod tetra;
pub mod tol;

pub use error::{GeomError, Result};
pub use geom::{Circle3, Cone, Dir3, Line3, Plane, Point3, Sphere, Vec3};
pub use tol::Tolerance;
