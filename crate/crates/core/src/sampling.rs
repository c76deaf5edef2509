//! Deterministic seeded sampling of geometric instances.
//!
//! Instance seeds are derived by a documented splitting rule so that any
//! anomaly can be reproduced from its `(seed, suite, index)` coordinates:
//!
//! ```text
//! instance_seed = splitmix64( splitmix64( seed ^ fnv1a64(suite_id) ) ^ index )
//! ```
//!
//! The per-instance generator is ChaCha8 seeded with the instance seed, so
//! instances are portable across platforms (reproducibility covers the
//! sampled instances, not the last floating-point digits of residuals).

use crate::geom::{Dir3, Plane, Point3, Vec3};
use crate::tetra::Tetrahedron;
use nalgebra::Unit;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// FNV-1a hash of a byte string.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stream-splitting rule for per-instance seeds.
pub fn instance_seed(seed: u64, suite_id: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a64(suite_id.as_bytes())) ^ index)
}

/// ChaCha8 generator for one instance.
pub fn instance_rng(seed: u64, suite_id: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(seed, suite_id, index))
}

/// Uniform point in the unit cube.
pub fn random_point_in_cube(rng: &mut ChaCha8Rng) -> Point3 {
    Vec3::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))
}

/// Uniform unit direction (rejection sampling in the cube).
pub fn random_dir(rng: &mut ChaCha8Rng) -> Dir3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-4 && n <= 1.0 {
            return Unit::new_normalize(v);
        }
    }
}

/// Generic-position tetrahedron: i.i.d. cube vertices, rejected when the
/// volume is small or any signed face-area sum is near zero (which would
/// make a goof sphere escape to infinity).
pub fn random_tetrahedron(rng: &mut ChaCha8Rng) -> Tetrahedron {
    loop {
        let vs = [
            random_point_in_cube(rng),
            random_point_in_cube(rng),
            random_point_in_cube(rng),
            random_point_in_cube(rng),
        ];
        let Ok(t) = Tetrahedron::new(vs) else { continue };
        if t.volume < 0.01 {
            continue;
        }
        let generic = crate::tetra::SignVector::all().iter().all(|s| {
            let sum: f64 = (0..4).map(|i| s.0[i] as f64 * t.face_areas[i]).sum();
            sum.abs() >= 0.01 * t.scale * t.scale
        });
        if generic {
            return t;
        }
    }
}

/// Triangle embedded in a random 3D carrier plane. Returns the vertices;
/// rejection keeps the shape away from degeneracy (small area or extremely
/// short sides) while retaining right and isoceles shapes.
pub fn random_triangle3(rng: &mut ChaCha8Rng) -> [Point3; 3] {
    loop {
        let normal = random_dir(rng);
        let origin = 2.0 * random_point_in_cube(rng) - Vec3::new(1.0, 1.0, 1.0);
        let (u, v) = crate::geom::orthonormal_basis(&normal);
        let mut pts = [Vec3::zeros(); 3];
        for p in &mut pts {
            let a = rng.random_range(0.0..2.0);
            let b = rng.random_range(0.0..2.0);
            *p = origin + a * u + b * v;
        }
        let area = 0.5 * (pts[1] - pts[0]).cross(&(pts[2] - pts[0])).norm();
        let mut scale: f64 = 0.0;
        let mut min_side = f64::INFINITY;
        for i in 0..3 {
            let s = (pts[(i + 1) % 3] - pts[i]).norm();
            scale = scale.max(s);
            min_side = min_side.min(s);
        }
        if area > 0.05 * scale * scale && min_side > 0.1 * scale {
            return pts;
        }
    }
}

/// Random plane at moderate offset from the origin.
pub fn random_plane(rng: &mut ChaCha8Rng) -> Plane {
    let normal = random_dir(rng);
    Plane::new(normal, rng.random_range(-1.0..1.0))
}
