//! Seeded random polygon generation for test suites and experiments.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ConvexPolygon, Vec2};

/// Deterministic general-position polygon with a vertex count in
/// `[min_vertices, max_vertices]`: convex hull of uniform points in the
/// unit square, resampled until both conditions hold.
///
/// Panics if the range is unsatisfiable (e.g. `min_vertices < 3`).
pub fn random_general_position_polygon(
    seed: u64,
    min_vertices: usize,
    max_vertices: usize,
) -> ConvexPolygon {
    assert!((3..=64).contains(&min_vertices) && min_vertices <= max_vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let count = rng.gen_range(max_vertices + 2..=max_vertices + 6);
        let points: Vec<Vec2> = (0..count)
            .map(|_| Vec2::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let Ok(poly) = ConvexPolygon::from_points(&points, false) else {
            continue;
        };
        let hull_size = poly.vertices().len();
        if hull_size >= min_vertices && hull_size <= max_vertices && poly.is_general_position() {
            return poly;
        }
    }
    unreachable!("uniform hulls reach general position almost surely")
}
