//! Planar primitives: vectors, quarter-turn rotations, convex polygons,
//! radial functions, X-ray chord lengths, general-position detection and
//! seeded perturbation.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * polygons are counter-clockwise, starting at the lexicographically
//!   smallest vertex;
//! * `L` rotates a quarter turn counter-clockwise, `R` clockwise, so that
//!   `<R x, y> = <x, L y>` and `cross(a, b) = <L a, b>`;
//! * geometric predicates use the relative tolerance
//!   `geom_tol = 1e-9 * diameter`.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Relative geometric tolerance (scaled by the polygon diameter).
pub const GEOM_EPS_REL: f64 = 1e-9;

const PERTURB_MAX_ATTEMPTS: u32 = 64;

/// A point or vector in the plane. Finite components only.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// Quarter-turn orientation for [`rotate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rotation {
    /// Counter-clockwise (the matrix `L`).
    Left,
    /// Clockwise (the matrix `R = L^-1`).
    Right,
}

/// Rotate `v` by a quarter turn.
#[inline]
pub fn rotate(v: Vec2, orientation: Rotation) -> Vec2 {
    match orientation {
        Rotation::Left => v.rot_left(),
        Rotation::Right => v.rot_right(),
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Vec2 {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// `cross(a, b) = a.x b.y - a.y b.x = <L a, b>`.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Quarter turn counter-clockwise.
    #[inline]
    pub fn rot_left(self) -> Vec2 {
        Vec2 {
            x: -self.y,
            y: self.x,
        }
    }

    /// Quarter turn clockwise.
    #[inline]
    pub fn rot_right(self) -> Vec2 {
        Vec2 {
            x: self.y,
            y: -self.x,
        }
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n > 0.0 {
            Some(Vec2 {
                x: self.x / n,
                y: self.y / n,
            })
        } else {
            None
        }
    }

    /// Polar angle in `(-pi, pi]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Vec2 {
        Vec2 {
            x: theta.cos(),
            y: theta.sin(),
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl core::ops::Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl core::ops::Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl core::ops::Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl core::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2 {
            x: self.x * s,
            y: self.y * s,
        }
    }
}

/// Result of the exhaustive parallelism scan over a polygon.
///
/// `parallel_vertex_difference_pairs` lists pairs of vertex-index pairs
/// `((i, j), (k, l))` whose differences `v_i - v_j` and `v_k - v_l` are
/// parallel within tolerance, in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPositionReport {
    pub has_opposite_parallel_sides: bool,
    pub parallel_vertex_difference_pairs: Vec<((usize, usize), (usize, usize))>,
    pub is_general_position: bool,
}

/// A convex polygon: counter-clockwise vertex chain, positive area.
///
/// Collinear (angle-pi) vertices are representable; constructors keep them
/// only when asked to. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    diameter: f64,
    area: f64,
}

impl ConvexPolygon {
    /// Normalize an arbitrary point set into a convex polygon.
    ///
    /// The result is the convex hull, counter-clockwise, starting at the
    /// lexicographically smallest vertex; near-duplicate points are merged.
    /// Input points lying on hull sides are retained as collinear vertices
    /// iff `keep_collinear`.
    pub fn from_points(points: &[Vec2], keep_collinear: bool) -> Result<ConvexPolygon> {
        if points.len() < 3 {
            return Err(Error::DegenerateInput);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput);
        }

        let scale = bbox_diagonal(points);
        if scale <= 0.0 {
            return Err(Error::DegenerateInput);
        }
        let tol = GEOM_EPS_REL * scale;

        let mut pts: Vec<Vec2> = points.to_vec();
        pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("finite"));
        pts.dedup_by(|a, b| (*a - *b).norm() <= tol);

        let hull = monotone_chain(&pts, tol);
        if hull.len() < 3 {
            return Err(Error::DegenerateInput);
        }

        let mut verts = if keep_collinear {
            reinsert_collinear(&hull, &pts, tol)
        } else {
            hull
        };

        // Start at the lexicographically smallest vertex.
        let start = verts
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("finite"))
            .map(|(i, _)| i)
            .expect("non-empty");
        verts.rotate_left(start);

        let area = shoelace_area(&verts);
        if area <= tol * scale {
            return Err(Error::DegenerateInput);
        }
        let diameter = max_pairwise_distance(&verts);
        Ok(ConvexPolygon {
            vertices: verts,
            diameter,
            area,
        })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Shoelace area (strictly positive).
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm())
            .sum()
    }

    /// Absolute geometric tolerance for this polygon: `1e-9 * diameter`.
    pub fn geom_tol(&self) -> f64 {
        GEOM_EPS_REL * self.diameter
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Membership within `geom_tol`.
    pub fn contains(&self, p: Vec2) -> bool {
        let tol = self.geom_tol();
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let e = self.vertices[(i + 1) % n] - a;
            e.cross(p - a) >= -tol * e.norm()
        })
    }

    /// Distance from `p` to the polygon boundary (defined inside and out).
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| point_segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Translate every vertex by `t`.
    pub fn translated(&self, t: Vec2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
            diameter: self.diameter,
            area: self.area,
        }
    }

    /// Dilate about the origin by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> ConvexPolygon {
        assert!(factor > 0.0);
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v * factor).collect(),
            diameter: self.diameter * factor,
            area: self.area * factor * factor,
        }
    }

    /// Radial function: the largest `lambda >= 0` with `x + lambda v` in the
    /// polygon (`lambda` measured in units of `|v|`).
    pub fn radial_function(&self, x: Vec2, v: Vec2) -> Result<f64> {
        if v.norm_sq() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        if !self.contains(x) {
            return Err(Error::PointOutside);
        }
        let n = self.vertices.len();
        let mut lambda = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let outward = (self.vertices[(i + 1) % n] - a).rot_right();
            let denom = outward.dot(v);
            if denom > 0.0 {
                lambda = lambda.min(outward.dot(a - x) / denom);
            }
        }
        debug_assert!(lambda.is_finite(), "ray escapes a bounded polygon");
        Ok(lambda.max(0.0))
    }

    /// X-ray chord length: length of the polygon's intersection with the
    /// line `t R v + <v>`. Zero when the line misses the polygon.
    ///
    /// Expects `|v| = 1`; as a function of `t` this is concave on its
    /// support and piecewise linear.
    pub fn xray_length(&self, v: Vec2, t: f64) -> f64 {
        debug_assert!((v.norm() - 1.0).abs() < 1e-9, "direction must be unit");
        let base = v.rot_right() * t;
        let n = self.vertices.len();
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let outward = (self.vertices[(i + 1) % n] - a).rot_right();
            let along = outward.dot(v);
            let slack = outward.dot(a - base);
            if along.abs() <= 1e-13 * outward.norm() {
                // Line parallel to this side: either fully inside the
                // half-plane or fully outside.
                if slack < -self.geom_tol() * outward.norm() {
                    return 0.0;
                }
            } else if along > 0.0 {
                hi = hi.min(slack / along);
            } else {
                lo = lo.max(slack / along);
            }
        }
        (hi - lo).max(0.0)
    }

    /// Exhaustive pairwise parallelism scan over vertex differences plus the
    /// opposite-parallel-sides test.
    pub fn general_position_report(&self) -> GeneralPositionReport {
        let verts = &self.vertices;
        let n = verts.len();

        let mut diffs: Vec<(usize, usize, Vec2)> = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                diffs.push((i, j, verts[j] - verts[i]));
            }
        }

        let mut pairs = Vec::new();
        for a in 0..diffs.len() {
            for b in (a + 1)..diffs.len() {
                let (i, j, d1) = diffs[a];
                let (k, l, d2) = diffs[b];
                if d1.cross(d2).abs() <= GEOM_EPS_REL * d1.norm() * d2.norm() {
                    pairs.push(((i, j), (k, l)));
                }
            }
        }

        let tol = self.geom_tol();
        let mut opposite = false;
        'outer: for i in 0..n {
            let ai = verts[i];
            let ei = verts[(i + 1) % n] - ai;
            for j in (i + 1)..n {
                let aj = verts[j];
                let ej = verts[(j + 1) % n] - aj;
                let parallel = ei.cross(ej).abs() <= GEOM_EPS_REL * ei.norm() * ej.norm();
                if parallel {
                    let same_line = ei.cross(aj - ai).abs() <= tol * ei.norm();
                    if !same_line {
                        opposite = true;
                        break 'outer;
                    }
                }
            }
        }

        GeneralPositionReport {
            has_opposite_parallel_sides: opposite,
            is_general_position: pairs.is_empty() && !opposite,
            parallel_vertex_difference_pairs: pairs,
        }
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position_report().is_general_position
    }

    /// Whether the polygon has a pair of parallel sides on distinct lines.
    ///
    /// This is the (weaker) hypothesis the closed-form decomposition needs;
    /// collinear vertices are fine here even though they break full general
    /// position.
    pub fn has_opposite_parallel_sides(&self) -> bool {
        self.general_position_report().has_opposite_parallel_sides
    }

    /// Jitter every vertex by at most `delta * diameter` with a seeded
    /// generator and retry until the result is in general position.
    ///
    /// `delta = 0` returns the polygon unchanged. The Hausdorff distance to
    /// the input is at most `delta * diameter`.
    pub fn perturb(&self, delta: f64, seed: u64) -> Result<ConvexPolygon> {
        assert!(delta >= 0.0, "perturbation magnitude must be non-negative");
        if delta == 0.0 {
            return Ok(self.clone());
        }
        let radius = delta * self.diameter;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut convexity_lost = 0u32;
        for _ in 0..PERTURB_MAX_ATTEMPTS {
            let jittered: Vec<Vec2> = self
                .vertices
                .iter()
                .map(|&v| v + sample_disc(&mut rng) * radius)
                .collect();
            let candidate = match ConvexPolygon::from_points(&jittered, false) {
                Ok(c) => c,
                Err(_) => {
                    convexity_lost += 1;
                    continue;
                }
            };
            if candidate.vertices.len() != self.vertices.len() {
                // A jittered vertex fell inside the hull of the others.
                convexity_lost += 1;
                continue;
            }
            if candidate.is_general_position() {
                return Ok(candidate);
            }
        }
        if convexity_lost == PERTURB_MAX_ATTEMPTS {
            Err(Error::ConvexityLost)
        } else {
            Err(Error::PerturbationFailed)
        }
    }
}

/// Hausdorff distance between two convex polygons.
///
/// The distance function to a convex set is convex, so the supremum over
/// each polygon is attained at a vertex.
pub fn hausdorff_distance(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let one_sided = |from: &ConvexPolygon, to: &ConvexPolygon| {
        from.vertices()
            .iter()
            .map(|&v| {
                if to.contains(v) {
                    0.0
                } else {
                    to.boundary_distance(v)
                }
            })
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

fn bbox_diagonal(points: &[Vec2]) -> f64 {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in &points[1..] {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (hi - lo).norm()
}

/// Andrew's monotone chain on lexicographically sorted points.
/// Strict hull: collinear points are dropped (tolerance `tol` on the
/// perpendicular offset).
fn monotone_chain(sorted: &[Vec2], tol: f64) -> Vec<Vec2> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let turns_left = |o: Vec2, a: Vec2, b: Vec2| {
        let u = a - o;
        let v = b - o;
        u.cross(v) > tol * (u.norm() + v.norm())
    };
    let mut lower: Vec<Vec2> = Vec::with_capacity(sorted.len());
    for &p in sorted {
        while lower.len() >= 2 && !turns_left(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::with_capacity(sorted.len());
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && !turns_left(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Re-insert input points that lie on hull sides (collinear vertices).
fn reinsert_collinear(hull: &[Vec2], all: &[Vec2], tol: f64) -> Vec<Vec2> {
    let n = hull.len();
    let mut out = Vec::with_capacity(all.len());
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let e = b - a;
        let len_sq = e.norm_sq();
        out.push(a);
        let mut on_edge: Vec<(f64, Vec2)> = all
            .iter()
            .filter_map(|&q| {
                let t = (q - a).dot(e) / len_sq;
                if t <= tol || t >= 1.0 - tol {
                    return None;
                }
                if point_segment_distance(q, a, b) <= tol {
                    Some((t, q))
                } else {
                    None
                }
            })
            .collect();
        on_edge.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
        on_edge.dedup_by(|x, y| (x.1 - y.1).norm() <= tol);
        out.extend(on_edge.into_iter().map(|(_, q)| q));
    }
    out
}

fn shoelace_area(verts: &[Vec2]) -> f64 {
    let n = verts.len();
    let twice: f64 = (0..n).map(|i| verts[i].cross(verts[(i + 1) % n])).sum();
    0.5 * twice
}

fn max_pairwise_distance(verts: &[Vec2]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            best = best.max((verts[j] - verts[i]).norm());
        }
    }
    best
}

fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let e = b - a;
    let len_sq = e.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(e) / len_sq).clamp(0.0, 1.0);
    (p - (a + e * t)).norm()
}

/// Uniform sample from the closed unit disc (rejection from the square).
fn sample_disc<R: Rng>(rng: &mut R) -> Vec2 {
    loop {
        let x = rng.gen_range(-1.0..=1.0);
        let y = rng.gen_range(-1.0..=1.0);
        let v = Vec2 { x, y };
        if v.norm_sq() <= 1.0 {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t1() -> ConvexPolygon {
        ConvexPolygon::from_points(
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(1.0, 1.0),
            ],
            false,
        )
        .unwrap()
    }

    pub(crate) fn q1() -> ConvexPolygon {
        ConvexPolygon::from_points(
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(1.2, 2.0),
                Vec2::new(1.0, 1.0),
            ],
            false,
        )
        .unwrap()
    }

    pub(crate) fn unit_square() -> ConvexPolygon {
        ConvexPolygon::from_points(
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ],
            false,
        )
        .unwrap()
    }

    #[test]
    fn quarter_turns() {
        assert_eq!(
            rotate(Vec2::new(1.0, 0.0), Rotation::Left),
            Vec2::new(0.0, 1.0)
        );
        assert_eq!(
            rotate(Vec2::new(1.0, 0.0), Rotation::Right),
            Vec2::new(0.0, -1.0)
        );
        let v = Vec2::new(3.0, -2.0);
        assert_eq!(v.rot_right().rot_left(), v);
        // <R v, u> = <v, L u> and L L v = -v.
        let u = Vec2::new(-0.7, 2.3);
        assert!((v.rot_right().dot(u) - v.dot(u.rot_left())).abs() < 1e-15);
        assert_eq!(v.rot_left().rot_left(), -v);
    }

    #[test]
    fn normalize_orders_ccw_from_lex_min() {
        let shuffled = [
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(1.2, 2.0),
            Vec2::new(0.0, 1.0),
        ];
        let poly = ConvexPolygon::from_points(&shuffled, false).unwrap();
        assert_eq!(
            poly.vertices(),
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(1.2, 2.0),
                Vec2::new(0.0, 1.0)
            ]
        );
        assert!((poly.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_keeps_collinear_on_request() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.5, 0.5),
        ];
        let kept = ConvexPolygon::from_points(&pts, true).unwrap();
        assert_eq!(kept.vertices().len(), 4);
        assert!(kept.vertices().contains(&Vec2::new(0.5, 0.5)));
        let dropped = ConvexPolygon::from_points(&pts, false).unwrap();
        assert_eq!(dropped.vertices().len(), 3);
    }

    #[test]
    fn normalize_rejects_collinear_input() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 2.0),
        ];
        assert_eq!(
            ConvexPolygon::from_points(&pts, false),
            Err(Error::DegenerateInput)
        );
    }

    #[test]
    fn areas() {
        assert!((t1().area() - 0.5).abs() < 1e-15);
        assert!((q1().area() - 1.0).abs() < 1e-15);
        assert!((unit_square().area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn radial_function_examples() {
        let t = t1();
        let r = t
            .radial_function(Vec2::new(0.25, 0.5), Vec2::new(1.0, 0.0))
            .unwrap();
        assert!((r - 0.25).abs() < 1e-12);
        let on_boundary = t
            .radial_function(Vec2::new(0.0, 0.5), Vec2::new(1.0, 0.0))
            .unwrap();
        assert!((on_boundary - 0.5).abs() < 1e-12);
        let outward = t
            .radial_function(Vec2::new(0.0, 0.5), Vec2::new(-1.0, 0.0))
            .unwrap();
        assert!(outward.abs() < 1e-12);
        assert_eq!(
            t.radial_function(Vec2::new(2.0, 2.0), Vec2::new(1.0, 0.0)),
            Err(Error::PointOutside)
        );
    }

    #[test]
    fn xray_examples() {
        let t = t1();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let v = Vec2::new(-s, s);
        // Chord through the vertex (0, 1).
        let level = v.rot_right().dot(Vec2::new(0.0, 1.0));
        assert!((t.xray_length(v, level) - s).abs() < 1e-12);
        // Vertical line x = 0.5 across the triangle.
        let up = Vec2::new(0.0, 1.0);
        let tt = up.rot_right().dot(Vec2::new(0.5, 0.0));
        assert!((t.xray_length(up, tt) - 0.5).abs() < 1e-12);
        // Line outside the projection range.
        assert_eq!(t.xray_length(up, 100.0), 0.0);
    }

    #[test]
    fn xray_even_in_direction() {
        let q = q1();
        let v = Vec2::from_angle(0.37);
        for &t in &[-0.3, 0.1, 0.55, 1.4] {
            let a = q.xray_length(v, t);
            let b = q.xray_length(-v, -t);
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn radial_pair_sums_to_chord() {
        let q = q1();
        let v = Vec2::from_angle(1.234);
        let x = Vec2::new(0.4, 0.9);
        assert!(q.contains(x));
        let fwd = q.radial_function(x, v).unwrap();
        let bwd = q.radial_function(x, -v).unwrap();
        let level = v.rot_right().dot(x);
        let chord = q.xray_length(v, level);
        assert!((fwd + bwd - chord).abs() <= 1e-9 * q.diameter());
    }

    #[test]
    fn general_position_cases() {
        assert!(
            unit_square()
                .general_position_report()
                .has_opposite_parallel_sides
        );
        assert!(!unit_square().is_general_position());
        let rq = q1().general_position_report();
        assert!(rq.is_general_position, "{:?}", rq);
        assert!(t1().is_general_position());
    }

    #[test]
    fn perturb_reaches_general_position() {
        let sq = unit_square();
        let p = sq.perturb(1e-6, 42).unwrap();
        assert!(p.is_general_position());
        assert!(hausdorff_distance(&sq, &p) <= 1e-6 * sq.diameter() + 1e-15);
    }

    #[test]
    fn perturb_zero_is_identity() {
        let sq = unit_square();
        assert_eq!(sq.perturb(0.0, 7).unwrap(), sq);
    }

    #[test]
    fn perturb_hausdorff_bound_many_seeds() {
        let q = q1();
        let delta = 1e-4;
        for seed in 0..100u64 {
            let p = q.perturb(delta, seed).unwrap();
            assert!(hausdorff_distance(&q, &p) <= delta * q.diameter() + 1e-15);
        }
    }

    #[test]
    fn perturb_area_drift_is_linear_in_delta() {
        let q = q1();
        for (seed, delta) in [(1u64, 1e-5), (2, 1e-6), (3, 1e-7)] {
            let p = q.perturb(delta, seed).unwrap();
            let bound = 10.0 * delta * q.perimeter() * q.diameter();
            assert!((p.area() - q.area()).abs() <= bound);
        }
    }

    #[test]
    fn contains_and_boundary_distance() {
        let sq = unit_square();
        assert!(sq.contains(Vec2::new(0.5, 0.5)));
        assert!(sq.contains(Vec2::new(0.0, 0.5)));
        assert!(!sq.contains(Vec2::new(-0.1, 0.5)));
        assert!((sq.boundary_distance(Vec2::new(0.5, 0.5)) - 0.5).abs() < 1e-15);
        assert!((sq.boundary_distance(Vec2::new(2.0, 0.5)) - 1.0).abs() < 1e-15);
    }
}
