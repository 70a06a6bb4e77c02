//! Alternating-vector generation of a convex polygon for a direction class.
//!
//! For a direction `x` off every vertex-difference line, the polygon is
//! translated so the `<Rx, .>`-minimal vertex sits at the origin and its
//! boundary splits into two arcs. Merging the arcs in increasing level
//! order, and inserting a vertex on the opposite arc's side whenever two
//! consecutive chain vertices would fall on the same arc, yields a chain
//! `p_0 = 0, p_1, ..., p_m` whose steps `z_i = p_i - p_{i-1}` are
//! *alternating* (consecutive turns strictly alternate) and *oriented*
//! (every step advances along `Rx`).
//!
//! From the chain the module derives the scaled side normals `n_i`, the
//! expansion coefficients `a_i, b_i, c_i` of `L z_i` in the `{n_{i-1}, n_i}`
//! basis, and the cone weights `alpha_i` feeding the closed-form norm
//! kernel. Structural facts about these quantities (coefficient
//! relations, the one-positive-weight sign pattern, the intersection-point
//! parallelogram identity) are exposed as independent check operations
//! rather than assumed.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Vec2, GEOM_EPS_REL};

/// Relative edge-parameter margin keeping synthetic vertices away from the
/// endpoints of the side they are placed on.
pub(crate) const SYNTHETIC_MARGIN: f64 = 1e-9;

/// Expansion of one `L z_i` pair in the `{n_{i-1}, n_i}` basis,
/// `L z_i = a n_{i-1} + a_tilde n_i` and `L z_{i+1} = b n_{i-1} + c n_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffRow {
    /// Chain index `i`, running over `2..=m-1`.
    pub index: usize,
    pub a: f64,
    pub a_tilde: f64,
    pub b: f64,
    pub c: f64,
}

/// Closed cone on which the decomposition's closed form equals the norm:
/// directions `y` with `<y, L z_i> >= 0` for every step. Only the two
/// binding constraints are kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedCone {
    pub normals: [Vec2; 2],
}

impl ClosedCone {
    pub fn contains(&self, y: Vec2, tol: f64) -> bool {
        self.normals
            .iter()
            .all(|&n| n.dot(y) >= -tol * n.norm() * y.norm())
    }
}

/// Alternating-vector decomposition of a polygon for one direction class.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// Step vectors `z_1..z_m`.
    pub z: Vec<Vec2>,
    /// Chain vertices `p_0 = 0, p_1, ..., p_m` (translated polygon boundary).
    pub chain: Vec<Vec2>,
    /// Per chain vertex: inserted on a side rather than an original vertex.
    pub synthetic: Vec<bool>,
    /// Spanning sides `w_i = z_i + z_{i+1}`, `i = 1..m-1`; `w_i` is the side
    /// of the polygon joining `p_{i-1}` to `p_{i+1}`.
    pub w: Vec<Vec2>,
    /// Scaled side normals `n_1..n_{m-1}`: `n_i` is orthogonal to `w_i` with
    /// `<n_i, z_i> = (-1)^(i+1)`, so `<n_i, x>^-1` is the chord length
    /// through `p_i` for admissible `x`.
    pub n: Vec<Vec2>,
    /// Basis coefficients for the interior indices `2..=m-1`.
    pub coeffs: Vec<CoeffRow>,
    /// Cone weights `alpha_1..alpha_{m-1}`; they sum to twice the area.
    pub alpha: Vec<f64>,
    /// Closed validity cone.
    pub cone: ClosedCone,
    /// Offset applied to the polygon: chain vertex = original + translation.
    pub translation: Vec2,
    /// Whether the chain was generated for the negated direction (the norm
    /// is even, so callers evaluate the kernel at `-x`).
    pub flipped: bool,
    /// Polygon area.
    pub area: f64,
}

impl Decomposition {
    /// Number of step vectors `m`.
    pub fn step_count(&self) -> usize {
        self.z.len()
    }

    /// Strict normals of the open cone where the norm kernel is smooth
    /// (identical to `n`).
    pub fn open_cone_normals(&self) -> &[Vec2] {
        &self.n
    }

    /// Weight sum minus twice the area, relative to twice the area.
    pub fn weight_sum_defect(&self) -> f64 {
        let sum: f64 = self.alpha.iter().sum();
        (sum - 2.0 * self.area) / (2.0 * self.area)
    }
}

/// Sign pattern of the cone weights: exactly one strictly positive entry.
#[derive(Clone, Debug, PartialEq)]
pub struct SignReport {
    /// 1-based index of the unique positive weight.
    pub i0: usize,
    pub positive_count: usize,
    pub alpha_sum: f64,
    /// Twice the polygon area.
    pub area2: f64,
}

/// Residuals of the coefficient relations `a~ = -a`, `b = -a`,
/// `c = (-1)^(i+1) cross(z_{i+1}, z_i) + a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientCheck {
    pub max_residual: f64,
    pub rows_checked: usize,
}

/// Intersection points of consecutive side lines and the parallelogram
/// areas that must reproduce the cone weights.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionCheckReport {
    /// `r_1..r_m`: intersection of the lines carrying `w_{i-1}` and `w_i`
    /// (with `w_0 = z_1`, `w_m = z_m`).
    pub r: Vec<Vec2>,
    /// `|cross(r_{i+1} - r_i, z_i)|` for `i = 1..m-1`.
    pub parallelogram_areas: Vec<f64>,
    /// Largest deviation from `|alpha_i|`, relative to the weight scale.
    pub max_mismatch: f64,
}

/// Build the decomposition of `poly` for the direction `x`.
///
/// Requirements: no pair of opposite parallel sides (collinear vertices are
/// fine), and `x` off every vertex-difference line. When the merged chain
/// for `x` needs more side insertions than the one for `-x`, the
/// construction runs on `-x` instead and marks the result `flipped`
/// (legitimate because the norm is even).
pub fn decompose(poly: &ConvexPolygon, x: Vec2) -> Result<Decomposition> {
    if x.norm_sq() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    if poly.general_position_report().has_opposite_parallel_sides {
        return Err(Error::NotGeneralPosition);
    }
    direction_off_boundaries(poly, x)?;

    let forward = plan_chain(poly, x);
    let backward = plan_chain(poly, -x);
    let (plan, generator, flipped) = if backward.insertions < forward.insertions {
        (backward, -x, true)
    } else {
        (forward, x, false)
    };
    let realized = realize_chain(poly, &plan, &[generator], SYNTHETIC_MARGIN)
        .or_else(|| realize_chain(poly, &plan, &[generator], 1e-15))
        .expect("single-direction window is always feasible");
    build(poly, realized, generator, flipped).ok_or(Error::ParallelLines)
}

/// Check that `x` is not parallel to any vertex difference.
fn direction_off_boundaries(poly: &ConvexPolygon, x: Vec2) -> Result<()> {
    let verts = poly.vertices();
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            let d = verts[j] - verts[i];
            if x.cross(d).abs() <= GEOM_EPS_REL * x.norm() * d.norm() {
                return Err(Error::DirectionOnConeBoundary);
            }
        }
    }
    Ok(())
}

/// One planned chain entry between the extreme vertices.
#[derive(Clone, Copy, Debug)]
enum PlanEntry {
    Original(usize),
    /// Vertex to be placed on the side `(edge.0, edge.1)` of the opposite
    /// arc, at a level strictly between those of the original vertices
    /// `below` and `above`.
    Synthetic {
        edge: (usize, usize),
        below: usize,
        above: usize,
    },
}

/// Combinatorial chain plan for one direction: constant throughout the open
/// cone of the partition containing that direction.
pub(crate) struct ChainPlan {
    min_vertex: usize,
    max_vertex: usize,
    entries: Vec<PlanEntry>,
    pub(crate) insertions: usize,
}

/// Plan the alternating chain for direction `dir` (levels assumed pairwise
/// distinct, i.e. `dir` off every vertex-difference line).
pub(crate) fn plan_chain(poly: &ConvexPolygon, dir: Vec2) -> ChainPlan {
    let verts = poly.vertices();
    let n = verts.len();
    let r = dir.rot_right();
    let level = |i: usize| r.dot(verts[i]);

    let mut min_vertex = 0;
    let mut max_vertex = 0;
    for i in 1..n {
        if level(i) < level(min_vertex) {
            min_vertex = i;
        }
        if level(i) > level(max_vertex) {
            max_vertex = i;
        }
    }

    // Walking counter-clockwise from the minimal vertex keeps the interior
    // on the left of travel, so that arc is the right arc with respect to
    // the direction itself; the clockwise walk gives the left arc.
    let mut right_arc = vec![min_vertex];
    let mut i = min_vertex;
    while i != max_vertex {
        i = (i + 1) % n;
        right_arc.push(i);
    }
    let mut left_arc = vec![min_vertex];
    i = min_vertex;
    while i != max_vertex {
        i = (i + n - 1) % n;
        left_arc.push(i);
    }

    // Interior vertices of both arcs merged by level.
    let mut merged: Vec<(usize, bool)> = right_arc[1..right_arc.len() - 1]
        .iter()
        .map(|&v| (v, false))
        .chain(left_arc[1..left_arc.len() - 1].iter().map(|&v| (v, true)))
        .collect();
    merged.sort_by(|a, b| level(a.0).total_cmp(&level(b.0)));

    // The chain must start on the left arc and alternate; a vertex arriving
    // on the wrong arc forces an insertion on the expected one.
    let mut entries = Vec::with_capacity(merged.len() + 4);
    let mut insertions = 0;
    let mut expect_left = true;
    let mut last_original = min_vertex;
    for &(v, is_left) in &merged {
        if is_left != expect_left {
            let edge = {
                let arc = if expect_left { &left_arc } else { &right_arc };
                spanning_edge(arc, &level, level(last_original), level(v))
            };
            entries.push(PlanEntry::Synthetic {
                edge,
                below: last_original,
                above: v,
            });
            insertions += 1;
            expect_left = !expect_left;
        }
        entries.push(PlanEntry::Original(v));
        last_original = v;
        expect_left = !expect_left;
    }

    ChainPlan {
        min_vertex,
        max_vertex,
        entries,
        insertions,
    }
}

/// Edge of `arc` spanning the open level interval `(lo, hi)`: the interval
/// contains no vertex level, so the edge is the one leaving the last arc
/// vertex at level `<= lo`.
fn spanning_edge(arc: &[usize], level: &dyn Fn(usize) -> f64, lo: f64, hi: f64) -> (usize, usize) {
    let mut j = 0;
    while j + 1 < arc.len() && level(arc[j + 1]) <= lo {
        j += 1;
    }
    debug_assert!(
        j + 1 < arc.len() && level(arc[j + 1]) >= hi,
        "arc must span the gap"
    );
    (arc[j], arc[j + 1])
}

/// Place the planned chain concretely, with every synthetic vertex chosen
/// so the chain stays ordered under all of `window_dirs` (the closed span
/// of directions the decomposition must serve). `None` when no single
/// placement satisfies the whole window.
///
/// `margin` keeps synthetic vertices off the endpoints of their side; a
/// placement can be forced arbitrarily close to an endpoint when the
/// window hugs a cone boundary, in which case callers retry with a relaxed
/// margin.
pub(crate) fn realize_chain(
    poly: &ConvexPolygon,
    plan: &ChainPlan,
    window_dirs: &[Vec2],
    margin: f64,
) -> Option<(Vec<Vec2>, Vec<bool>)> {
    let verts = poly.vertices();
    let mut points = Vec::with_capacity(plan.entries.len() + 2);
    let mut synthetic = Vec::with_capacity(plan.entries.len() + 2);
    points.push(verts[plan.min_vertex]);
    synthetic.push(false);
    for entry in &plan.entries {
        match *entry {
            PlanEntry::Original(v) => {
                points.push(verts[v]);
                synthetic.push(false);
            }
            PlanEntry::Synthetic { edge, below, above } => {
                let a = verts[edge.0];
                let b = verts[edge.1];
                let (mut t_lo, mut t_hi) = (margin, 1.0 - margin);
                for &d in window_dirs {
                    let r = d.rot_right();
                    let (ea, eb) = (r.dot(a), r.dot(b));
                    let (lo, hi) = (r.dot(verts[below]), r.dot(verts[above]));
                    let denom = eb - ea;
                    if denom.abs() <= GEOM_EPS_REL * (ea.abs() + eb.abs() + 1.0) {
                        // Side parallel to this window direction: every
                        // placement has the same level; it must sit inside
                        // the (possibly collapsed) gap already.
                        let tol = poly.geom_tol();
                        if ea < lo - tol || ea > hi + tol {
                            return None;
                        }
                        continue;
                    }
                    let (mut c_lo, mut c_hi) = ((lo - ea) / denom, (hi - ea) / denom);
                    if c_lo > c_hi {
                        core::mem::swap(&mut c_lo, &mut c_hi);
                    }
                    t_lo = t_lo.max(c_lo);
                    t_hi = t_hi.min(c_hi);
                }
                if t_lo > t_hi {
                    return None;
                }
                let t = 0.5 * (t_lo + t_hi);
                points.push(a + (b - a) * t);
                synthetic.push(true);
            }
        }
    }
    points.push(verts[plan.max_vertex]);
    synthetic.push(false);
    Some((points, synthetic))
}

/// Derive every decomposition quantity from a realized chain. `None` when
/// a `{n_{i-1}, n_i}` pair degenerates (cannot happen without opposite
/// parallel sides).
pub(crate) fn build(
    poly: &ConvexPolygon,
    (points, synthetic): (Vec<Vec2>, Vec<bool>),
    generator: Vec2,
    flipped: bool,
) -> Option<Decomposition> {
    let translation = -points[0];
    let chain: Vec<Vec2> = points.iter().map(|&q| q + translation).collect();
    let m = chain.len() - 1;
    debug_assert!(m >= 2);

    let z: Vec<Vec2> = chain.windows(2).map(|w| w[1] - w[0]).collect();
    let r = generator.rot_right();
    debug_assert!(
        z.iter().all(|&s| s.dot(r) > 0.0),
        "chain must advance along R x"
    );
    debug_assert!(
        (0..m - 1).all(|k| sign_for(k + 1) * z[k + 1].cross(z[k]) > 0.0),
        "chain turns must alternate"
    );

    let w: Vec<Vec2> = (0..m - 1).map(|k| z[k] + z[k + 1]).collect();
    let n: Vec<Vec2> = (0..m - 1)
        .map(|k| {
            // n_i = (-1)^(i+1) L w_i / <L w_i, z_i>, with i = k + 1.
            let lw = w[k].rot_left();
            lw * (sign_for(k + 1) / lw.dot(z[k]))
        })
        .collect();

    let mut coeffs = Vec::with_capacity(m.saturating_sub(2));
    for i in 2..m {
        let n_prev = n[i - 2];
        let n_cur = n[i - 1];
        let det = n_prev.cross(n_cur);
        if det.abs() <= 1e-300 {
            return None;
        }
        let lz_i = z[i - 1].rot_left();
        let lz_next = z[i].rot_left();
        coeffs.push(CoeffRow {
            index: i,
            a: lz_i.cross(n_cur) / det,
            a_tilde: n_prev.cross(lz_i) / det,
            b: lz_next.cross(n_cur) / det,
            c: n_prev.cross(lz_next) / det,
        });
    }

    let coeff = |i: usize| -> &CoeffRow { &coeffs[i - 2] };
    let mut alpha = vec![0.0; m - 1];
    let a2 = if m >= 3 { coeff(2).a } else { 0.0 };
    alpha[0] = -a2 + z[1].cross(z[0]);
    for i in 2..=m.saturating_sub(2) {
        alpha[i - 1] = coeff(i + 1).b + coeff(i).c;
    }
    if m >= 3 {
        alpha[m - 2] = coeff(m - 1).c;
    }

    let area = poly.area();
    debug_assert!(
        {
            let sum: f64 = alpha.iter().sum();
            (sum - 2.0 * area).abs() <= 1e-9 * 2.0 * area
        },
        "cone weights must sum to twice the area"
    );

    Some(Decomposition {
        cone: closed_cone(&z, generator),
        z,
        chain,
        synthetic,
        w,
        n,
        coeffs,
        alpha,
        translation,
        flipped,
        area,
    })
}

#[inline]
fn sign_for(i: usize) -> f64 {
    // (-1)^(i+1)
    if i % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// The closed cone `{y : <y, L z_i> >= 0 for all i}` reduced to its two
/// binding half-planes.
fn closed_cone(z: &[Vec2], generator: Vec2) -> ClosedCone {
    let reference = generator.angle();
    let mut low = (f64::INFINITY, Vec2::ZERO);
    let mut high = (f64::NEG_INFINITY, Vec2::ZERO);
    for &step in z {
        let d = step.rot_left();
        let delta = wrap_angle(d.angle() - reference);
        if delta < low.0 {
            low = (delta, d);
        }
        if delta > high.0 {
            high = (delta, d);
        }
    }
    ClosedCone {
        normals: [low.1, high.1],
    }
}

fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut x = a - two_pi * (a / two_pi).floor();
    if x > core::f64::consts::PI {
        x -= two_pi;
    }
    x
}

/// Check the coefficient relations `a~_i = -a_i`, `b_i = -a_i`,
/// `c_i = (-1)^(i+1) cross(z_{i+1}, z_i) + a_i` for `i = 2..=m-1`.
///
/// The coefficients were solved from the `{n_{i-1}, n_i}` systems, so these
/// relations are an independent consistency check, not a tautology.
pub fn verify_coefficient_relations(d: &Decomposition) -> CoefficientCheck {
    let mut max_residual = 0.0f64;
    for row in &d.coeffs {
        let i = row.index;
        let turn = sign_for(i) * d.z[i].cross(d.z[i - 1]);
        max_residual = max_residual
            .max((row.a_tilde + row.a).abs())
            .max((row.b + row.a).abs())
            .max((row.c - (turn + row.a)).abs());
    }
    CoefficientCheck {
        max_residual,
        rows_checked: d.coeffs.len(),
    }
}

/// Verify the sign structure of the cone weights: exactly one strictly
/// positive entry, the rest non-positive within tolerance, and the sum
/// equal to twice the area.
pub fn sign_report(d: &Decomposition) -> Result<SignReport> {
    let scale = d.alpha.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
    let tol = 1e-9 * scale;
    let (imax, &amax) = d
        .alpha
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("at least one weight");
    let positive_count = d.alpha.iter().filter(|&&a| a > tol).count();
    let alpha_sum: f64 = d.alpha.iter().sum();
    let area2 = 2.0 * d.area;
    let sum_ok = (alpha_sum - area2).abs() <= 1e-9 * area2;
    let others_ok = d
        .alpha
        .iter()
        .enumerate()
        .all(|(i, &a)| i == imax || a <= tol);
    if positive_count != 1 || amax <= 0.0 || !others_ok || !sum_ok {
        return Err(Error::SignStructureViolated);
    }
    Ok(SignReport {
        i0: imax + 1,
        positive_count,
        alpha_sum,
        area2,
    })
}

/// Intersect the lines carrying consecutive sides and check that the
/// parallelogram areas `|cross(r_{i+1} - r_i, z_i)|` reproduce `|alpha_i|`.
///
/// Vacuous (empty report) for `m = 2`.
pub fn intersection_point_check(d: &Decomposition) -> Result<IntersectionCheckReport> {
    let m = d.z.len();
    if m < 3 {
        return Ok(IntersectionCheckReport {
            r: Vec::new(),
            parallelogram_areas: Vec::new(),
            max_mismatch: 0.0,
        });
    }
    // Lines carrying w_0 = z_1 (through p_0), w_i (through p_{i-1}) and
    // w_m = z_m (through p_{m-1}).
    let line = |i: usize| -> (Vec2, Vec2) {
        if i == 0 {
            (d.chain[0], d.z[0])
        } else if i == m {
            (d.chain[m - 1], d.z[m - 1])
        } else {
            (d.chain[i - 1], d.w[i - 1])
        }
    };
    let mut r = Vec::with_capacity(m);
    for i in 1..=m {
        let (p0, u) = line(i - 1);
        let (q0, v) = line(i);
        let det = u.cross(v);
        if det.abs() <= 1e-300 {
            return Err(Error::ParallelLines);
        }
        let s = (q0 - p0).cross(v) / det;
        r.push(p0 + u * s);
    }
    let scale = d.alpha.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
    let mut areas = Vec::with_capacity(m - 1);
    let mut max_mismatch = 0.0f64;
    for i in 1..m {
        let area = (r[i] - r[i - 1]).cross(d.z[i - 1]).abs();
        areas.push(area);
        max_mismatch = max_mismatch.max((area - d.alpha[i - 1].abs()).abs() / scale);
    }
    Ok(IntersectionCheckReport {
        r,
        parallelogram_areas: areas,
        max_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> ConvexPolygon {
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

    fn q1() -> ConvexPolygon {
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

    fn diag() -> Vec2 {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Vec2::new(-s, s)
    }

    fn assert_vec2_eq(a: Vec2, b: Vec2, tol: f64) {
        assert!((a - b).norm() <= tol, "{a:?} != {b:?}");
    }

    #[test]
    fn t1_diagonal_class() {
        let d = decompose(&t1(), diag()).unwrap();
        assert_eq!(d.step_count(), 2);
        assert!(!d.flipped);
        assert_vec2_eq(d.z[0], Vec2::new(0.0, 1.0), 1e-15);
        assert_vec2_eq(d.z[1], Vec2::new(1.0, 0.0), 1e-15);
        assert_vec2_eq(d.n[0], Vec2::new(-1.0, 1.0), 1e-15);
        assert_eq!(d.alpha.len(), 1);
        assert!((d.alpha[0] - 1.0).abs() < 1e-15);
        assert!(d.synthetic.iter().all(|&s| !s));
    }

    #[test]
    fn q1_diagonal_class() {
        let d = decompose(&q1(), diag()).unwrap();
        assert_eq!(d.step_count(), 3);
        assert!(!d.flipped);
        assert_vec2_eq(d.z[0], Vec2::new(0.0, 1.0), 1e-15);
        assert_vec2_eq(d.z[1], Vec2::new(1.0, 0.0), 1e-15);
        assert_vec2_eq(d.z[2], Vec2::new(0.2, 1.0), 1e-15);
        assert_vec2_eq(d.n[0], Vec2::new(-1.0, 1.0), 1e-12);
        assert_vec2_eq(d.n[1], Vec2::new(-1.0, 1.2), 1e-12);
        assert_eq!(d.coeffs.len(), 1);
        assert!((d.coeffs[0].a + 5.0).abs() < 1e-12);
        assert!((d.alpha[0] - 6.0).abs() < 1e-12);
        assert!((d.alpha[1] + 4.0).abs() < 1e-12);
        let sum: f64 = d.alpha.iter().sum();
        assert!((sum - 2.0 * d.area).abs() < 1e-12);
    }

    #[test]
    fn t1_steep_class_flips() {
        let s5 = 5.0f64.sqrt();
        let d = decompose(&t1(), Vec2::new(1.0 / s5, 2.0 / s5)).unwrap();
        assert!(d.flipped);
        assert_eq!(d.step_count(), 2);
        assert_vec2_eq(d.z[0], Vec2::new(-1.0, -1.0), 1e-15);
        assert_vec2_eq(d.z[1], Vec2::new(0.0, 1.0), 1e-15);
        assert_vec2_eq(d.n[0], Vec2::new(0.0, -1.0), 1e-15);
        assert_eq!(d.alpha.len(), 1);
        assert!((d.alpha[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn insertion_class_stays_unflipped() {
        // For this direction both orientations of Q1 need one synthetic
        // vertex; the unflipped one is preferred.
        let s5 = 5.0f64.sqrt();
        let d = decompose(&q1(), Vec2::new(1.0 / s5, 2.0 / s5)).unwrap();
        assert!(!d.flipped);
        assert_eq!(d.step_count(), 4);
        assert_eq!(d.synthetic.iter().filter(|&&s| s).count(), 1);
        let sum: f64 = d.alpha.iter().sum();
        assert!((sum - 2.0 * d.area).abs() <= 1e-12 * d.area);
        assert!(sign_report(&d).is_ok());
    }

    #[test]
    fn rejects_bad_inputs() {
        let square = ConvexPolygon::from_points(
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ],
            false,
        )
        .unwrap();
        assert_eq!(decompose(&square, diag()), Err(Error::NotGeneralPosition));
        assert_eq!(decompose(&t1(), Vec2::ZERO), Err(Error::ZeroDirection));
        // (1,1) is parallel to the hypotenuse.
        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(
            decompose(&t1(), Vec2::new(s, s)),
            Err(Error::DirectionOnConeBoundary)
        );
    }

    #[test]
    fn coefficient_relations_hold() {
        let check = verify_coefficient_relations(&decompose(&q1(), diag()).unwrap());
        assert_eq!(check.rows_checked, 1);
        assert!(
            check.max_residual <= 1e-12,
            "residual {}",
            check.max_residual
        );
        // m = 2: vacuously true.
        let check = verify_coefficient_relations(&decompose(&t1(), diag()).unwrap());
        assert_eq!(check.rows_checked, 0);
        assert_eq!(check.max_residual, 0.0);
    }

    #[test]
    fn sign_reports() {
        let rep = sign_report(&decompose(&t1(), diag()).unwrap()).unwrap();
        assert_eq!(rep.i0, 1);
        assert!((rep.alpha_sum - 1.0).abs() < 1e-15);
        let rep = sign_report(&decompose(&q1(), diag()).unwrap()).unwrap();
        assert_eq!(rep.i0, 1);
        assert_eq!(rep.positive_count, 1);
        assert!((rep.alpha_sum - 2.0).abs() < 1e-12);
        assert!((rep.area2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn intersection_points_match_weights() {
        let d = decompose(&q1(), diag()).unwrap();
        let rep = intersection_point_check(&d).unwrap();
        assert_vec2_eq(rep.r[0], Vec2::new(0.0, 0.0), 1e-12);
        assert_vec2_eq(rep.r[1], Vec2::new(6.0, 6.0), 1e-9);
        assert_vec2_eq(rep.r[2], Vec2::new(1.2, 2.0), 1e-12);
        assert!((rep.parallelogram_areas[0] - 6.0).abs() < 1e-9);
        assert!((rep.parallelogram_areas[1] - 4.0).abs() < 1e-9);
        assert!(rep.max_mismatch <= 1e-7);
        // m = 2 is vacuous.
        let rep = intersection_point_check(&decompose(&t1(), diag()).unwrap()).unwrap();
        assert!(rep.r.is_empty());
        assert_eq!(rep.max_mismatch, 0.0);
    }

    #[test]
    fn translation_invariance() {
        let moved = q1().translated(Vec2::new(-3.25, 11.5));
        let base = decompose(&q1(), diag()).unwrap();
        let shifted = decompose(&moved, diag()).unwrap();
        assert_eq!(base.step_count(), shifted.step_count());
        for k in 0..base.step_count() {
            assert_vec2_eq(base.z[k], shifted.z[k], 1e-12);
        }
        for k in 0..base.n.len() {
            assert_vec2_eq(base.n[k], shifted.n[k], 1e-12);
            assert!((base.alpha[k] - shifted.alpha[k]).abs() <= 1e-12 * base.alpha[k].abs());
        }
    }

    #[test]
    fn parallel_spanning_sides_give_zero_weight() {
        // (1,1) lies on the side from (0,0) to (2,2); the two spanning
        // sides around the collinear vertex are parallel, so its weight
        // vanishes.
        let poly = ConvexPolygon::from_points(
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(1.2, 2.0),
                Vec2::new(2.0, 2.0),
            ],
            true,
        )
        .unwrap();
        assert_eq!(poly.vertices().len(), 5);
        let d = decompose(&poly, diag()).unwrap();
        assert_eq!(d.step_count(), 4);
        let scale = d.alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        assert!(d.alpha[1].abs() <= 1e-9 * scale, "alpha {:?}", d.alpha);
        assert!(sign_report(&d).is_ok());
    }

    #[test]
    fn closed_cone_contains_generator() {
        for poly in [t1(), q1()] {
            for k in 0..12 {
                let x = Vec2::from_angle(0.05 + k as f64 * 0.5);
                if let Ok(d) = decompose(&poly, x) {
                    let g = if d.flipped { -x } else { x };
                    assert!(d.cone.contains(g, 1e-12));
                }
            }
        }
    }
}
