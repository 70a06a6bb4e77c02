//! Closed-form evaluation of the radial-mean-body norm over the whole
//! plane.
//!
//! The vertex-difference lines of a general-position polygon cut the plane
//! into angular sectors. Inside each sector the chain plan of the
//! decomposition is combinatorially constant, so one decomposition serves
//! every direction of the sector; the evaluator builds them eagerly (one
//! per sector, occasionally several when no single synthetic-vertex
//! placement covers the whole closed sector) and evaluates
//!
//! `norm(x) = f_Z(x)^(-1/p)`,
//! `f_Z(x) = (p+1)/(p+2) area K * sum_i alpha_i <n_i, x>^(-p)`.
//!
//! Everything is immutable after construction and safe to share across
//! threads.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::decomposition::{build, plan_chain, realize_chain, Decomposition, SYNTHETIC_MARGIN};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Vec2};

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Angular sectors cut by the vertex-difference lines of a polygon.
///
/// Boundaries are sorted ascending in `[0, 2 pi)` starting at the smallest
/// angle `>= 0`; sector `j` is `[boundary_j, boundary_{j+1})`, the last one
/// wrapping around. The sector set is invariant under adding pi.
#[derive(Clone, Debug)]
pub struct ConePartition {
    directions: Vec<Vec2>,
    boundaries: Vec<f64>,
}

/// Build the cone partition of a general-position polygon: two sectors per
/// distinct vertex-difference line.
pub fn cone_partition(poly: &ConvexPolygon) -> Result<ConePartition> {
    if !poly.is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let verts = poly.vertices();
    let mut angles: Vec<f64> = Vec::new();
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            let mut a = (verts[j] - verts[i]).angle();
            if a < 0.0 {
                a += core::f64::consts::PI;
            }
            if a >= core::f64::consts::PI {
                a -= core::f64::consts::PI;
            }
            angles.push(a);
        }
    }
    angles.sort_by(f64::total_cmp);
    let directions: Vec<Vec2> = angles.iter().map(|&a| Vec2::from_angle(a)).collect();
    let mut boundaries: Vec<f64> = angles
        .iter()
        .flat_map(|&a| [a, a + core::f64::consts::PI])
        .collect();
    boundaries.sort_by(f64::total_cmp);
    Ok(ConePartition {
        directions,
        boundaries,
    })
}

impl ConePartition {
    /// Number of sectors (`2 *` number of distinct lines).
    pub fn sector_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Sorted boundary angles in `[0, 2 pi)`.
    pub fn boundary_angles(&self) -> &[f64] {
        &self.boundaries
    }

    /// One unit direction per vertex-difference line (angles in `[0, pi)`).
    pub fn line_directions(&self) -> &[Vec2] {
        &self.directions
    }

    /// Sector containing the angle; a boundary angle belongs to the sector
    /// it opens (half-open sectors).
    pub fn sector_of(&self, angle: f64) -> usize {
        let a = wrap_2pi(angle);
        let i = self.boundaries.partition_point(|&b| b <= a);
        if i == 0 {
            self.boundaries.len() - 1
        } else {
            i - 1
        }
    }

    /// Angular bounds of sector `j`; for the wrapping sector the upper
    /// bound exceeds `2 pi`.
    pub fn sector_bounds(&self, j: usize) -> (f64, f64) {
        let lo = self.boundaries[j];
        let hi = if j + 1 < self.boundaries.len() {
            self.boundaries[j + 1]
        } else {
            self.boundaries[0] + TWO_PI
        };
        (lo, hi)
    }
}

fn wrap_2pi(a: f64) -> f64 {
    let x = a - TWO_PI * (a / TWO_PI).floor();
    if x >= TWO_PI {
        0.0
    } else {
        x
    }
}

/// One cached decomposition valid on the closed angular window `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct SectorPiece {
    pub lo: f64,
    pub hi: f64,
    pub decomposition: Decomposition,
}

/// Per-polygon, per-exponent evaluation context with eagerly built
/// decompositions for every sector.
#[derive(Clone, Debug)]
pub struct NormEvaluator {
    poly: ConvexPolygon,
    p: f64,
    extended: bool,
    partition: ConePartition,
    sectors: Vec<Vec<SectorPiece>>,
}

impl NormEvaluator {
    /// Evaluator for `p` in `(-1, 0)`.
    pub fn new(poly: ConvexPolygon, p: f64) -> Result<NormEvaluator> {
        if !(p > -1.0 && p < 0.0) {
            return Err(Error::InvalidP);
        }
        Self::build_evaluator(poly, p, false)
    }

    /// Evaluator additionally accepting `p > 0`; the closed form stays
    /// valid there, but convexity claims remain restricted to `(-1, 0)`.
    pub fn new_extended(poly: ConvexPolygon, p: f64) -> Result<NormEvaluator> {
        if !((p > -1.0 && p < 0.0) || (p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidP);
        }
        Self::build_evaluator(poly, p, true)
    }

    fn build_evaluator(poly: ConvexPolygon, p: f64, extended: bool) -> Result<NormEvaluator> {
        let partition = cone_partition(&poly)?;
        let mut sectors = Vec::with_capacity(partition.sector_count());
        for j in 0..partition.sector_count() {
            let (lo, hi) = partition.sector_bounds(j);
            sectors.push(build_sector(&poly, lo, hi)?);
        }
        Ok(NormEvaluator {
            poly,
            p,
            extended,
            partition,
            sectors,
        })
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.poly
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn partition(&self) -> &ConePartition {
        &self.partition
    }

    /// Cached decompositions of sector `j` (usually a single piece).
    pub fn sector_pieces(&self, j: usize) -> &[SectorPiece] {
        &self.sectors[j]
    }

    /// The norm of `x`: sector lookup plus closed-form kernel.
    ///
    /// Positively homogeneous of degree one and even in `x`; at sector
    /// boundaries the owning sector's decomposition is used (its closed
    /// cone reaches the boundary and the adjacent sector agrees there).
    /// At the rare boundary corner whose chain plan degenerates exactly on
    /// the boundary, the neighbouring sector answers instead; if both
    /// sides degenerate, the direction is nudged off the corner by 1e-11
    /// radians (the norm is continuous, so the error is far below every
    /// tolerance in use).
    pub fn norm(&self, x: Vec2) -> Result<f64> {
        if x.norm_sq() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let theta = x.angle();
        let j = self.partition.sector_of(theta);
        match self.eval_in_sector(j, x) {
            Err(Error::OutsideOpenCone) => {
                // x sits numerically on a cone boundary where the owning
                // sector's chain plan degenerates. The neighbour on the
                // other side of that boundary covers it; pick it by
                // proximity and double-check with its closed cone.
                let count = self.sectors.len();
                let (lo, hi) = self.partition.sector_bounds(j);
                let mut a = wrap_2pi(theta);
                if a < lo {
                    a += TWO_PI;
                }
                let neighbor = if a - lo <= hi - a {
                    (j + count - 1) % count
                } else {
                    (j + 1) % count
                };
                match self.eval_in_sector(neighbor, x) {
                    Err(Error::OutsideOpenCone) => {
                        let inward = if a - lo <= hi - a { 1e-11 } else { -1e-11 };
                        let u = Vec2::from_angle(theta + inward) * x.norm();
                        self.eval_in_sector(j, u)
                    }
                    other => other,
                }
            }
            other => other,
        }
    }

    /// One-sided limit of the norm at `angle` taken from inside sector `j`
    /// (`angle` is one of the sector's boundary angles). Falls back to a
    /// 1e-11-radian step into the sector when the sector's chain plan
    /// degenerates exactly at this boundary.
    pub fn sector_limit(&self, j: usize, angle: f64) -> Result<f64> {
        match self.eval_in_sector(j, Vec2::from_angle(angle)) {
            Err(Error::OutsideOpenCone) => {
                let (lo, hi) = self.partition.sector_bounds(j);
                let mut a = wrap_2pi(angle);
                if a < lo {
                    a += TWO_PI;
                }
                let inner = if (a - lo).abs() < (hi - a).abs() {
                    a + 1e-11
                } else {
                    a - 1e-11
                };
                self.eval_in_sector(j, Vec2::from_angle(inner))
            }
            other => other,
        }
    }

    /// Evaluate through sector `j`'s decomposition, valid on the closed
    /// sector (used for one-sided limits at boundaries).
    pub fn eval_in_sector(&self, j: usize, x: Vec2) -> Result<f64> {
        let pieces = &self.sectors[j];
        let (sector_lo, _) = self.partition.sector_bounds(j);
        // Normalize the angle into the sector's frame; angles a hair below
        // the lower bound (one-sided limits, atan2 rounding) must select
        // the first piece, not wrap to the far end.
        let mut theta = wrap_2pi(x.angle());
        if theta < sector_lo - core::f64::consts::PI {
            theta += TWO_PI;
        }
        let i = pieces
            .partition_point(|pc| pc.hi < theta)
            .min(pieces.len() - 1);
        let d = &pieces[i].decomposition;
        let q = if d.flipped { -x } else { x };
        let f = f_z_eval(d, self.p, q)?;
        debug_assert!(f > 0.0, "norm kernel must stay positive on its cone");
        Ok(f.powf(-1.0 / self.p))
    }

    /// Points of the unit level set of the norm: `n` uniformly spaced
    /// angles (offset half a step so they never collide with cone
    /// boundaries) plus one sample exactly at every cone-boundary angle.
    pub fn boundary_sample(&self, n: usize) -> Result<Vec<Vec2>> {
        if n < 3 {
            return Err(Error::BadSampleCount);
        }
        let mut angles: Vec<f64> = (0..n)
            .map(|j| (j as f64 + 0.5) * TWO_PI / n as f64)
            .chain(self.partition.boundary_angles().iter().copied())
            .collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        let mut out = Vec::with_capacity(angles.len());
        for theta in angles {
            let u = Vec2::from_angle(theta);
            let value = self.norm(u)?;
            out.push(u * (1.0 / value));
        }
        Ok(out)
    }
}

/// The closed-form norm kernel of a decomposition:
/// `(p+1)/(p+2) area * sum_i alpha_i <n_i, x>^(-p)`.
///
/// Defined and smooth on the open cone where all `<n_i, x> > 0`; callers
/// handle the even-symmetry flip themselves.
pub fn f_z_eval(d: &Decomposition, p: f64, x: Vec2) -> Result<f64> {
    if !(p > -1.0 && p != 0.0 && p.is_finite()) {
        return Err(Error::InvalidP);
    }
    let mut sum = 0.0;
    let scale = x.norm();
    for (&normal, &weight) in d.n.iter().zip(&d.alpha) {
        let xi = normal.dot(x);
        // Relative floor: an exactly-degenerate boundary corner produces a
        // mathematically zero pairing that floats render as noise of either
        // sign; treat it as outside so callers take their boundary-limit
        // fallbacks.
        if xi <= 1e-13 * normal.norm() * scale {
            return Err(Error::OutsideOpenCone);
        }
        sum += weight * xi.powf(-p);
    }
    Ok((p + 1.0) / (p + 2.0) * d.area * sum)
}

/// Build the decomposition pieces covering the closed sector `[lo, hi]`.
///
/// The chain plan is constant across the sector; the synthetic-vertex
/// placement must satisfy both window endpoints at once, and when no single
/// placement does, the window is bisected (each half gets its own
/// placement; the pieces agree exactly where they meet, both being the
/// norm). A placement can be forced onto a side endpoint in the limit at a
/// sector boundary; once a window has shrunk to such a sliver, it is closed
/// with a relaxed-margin piece built at the sliver midpoint (the sliver is
/// a few 1e-8 radians wide, so the extrapolation error at its ends is far
/// below every tolerance in use).
fn build_sector(poly: &ConvexPolygon, lo: f64, hi: f64) -> Result<Vec<SectorPiece>> {
    let mid = Vec2::from_angle(0.5 * (lo + hi));
    let flipped = plan_chain(poly, -mid).insertions < plan_chain(poly, mid).insertions;
    let sign = if flipped { -1.0 } else { 1.0 };
    let plan = plan_chain(poly, mid * sign);

    let mut pieces = Vec::with_capacity(1);
    let mut stack = alloc::vec![(lo, hi, 0u32)];
    while let Some((a, b, depth)) = stack.pop() {
        let generator = Vec2::from_angle(0.5 * (a + b)) * sign;
        let realized = if depth < 24 {
            let window = [Vec2::from_angle(a) * sign, Vec2::from_angle(b) * sign];
            realize_chain(poly, &plan, &window, SYNTHETIC_MARGIN)
        } else {
            realize_chain(poly, &plan, &[generator], 1e-15)
        };
        if let Some(realized) = realized {
            let decomposition =
                build(poly, realized, generator, flipped).ok_or(Error::ParallelLines)?;
            pieces.push(SectorPiece {
                lo: a,
                hi: b,
                decomposition,
            });
        } else if depth >= 48 {
            // Pointwise feasibility makes narrow windows realizable, so
            // this depth is unreachable for valid polygons.
            return Err(Error::QuadratureNoConvergence);
        } else {
            let m = 0.5 * (a + b);
            stack.push((m, b, depth + 1));
            stack.push((a, m, depth + 1));
        }
    }
    pieces.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(pieces)
}
