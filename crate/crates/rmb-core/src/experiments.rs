//! Invariant matrix p-norm experiment on 2x2 diagonal matrices.
//!
//! The rotation-invariant p-norm of a matrix is determined by its singular
//! values; restricted to diagonal matrices in the plane it reads
//!
//! `|(x1, x2)|_p = (avg over the unit circle of (x1^2 v1^2 + x2^2 v2^2)^(p/2))^(1/p)`.
//!
//! It interpolates between the operator norm (`p -> inf`) and a multiple of
//! the Hilbert-Schmidt norm (`p = 2`); this module evaluates it and scans
//! its Hessian over the positive quadrant, the numerical experiment
//! suggesting convexity for `p` in `(0, 1)`.
//!
//! Note on the `p = -n` special value: the literature formula
//! `|det A|^(-1/n)` does not match direct evaluation. For `A = 2 Id` and
//! `p = -2` the integral gives exactly `2 = |det A|^(+1/2)`, so the
//! exponent sign appears misprinted there; this module reports the computed
//! value (see the regression test).

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::quad::periodic_unit_mean;
use crate::verifier::hessian_min_eig_at;

/// Diagonal 2x2 matrix identified with its diagonal entries (equivalently,
/// signed singular values).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalPoint {
    pub x1: f64,
    pub x2: f64,
}

impl DiagonalPoint {
    pub fn new(x1: f64, x2: f64) -> DiagonalPoint {
        DiagonalPoint { x1, x2 }
    }
}

/// The invariant matrix p-norm restricted to diagonal matrices, by
/// quadrature over the circle with the uniform probability measure.
///
/// Symmetric in the entries and even in each; homogeneous of degree one.
/// `p = 0` is rejected.
pub fn matrix_pnorm(pt: DiagonalPoint, p: f64) -> Result<f64> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::InvalidP);
    }
    let (a, b) = (pt.x1 * pt.x1, pt.x2 * pt.x2);
    let mean = periodic_unit_mean(&|theta: f64| {
        let c = theta.cos();
        let s = theta.sin();
        (a * c * c + b * s * s).powf(0.5 * p)
    });
    Ok(mean.powf(1.0 / p))
}

/// Square grid specification `[min, max]^2` with `n` points per axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

/// Result of the convexity scan: per-point minimal Hessian eigenvalues.
#[derive(Clone, Debug)]
pub struct MatrixScanReport {
    /// `(x1, x2, min_eigenvalue)` per grid point, row-major.
    pub rows: Vec<(f64, f64, f64)>,
    pub min_eig: f64,
    pub worst: DiagonalPoint,
}

/// Finite-difference Hessian scan of the matrix p-norm over a grid in the
/// positive quadrant.
pub fn matrix_norm_convexity_scan(p: f64, grid: GridSpec, h: f64) -> Result<MatrixScanReport> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::InvalidP);
    }
    assert!(grid.n >= 2 && grid.max > grid.min && grid.min > 0.0 && h > 0.0);
    let f = |v: Vec2| matrix_pnorm(DiagonalPoint::new(v.x, v.y), p).expect("p validated");
    let mut report = MatrixScanReport {
        rows: Vec::with_capacity(grid.n * grid.n),
        min_eig: f64::INFINITY,
        worst: DiagonalPoint::new(grid.min, grid.min),
    };
    for i in 0..grid.n {
        let x1 = grid.min + (grid.max - grid.min) * i as f64 / (grid.n - 1) as f64;
        for j in 0..grid.n {
            let x2 = grid.min + (grid.max - grid.min) * j as f64 / (grid.n - 1) as f64;
            let x = Vec2::new(x1, x2);
            // Absolute step: the grid spec fixes the scale.
            let eig = hessian_min_eig_at(&f, x, h / x.norm());
            report.rows.push((x1, x2, eig));
            if eig < report.min_eig {
                report.min_eig = eig;
                report.worst = DiagonalPoint::new(x1, x2);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_point_is_exact() {
        for p in [-2.0, -0.5, 0.5, 1.0, 2.0, 7.5] {
            let v = matrix_pnorm(DiagonalPoint::new(1.0, 1.0), p).unwrap();
            assert!((v - 1.0).abs() < 1e-14, "p={p}: {v}");
        }
    }

    #[test]
    fn rank_one_at_p_two() {
        // Mean of cos^2 over the circle is 1/2.
        let v = matrix_pnorm(DiagonalPoint::new(1.0, 0.0), 2.0).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn determinant_exponent_is_misprinted() {
        // At p = -n the computed value for 2 Id is |det|^(+1/2) = 2, not
        // |det|^(-1/2) = 1/2.
        let v = matrix_pnorm(DiagonalPoint::new(2.0, 2.0), -2.0).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn p_zero_is_rejected() {
        assert_eq!(
            matrix_pnorm(DiagonalPoint::new(1.0, 1.0), 0.0),
            Err(Error::InvalidP)
        );
    }

    #[test]
    fn homogeneous_and_symmetric() {
        for p in [0.25, 0.5, 2.0, -0.5] {
            let v = matrix_pnorm(DiagonalPoint::new(0.8, 2.1), p).unwrap();
            let w = matrix_pnorm(DiagonalPoint::new(2.1, 0.8), p).unwrap();
            assert!((v - w).abs() <= 1e-12 * v);
            let s = matrix_pnorm(DiagonalPoint::new(-0.8, 2.1), p).unwrap();
            assert!((v - s).abs() <= 1e-12 * v);
            let h = matrix_pnorm(DiagonalPoint::new(0.8 * 3.5, 2.1 * 3.5), p).unwrap();
            assert!((h - 3.5 * v).abs() <= 1e-10 * h);
        }
    }

    #[test]
    fn monotone_in_p() {
        let pt = DiagonalPoint::new(0.7, 1.9);
        let mut last = 0.0;
        for p in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let v = matrix_pnorm(pt, p).unwrap();
            assert!(v >= last - 1e-12);
            last = v;
        }
    }

    #[test]
    fn approaches_operator_norm() {
        // Laplace asymptotics give value/max = exp(-ln(pi p (1 - r^2)/2)/(2p))
        // for entry ratio r, so at p = 64 the 2% band holds for ratios
        // near one; skewed points approach the operator norm more slowly
        // but monotonically.
        for (x1, x2) in [(1.0, 0.95), (2.5, 2.45), (0.97, 1.0)] {
            let v = matrix_pnorm(DiagonalPoint::new(x1, x2), 64.0).unwrap();
            let op = x1.max(x2);
            assert!((v - op).abs() <= 0.02 * op, "({x1},{x2}): {v} vs {op}");
        }
        let pt = DiagonalPoint::new(1.0, 0.4);
        let v16 = matrix_pnorm(pt, 16.0).unwrap();
        let v64 = matrix_pnorm(pt, 64.0).unwrap();
        assert!((v64 - 1.0).abs() < (v16 - 1.0).abs());
        assert!((v64 - 1.0).abs() <= 0.05);
    }

    #[test]
    fn convexity_scan_small_grid() {
        for p in [0.5, 1.0, 2.0] {
            let rep = matrix_norm_convexity_scan(
                p,
                GridSpec {
                    min: 0.1,
                    max: 3.0,
                    n: 12,
                },
                1e-4,
            )
            .unwrap();
            assert_eq!(rep.rows.len(), 144);
            assert!(
                rep.min_eig >= -1e-6,
                "p={p}: min {:.3e} at {:?}",
                rep.min_eig,
                rep.worst
            );
        }
    }
}
