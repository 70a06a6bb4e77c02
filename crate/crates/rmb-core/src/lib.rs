//! Radial mean bodies of planar convex polygons.
//!
//! For a convex body `K` and a parameter `p > -1`, the radial mean body
//! `R_p K` is the star body whose gauge aggregates the radial function of
//! `K` over all base points of `K`.  For polygons this gauge admits a
//! closed form: the plane splits into finitely many cones cut by the
//! vertex-difference lines of `K`, and inside each cone the gauge is a
//! weighted `-p`-power sum of linear functionals obtained from an
//! alternating-vector generation of the polygon.
//!
//! The crate provides
//!
//! * planar primitives ([`geometry`]): convex polygons, radial functions,
//!   X-ray chord lengths, general-position detection and perturbation;
//! * the alternating-vector decomposition and its structural reports
//!   ([`decomposition`]);
//! * a cone-partitioned evaluator of the closed form ([`evaluator`]);
//! * independent oracles ([`oracle`]): exact piecewise X-ray integration,
//!   Monte-Carlo estimation of the defining integral, and adaptive chord
//!   quadrature for non-polygonal bodies;
//! * numerical convexity certification of `R_p K` ([`verifier`]);
//! * the invariant matrix p-norm experiment on diagonal 2x2 matrices
//!   ([`experiments`]).
//!
//! Everything is pure and deterministic: types are immutable after
//! construction, randomized operations take explicit seeds, and the crate
//! is `no_std`-compatible (with `alloc`).

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod decomposition;
pub mod error;
pub mod evaluator;
pub mod experiments;
pub mod geometry;
pub mod oracle;
pub mod quad;
pub mod random;
pub mod verifier;

pub use error::{Error, Result};
pub use geometry::{
    hausdorff_distance, rotate, ConvexPolygon, GeneralPositionReport, Rotation, Vec2,
};
