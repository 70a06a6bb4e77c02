//! File formats: polygon JSON input, decomposition and certificate JSON
//! output.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use rmb_core::decomposition::Decomposition;
use rmb_core::geometry::{ConvexPolygon, Vec2};
use rmb_core::verifier::{CertifyConfig, ConvexityCertificate, Verdict};

/// Polygon input file: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
}

/// Read and normalize a polygon (collinear vertices are kept).
pub fn read_polygon(path: &Path) -> Result<ConvexPolygon> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading polygon file {}", path.display()))?;
    let file: PolygonFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing polygon JSON {}", path.display()))?;
    let points: Vec<Vec2> = file
        .vertices
        .iter()
        .map(|&[x, y]| {
            anyhow::ensure!(
                x.is_finite() && y.is_finite(),
                "non-finite vertex [{x}, {y}]"
            );
            Ok(Vec2::new(x, y))
        })
        .collect::<Result<_>>()?;
    ConvexPolygon::from_points(&points, true)
        .with_context(|| format!("normalizing polygon from {}", path.display()))
}

pub fn polygon_vertices(poly: &ConvexPolygon) -> Vec<[f64; 2]> {
    poly.vertices().iter().map(|v| [v.x, v.y]).collect()
}

fn pair(v: Vec2) -> [f64; 2] {
    [v.x, v.y]
}

#[derive(Debug, Serialize)]
pub struct CoeffRowJson {
    pub index: usize,
    pub a: f64,
    pub a_tilde: f64,
    pub b: f64,
    pub c: f64,
}

/// Field-per-field serialization of a decomposition.
#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub direction: [f64; 2],
    pub flipped: bool,
    pub translation: [f64; 2],
    pub area: f64,
    pub z: Vec<[f64; 2]>,
    pub chain: Vec<[f64; 2]>,
    pub synthetic: Vec<bool>,
    pub w: Vec<[f64; 2]>,
    pub n: Vec<[f64; 2]>,
    pub coeffs: Vec<CoeffRowJson>,
    pub alpha: Vec<f64>,
    pub cone_closed_normals: [[f64; 2]; 2],
    pub cone_open_normals: Vec<[f64; 2]>,
}

impl DecompositionJson {
    pub fn new(direction: Vec2, d: &Decomposition) -> DecompositionJson {
        DecompositionJson {
            direction: pair(direction),
            flipped: d.flipped,
            translation: pair(d.translation),
            area: d.area,
            z: d.z.iter().copied().map(pair).collect(),
            chain: d.chain.iter().copied().map(pair).collect(),
            synthetic: d.synthetic.clone(),
            w: d.w.iter().copied().map(pair).collect(),
            n: d.n.iter().copied().map(pair).collect(),
            coeffs: d
                .coeffs
                .iter()
                .map(|r| CoeffRowJson {
                    index: r.index,
                    a: r.a,
                    a_tilde: r.a_tilde,
                    b: r.b,
                    c: r.c,
                })
                .collect(),
            alpha: d.alpha.clone(),
            cone_closed_normals: [pair(d.cone.normals[0]), pair(d.cone.normals[1])],
            cone_open_normals: d.n.iter().copied().map(pair).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ThresholdsJson {
    pub turning_eps: f64,
    pub hessian_eps: f64,
    pub c1_eps: f64,
    pub oracle_eps: f64,
}

#[derive(Debug, Serialize)]
pub struct RunConfigJson {
    pub boundary_samples: usize,
    pub hessian_grid: usize,
    pub hessian_step: f64,
    pub c1_step: f64,
    pub oracle_directions: usize,
    pub perturb_delta: f64,
    pub perturb_seed: u64,
    pub extended_range: bool,
}

/// Certificate output: verdict, evidence, thresholds and the polygon that
/// was actually certified.
#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub tool_version: &'static str,
    pub p: f64,
    pub verdict: &'static str,
    pub perturbation_applied: f64,
    pub turning_min: f64,
    pub hessian_min_eig: f64,
    pub c1_max_jump: f64,
    pub kink_signs_ok: bool,
    pub oracle_max_reldiff: f64,
    pub thresholds: ThresholdsJson,
    pub config: RunConfigJson,
    pub polygon: Vec<[f64; 2]>,
}

impl CertificateJson {
    pub fn new(cert: &ConvexityCertificate) -> CertificateJson {
        let CertifyConfig {
            turning_eps,
            hessian_eps,
            c1_eps,
            oracle_eps,
            boundary_samples,
            hessian_grid,
            hessian_step,
            c1_step,
            oracle_directions,
            perturb_delta,
            perturb_seed,
            extended_range,
        } = cert.config;
        CertificateJson {
            tool_version: env!("CARGO_PKG_VERSION"),
            p: cert.p,
            verdict: match cert.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            },
            perturbation_applied: cert.perturbation_applied,
            turning_min: cert.turning_min,
            hessian_min_eig: cert.hessian_min_eig,
            c1_max_jump: cert.c1_max_jump,
            kink_signs_ok: cert.kink_signs_ok,
            oracle_max_reldiff: cert.oracle_max_reldiff,
            thresholds: ThresholdsJson {
                turning_eps,
                hessian_eps,
                c1_eps,
                oracle_eps,
            },
            config: RunConfigJson {
                boundary_samples,
                hessian_grid,
                hessian_step,
                c1_step,
                oracle_directions,
                perturb_delta,
                perturb_seed,
                extended_range,
            },
            polygon: polygon_vertices(&cert.polygon),
        }
    }
}
