//! Subcommand implementations.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use rmb_core::decomposition;
use rmb_core::evaluator::NormEvaluator;
use rmb_core::experiments::{matrix_norm_convexity_scan, GridSpec};
use rmb_core::geometry::Vec2;
use rmb_core::oracle::{norm_mc_radial, norm_xray_exact};
use rmb_core::verifier::{self, ApproxTarget, CertifyConfig, Verdict};

use crate::formats::{read_polygon, CertificateJson, DecompositionJson};
use crate::svg::render_svg;
use crate::threads::map_ordered;
use crate::{parse_vec2, validate_p, EXIT_CHECK_FAILED};

fn write_output(out: Option<PathBuf>, contents: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn build_evaluator(poly: rmb_core::ConvexPolygon, p: f64, extended: bool) -> Result<NormEvaluator> {
    let ev = if extended {
        NormEvaluator::new_extended(poly, p)
    } else {
        NormEvaluator::new(poly, p)
    }?;
    Ok(ev)
}

pub fn decompose(polygon: &Path, x_raw: &str, out: Option<PathBuf>) -> Result<u8> {
    let poly = read_polygon(polygon)?;
    let x = parse_vec2(x_raw)?;
    let d = decomposition::decompose(&poly, x)?;
    let json = serde_json::to_string_pretty(&DecompositionJson::new(x, &d))?;
    write_output(out, &format!("{json}\n"))?;
    Ok(0)
}

pub fn eval(polygon: &Path, p: f64, x_raw: &str, extended: bool) -> Result<u8> {
    validate_p(p, extended)?;
    let poly = read_polygon(polygon)?;
    let x = parse_vec2(x_raw)?;
    let ev = build_evaluator(poly, p, extended)?;
    // 15 significant digits.
    println!("{:.14e}", ev.norm(x)?);
    Ok(0)
}

pub fn boundary(
    polygon: &Path,
    p: f64,
    samples: usize,
    format: &str,
    out_dir: Option<PathBuf>,
    extended: bool,
) -> Result<u8> {
    validate_p(p, extended)?;
    anyhow::ensure!(
        format == "csv" || format == "svg",
        "unsupported format {format:?} (expected csv or svg)"
    );
    let poly = read_polygon(polygon)?;
    let ev = build_evaluator(poly, p, extended)?;
    let points = ev.boundary_sample(samples)?;

    let mut csv = String::new();
    csv.push_str(&format!(
        "# rmb boundary polygon={} p={p} samples={samples}\n",
        polygon.display()
    ));
    csv.push_str("angle,x,y\n");
    for pt in &points {
        csv.push_str(&format!("{},{},{}\n", pt.angle(), pt.x, pt.y));
    }

    match &out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("boundary.csv"), &csv)?;
            if format == "svg" {
                let figure = render_svg(ev.polygon(), &points, p);
                std::fs::write(dir.join("boundary.svg"), figure)?;
            }
        }
        None => {
            anyhow::ensure!(format == "csv", "--format svg requires --out-dir");
            print!("{csv}");
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn certify(
    polygon: &Path,
    p: f64,
    samples: usize,
    delta: f64,
    seed: u64,
    extended: bool,
    out: Option<PathBuf>,
) -> Result<u8> {
    validate_p(p, extended)?;
    let poly = read_polygon(polygon)?;
    let cfg = CertifyConfig {
        boundary_samples: samples,
        perturb_delta: delta,
        perturb_seed: seed,
        extended_range: extended,
        ..CertifyConfig::default()
    };
    let cert = verifier::certify(&poly, p, &cfg)?;
    let json = serde_json::to_string_pretty(&CertificateJson::new(&cert))?;
    let to_file = out.is_some();
    write_output(out, &format!("{json}\n"))?;
    if to_file {
        println!(
            "verdict: {}",
            if cert.verdict == Verdict::Pass {
                "pass"
            } else {
                "fail"
            }
        );
    }
    Ok(if cert.verdict == Verdict::Pass {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

pub fn oracle_compare(
    polygon: &Path,
    p: f64,
    directions: usize,
    mc_samples: u64,
    seed: u64,
    extended: bool,
) -> Result<u8> {
    validate_p(p, extended)?;
    anyhow::ensure!(directions >= 1, "need at least one direction");
    anyhow::ensure!(mc_samples >= 1, "need at least one Monte Carlo sample");
    let poly = read_polygon(polygon)?;
    let ev = build_evaluator(poly.clone(), p, extended)?;

    let rows = map_ordered(directions, |d| {
        let angle = (d as f64 + 0.5) * std::f64::consts::TAU / directions as f64;
        let x = Vec2::from_angle(angle);
        let closed = ev.norm(x).expect("direction off boundaries");
        let exact = norm_xray_exact(&poly, p, x).expect("p validated");
        let mc = norm_mc_radial(&poly, p, x, mc_samples, seed.wrapping_add(d as u64))
            .expect("arguments validated");
        (angle, closed, exact, mc.estimate, mc.stderr)
    });

    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(
        w,
        "# rmb oracle-compare polygon={} p={p} directions={directions} mc_samples={mc_samples} seed={seed}",
        polygon.display()
    )?;
    writeln!(w, "direction,closed_form,xray_exact,mc_estimate,mc_stderr")?;
    for (angle, closed, exact, est, err) in rows {
        writeln!(w, "{angle},{closed},{exact},{est},{err}")?;
    }
    Ok(0)
}

pub fn approx_converge(p: f64, m_list: &[usize], directions: usize, radius: f64) -> Result<u8> {
    validate_p(p, false)?;
    anyhow::ensure!(!m_list.is_empty(), "need at least one vertex count");
    anyhow::ensure!(
        m_list.windows(2).all(|w| w[0] < w[1]),
        "m list must increase"
    );
    anyhow::ensure!(radius > 0.0, "radius must be positive");
    let table =
        verifier::approximation_convergence(&ApproxTarget::Disc { radius }, p, m_list, directions)?;
    println!("# rmb approx-converge p={p} radius={radius} directions={directions}");
    println!("m,sup_diff,rel_sup_diff,direction_spread");
    for row in &table.rows {
        println!(
            "{},{},{},{}",
            row.m, row.sup_diff, row.rel_sup_diff, row.direction_spread
        );
    }
    Ok(0)
}

pub fn experiment_matrix_norm(p: f64, grid_raw: &str, h: f64) -> Result<u8> {
    anyhow::ensure!(p != 0.0 && p.is_finite(), "p must be non-zero and finite");
    anyhow::ensure!(h > 0.0, "step must be positive");
    let parts: Vec<&str> = grid_raw.split(',').map(str::trim).collect();
    anyhow::ensure!(
        parts.len() == 3,
        "expected --grid \"min,max,n\", got {grid_raw:?}"
    );
    let grid = GridSpec {
        min: parts[0].parse::<f64>()?,
        max: parts[1].parse::<f64>()?,
        n: parts[2].parse::<usize>()?,
    };
    anyhow::ensure!(
        grid.min > 0.0 && grid.max > grid.min && grid.n >= 2,
        "bad grid {grid:?}"
    );

    let report = matrix_norm_convexity_scan(p, grid, h)?;
    println!(
        "# rmb experiment-matrix-norm p={p} grid={},{},{} h={h}",
        grid.min, grid.max, grid.n
    );
    println!("x1,x2,min_eig");
    for (x1, x2, eig) in &report.rows {
        println!("{x1},{x2},{eig}");
    }
    eprintln!(
        "min eigenvalue {:+.6e} at ({}, {})",
        report.min_eig, report.worst.x1, report.worst.x2
    );
    Ok(0)
}

pub fn render(
    polygon: &Path,
    p: f64,
    samples: usize,
    out_dir: &Path,
    extended: bool,
) -> Result<u8> {
    validate_p(p, extended)?;
    let poly = read_polygon(polygon)?;
    let ev = build_evaluator(poly, p, extended)?;
    let points = ev.boundary_sample(samples)?;

    let mut csv = String::new();
    csv.push_str(&format!(
        "# rmb render polygon={} p={p} samples={samples}\n",
        polygon.display()
    ));
    csv.push_str("angle,bx,by,norm_value\n");
    for pt in &points {
        let angle = pt.angle();
        let value = ev.norm(Vec2::from_angle(angle)).expect("sample direction");
        csv.push_str(&format!("{angle},{},{},{value}\n", pt.x, pt.y));
    }
    let figure = render_svg(ev.polygon(), &points, p);

    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    std::fs::write(out_dir.join("render.csv"), &csv)?;
    std::fs::write(out_dir.join("render.svg"), figure)?;
    Ok(0)
}
