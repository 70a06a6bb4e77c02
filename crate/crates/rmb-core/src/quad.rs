//! Numerical integration helpers: adaptive Gauss-Kronrod bisection on an
//! interval and a doubling midpoint rule for smooth periodic integrands.

use alloc::vec::Vec;

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [0, 1] side of the symmetric rule, with the
// embedded 7-point Gauss rule (standard QUADPACK constants, quoted at
// their published precision).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 60;
const MAX_SEGMENTS: usize = 16_384;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * half, (kronrod - gauss) * half)
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    depth: u32,
}

fn segment<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, depth: u32) -> Segment {
    // Error estimate from three sources: the embedded Gauss/Kronrod
    // difference, the change under one bisection, and an endpoint-corner
    // defect. The third is essential: a kink lying between a segment
    // endpoint and the innermost Kronrod node is invisible to the nodes,
    // and the missed wedge is identical for the segment and its children,
    // so the first two estimates cancel exactly on it.
    let (coarse, _) = gk15(f, lo, hi);
    let mid = 0.5 * (lo + hi);
    let (left, err_l) = gk15(f, lo, mid);
    let (right, err_r) = gk15(f, mid, hi);
    let value = left + right;
    let err = (value - coarse)
        .abs()
        .max(err_l.abs() + err_r.abs())
        .max(corner_defect(f, lo, hi));
    // Below a few ulp of the local value the difference is rounding noise,
    // not a refinable error.
    let floor = 4.0 * f64::EPSILON * value.abs();
    let err = if err <= floor { 0.0 } else { err };
    Segment {
        lo,
        hi,
        value,
        err,
        depth,
    }
}

/// Bound on integration mass hidden between the segment endpoints and the
/// innermost Kronrod nodes: endpoint value versus the linear extrapolation
/// of the two nearest nodes, times the node gap.
fn corner_defect<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let left = {
        let x1 = center - half * XGK[0];
        let x2 = center - half * XGK[1];
        let (f1, f2) = (f(x1), f(x2));
        let extrap = f1 - (f2 - f1) * (x1 - lo) / (x2 - x1);
        (f(lo) - extrap).abs() * (x1 - lo)
    };
    let right = {
        let y1 = center + half * XGK[0];
        let y2 = center + half * XGK[1];
        let (g1, g2) = (f(y1), f(y2));
        let extrap = g1 + (g1 - g2) * (hi - y1) / (y1 - y2);
        (f(hi) - extrap).abs() * (hi - y1)
    };
    left + right
}

/// Integrate `f` over `[a, b]` by adaptive Gauss-Kronrod bisection to the
/// given absolute tolerance.
///
/// Globally adaptive: the sub-interval with the largest error estimate is
/// bisected until the total estimate meets `abs_tol`, which copes with
/// integrable endpoint behaviour (chord profiles of smooth bodies vanish
/// like a fractional power at the support ends).
#[allow(clippy::neg_cmp_op_on_partial_ord)] // `!(b > a)` also rejects NaN
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !(b > a) {
        return Err(Error::QuadratureNoConvergence);
    }
    let mut segments: Vec<Segment> = Vec::with_capacity(128);
    segments.push(segment(f, a, b, 0));
    loop {
        let total_err: f64 = segments.iter().map(|s| s.err).sum();
        if total_err <= abs_tol {
            return Ok(segments.iter().map(|s| s.value).sum());
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, s), (_, t)| s.err.total_cmp(&t.err))
            .map(|(i, _)| i)
            .expect("non-empty");
        let Segment { lo, hi, depth, .. } = segments[worst];
        let mid = 0.5 * (lo + hi);
        if depth >= MAX_DEPTH || segments.len() >= MAX_SEGMENTS || !(lo < mid && mid < hi) {
            return Err(Error::QuadratureNoConvergence);
        }
        segments[worst] = segment(f, lo, mid, depth + 1);
        segments.push(segment(f, mid, hi, depth + 1));
    }
}

/// Mean of `f` over one period `[0, 2 pi)` by a doubling midpoint rule.
///
/// For analytic periodic integrands the midpoint rule converges
/// geometrically, so the doubling loop terminates at machine accuracy after
/// a handful of rounds; the node count is capped for integrable-singular
/// inputs, where the last iterate is returned as a best effort.
pub fn periodic_unit_mean<F: Fn(f64) -> f64>(f: &F) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    // Kahan summation keeps the node-sum roundoff at a few ulp, so values
    // stay smooth enough in the integrand parameters for finite
    // differencing.
    let mean_at = |n: usize| -> f64 {
        let step = two_pi / n as f64;
        let mut acc = 0.0;
        let mut carry = 0.0;
        for k in 0..n {
            let term = f((k as f64 + 0.5) * step) - carry;
            let next = acc + term;
            carry = (next - acc) - term;
            acc = next;
        }
        acc / n as f64
    };
    let mut n = 32usize;
    let mut prev = mean_at(n);
    loop {
        n *= 2;
        let cur = mean_at(n);
        let tol = 4.0 * f64::EPSILON * cur.abs().max(1e-300);
        if (cur - prev).abs() <= tol || n >= (1 << 20) {
            return cur;
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let f = |x: f64| 3.0 * x * x;
        let v = adaptive_quadrature(&f, 0.0, 2.0, 1e-13).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn handles_algebraic_endpoint_behaviour() {
        // int_0^1 x^(-1/2) dx = 2, integrable endpoint singularity.
        let f = |x: f64| if x > 0.0 { x.powf(-0.5) } else { 0.0 };
        let v = adaptive_quadrature(&f, 0.0, 1.0, 1e-7).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "got {v}");
        // Bounded fractional-power endpoints (the chord-profile case)
        // converge at much tighter tolerances.
        let g = |x: f64| (1.0 - x * x).max(0.0).powf(0.25);
        let w = adaptive_quadrature(&g, -1.0, 1.0, 1e-12).unwrap();
        // 2 int_0^1 (1-x^2)^(1/4) dx = sqrt(pi) Gamma(5/4) / Gamma(7/4).
        let exact = 1.748_038_369_528_08;
        assert!((w - exact).abs() < 1e-10, "got {w}");
    }

    #[test]
    fn empty_interval_is_an_error() {
        let f = |_: f64| 1.0;
        assert_eq!(
            adaptive_quadrature(&f, 1.0, 1.0, 1e-12),
            Err(Error::QuadratureNoConvergence)
        );
    }

    #[test]
    fn periodic_mean_of_cos_squared() {
        let m = periodic_unit_mean(&|t: f64| t.cos() * t.cos());
        assert!((m - 0.5).abs() < 1e-14);
    }
}
