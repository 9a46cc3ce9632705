//! Globally adaptive Gauss-Kronrod (7/15) integration.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance. Nodes never touch the endpoints, so
//! integrable endpoint singularities are tolerated.

#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_LEVELS: u32 = 60;
const MAX_INTERVALS: usize = 5000;

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

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_levels: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: 0.0,
            max_levels: DEFAULT_MAX_LEVELS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    level: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * resabs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_g = f_center * WG[3];
    let mut res_k = f_center * WGK[7];
    let mut resabs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut resasc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let err = rescale_error((res_k - res_g) * half, resabs * half.abs(), resasc * half.abs());
    (value, err)
}

/// Integral of `f` over [a, b] to relative tolerance `rel_tol`.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let opts = QuadOptions {
        rel_tol,
        ..QuadOptions::default()
    };
    integrate(f, a, b, &opts).map(|e| e.value)
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadEstimate> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration bounds must be finite, got [{a}, {b}]")));
    }
    if a > b {
        return Err(Error::Domain(format!("integration bounds reversed: [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadEstimate {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }

    let (value, error) = qk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value,
        error,
        level: 0,
    });
    // panels that hit the depth limit keep contributing but are not split again
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut total = value;
    let mut total_err = error;

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if !total.is_finite() {
            return Err(Error::Quadrature {
                estimate: total,
                error_bound: total_err,
            });
        }
        if total_err <= target {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        if worst.level >= opts.max_levels || heap.len() >= MAX_INTERVALS {
            frozen_value += worst.value;
            frozen_error += worst.error;
            if heap.len() >= MAX_INTERVALS {
                for p in heap.drain() {
                    frozen_value += p.value;
                    frozen_error += p.error;
                }
            }
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = qk15(&f, worst.a, mid);
        let (v2, e2) = qk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        for (lo, hi, v, e) in [(worst.a, mid, v1, e1), (mid, worst.b, v2, e2)] {
            heap.push(Panel {
                a: lo,
                b: hi,
                value: v,
                error: e,
                level: worst.level + 1,
            });
        }
    }

    // recompute sums to shed accumulated rounding from the running totals
    let intervals = heap.len();
    let value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
    let error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
    let target = opts.abs_tol.max(opts.rel_tol * value.abs());
    if error > target && error > 0.0 {
        return Err(Error::Quadrature {
            estimate: value,
            error_bound: error,
        });
    }
    Ok(QuadEstimate {
        value,
        error,
        intervals,
    })
}
