//! Modified Bessel function of the second kind, order one.
//!
//! Small arguments use the ascending series, larger ones Steed's continued
//! fraction (Temme's normalisation) which converges quickly for x >= 2.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_MAX: f64 = 2.0;
const EPS: f64 = 1e-16;

/// x*K1(x) - 1 from the ascending series, accurate without cancellation for
/// small x.
fn x_k1_minus_one_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    // I1(x) = (x/2) * sum q^k / (k! (k+1)!)
    // sum [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!)
    let mut term = 1.0;
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = 1.0 - EULER_GAMMA;
    let mut i1_sum = 0.0;
    let mut psi_sum = 0.0;
    for k in 0..60 {
        i1_sum += term;
        let add = (psi_a + psi_b) * term;
        psi_sum += add;
        if term < EPS * i1_sum && add.abs() < EPS * psi_sum.abs() {
            break;
        }
        let kf = k as f64;
        psi_a += 1.0 / (kf + 1.0);
        psi_b += 1.0 / (kf + 2.0);
        term *= q / ((kf + 1.0) * (kf + 2.0));
    }
    let i1 = 0.5 * x * i1_sum;
    x * (0.5 * x).ln() * i1 - q * psi_sum
}

/// K0 and K1 by Steed's method, x >= 2.
fn k0_k1_cf(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// K1(t) for t > 0. Saturates to 0 once the result underflows.
pub fn bessel_k1(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Domain(format!("K1 needs a positive argument, got {t}")));
    }
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    if t <= SERIES_MAX {
        return Ok((1.0 + x_k1_minus_one_series(t)) / t);
    }
    Ok(k0_k1_cf(t).1)
}

/// x*K1(x) for x >= 0, with the limit value 1 below 1e-12.
pub fn x_k1(x: f64) -> f64 {
    if x < 1e-12 {
        return 1.0;
    }
    if x <= SERIES_MAX {
        1.0 + x_k1_minus_one_series(x)
    } else {
        x * k0_k1_cf(x).1
    }
}

/// 1 - x*K1(x) for x >= 0, computed without cancellation near x = 0.
pub fn one_minus_x_k1(x: f64) -> f64 {
    if x < 1e-12 {
        return 0.0;
    }
    if x <= SERIES_MAX {
        -x_k1_minus_one_series(x)
    } else {
        1.0 - x * k0_k1_cf(x).1
    }
}
