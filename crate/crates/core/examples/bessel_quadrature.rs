//! The special-function layer: K1 across its two evaluation branches, the
//! cancellation-free `1 - x K1(x)`, and adaptive Gauss-Kronrod quadrature.

use swipt_coop::analytic::{bessel_k1, integrate, one_minus_x_k1, x_k1, QuadOptions};

fn main() -> swipt_coop::Result<()> {
    println!("{:>10} {:>24} {:>24}", "x", "K1(x)", "1 - x K1(x)");
    for x in [1e-6, 1e-3, 0.1, 1.0, 2.0, 2.5, 10.0, 50.0] {
        println!("{x:>10} {:>24.16e} {:>24.16e}", bessel_k1(x)?, one_minus_x_k1(x));
    }

    // naive subtraction loses every digit near zero
    let x = 1e-5;
    println!();
    println!("at x = {x}: naive 1 - x K1 = {:.6e}, stable = {:.6e}", 1.0 - x_k1(x), one_minus_x_k1(x));

    let opts = QuadOptions::default();
    let est = integrate(|t| t * bessel_k1(t).unwrap(), 0.0, 1.0, &opts)?;
    println!();
    println!(
        "int_0^1 t K1(t) dt = {:.15} (error bound {:.1e}, {} intervals)",
        est.value, est.error, est.intervals
    );

    // int_0^inf t K1(t) dt = pi/2, truncated where the tail is below 1e-20
    let est = integrate(|t| t * bessel_k1(t).unwrap(), 0.0, 50.0, &opts)?;
    println!("int_0^50 t K1(t) dt = {:.15}, pi/2 = {:.15}", est.value, std::f64::consts::FRAC_PI_2);
    Ok(())
}
