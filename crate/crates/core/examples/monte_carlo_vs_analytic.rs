//! Monte Carlo estimates next to the closed-form outage probabilities.
//!
//! Run with `cargo run --release --example monte_carlo_vs_analytic -- [trials] [dBm]`.

use swipt_coop::analytic;
use swipt_coop::montecarlo;
use swipt_coop::params::{ProtocolKind, SystemParams};

fn main() -> swipt_coop::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2_000_000);
    let dbm: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5.0);
    let params = SystemParams::default().with_total_power_dbm(dbm)?;

    println!("P_B = {dbm} dBm, {trials} trials per protocol");
    println!("{:<6} {:<5} {:>12} {:>12} {:>11} {:>7}", "proto", "what", "analytic", "simulated", "95% hw", "z");
    for protocol in ProtocolKind::ALL {
        let exact = analytic::outage(protocol, &params)?;
        let est = montecarlo::estimate(protocol, &params, trials, 7)?;
        for (what, a, s, hw) in [
            ("op_N", exact.op_n, est.op_n, est.ci_half_width_n),
            ("op_F", exact.op_f, est.op_f, est.ci_half_width_f),
            ("sop", exact.sop, est.sop, est.ci_half_width_sys),
        ] {
            // z in units of the 95% half-width; |z| < 1 is inside the interval
            let z = if hw > 0.0 { (s - a) / hw } else { f64::NAN };
            println!("{:<6} {:<5} {:>12.5e} {:>12.5e} {:>11.2e} {:>7.2}", protocol.name(), what, a, s, hw, z);
        }
        if let Some(w) = est.low_count_warning() {
            eprintln!("warning: {w}");
        }
    }
    Ok(())
}
