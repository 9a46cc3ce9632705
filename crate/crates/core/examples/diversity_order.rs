//! Diversity orders from log-log slopes, and how the leading-order
//! high-SNR terms converge to the exact event probabilities.

use swipt_coop::asymptotic::{diversity_slope, event_ratio_pairs, highsnr_outage, Backend};
use swipt_coop::analytic;
use swipt_coop::params::{ProtocolKind, SystemParams};

fn main() -> swipt_coop::Result<()> {
    let params = SystemParams::default();
    let grid: Vec<f64> = (0..=6).map(|i| 40.0 + 5.0 * i as f64).collect();

    println!("slopes of -log10(OP) vs log10(P_B) over 40..70 dBm");
    println!("{:<6} {:>7} {:>7} {:>7}", "proto", "op_N", "op_F", "sop");
    for protocol in ProtocolKind::ALL {
        let s = diversity_slope(protocol, &params, &grid, Backend::Analytic)?;
        println!("{:<6} {:>7.3} {:>7.3} {:>7.3}", protocol.name(), s.op_n, s.op_f, s.sop);
    }

    println!();
    println!("exact / leading-order, per event term");
    for protocol in [ProtocolKind::Isanc, ProtocolKind::Isaoc] {
        for dbm in [40.0, 55.0, 70.0] {
            let p = params.with_total_power_dbm(dbm)?;
            let ratios: Vec<String> = event_ratio_pairs(protocol, &p)?
                .into_iter()
                .map(|(name, exact, lead)| format!("{name}={:.4}", exact / lead))
                .collect();
            println!("{protocol} {dbm} dBm: {}", ratios.join(" "));
        }
    }

    println!();
    let p = params.with_total_power_dbm(60.0)?;
    for protocol in ProtocolKind::ALL {
        let exact = analytic::outage(protocol, &p)?;
        let lead = highsnr_outage(protocol, &p)?;
        println!("{protocol} sop at 60 dBm: exact {:.4e}, asymptotic {:.4e}", exact.sop, lead.sop);
    }
    Ok(())
}
