//! Event-level breakdown of the closed-form outage probabilities, swept over
//! the transmit power.

use swipt_coop::analytic::{self, noma_event_probs, ofdma_event_probs};
use swipt_coop::params::{ProtocolKind, SystemParams};

fn main() -> swipt_coop::Result<()> {
    let base = SystemParams::default();

    println!("NOMA events (k = {:.4})", base.power_ratio);
    println!("{:>5} {:>11} {:>11} {:>11} {:>11} {:>11}", "dBm", "NDF=0", "FDF=0", "NHF=0", "FHN=0|NDF0", "FHN=0|NDF1");
    for dbm in [0.0, 10.0, 20.0, 30.0] {
        let e = noma_event_probs(&base.with_total_power_dbm(dbm)?)?;
        println!(
            "{dbm:>5} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}",
            e.ndf0, e.fdf0, e.nhf0, e.fhn0_ndf0, e.fhn0_ndf1_ndn0
        );
    }

    println!();
    println!("OFDMA events (rho = {}, theta = {})", base.power_fraction, base.freq_fraction);
    println!("{:>5} {:>11} {:>11} {:>11} {:>11}", "dBm", "NDN=0", "FDF=0", "NHF=0", "FHN=0");
    for dbm in [0.0, 10.0, 20.0, 30.0] {
        let e = ofdma_event_probs(&base.with_total_power_dbm(dbm)?)?;
        println!("{dbm:>5} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}", e.ndn0, e.fdf0, e.nhf0, e.fhn0);
    }

    println!();
    println!("{:>5} {:>7} {:>11} {:>11} {:>11}", "dBm", "proto", "op_N", "op_F", "sop");
    for dbm in [0.0, 10.0, 20.0, 30.0] {
        let p = base.with_total_power_dbm(dbm)?;
        for protocol in ProtocolKind::ALL {
            let o = analytic::outage(protocol, &p)?;
            println!("{dbm:>5} {:>7} {:>11.3e} {:>11.3e} {:>11.3e}", protocol.name(), o.op_n, o.op_f, o.sop);
        }
    }
    Ok(())
}
