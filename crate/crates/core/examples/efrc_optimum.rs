//! Error-free relaying limit: the optimal allocations for ISANC and ISAOC
//! reach the same SOP.

use swipt_coop::efrc::{
    balanced_power_fraction, efrc_optimal_isanc, efrc_optimal_isaoc, efrc_sop, efrc_sop_isaoc_balanced, f_theta,
};
use swipt_coop::params::{ProtocolKind, SystemParams};

fn main() {
    let params = SystemParams::default();
    let (k_opt, sop_isanc) = efrc_optimal_isanc(&params);
    let iso = efrc_optimal_isaoc(&params);
    println!("ISANC optimum: k = {k_opt}, sop = {sop_isanc:.6e}");
    println!("ISAOC optimum: rho = {}, theta = {}, sop = {:.6e}", iso.rho, iso.theta, iso.sop);

    println!();
    println!("{:>5} {:>12} {:>12}", "k", "csanc", "isanc");
    for k in [1.2, 1.5, 2.0, 2.5, 3.0, 4.0] {
        let p = SystemParams {
            power_ratio: k,
            ..params
        };
        println!(
            "{k:>5} {:>12.4e} {:>12.4e}",
            efrc_sop(ProtocolKind::Csanc, &p),
            efrc_sop(ProtocolKind::Isanc, &p)
        );
    }

    println!();
    println!("{:>6} {:>8} {:>10} {:>12}", "theta", "rho*", "f(theta)", "isaoc sop");
    for theta in [0.3, 0.4, 0.5, 0.6, 0.7] {
        println!(
            "{theta:>6} {:>8.4} {:>10.4} {:>12.4e}",
            balanced_power_fraction(params.rate, theta),
            f_theta(params.rate, theta),
            efrc_sop_isaoc_balanced(&params, theta)
        );
    }
}
