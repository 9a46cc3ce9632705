//! Grid search over power (and, for ISAOC, frequency) allocation.

use swipt_coop::optimizer::{grid, minimize_sop, Allocation, AllocationGrid, Objective};
use swipt_coop::params::{ProtocolKind, SystemParams};

fn main() -> swipt_coop::Result<()> {
    let params = SystemParams::default();
    let k_grid = AllocationGrid::PowerRatio(grid(1.05, 4.0, 0.05)?);
    let split = grid(0.05, 0.95, 0.05)?;
    let of_grid = AllocationGrid::PowerFrequency {
        rho: split.clone(),
        theta: split,
    };

    for objective in [Objective::Analytic, Objective::Efrc] {
        println!("{objective:?} objective");
        for protocol in ProtocolKind::ALL {
            let g = if protocol.is_noma() { &k_grid } else { &of_grid };
            let r = minimize_sop(protocol, &params, g, objective)?;
            let at = match r.best {
                Allocation::PowerRatio { k } => format!("k = {k}"),
                Allocation::PowerFrequency { rho, theta } => format!("rho = {rho}, theta = {theta}"),
            };
            println!(
                "  {:<6} best {:<24} sop {:.4e} (op_N {:.3e}, op_F {:.3e}) over {} points",
                protocol.name(),
                at,
                r.best_sop(),
                r.best_outage.op_n,
                r.best_outage.op_f,
                r.surface.len()
            );
        }
    }
    Ok(())
}
