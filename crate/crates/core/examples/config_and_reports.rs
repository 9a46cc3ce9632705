//! Loads a TOML scenario, runs two commands through the library API and
//! writes their tables as CSV and JSON into a directory.
//!
//! ```text
//! cargo run --example config_and_reports -- path/to/config.toml out/
//! ```

use std::path::PathBuf;

use swipt_coop::cli::{cmd_analytic, cmd_simulate, SimSettings};
use swipt_coop::config::Config;
use swipt_coop::params::ProtocolKind;
use swipt_coop::report::{emit, Format, Provenance};

fn main() -> swipt_coop::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = match args.next() {
        Some(path) => Config::load(path.as_ref())?,
        None => Config::default(),
    };
    let out = PathBuf::from(args.next().unwrap_or_else(|| "swipt-report".into()));

    cfg.system.total_power_dbm = 5.0;
    cfg.simulation.trials = 500_000;
    let sim = SimSettings::from_config(&cfg);
    let prov = Provenance {
        config_sha256: cfg.sha256(),
        seed: sim.seed,
    };

    let mut warnings = Vec::new();
    let tables = vec![
        cmd_analytic(&cfg, &ProtocolKind::ALL)?,
        cmd_simulate(&cfg, &ProtocolKind::ALL, sim, &mut warnings)?,
    ];
    for w in warnings {
        eprintln!("warning: {w}");
    }
    for format in [Format::Csv, Format::Json] {
        for path in emit(&tables, &prov, format, Some(&out), &mut std::io::stdout())? {
            println!("wrote {}", path.display());
        }
    }
    print!("{}", tables[0].to_csv(&prov));
    Ok(())
}
