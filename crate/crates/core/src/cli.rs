//! The `swipt` command line: argument parsing, one function per subcommand,
//! and the mapping from errors to exit codes.
//!
//! Each `cmd_*` function is usable on its own and returns the tables it would
//! print, so results can be produced without going through the binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{self, Metric, OutageProbs};
use crate::asymptotic::{self, DmtSetting, User};
use crate::config::{Config, GridSpec};
use crate::efrc;
use crate::error::{Error, Result};
use crate::montecarlo::{self, OutageEstimate};
use crate::optimizer::{self, Allocation, AllocationGrid, Objective, SearchResult};
use crate::params::{dbm_to_mw, ProtocolKind, SystemParams};
use crate::report::{self, Cell, Format, Provenance, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "swipt", version, about = "Outage analysis and simulation of SWIPT-assisted cooperation protocols")]
pub struct Cli {
    /// TOML config; the built-in reference scenario is used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file, or a directory when the command produces several tables.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SimArgs {
    /// Monte Carlo trials per point (overrides the config).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,

    /// Base seed for the trial streams (overrides the config).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Worker threads; 0 uses every available core.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo outage estimates at the configured operating point.
    Simulate {
        /// Repeatable; all protocols when omitted.
        #[arg(long, value_enum)]
        protocol: Vec<ProtocolArg>,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Closed-form outage probabilities at the configured operating point.
    Analytic {
        #[arg(long, value_enum)]
        protocol: Vec<ProtocolArg>,
    },
    /// Outage along one parameter axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        /// `start:stop:step`; defaults to the config's grid for the axis.
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(long, value_enum)]
        protocol: Vec<ProtocolArg>,
        /// Move N along the B-F segment: d_nf = d_bf - d_bn.
        #[arg(long)]
        collinear: bool,
        /// Add Monte Carlo columns next to the analytic ones.
        #[arg(long)]
        simulate: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Diversity-multiplexing trade-off curves.
    Dmt,
    /// SOP with an error-free inter-user link, plus the optimal allocations.
    Efrc,
    /// Grid search for the SOP-minimising allocation.
    Optimize {
        #[arg(long, value_enum)]
        protocol: Vec<ProtocolArg>,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Analytic)]
        objective: ObjectiveArg,
        /// Also emit every evaluated grid point.
        #[arg(long)]
        surface: bool,
    },
    /// Data for one of the preset plots.
    Figure {
        #[arg(long, value_enum)]
        preset: Preset,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Csanc,
    Isanc,
    Isaoc,
}

impl From<ProtocolArg> for ProtocolKind {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Csanc => ProtocolKind::Csanc,
            ProtocolArg::Isanc => ProtocolKind::Isanc,
            ProtocolArg::Isaoc => ProtocolKind::Isaoc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Total transmit power, dBm.
    #[value(name = "pb", alias = "p_b")]
    Pb,
    #[value(name = "d_bn")]
    DBn,
    /// NOMA power ratio.
    K,
    /// ISAOC frequency fraction.
    Theta,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::Pb => "P_B_dBm",
            Axis::DBn => "d_BN",
            Axis::K => "k",
            Axis::Theta => "theta",
        }
    }

    fn applies_to(self, protocol: ProtocolKind) -> bool {
        match self {
            Axis::Pb | Axis::DBn => true,
            Axis::K => protocol.is_noma(),
            Axis::Theta => !protocol.is_noma(),
        }
    }

    /// `params` with the axis set to `v`.
    pub fn apply(self, params: &SystemParams, v: f64, collinear: bool) -> Result<SystemParams> {
        let mut p = *params;
        match self {
            Axis::Pb => p.total_power = dbm_to_mw(v)?,
            Axis::DBn => {
                p.d_bn = v;
                if collinear {
                    p.d_nf = p.d_bf - v;
                }
            }
            Axis::K => p.power_ratio = v,
            Axis::Theta => p.freq_fraction = v,
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Analytic,
    Efrc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Analytic and simulated outage against P_B.
    Fig2,
    /// Optimal SOP and its per-user outages against P_B.
    Fig3,
    /// Optimal SOP against d_BN with d_NF = d_BF - d_BN.
    Fig4,
    /// DMT curves for every protocol and user.
    Fig5,
    /// EFRC SOP against k.
    Fig6,
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation(_) | Error::Config(_) => EXIT_VALIDATION,
        Error::Domain(_) => EXIT_USAGE,
        Error::Range(_) | Error::Quadrature { .. } => EXIT_NUMERIC,
        Error::Io(_) => EXIT_IO,
    }
}

/// Resolved Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimSettings {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimSettings {
    pub fn from_config(cfg: &Config) -> Self {
        SimSettings {
            trials: cfg.simulation.trials,
            seed: cfg.simulation.seed,
            workers: cfg.simulation.workers,
        }
    }

    fn with_overrides(mut self, a: &SimArgs) -> Self {
        self.trials = a.trials.unwrap_or(self.trials);
        self.seed = a.seed.unwrap_or(self.seed);
        self.workers = a.workers.unwrap_or(self.workers);
        self
    }
}

fn protocols_or_all(given: &[ProtocolArg]) -> Vec<ProtocolKind> {
    if given.is_empty() {
        ProtocolKind::ALL.to_vec()
    } else {
        let mut v: Vec<ProtocolKind> = Vec::new();
        for p in given {
            let p = ProtocolKind::from(*p);
            if !v.contains(&p) {
                v.push(p);
            }
        }
        v
    }
}

fn estimate(protocol: ProtocolKind, p: &SystemParams, sim: SimSettings, warnings: &mut Vec<String>) -> Result<OutageEstimate> {
    let e = montecarlo::estimate_with_workers(protocol, p, sim.trials, sim.seed, sim.workers)?;
    warnings.extend(e.low_count_warning());
    Ok(e)
}

/// One row per protocol: point estimates, 95% half-widths, failure counts.
pub fn cmd_simulate(cfg: &Config, protocols: &[ProtocolKind], sim: SimSettings, warnings: &mut Vec<String>) -> Result<Table> {
    let params = cfg.params()?;
    let mut t = Table::new(
        "simulate",
        &[
            "protocol",
            "P_B_dBm",
            "op_N",
            "op_F",
            "sop",
            "ci_N",
            "ci_F",
            "ci_sop",
            "failures_N",
            "failures_F",
            "failures_sys",
            "trials",
            "seed",
        ],
    );
    for &protocol in protocols {
        let e = estimate(protocol, &params, sim, warnings)?;
        t.push(vec![
            protocol.name().into(),
            cfg.system.total_power_dbm.into(),
            e.op_n.into(),
            e.op_f.into(),
            e.sop.into(),
            e.ci_half_width_n.into(),
            e.ci_half_width_f.into(),
            e.ci_half_width_sys.into(),
            e.failures_n.into(),
            e.failures_f.into(),
            e.failures_sys.into(),
            e.trials.into(),
            e.seed.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_analytic(cfg: &Config, protocols: &[ProtocolKind]) -> Result<Table> {
    let params = cfg.params()?;
    let mut t = Table::new("analytic", &["protocol", "P_B_dBm", "op_N", "op_F", "sop"]);
    for &protocol in protocols {
        params.validate(protocol)?;
        let o = analytic::outage(protocol, &params)?;
        t.push(vec![
            protocol.name().into(),
            cfg.system.total_power_dbm.into(),
            o.op_n.into(),
            o.op_f.into(),
            o.sop.into(),
        ]);
    }
    Ok(t)
}

fn axis_grid(cfg: &Config, axis: Axis) -> GridSpec {
    match axis {
        Axis::Pb => cfg.sweep.pb_dbm,
        Axis::DBn => cfg.sweep.d_bn,
        Axis::K => cfg.sweep.k,
        Axis::Theta => cfg.sweep.theta,
    }
}

/// Options for [`cmd_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub axis: Axis,
    pub grid: Option<GridSpec>,
    pub collinear: bool,
    /// Monte Carlo columns are added when set.
    pub simulate: Option<SimSettings>,
}

/// Long-format sweep: one row per (axis value, protocol).
pub fn cmd_sweep(cfg: &Config, protocols: &[ProtocolKind], opts: SweepOptions, warnings: &mut Vec<String>) -> Result<Table> {
    let axis = opts.axis;
    let protocols: Vec<ProtocolKind> = protocols.iter().copied().filter(|p| axis.applies_to(*p)).collect();
    if protocols.is_empty() {
        return Err(Error::Domain(format!("axis {} applies to none of the selected protocols", axis.label())));
    }
    let values = opts.grid.unwrap_or_else(|| axis_grid(cfg, axis)).values()?;
    let base = cfg.params()?;
    let collinear = opts.collinear || cfg.sweep.collinear;

    let mut columns = vec![axis.label(), "protocol", "op_N", "op_F", "sop"];
    if opts.simulate.is_some() {
        columns.extend(["mc_op_N", "mc_op_F", "mc_sop", "ci_N", "ci_F", "ci_sop", "trials"]);
    }
    let mut t = Table::new(format!("sweep_{}", axis.label()), &columns);
    for &v in &values {
        let p = axis.apply(&base, v, collinear)?;
        for &protocol in &protocols {
            p.validate(protocol)?;
            let o = analytic::outage(protocol, &p)?;
            let mut row: Vec<Cell> = vec![v.into(), protocol.name().into(), o.op_n.into(), o.op_f.into(), o.sop.into()];
            if let Some(sim) = opts.simulate {
                let e = estimate(protocol, &p, sim, warnings)?;
                row.extend([
                    e.op_n.into(),
                    e.op_f.into(),
                    e.sop.into(),
                    e.ci_half_width_n.into(),
                    e.ci_half_width_f.into(),
                    e.ci_half_width_sys.into(),
                    e.trials.into(),
                ]);
            }
            t.push(row);
        }
    }
    Ok(t)
}

fn setting_label(s: DmtSetting) -> String {
    match s {
        DmtSetting::Noma { a, b } => format!("a{a}_b{b}"),
        DmtSetting::Ofdma { theta, regime } => format!("theta{theta}_{}", if regime { "nbound" } else { "fbound" }),
    }
}

/// One table per user (`dmt_F`, `dmt_N`) sampled on a common r grid, plus the AMG of every curve.
pub fn cmd_dmt(cfg: &Config) -> Result<Vec<Table>> {
    let noma = cfg.dmt.noma_settings();
    let isaoc = cfg.dmt.isaoc_settings();
    if noma.is_empty() || isaoc.is_empty() {
        return Err(Error::Config("dmt needs at least one noma and one isaoc setting".into()));
    }
    let mut curves: Vec<(User, String, ProtocolKind, DmtSetting)> = Vec::new();
    for &s in &noma {
        curves.push((User::F, format!("noma_{}", setting_label(s)), ProtocolKind::Isanc, s));
    }
    curves.push((User::N, "csanc".into(), ProtocolKind::Csanc, noma[0]));
    curves.push((User::N, "isanc".into(), ProtocolKind::Isanc, noma[0]));
    for &s in &isaoc {
        for user in [User::F, User::N] {
            curves.push((user, format!("isaoc_{}", setting_label(s)), ProtocolKind::Isaoc, s));
        }
    }

    let points = cfg.dmt.points.max(2);
    let rs: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
    let mut tables = Vec::new();
    for user in [User::F, User::N] {
        let mine: Vec<_> = curves.iter().filter(|c| c.0 == user).collect();
        let mut cols = vec!["r".to_string()];
        cols.extend(mine.iter().map(|c| c.1.clone()));
        let mut t = Table::new(format!("dmt_{user}"), &cols);
        for &r in &rs {
            let mut row: Vec<Cell> = vec![r.into()];
            for c in &mine {
                row.push(asymptotic::dmt(c.2, user, r, c.3)?.into());
            }
            t.push(row);
        }
        tables.push(t);
    }

    let mut amg = Table::new("dmt_amg", &["user", "curve", "amg"]);
    for (user, label, protocol, s) in &curves {
        amg.push(vec![user.to_string().into(), label.clone().into(), asymptotic::amg(*protocol, *user, *s)?.into()]);
    }
    tables.push(amg);
    Ok(tables)
}

/// Best ISAOC frequency split at a fixed power fraction, under EFRC.
fn best_theta(params: &SystemParams, thetas: &[f64]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for &th in thetas {
        let p = SystemParams {
            freq_fraction: th,
            ..*params
        };
        if p.validate(ProtocolKind::Isaoc).is_err() {
            continue;
        }
        let sop = efrc::efrc_sop_isaoc(&p);
        if best.is_none_or(|(_, b)| sop < b) {
            best = Some((th, sop));
        }
    }
    best
}

/// EFRC SOP against k, with the ISAOC power fraction tied to k as `rho = k / (1 + k)`
/// and theta searched at each point; plus the located and closed-form optima.
pub fn cmd_efrc(cfg: &Config) -> Result<Vec<Table>> {
    let base = cfg.params()?;
    let ks = cfg.efrc.k.values()?;
    let thetas = cfg.efrc.theta.values()?;
    let mut t = Table::new(
        "efrc",
        &["k", "csanc_sop", "isanc_sop", "isaoc_rho", "isaoc_best_theta", "isaoc_sop"],
    );
    for &k in &ks {
        let p = SystemParams {
            power_ratio: k,
            power_fraction: k / (1.0 + k),
            ..base
        };
        let noma = p.validate(ProtocolKind::Isanc).is_ok();
        let sop = |protocol| noma.then(|| efrc::efrc_sop(protocol, &p));
        let iso = best_theta(&p, &thetas);
        t.push(vec![
            k.into(),
            sop(ProtocolKind::Csanc).into(),
            sop(ProtocolKind::Isanc).into(),
            p.power_fraction.into(),
            iso.map(|x| x.0).into(),
            iso.map(|x| x.1).into(),
        ]);
    }

    let isanc = optimizer::minimize_sop(
        ProtocolKind::Isanc,
        &base,
        &AllocationGrid::PowerRatio(ks.clone()),
        Objective::Efrc,
    )?;
    let isaoc = optimizer::minimize_sop(
        ProtocolKind::Isaoc,
        &base,
        &AllocationGrid::PowerFrequency {
            rho: thetas.clone(),
            theta: thetas,
        },
        Objective::Efrc,
    )?;
    let (k_opt, sop_opt) = efrc::efrc_optimal_isanc(&base);
    let iso_opt = efrc::efrc_optimal_isaoc(&base);
    let mut o = Table::new("efrc_optimum", &["protocol", "source", "k", "rho", "theta", "sop"]);
    let (gk, grho, gth) = match (isanc.best, isaoc.best) {
        (Allocation::PowerRatio { k }, Allocation::PowerFrequency { rho, theta }) => (k, rho, theta),
        _ => unreachable!("grid kinds match protocols"),
    };
    o.push(vec!["isanc".into(), "grid".into(), gk.into(), Cell::Empty, Cell::Empty, isanc.best_sop().into()]);
    o.push(vec!["isanc".into(), "closed_form".into(), k_opt.into(), Cell::Empty, Cell::Empty, sop_opt.into()]);
    o.push(vec!["isaoc".into(), "grid".into(), Cell::Empty, grho.into(), gth.into(), isaoc.best_sop().into()]);
    o.push(vec![
        "isaoc".into(),
        "closed_form".into(),
        Cell::Empty,
        iso_opt.rho.into(),
        iso_opt.theta.into(),
        iso_opt.sop.into(),
    ]);
    Ok(vec![t, o])
}

fn allocation_grid(cfg: &Config, protocol: ProtocolKind) -> Result<AllocationGrid> {
    Ok(if protocol.is_noma() {
        AllocationGrid::PowerRatio(cfg.sweep.k.values()?)
    } else {
        AllocationGrid::PowerFrequency {
            rho: cfg.sweep.rho.values()?,
            theta: cfg.sweep.theta.values()?,
        }
    })
}

fn allocation_cells(a: &Allocation) -> [Cell; 3] {
    match *a {
        Allocation::PowerRatio { k } => [k.into(), Cell::Empty, Cell::Empty],
        Allocation::PowerFrequency { rho, theta } => [Cell::Empty, rho.into(), theta.into()],
    }
}

fn outage_cells(o: &OutageProbs) -> [Cell; 3] {
    [o.op_n.into(), o.op_f.into(), o.sop.into()]
}

fn search(cfg: &Config, protocol: ProtocolKind, params: &SystemParams, objective: Objective) -> Result<SearchResult> {
    optimizer::minimize_sop(protocol, params, &allocation_grid(cfg, protocol)?, objective)
}

/// Best allocation per protocol over the config's k, rho and theta grids.
pub fn cmd_optimize(cfg: &Config, protocols: &[ProtocolKind], objective: Objective, surface: bool) -> Result<Vec<Table>> {
    let params = cfg.params()?;
    let cols = ["protocol", "k", "rho", "theta", "op_N", "op_F", "sop"];
    let mut best = Table::new("optimize", &cols);
    let mut all = Table::new("optimize_surface", &cols);
    for &protocol in protocols {
        let r = search(cfg, protocol, &params, objective)?;
        let mut row: Vec<Cell> = vec![protocol.name().into()];
        row.extend(allocation_cells(&r.best));
        row.extend(outage_cells(&r.best_outage));
        best.push(row);
        if surface {
            for pt in &r.surface {
                let mut row: Vec<Cell> = vec![protocol.name().into()];
                row.extend(allocation_cells(&pt.allocation));
                row.extend(outage_cells(&pt.outage));
                all.push(row);
            }
        }
    }
    Ok(if surface { vec![best, all] } else { vec![best] })
}

/// Three metric tables with per-protocol columns and one allocation table,
/// each row holding the optimum at one axis value.
fn optimal_vs_axis(cfg: &Config, prefix: &str, axis: Axis, values: &[f64], collinear: bool) -> Result<Vec<Table>> {
    let base = cfg.params()?;
    let names: Vec<&str> = ProtocolKind::ALL.iter().map(|p| p.name()).collect();
    let mut cols = vec![axis.label()];
    cols.extend(&names);
    let mut metric_tables: Vec<Table> = Metric::ALL
        .iter()
        .map(|m| Table::new(format!("{prefix}_{}", m.name()), &cols))
        .collect();
    let mut alloc = Table::new(
        format!("{prefix}_allocation"),
        &[axis.label(), "csanc_k", "isanc_k", "isaoc_rho", "isaoc_theta"],
    );
    for &v in values {
        let p = axis.apply(&base, v, collinear)?;
        let results = ProtocolKind::ALL
            .iter()
            .map(|&protocol| search(cfg, protocol, &p, Objective::Analytic))
            .collect::<Result<Vec<_>>>()?;
        for (t, m) in metric_tables.iter_mut().zip(Metric::ALL) {
            let mut row: Vec<Cell> = vec![v.into()];
            row.extend(results.iter().map(|r| Cell::from(r.best_outage.get(m))));
            t.push(row);
        }
        let [ck, _, _] = allocation_cells(&results[0].best);
        let [ik, _, _] = allocation_cells(&results[1].best);
        let [_, rho, theta] = allocation_cells(&results[2].best);
        alloc.push(vec![v.into(), ck, ik, rho, theta]);
    }
    metric_tables.push(alloc);
    Ok(metric_tables)
}

/// Analytic and simulated outage against P_B, one table per metric.
fn figure2(cfg: &Config, sim: SimSettings, warnings: &mut Vec<String>) -> Result<Vec<Table>> {
    let base = cfg.params()?;
    let values = cfg.sweep.pb_dbm.values()?;
    let mut cols = vec!["P_B_dBm".to_string()];
    for p in ProtocolKind::ALL {
        cols.extend([format!("{p}_analytic"), format!("{p}_sim"), format!("{p}_ci")]);
    }
    let mut tables: Vec<Table> = Metric::ALL
        .iter()
        .map(|m| Table::new(format!("fig2_{}", m.name()), &cols))
        .collect();
    for &v in &values {
        let p = Axis::Pb.apply(&base, v, false)?;
        let mut rows: Vec<Vec<Cell>> = vec![vec![v.into()]; 3];
        for protocol in ProtocolKind::ALL {
            let exact = analytic::outage(protocol, &p)?;
            let e = estimate(protocol, &p, sim, warnings)?;
            let sim_vals = [
                (e.op_n, e.ci_half_width_n),
                (e.op_f, e.ci_half_width_f),
                (e.sop, e.ci_half_width_sys),
            ];
            for ((row, m), (est, ci)) in rows.iter_mut().zip(Metric::ALL).zip(sim_vals) {
                row.extend([exact.get(m).into(), est.into(), ci.into()]);
            }
        }
        for (t, row) in tables.iter_mut().zip(rows) {
            t.push(row);
        }
    }
    Ok(tables)
}

pub fn cmd_figure(cfg: &Config, preset: Preset, sim: SimSettings, warnings: &mut Vec<String>) -> Result<Vec<Table>> {
    match preset {
        Preset::Fig2 => figure2(cfg, sim, warnings),
        Preset::Fig3 => optimal_vs_axis(cfg, "fig3", Axis::Pb, &cfg.sweep.pb_dbm.values()?, false),
        Preset::Fig4 => optimal_vs_axis(cfg, "fig4", Axis::DBn, &cfg.sweep.d_bn.values()?, true),
        Preset::Fig5 => cmd_dmt(cfg),
        Preset::Fig6 => cmd_efrc(cfg),
    }
}

/// Runs a parsed command line, returning the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut warnings = Vec::new();
    let result = execute(&cli, &mut warnings).and_then(|(tables, prov)| {
        report::emit(&tables, &prov, cli.format, cli.out.as_deref(), stdout)
    });
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match result {
        Ok(written) => {
            for p in written {
                let _ = writeln!(stderr, "wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> Result<(Vec<Table>, Provenance)> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let sim_args = match &cli.command {
        Command::Simulate { sim, .. } | Command::Sweep { sim, .. } | Command::Figure { sim, .. } => Some(sim),
        _ => None,
    };
    // overrides become part of the recorded config
    let sim = sim_args.map_or(SimSettings::from_config(&cfg), |a| SimSettings::from_config(&cfg).with_overrides(a));
    cfg.simulation.trials = sim.trials;
    cfg.simulation.seed = sim.seed;
    let prov = Provenance {
        config_sha256: cfg.sha256(),
        seed: sim.seed,
    };

    let tables = match &cli.command {
        Command::Simulate { protocol, .. } => vec![cmd_simulate(&cfg, &protocols_or_all(protocol), sim, warnings)?],
        Command::Analytic { protocol } => vec![cmd_analytic(&cfg, &protocols_or_all(protocol))?],
        Command::Sweep {
            axis,
            grid,
            protocol,
            collinear,
            simulate,
            ..
        } => {
            let opts = SweepOptions {
                axis: *axis,
                grid: *grid,
                collinear: *collinear,
                simulate: simulate.then_some(sim),
            };
            vec![cmd_sweep(&cfg, &protocols_or_all(protocol), opts, warnings)?]
        }
        Command::Dmt => cmd_dmt(&cfg)?,
        Command::Efrc => cmd_efrc(&cfg)?,
        Command::Optimize {
            protocol,
            objective,
            surface,
        } => {
            let objective = match objective {
                ObjectiveArg::Analytic => Objective::Analytic,
                ObjectiveArg::Efrc => Objective::Efrc,
            };
            cmd_optimize(&cfg, &protocols_or_all(protocol), objective, *surface)?
        }
        Command::Figure { preset, .. } => cmd_figure(&cfg, *preset, sim, warnings)?,
    };
    Ok((tables, prov))
}

/// Entry point for the binary: parses `args`, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            code
        }
    }
}
