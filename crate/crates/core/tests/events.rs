//! Event-level agreement between simulation and the closed forms, tighter
//! than the outage-level check because each event is compared on its own.

use swipt_coop::analytic::{noma_event_probs, ofdma_event_probs};
use swipt_coop::montecarlo::{estimate, EventTally};
use swipt_coop::params::{ProtocolKind, SystemParams};

const TRIALS: u64 = 20_000_000;

/// |count/n - p| in binomial standard deviations.
fn z(tally: &EventTally, count: u64, p: f64) -> f64 {
    let n = tally.trials as f64;
    (count as f64 / n - p).abs() / (p * (1.0 - p) / n).sqrt()
}

fn params() -> SystemParams {
    SystemParams::default().with_total_power_dbm(10.0).unwrap()
}

#[test]
fn noma_events() {
    let p = params();
    let e = noma_event_probs(&p).unwrap();
    let t = estimate(ProtocolKind::Isanc, &p, TRIALS, 17).unwrap().events;
    for (name, count, prob) in [
        ("ndf0", t.ndf0, e.ndf0),
        ("ndn0", t.ndn0, e.ndn0),
        ("fdf0", t.fdf0, e.fdf0),
        ("fdn0", t.fdn0, e.fdn0),
        ("nhf0", t.nhf0, e.nhf0),
        ("fhn0_ndf0", t.fhn0_ndf0, e.fhn0_ndf0),
        ("fhn0_ndf1", t.fhn0_ndf1, e.fhn0_ndf1_ndn0),
    ] {
        assert!(count >= 100, "{name}: only {count} hits");
        assert!(z(&t, count, prob) < 4.0, "{name}: {} vs {prob}", t.fraction(count));
    }
}

#[test]
fn ofdma_events() {
    let p = SystemParams {
        power_fraction: 0.6,
        freq_fraction: 0.45,
        ..params()
    };
    let e = ofdma_event_probs(&p).unwrap();
    let t = estimate(ProtocolKind::Isaoc, &p, TRIALS, 18).unwrap().events;
    for (name, count, prob) in [
        ("ndn0", t.ndn0, e.ndn0),
        ("fdf0", t.fdf0, e.fdf0),
        ("nhf0", t.nhf0, e.nhf0),
        ("fhn0", t.fhn0_ndf0 + t.fhn0_ndf1, e.fhn0),
    ] {
        assert!(count >= 100, "{name}: only {count} hits");
        assert!(z(&t, count, prob) < 4.0, "{name}: {} vs {prob}", t.fraction(count));
    }
}
