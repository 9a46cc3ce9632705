//! Cross-module properties over randomised scenarios.

use proptest::prelude::*;

use swipt_coop::analytic;
use swipt_coop::asymptotic::{dmt, DmtSetting, User};
use swipt_coop::efrc;
use swipt_coop::params::{dbm_to_mw, mw_to_dbm, ProtocolKind, SystemParams};

fn scenario() -> impl Strategy<Value = SystemParams> {
    (
        0.5f64..2.0,
        -5.0f64..30.0,
        1.05f64..3.0,
        0.2f64..1.0,
        5.0f64..30.0,
        3.0f64..30.0,
        0.2f64..0.8,
        0.2f64..0.8,
    )
        .prop_map(|(rate, dbm, excess, eta, d_bn, d_nf, rho, theta)| SystemParams {
            rate,
            total_power: dbm_to_mw(dbm).unwrap(),
            power_ratio: (rate.exp2() - 1.0) * excess,
            eta,
            d_bn,
            d_bf: d_bn + 10.0,
            d_nf,
            power_fraction: rho,
            freq_fraction: theta,
            ..SystemParams::default()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isanc_dominates_csanc(p in scenario()) {
        let cs = analytic::outage(ProtocolKind::Csanc, &p).unwrap();
        let is = analytic::outage(ProtocolKind::Isanc, &p).unwrap();
        prop_assert!(is.op_n <= cs.op_n * (1.0 + 1e-12));
        prop_assert!(is.sop <= cs.sop * (1.0 + 1e-12));
        prop_assert_eq!(is.op_f, cs.op_f);
    }

    #[test]
    fn outage_probabilities_are_consistent(p in scenario()) {
        for protocol in ProtocolKind::ALL {
            let o = analytic::outage(protocol, &p).unwrap();
            prop_assert!(o.op_n >= 0.0 && o.op_f >= 0.0 && o.sop <= 1.0);
            prop_assert!(o.sop >= o.op_n.max(o.op_f) * (1.0 - 1e-12));
            prop_assert!(o.sop <= (o.op_n + o.op_f) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn more_power_never_hurts(p in scenario(), step in 1.0f64..10.0) {
        let q = SystemParams { total_power: p.total_power * 10f64.powf(step / 10.0), ..p };
        for protocol in ProtocolKind::ALL {
            let a = analytic::outage(protocol, &p).unwrap().sop;
            let b = analytic::outage(protocol, &q).unwrap().sop;
            prop_assert!(b <= a * (1.0 + 1e-9), "{}: {} -> {}", protocol, a, b);
        }
    }

    #[test]
    fn efrc_bounds_full_model(p in scenario()) {
        for protocol in ProtocolKind::ALL {
            let full = analytic::outage(protocol, &p).unwrap().sop;
            prop_assert!(efrc::efrc_sop(protocol, &p) <= full * (1.0 + 1e-12));
        }
        prop_assert!(efrc::efrc_optimal_sop(&p) <= efrc::efrc_sop_isanc(&p) * (1.0 + 1e-12));
    }

    #[test]
    fn dbm_round_trip(dbm in -100.0f64..60.0) {
        let back = mw_to_dbm(dbm_to_mw(dbm).unwrap());
        prop_assert!((back - dbm).abs() <= 1e-12 * dbm.abs().max(1.0));
    }

    #[test]
    fn dmt_is_nonincreasing(r1 in 0.0f64..1.0, r2 in 0.0f64..1.0, theta in 0.05f64..0.95, regime: bool) {
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let settings = [
            (ProtocolKind::Csanc, DmtSetting::Noma { a: 1.0, b: 0.5 }),
            (ProtocolKind::Isanc, DmtSetting::Noma { a: 1.5, b: 0.0 }),
            (ProtocolKind::Isaoc, DmtSetting::Ofdma { theta, regime }),
        ];
        for (protocol, s) in settings {
            for user in [User::N, User::F] {
                prop_assert!(dmt(protocol, user, hi, s).unwrap() <= dmt(protocol, user, lo, s).unwrap());
            }
        }
    }
}
