//! Walks through single channel realizations and shows which decoding and
//! relaying events fire under each protocol.

use swipt_coop::channel::ChannelRealization;
use swipt_coop::montecarlo::TrialEvaluator;
use swipt_coop::noma::noma_thresholds;
use swipt_coop::ofdma::ofdma_thresholds;
use swipt_coop::params::{ProtocolKind, SystemParams};

fn flag(b: bool) -> char {
    if b {
        '1'
    } else {
        '.'
    }
}

fn main() {
    let params = SystemParams::default();
    let nt = noma_thresholds(&params);
    let ot = ofdma_thresholds(&params);
    println!("NOMA thresholds:  ndf {:.3e}  ndn {:.3e}  fdf {:.3e}  fdn {:.3e}", nt.ndf, nt.ndn, nt.fdf, nt.fdn);
    println!("OFDMA thresholds: ndn {:.3e}  fdf {:.3e}", ot.ndn, ot.fdf);
    println!();

    // gains picked around the thresholds: (|h_BF|^2, |h_BN|^2, |h_NF|^2)
    let cases = [
        ("both strong", ChannelRealization::new(1.0, 1.0, 1.0)),
        ("F faded, N strong", ChannelRealization::new(1e-4, 0.8, 0.5)),
        ("N faded, F strong", ChannelRealization::new(0.9, 1e-4, 0.5)),
        ("F faded, weak link", ChannelRealization::new(1e-4, 0.8, 1e-6)),
        ("both faded", ChannelRealization::new(1e-5, 1e-5, 1.0)),
    ];

    println!(
        "{:<20} {:<6} ndf ndn fdf fdn nhf fhn  beta_n  beta_f  out_N out_F",
        "case", "proto"
    );
    for (name, ch) in cases {
        for protocol in ProtocolKind::ALL {
            let o = TrialEvaluator::new(protocol, &params).evaluate(&ch);
            o.check_invariants(protocol).expect("invariants hold");
            println!(
                "{:<20} {:<6}  {}   {}   {}   {}   {}   {}  {:>6.3}  {:>6.3}    {}     {}",
                name,
                protocol,
                flag(o.ndf),
                flag(o.ndn),
                flag(o.fdf),
                flag(o.fdn),
                flag(o.nhf),
                flag(o.fhn),
                o.beta_n,
                o.beta_f,
                flag(o.outage_n),
                flag(o.outage_f),
            );
        }
    }
}
