//! Quasi-static Rayleigh fading draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::SystemParams;

/// Trials per random stream. Trial `i` always lives in block `i / BLOCK_TRIALS`,
/// so the draw it receives does not depend on how blocks are spread over workers.
pub const BLOCK_TRIALS: u64 = 1 << 16;

/// Squared channel gains for one transmission block.
///
/// `gain_nf` serves both directions of the user-to-user link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRealization {
    /// |h_BF|^2
    pub gain_bf: f64,
    /// |h_BN|^2
    pub gain_bn: f64,
    /// |h_NF|^2
    pub gain_nf: f64,
}

impl ChannelRealization {
    pub fn new(gain_bf: f64, gain_bn: f64, gain_nf: f64) -> Self {
        ChannelRealization {
            gain_bf,
            gain_bn,
            gain_nf,
        }
    }
}

/// Generator for block `block` of the stream family keyed by `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Exponential variate with the given mean by inversion, U drawn from (0, 1].
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> f64 {
    let u = 1.0 - rng.random::<f64>();
    -mean * u.ln()
}

/// Draws x, y, z in that order.
pub fn sample<R: Rng + ?Sized>(rng: &mut R, params: &SystemParams) -> ChannelRealization {
    let gain_bf = exponential(rng, params.lambda_bf);
    let gain_bn = exponential(rng, params.lambda_bn);
    let gain_nf = exponential(rng, params.lambda_nf);
    ChannelRealization {
        gain_bf,
        gain_bn,
        gain_nf,
    }
}
