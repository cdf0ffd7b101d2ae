//! One SOP evaluation from a parameter set.

use uavsec_core::montecarlo::{mc_sop_downlink, mc_sop_uplink};
use uavsec_core::sop::{sop_downlink, sop_downlink_lower_closed_form, sop_uplink};
use uavsec_core::{Bound, Decomposition, RandomStream, SopEstimate, SopMethod};

use crate::config::{ConfigError, Link, Params};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] uavsec_core::Error),
    #[error("{0}")]
    Unsupported(&'static str),
}

/// Evaluates the SOP of `p` with one method. Monte Carlo draws come from
/// stream `stream_id` of `p.seed`. The simulated downlink always places the
/// eavesdropper uniformly in the above-ground region, so `decomposition`
/// only affects the analytic methods.
pub fn evaluate(
    p: &Params,
    method: SopMethod,
    bound: Bound,
    decomposition: Decomposition,
    stream_id: u64,
) -> Result<SopEstimate, EvalError> {
    let cfg = p.quad_config();
    let rs = RandomStream::new(p.seed, stream_id);
    match (p.link, method) {
        (Link::Uplink, SopMethod::Quadrature) => Ok(sop_uplink(&p.uplink()?, bound, &cfg)?),
        (Link::Uplink, SopMethod::MonteCarlo) => Ok(mc_sop_uplink(&p.uplink()?, p.mc_samples, bound, rs)?.to_estimate()),
        (Link::Uplink, SopMethod::ClosedForm) => Err(EvalError::Unsupported(
            "no closed form is implemented for the uplink; use quadrature",
        )),
        (Link::Downlink, SopMethod::Quadrature) => Ok(sop_downlink(&p.downlink()?, bound, decomposition, &cfg)?),
        (Link::Downlink, SopMethod::MonteCarlo) => {
            Ok(mc_sop_downlink(&p.downlink()?, p.mc_samples, bound, rs)?.to_estimate())
        }
        (Link::Downlink, SopMethod::ClosedForm) => match bound {
            Bound::Lower => Ok(sop_downlink_lower_closed_form(&p.downlink()?, decomposition)?),
            Bound::Exact => Err(EvalError::Unsupported(
                "the downlink closed form covers the lower bound only",
            )),
        },
    }
}
