//! Secrecy outage analysis for a UAV flying a straight trajectory.
//!
//! The crate evaluates the distributions of the legitimate and eavesdropper
//! SNRs under Rayleigh fading and uniform node placement, integrates them into
//! secrecy outage probabilities for the uplink and the downlink, and provides
//! a Monte Carlo simulator used to validate every analytic result.

pub mod distributions;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod quad;
pub mod sop;
pub mod specfun;
pub mod stream;

pub use distributions::{ConstantMode, DownlinkScenario, Region, Scenario, UplinkScenario};
pub use error::{Error, Result};
pub use geometry::{CapGeometry, ChordGeometry, Point3, RegionVolumes};
pub use montecarlo::{KsOutcome, McResult};
pub use quad::QuadratureConfig;
pub use sop::{Bound, Decomposition, EveRegion, SopEstimate, SopMethod};
pub use stream::RandomStream;
