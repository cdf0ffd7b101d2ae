//! Fixtures shared by the benchmarks.

use uavsec_core::{CapGeometry, ChordGeometry, DownlinkScenario, UplinkScenario};

pub fn uplink() -> UplinkScenario {
    UplinkScenario {
        chord: ChordGeometry::new(15.0, 20.0).expect("valid chord"),
        r_g: 15.0,
        n: 2.0,
        lambda_g: 10f64.powf(0.125),
        g_gs: 1.0,
        g_ge: 1.1,
        rs_bits: 0.1,
    }
}

pub fn downlink() -> DownlinkScenario {
    DownlinkScenario {
        cap: CapGeometry::new(20.0, 10.0).expect("valid cap"),
        n: 2.0,
        lambda_s: 10f64.powf(0.5),
        g_sg: 1.0,
        g_se: 1.1,
        rs_bits: 0.1,
    }
}
