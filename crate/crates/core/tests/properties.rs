use proptest::prelude::*;
use uavsec_core::distributions::*;
use uavsec_core::geometry::*;
use uavsec_core::montecarlo::ks_statistic;
use uavsec_core::sop::{sop_uplink_exact, sop_uplink_lower};
use uavsec_core::specfun::{erf, lower_inc_gamma};
use uavsec_core::{ConstantMode, McResult, QuadratureConfig, RandomStream};

fn uplink_strategy() -> impl Strategy<Value = UplinkScenario> {
    (5.0..40.0f64, 0.05..1.0f64, 1.0..1.5f64, 2.0..4.0f64, -10.0..10.0f64, 0.1..5.0f64, 0.1..5.0f64, 0.0..2.0f64)
        .prop_map(|(b, lfrac, rfrac, n, db, g_gs, g_ge, rs_bits)| UplinkScenario {
            chord: ChordGeometry::new(b, 2.0 * b * lfrac).unwrap(),
            r_g: b * rfrac,
            n,
            lambda_g: 10f64.powf(db / 10.0),
            g_gs,
            g_ge,
            rs_bits,
        })
}

fn downlink_strategy() -> impl Strategy<Value = DownlinkScenario> {
    (5.0..50.0f64, 0.0..0.99f64, 2.0..4.0f64, -10.0..10.0f64, 0.1..5.0f64, 0.1..5.0f64, 0.0..2.0f64)
        .prop_map(|(r_s, hfrac, n, db, g_sg, g_se, rs_bits)| DownlinkScenario {
            cap: CapGeometry::new(r_s, r_s * hfrac).unwrap(),
            n,
            lambda_s: 10f64.powf(db / 10.0),
            g_sg,
            g_se,
            rs_bits,
        })
}

fn assert_cdf_shape(values: &[f64]) -> Result<(), TestCaseError> {
    for w in values.windows(2) {
        prop_assert!(w[1] >= w[0] - 1e-12, "not monotone: {:?}", values);
    }
    for &v in values {
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn volumes_partition_the_ball(r in 0.1..100.0f64, frac in 0.0..=1.0f64) {
        let v = CapGeometry::new(r, r * frac).unwrap().volumes();
        prop_assert!(((v.upper_cap + v.lower_cap) / v.sphere - 1.0).abs() < 1e-12);
        prop_assert!(v.lower_cap >= 0.0 && v.upper_cap >= v.sphere / 2.0 - 1e-9 * v.sphere);
    }

    #[test]
    fn erf_and_lower_gamma_are_monotone(a in 0.1..6.0f64, x in 0.0..20.0f64, dx in 1e-6..2.0f64) {
        prop_assert!(erf(x + dx) >= erf(x));
        prop_assert!(erf(-x) == -erf(x));
        prop_assert!(lower_inc_gamma(a, x + dx).unwrap() >= lower_inc_gamma(a, x).unwrap());
    }

    #[test]
    fn uplink_cdfs_are_distributions(sc in uplink_strategy()) {
        let cfg = QuadratureConfig::default();
        let scale = sc.lambda_g * sc.g_gs / sc.chord.b.powf(sc.n);
        let grid: Vec<f64> = (0..25).map(|i| scale * 10f64.powf(-3.0 + 0.25 * i as f64)).collect();
        let s: Vec<f64> = grid.iter().map(|&x| cdf_gamma_s(x, &sc, ConstantMode::Corrected, &cfg).unwrap()).collect();
        assert_cdf_shape(&s)?;
        let e: Vec<f64> = grid.iter().map(|&x| cdf_gamma_e_hemisphere(x, &sc).unwrap()).collect();
        assert_cdf_shape(&e)?;
    }

    #[test]
    fn downlink_cdfs_are_distributions(sc in downlink_strategy()) {
        let d = sc.derived();
        let grid: Vec<f64> = (0..25).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64) / d.c_e).collect();
        let g: Vec<f64> = grid.iter().map(|&x| cdf_gamma_g(x, &sc).unwrap()).collect();
        assert_cdf_shape(&g)?;
        let b: Vec<f64> = grid.iter().map(|&x| cdf_gamma_e_ball(x, &sc).unwrap()).collect();
        assert_cdf_shape(&b)?;
        let c: Vec<f64> = grid.iter().map(|&x| cdf_gamma_e_lower_cap(x, &sc).unwrap()).collect();
        assert_cdf_shape(&c)?;
    }

    #[test]
    fn samplers_stay_in_their_regions(seed in any::<u64>(), b in 1.0..50.0f64, lfrac in 0.01..1.0f64, frac in 0.0..1.0f64) {
        let mut rng = RandomStream::new(seed, 0).sequential();
        let chord = ChordGeometry::new(b, 2.0 * b * lfrac).unwrap();
        let cap = CapGeometry::new(b, b * frac).unwrap();
        for _ in 0..200 {
            let d = sample_chord_point(&chord, &mut rng);
            prop_assert!(d >= chord.min_distance() - 1e-9 && d <= chord.b);
            let p = sample_uniform_upper_cap(&cap, &mut rng);
            prop_assert!(p.z >= 0.0 && p.distance(&cap.center()) <= b * (1.0 + 1e-12));
            let p = sample_uniform_lower_cap(&cap, &mut rng).unwrap();
            prop_assert!(p.z <= 0.0 && p.distance(&cap.center()) <= b * (1.0 + 1e-12));
        }
    }

    #[test]
    fn mc_result_invariants(n in 1000u64..1_000_000, frac in 0.0..=1.0f64) {
        let count = (n as f64 * frac) as u64;
        let r = McResult::from_counts(count, n);
        prop_assert_eq!(r.estimate, count as f64 / n as f64);
        prop_assert!(r.half_width_95 >= 0.0);
        let (lo, hi) = r.interval_95();
        prop_assert!(lo <= r.estimate + 1e-15 && r.estimate <= hi + 1e-15);
        if count >= 30 {
            let expected = 1.959_963_984_540_054 * (r.estimate * (1.0 - r.estimate) / n as f64).sqrt();
            prop_assert!((r.half_width_95 - expected).abs() <= 1e-12 + 1e-9 * expected);
        }
    }

    #[test]
    fn ks_statistic_is_a_distance(values in prop::collection::vec(0.0..1.0f64, 1..200)) {
        let ks = ks_statistic(&values, |x| x).unwrap();
        prop_assert!(ks.statistic > 0.0 && ks.statistic <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exact_sop_dominates_lower_bound(sc in uplink_strategy()) {
        let cfg = QuadratureConfig::default();
        let lo = sop_uplink_lower(&sc, &cfg).unwrap();
        let ex = sop_uplink_exact(&sc, &cfg).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo.value));
        prop_assert!(ex.value >= lo.value - 1e-9, "{} < {}", ex.value, lo.value);
        prop_assert!(lo.error_bound >= 0.0);
    }
}
