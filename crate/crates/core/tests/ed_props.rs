mod common;

use common::*;
use prethermal::algebra::{Axis, CouplingProfile, OperatorSum};
use prethermal::ed::{
    correlation_values, floquet_unitary, infinite_time_corr, model_spectrum, propagator, to_dense, unitarity_residual,
    Method,
};
use prethermal::{FloquetModel, ModelKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind() -> impl Strategy<Value = ModelKind> {
    prop_oneof![Just(ModelKind::Kdm), Just(ModelKind::Adm)]
}

fn profile() -> impl Strategy<Value = CouplingProfile> {
    prop_oneof![Just(CouplingProfile::NearestNeighbor), Just(CouplingProfile::InverseCubeMinimalImage)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn propagators_are_unitary(len in 2usize..=6, seed in 0u64..10_000, t in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = to_dense(&random_hermitian(&mut rng, len, 12)).unwrap();
        prop_assert!(unitarity_residual(&propagator(&h, t).unwrap()) < 1e-12);
    }

    #[test]
    fn floquet_maps_are_unitary(k in kind(), p in profile(), len in 2usize..=7, jtau in 0.0f64..3.5) {
        let m = FloquetModel::with_jtau(k, jtau, len, p).unwrap();
        prop_assert!(unitarity_residual(&floquet_unitary(&m).unwrap()) < 1e-12);
    }

    #[test]
    fn autocorrelation_bounds(k in kind(), len in 3usize..=6, jtau in 0.05f64..3.0, seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = FloquetModel::with_jtau(k, jtau, len, CouplingProfile::NearestNeighbor).unwrap();
        let s = model_spectrum(&m, Method::Dense).unwrap();
        let o = random_hermitian(&mut rng, len, 6);
        let o2 = random_hermitian(&mut rng, len, 6);
        let v = infinite_time_corr(&o, &o, &s).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        let series = correlation_values(&o, &o2, &s, 40).unwrap();
        prop_assert!(series.iter().all(|z| z.im.abs() < 1e-10));
        prop_assert!((series[0] - o.inner_product(&o2).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn diagonal_ensemble_is_the_long_time_average(k in kind(), len in 3usize..=6, jtau in 0.1f64..3.0, seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = FloquetModel::with_jtau(k, jtau, len, CouplingProfile::NearestNeighbor).unwrap();
        let u = floquet_unitary(&m).unwrap();
        let o = random_hermitian(&mut rng, len, 6);
        let o2 = if seed % 2 == 0 { o.clone() } else { random_hermitian(&mut rng, len, 6) };
        let s = model_spectrum(&m, Method::Dense).unwrap();
        let value = infinite_time_corr(&o, &o2, &s).unwrap();
        let oracle = long_time_average(&u, &dense(&o), &dense(&o2), 10_000);
        prop_assert!((value - oracle).abs() < 0.01, "{} vs {}", value, oracle);
    }
}

#[test]
fn collective_fields_average_within_unit_interval() {
    for jtau in [0.3, 1.0, 2.2] {
        let m = FloquetModel::with_jtau(ModelKind::Kdm, jtau, 6, CouplingProfile::NearestNeighbor).unwrap();
        let s = model_spectrum(&m, Method::Momentum).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let o = prethermal::algebra::collective(axis, 6).unwrap();
            let v = infinite_time_corr(&o, &o, &s).unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&v));
        }
        let id = OperatorSum::identity(6).unwrap();
        assert!((infinite_time_corr(&id, &id, &s).unwrap() - 1.0).abs() < 1e-10);
    }
}
