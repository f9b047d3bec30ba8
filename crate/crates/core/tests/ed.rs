mod common;

use std::f64::consts::PI;

use common::*;
use ndarray::Array2;
use num_complex::Complex64 as C64;
use prethermal::algebra::{collective, dipolar, Axis, CouplingProfile, Letter, OperatorSum, PauliString};
use prethermal::ed::{
    correlation_series, correlation_values, floquet_spectrum, floquet_unitary, infinite_time_corr, model_spectrum,
    propagator, to_dense, to_dense_capped, unitarity_residual, FloquetSolver, Method, DENSE_CAP,
};
use prethermal::{Error, FloquetModel, ModelKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NN: CouplingProfile = CouplingProfile::NearestNeighbor;

fn kdm(jtau: f64, len: usize) -> FloquetModel {
    FloquetModel::with_jtau(ModelKind::Kdm, jtau, len, NN).unwrap()
}

#[test]
fn to_dense_examples() {
    assert!(fro(&to_dense(&OperatorSum::zero(3).unwrap()).unwrap()) == 0.0);
    let z = to_dense(&collective(Axis::Z, 1).unwrap()).unwrap();
    assert!(fro(&(z - spin(Letter::Z))) < 1e-15);
    let dy = to_dense(&dipolar(Axis::Y, 4, NN).unwrap()).unwrap();
    assert!(fro(&(&dy - &dagger(&dy))) < 1e-14);
    assert!(trace(&dy).norm() < 1e-14);
    let id = to_dense(&OperatorSum::identity(4).unwrap()).unwrap();
    assert!(fro(&(id - identity(16))) < 1e-15);
    assert!(matches!(to_dense(&OperatorSum::identity(DENSE_CAP + 1).unwrap()), Err(Error::DimensionCap { .. })));
    assert!(to_dense_capped(&OperatorSum::identity(5).unwrap(), 4).is_err());
}

#[test]
fn to_dense_matches_kron_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for len in 1..=5 {
        let a = random_operator(&mut rng, len, 10);
        assert!(fro(&(to_dense(&a).unwrap() - dense(&a))) < 1e-13);
    }
}

#[test]
fn propagator_examples() {
    let zero = Array2::zeros((8, 8));
    assert!(fro(&(propagator(&zero, 0.7).unwrap() - identity(8))) < 1e-14);

    let (h, tau) = (1.3, 0.4);
    let u = propagator(&(spin(Letter::Z) * c(h, 0.0)), tau).unwrap();
    assert!((u[[0, 0]] - C64::from_polar(1.0, -h * tau / 2.0)).norm() < 1e-14);
    assert!((u[[1, 1]] - C64::from_polar(1.0, h * tau / 2.0)).norm() < 1e-14);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = to_dense(&random_hermitian(&mut rng, 6, 40)).unwrap();
    let u = propagator(&h, 0.9).unwrap();
    assert!(unitarity_residual(&u) < 1e-12);
    assert!(fro(&(&u - &expm(&(&h * c(0.0, -0.9))))) < 1e-10);

    let not_hermitian = spin(Letter::X) * c(0.0, 1.0);
    assert!(matches!(propagator(&not_hermitian, 1.0), Err(Error::NotHermitian(_))));
}

#[test]
fn floquet_unitary_examples() {
    let u = floquet_unitary(&kdm(0.0, 4)).unwrap();
    assert!(fro(&(u - identity(16))) < 1e-14);

    let m = kdm(0.37, 5);
    let h1 = dense(m.h1());
    let h2 = dense(m.h2());
    let oracle = expm(&(&h2 * c(0.0, -m.tau))).dot(&expm(&(&h1 * c(0.0, -m.tau))));
    assert!(fro(&(floquet_unitary(&m).unwrap() - oracle)) < 1e-11);

    // hτ = π: e^{−iπZ} is ±1 on every parity sector of the even chain, so the two factors commute
    let m = kdm(PI, 6);
    let a = expm(&(dense(m.h2()) * c(0.0, -PI)));
    let b = expm(&(dense(m.h1()) * c(0.0, -PI)));
    assert!(fro(&(a.dot(&b) - b.dot(&a))) < 1e-12);

    // degenerate ADM-like model with H1 = H2
    let dy = dipolar(Axis::Y, 4, NN).unwrap();
    let h = dense(&dy);
    let u = propagator(&h, 0.6).unwrap().dot(&propagator(&h, 0.6).unwrap());
    assert!(fro(&(u - expm(&(&h * c(0.0, -1.2))))) < 1e-11);
}

#[test]
fn floquet_spectrum_examples() {
    let s = floquet_spectrum(&identity(4)).unwrap();
    assert!(s.phases().iter().all(|t| t.abs() < 1e-14));
    assert_eq!(s.num_clusters(), 1);

    let phi = 0.3;
    let mut u = Array2::zeros((2, 2));
    u[[0, 0]] = C64::from_polar(1.0, -phi);
    u[[1, 1]] = C64::from_polar(1.0, phi);
    let s = floquet_spectrum(&u).unwrap();
    let ph = s.phases();
    assert!((ph[0] + phi).abs() < 1e-14 && (ph[1] - phi).abs() < 1e-14);
    assert_eq!(s.num_clusters(), 2);

    let not_unitary = identity(4) * c(1.1, 0.0);
    assert!(matches!(floquet_spectrum(&not_unitary), Err(Error::NotUnitary(_))));
}

#[test]
fn dense_spectrum_reconstructs_and_diagonalizes() {
    let u = floquet_unitary(&kdm(0.8, 8)).unwrap();
    let s = floquet_spectrum(&u).unwrap();
    assert!(fro(&(s.reconstruct_block(0) - &u)) < 1e-9);
    let blk = &s.blocks[0];
    assert!(fro(&(dagger(&blk.vectors).dot(&blk.vectors) - identity(256))) < 1e-10);
    let uv = u.dot(&blk.vectors);
    for (a, &t) in blk.phases.iter().enumerate() {
        let residual: f64 =
            (0..256).map(|i| (uv[[i, a]] - blk.vectors[[i, a]] * C64::from_polar(1.0, -t)).norm_sqr()).sum();
        assert!(residual.sqrt() < 1e-10);
    }
    for (t0, t1) in blk.phases.iter().zip(&blk.phases[1..]) {
        assert!(t0 <= t1 && *t0 > -PI - 1e-15 && *t1 <= PI);
    }
}

#[test]
fn momentum_blocks_reconstruct_at_twelve_sites() {
    let m = FloquetModel::with_jtau(ModelKind::Adm, 1.1, 12, NN).unwrap();
    let solver = FloquetSolver::new(&m, Method::Momentum).unwrap();
    let s = solver.spectrum(m.tau).unwrap();
    assert_eq!(s.dim(), 4096);
    for b in 0..s.blocks.len() {
        let blk = &s.blocks[b];
        let n = blk.phases.len();
        assert!(fro(&(s.reconstruct_block(b) - solver.block_unitary(b, m.tau))) < 1e-9);
        assert!(fro(&(dagger(&blk.vectors).dot(&blk.vectors) - identity(n))) < 1e-10);
    }
}

#[test]
fn momentum_and_dense_agree() {
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let m = FloquetModel::with_jtau(kind, 1.3, 8, NN).unwrap();
        let dense_s = model_spectrum(&m, Method::Dense).unwrap();
        let mom = model_spectrum(&m, Method::Momentum).unwrap();
        let (a, b) = (dense_s.phases(), mom.phases());
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
        for (o, o2) in [(Axis::Z, Axis::Z), (Axis::X, Axis::X), (Axis::Z, Axis::Y)] {
            let (o, o2) = (collective(o, 8).unwrap(), collective(o2, 8).unwrap());
            let lhs = infinite_time_corr(&o, &o2, &dense_s).unwrap();
            let rhs = infinite_time_corr(&o, &o2, &mom).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
            let va = correlation_values(&o, &o2, &dense_s, 30).unwrap();
            let vb = correlation_values(&o, &o2, &mom, 30).unwrap();
            assert!(va.iter().zip(&vb).all(|(x, y)| (x - y).norm() < 1e-10));
        }
    }
}

#[test]
fn correlation_series_examples() {
    let z = collective(Axis::Z, 8).unwrap();
    let x = collective(Axis::X, 8).unwrap();
    let m = kdm(0.5, 8);
    let zz = correlation_series(&z, &z, &m, 300).unwrap();
    assert!((zz[0] - 1.0).abs() < 1e-12);
    let xx = correlation_series(&x, &x, &m, 300).unwrap();
    // X precesses about z, so ⟨X(n)X⟩ changes sign and its envelope shrinks
    assert!(xx[..20].iter().any(|&v| v < -0.3));
    let early = xx[..20].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let late = xx[250..].iter().map(|v| v.abs()).fold(0.0, f64::max);
    assert!(late < 0.5 * early);
    let late_zz: f64 = zz[200..].iter().sum::<f64>() / 101.0;
    assert!(late_zz > 0.2);

    let zero = OperatorSum::zero(8).unwrap();
    assert!(correlation_series(&zero, &z, &m, 3).is_err());
}

#[test]
fn correlations_start_at_the_inner_product_and_are_real() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = kdm(0.9, 6);
    let s = model_spectrum(&m, Method::Dense).unwrap();
    for _ in 0..5 {
        let o = random_hermitian(&mut rng, 6, 8);
        let o2 = random_hermitian(&mut rng, 6, 8);
        let v = correlation_values(&o, &o2, &s, 50).unwrap();
        assert!((v[0] - o.inner_product(&o2).unwrap()).norm() < 1e-12);
        assert!(v.iter().all(|z| z.im.abs() < 1e-10));
    }
}

#[test]
fn conserved_observable_has_unit_infinite_time_average() {
    // at hτ = π the kick is trivial on the parity sectors, and D_y commutes with H1
    let m = kdm(PI, 6);
    let s = model_spectrum(&m, Method::Dense).unwrap();
    let dy = dipolar(Axis::Y, 6, NN).unwrap();
    assert!((infinite_time_corr(&dy, &dy, &s).unwrap() - 1.0).abs() < 1e-10);

    let p = PauliString::from_letters(&[Letter::Z; 6]).unwrap();
    let parity = OperatorSum::from_string(p, c(1.0, 0.0));
    let s = model_spectrum(&kdm(1.7, 6), Method::Dense).unwrap();
    assert!((infinite_time_corr(&parity, &parity, &s).unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn diagonal_ensemble_matches_long_time_average() {
    for jtau in [0.5, 2.0] {
        let m = kdm(jtau, 8);
        let u = floquet_unitary(&m).unwrap();
        let z = collective(Axis::Z, 8).unwrap();
        let zd = dense(&z);
        let oracle = long_time_average(&u, &zd, &zd, 10_000);
        let s = floquet_spectrum(&u).unwrap();
        let value = infinite_time_corr(&z, &z, &s).unwrap();
        assert!((value - oracle).abs() < 0.01, "jtau {jtau}: {value} vs {oracle}");
    }
}

#[test]
fn z_plateau_is_size_independent() {
    let z8 = collective(Axis::Z, 8).unwrap();
    let z12 = collective(Axis::Z, 12).unwrap();
    let p8 = infinite_time_corr(&z8, &z8, &model_spectrum(&kdm(0.5, 8), Method::Momentum).unwrap()).unwrap();
    let p12 = infinite_time_corr(&z12, &z12, &model_spectrum(&kdm(0.5, 12), Method::Momentum).unwrap()).unwrap();
    assert!(p8 > 0.2 && p12 > 0.2);
    assert!((p8 - p12).abs() < 0.05, "{p8} vs {p12}");
}
