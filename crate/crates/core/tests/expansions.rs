mod common;

use common::*;
use num_complex::Complex64 as C64;
use prethermal::algebra::{collective, dipolar, Axis, CouplingProfile, CyclicSum, OperatorSum};
use prethermal::ed::{infinite_time_corr, model_spectrum, propagator, to_dense, Method};
use prethermal::expansions::{
    bch, conjugate_series, dpre_expand, floquet_magnus, h_pre, omega_norms, Series, SeriesOperator, SeriesParam,
    MAX_MAGNUS_ORDER,
};
use prethermal::{FloquetModel, ModelKind};

const NN: CouplingProfile = CouplingProfile::NearestNeighbor;

fn model(kind: ModelKind, jtau: f64, len: usize) -> FloquetModel {
    FloquetModel::with_jtau(kind, jtau, len, NN).unwrap()
}

fn i() -> C64 {
    c(0.0, 1.0)
}

#[test]
fn zeroth_order_is_the_average_hamiltonian() {
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let m = model(kind, 0.3, 6);
        let s = floquet_magnus(&m, 3).unwrap();
        assert_eq!(s.param, SeriesParam::Tau);
        assert!((&s.orders[0] - &m.hbar()).norm() < 1e-14);
        assert!((&h_pre(&s, 0, 0.3).unwrap() - &m.hbar()).norm() < 1e-14);
        assert!(s.orders.iter().all(|o| o.is_hermitian(1e-12)));
    }
    assert!(floquet_magnus(&model(ModelKind::Kdm, 0.3, 6), MAX_MAGNUS_ORDER + 1).is_err());
}

#[test]
fn commuting_factors_truncate_at_zeroth_order() {
    // h = 0 leaves a single drive
    let m = FloquetModel::new(ModelKind::Kdm, 1.0, 0.0, 0.4, 6, NN).unwrap();
    let s = floquet_magnus(&m, 4).unwrap();
    assert!((&s.orders[0] - m.h1()).norm() < 1e-14);
    assert!(s.orders[1..].iter().all(OperatorSum::is_zero));

    // log(e^X e^X) = 2X
    let x = CyclicSum::from_operator_sum(&(&dipolar(Axis::Y, 6, NN).unwrap() * c(0.0, -1.0))).unwrap();
    let sx = Series::monomial(x.clone(), 1, 5);
    let z = bch(&sx, &sx, 5).unwrap();
    assert!((&z.coeff(1).to_operator_sum() - &(&x.to_operator_sum() * 2.0)).norm() < 1e-14);
    assert!((2..=5).all(|k| z.coeff(k).is_zero()));
}

#[test]
fn magnus_matches_formal_exp_log_oracle() {
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let m = model(kind, 0.5, 4);
        let order = 5;
        let series = floquet_magnus(&m, order - 1).unwrap();
        let oracle = formal_log_of_product(&(m.h2() * c(0.0, -1.0)), &(m.h1() * c(0.0, -1.0)), order);
        for (k, om) in series.orders.iter().enumerate() {
            // log U_F = −iτ Σ τ^m Ω_m puts Ω_m at τ^{m+1}
            let expected = &oracle[k + 1] * i();
            assert!((om - &expected).norm() < 1e-11, "{kind:?} order {k}");
        }
    }
}

#[test]
fn magnus_is_tau_independent_and_truncation_is_consistent() {
    let a = floquet_magnus(&model(ModelKind::Kdm, 0.1, 6), 5).unwrap();
    let b = floquet_magnus(&model(ModelKind::Kdm, 2.0, 6), 3).unwrap();
    for k in 0..=3 {
        assert!((&a.orders[k] - &b.orders[k]).norm() < 1e-13);
    }
    assert_eq!(omega_norms(&a).len(), 6);
    let zero = SeriesOperator { param: SeriesParam::Tau, orders: vec![OperatorSum::zero(4).unwrap(); 3] };
    assert_eq!(omega_norms(&zero), vec![0.0; 3]);
    let h = h_pre(&a, 2, 0.7).unwrap();
    let by_hand = &(&a.orders[0] + &(&a.orders[1] * 0.7)) + &(&a.orders[2] * 0.49);
    assert!((&h - &by_hand).norm() < 1e-14);
    assert!(h_pre(&a, 6, 0.7).is_err());
}

#[test]
fn first_order_magnus_error_is_cubic() {
    let len = 4;
    let taus = [0.025, 0.05, 0.1];
    let series = floquet_magnus(&model(ModelKind::Kdm, 0.1, len), 2).unwrap();
    let err = |tau: f64| {
        let m = model(ModelKind::Kdm, tau, len);
        let u = expm(&(dense(m.h2()) * c(0.0, -tau))).dot(&expm(&(dense(m.h1()) * c(0.0, -tau))));
        let approx = expm(&(dense(&h_pre(&series, 1, tau).unwrap()) * c(0.0, -tau)));
        spectral_norm(&(u - approx))
    };
    let e: Vec<f64> = taus.iter().map(|&t| err(t)).collect();
    for w in e.windows(2) {
        let slope = (w[1] / w[0]).log2();
        assert!((slope - 3.0).abs() < 0.2, "slope {slope}");
    }
}

#[test]
fn magnus_locality_bound() {
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let s = floquet_magnus(&model(kind, 0.5, 12), 6).unwrap();
        for (m, om) in s.orders.iter().enumerate() {
            assert!(om.cyclic_range() <= m + 2, "{kind:?} m={m}: {}", om.cyclic_range());
            assert!(om.is_translation_invariant(1e-12));
        }
    }
}

#[test]
fn rotated_frame_low_orders() {
    let len = 8;
    let m = model(ModelKind::Kdm, 0.4, len);
    let tau = m.tau;
    let e = dpre_expand(&m, 4).unwrap();
    assert_eq!(e.j_max(), 4);
    assert_eq!(e.s.param, SeriesParam::Epsilon);
    assert!(e.h[1].is_zero());
    assert!((&e.h[2] - &(m.h1() * c(0.0, -tau))).norm() < 1e-14);

    let z = collective(Axis::Z, len).unwrap();
    let s1 = &e.s.orders[1];
    let h2 = &e.h[2];
    let c1 = &z * c(0.0, m.h * tau);
    let inner = &s1.commutator(&s1.commutator(&(&z * -1.0)).unwrap()).unwrap()
        + &z.commutator(&c1.commutator(s1).unwrap()).unwrap();
    let h3 = &s1.commutator(h2).unwrap() + &(&inner * c(0.0, m.h * tau / 2.0));
    assert!((&e.h[3] - &h3).norm() < 1e-12 * (1.0 + h3.norm()));

    let dz = dipolar(Axis::Z, len, NN).unwrap();
    assert!(e.d.orders[1].is_zero());
    assert!((&e.d.orders[2] - &(&dz * -0.5)).norm() < 1e-12);
    assert!((&e.d_pre(2).unwrap() - &(&dz * -0.5)).norm() < 1e-12);
    let unit = e.d_pre_normalized(2).unwrap();
    assert!((unit.norm() - 1.0).abs() < 1e-13);
    assert!(e.d_pre(5).is_err());
}

#[test]
fn assignment_cancels_off_diagonal_coherences() {
    let len = 8;
    let m = model(ModelKind::Kdm, 0.6, len);
    let e = dpre_expand(&m, 5).unwrap();
    let z = collective(Axis::Z, len).unwrap();
    let kick = &z * c(0.0, -m.h * m.tau);
    for j in 2..=5 {
        // −iτ D_j = [S_{j−1}, −ihZτ] + h_j
        let lhs = &e.d.orders[j] * c(0.0, -m.tau);
        let rhs = &e.s.orders[j - 1].commutator(&kick).unwrap() + &e.h[j];
        assert!((&lhs - &rhs).norm() < 1e-11 * (1.0 + rhs.norm()), "j={j}");
    }
}

#[test]
fn rotated_frame_structure_to_seventh_order() {
    let len = 12;
    let m = model(ModelKind::Kdm, 0.8, len);
    let e = dpre_expand(&m, 7).unwrap();
    let z = collective(Axis::Z, len).unwrap();
    for (j, dj) in e.d.orders.iter().enumerate() {
        assert!(dj.is_hermitian(1e-12));
        assert!(z.commutator(dj).unwrap().norm() < 1e-12, "D_{j}");
    }
    for (j, sj) in e.s.orders.iter().enumerate().skip(1) {
        assert!(sj.hermitian_residual() < 1e-12);
        assert!(sj.cyclic_range() <= j + 1, "S_{j}: range {}", sj.cyclic_range());
    }
    assert!(dpre_expand(&model(ModelKind::Adm, 0.8, len), 3).is_err());
    assert!(dpre_expand(&FloquetModel::new(ModelKind::Kdm, 1.0, 0.0, 0.5, len, NN).unwrap(), 3).is_err());
    assert!(dpre_expand(&m, 9).is_err());
}

#[test]
fn conjugation_examples() {
    let len = 4;
    let a = dipolar(Axis::Z, len, NN).unwrap();
    let zero = SeriesOperator { param: SeriesParam::Epsilon, orders: vec![OperatorSum::zero(len).unwrap(); 3] };
    assert!((&conjugate_series(&a, &zero, 2).unwrap() - &a).norm() < 1e-15);

    let e = dpre_expand(&model(ModelKind::Kdm, 0.5, len), 3).unwrap();
    let s1 = &e.s.orders[1];
    let (ad, sd) = (to_dense(&a).unwrap(), to_dense(s1).unwrap());
    let err = |eps: f64| {
        let s = SeriesOperator { param: SeriesParam::Epsilon, orders: vec![OperatorSum::zero(len).unwrap(), s1 * eps] };
        let approx = dense(&conjugate_series(&a, &s, 1).unwrap());
        assert!((&conjugate_series(&a, &s, 1).unwrap() - &(&a + &a.commutator(&(s1 * eps)).unwrap())).norm() < 1e-13);
        let u = expm(&(&sd * c(eps, 0.0)));
        let exact = expm(&(&sd * c(-eps, 0.0))).dot(&ad).dot(&u);
        fro(&(exact - approx))
    };
    let (e1, e2) = (err(0.01), err(0.02));
    assert!(((e2 / e1).log2() - 2.0).abs() < 0.1);

    // the generator is anti-Hermitian, so e^{S} is unitary
    let u = propagator(&(&sd * c(0.0, 1.0)), 1.0).unwrap();
    assert!(fro(&(u - expm(&sd))) < 1e-12);
}

#[test]
fn z_pre_overlaps_the_prethermal_hamiltonian() {
    let len = 10;
    let jtau = 0.3;
    let m = model(ModelKind::Kdm, jtau, len);
    let e = dpre_expand(&m, 5).unwrap();
    let zp = e.z_pre(5).unwrap();
    let zp = &zp * (1.0 / zp.norm());
    let hp = h_pre(&floquet_magnus(&m, 5).unwrap(), 5, jtau).unwrap();
    let hp = &hp * (1.0 / hp.norm());
    let dp = e.d_pre_normalized(5).unwrap();
    assert!(zp.inner_product(&hp).unwrap().re.abs() > 0.5);
    assert!(dp.inner_product(&hp).unwrap().re.abs() < zp.inner_product(&hp).unwrap().re.abs());
    let s = model_spectrum(&m, Method::Momentum).unwrap();
    assert!(infinite_time_corr(&zp, &zp, &s).unwrap() > 0.9);
}

#[test]
fn higher_magnus_orders_improve_conservation() {
    let len = 12;
    let jtau = 0.2;
    let m = model(ModelKind::Kdm, jtau, len);
    let s = model_spectrum(&m, Method::Momentum).unwrap();
    let series = floquet_magnus(&m, 7).unwrap();
    let infid: Vec<f64> = (0..=7)
        .map(|k| {
            let h = h_pre(&series, k, jtau).unwrap();
            1.0 - infinite_time_corr(&h, &h, &s).unwrap()
        })
        .collect();
    assert!(infid[1] < infid[0]);
    for w in infid[1..].windows(2) {
        assert!(w[1] <= w[0] + 1e-3, "{infid:?}");
    }
}

#[test]
fn frame_operators_are_consistent() {
    let len = 8;
    let e = dpre_expand(&model(ModelKind::Kdm, 0.7, len), 6).unwrap();
    let (d, s) = e.frame(6).unwrap();
    let sum_d = e.d.orders[..=6].iter().fold(OperatorSum::zero(len).unwrap(), |acc, x| &acc + x);
    let sum_s = e.s.orders[..6].iter().fold(OperatorSum::zero(len).unwrap(), |acc, x| &acc + x);
    assert!((&d - &sum_d).norm() < 1e-13);
    assert!((&s - &sum_s).norm() < 1e-13);
    let terms = e.d_pre_terms(6).unwrap();
    let total = terms.iter().fold(OperatorSum::zero(len).unwrap(), |acc, x| &acc + x);
    assert!((&total - &e.d_pre(6).unwrap()).norm() < 1e-12);
}
