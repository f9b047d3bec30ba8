use prethermal::analysis::{
    critical_jtau, fit_arrhenius, fit_exponential_decay, normalize_to_first, CriticalPoint, Crossing,
    DEFAULT_DECAY_WINDOW,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn curve() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01f64..0.5, 0.0f64..1.2), 2..30).prop_map(|steps| {
        let mut x = 0.0;
        steps
            .into_iter()
            .map(|(dx, v)| {
                x += dx;
                (x, v)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn crossing_is_scale_homogeneous(c in curve(), t in 0.05f64..1.0, k in 0.01f64..100.0) {
        let scaled: Vec<(f64, f64)> = c.iter().map(|&(x, v)| (x, k * v)).collect();
        let a = critical_jtau(&c, t).unwrap();
        let b = critical_jtau(&scaled, k * t).unwrap();
        match (a, b) {
            (Crossing::At(x), Crossing::At(y)) => prop_assert!((x - y).abs() < 1e-9 * (1.0 + x.abs())),
            (Crossing::NoCrossing, Crossing::NoCrossing) => {}
            _ => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn crossing_lies_in_the_grid(c in curve(), t in 0.05f64..1.0) {
        if let Crossing::At(x) = critical_jtau(&c, t).unwrap() {
            prop_assert!(x >= c[0].0 && x <= c[c.len() - 1].0);
            let normalized = normalize_to_first(&c);
            prop_assert!(normalized.is_ok() || c[0].1 == 0.0);
        }
    }

    #[test]
    fn decay_fit_is_exact_on_clean_data(gamma in 0.001f64..0.2, amp in 0.1f64..2.0) {
        let v: Vec<f64> = (0..100).map(|n| amp * (-gamma * n as f64).exp()).collect();
        let fit = fit_exponential_decay(&v, DEFAULT_DECAY_WINDOW).unwrap();
        prop_assert!((fit.get("gamma").unwrap() / gamma - 1.0).abs() < 1e-9);
        prop_assert!((fit.get("A").unwrap() / amp - 1.0).abs() < 1e-9);
        prop_assert!(fit.residual_norm.is_finite());
        prop_assert!(fit.std_errors.iter().all(|&e| e >= 0.0));
    }

    #[test]
    fn arrhenius_fit_is_exact_on_clean_data(a in 0.5f64..5.0, b in 1.0f64..6.0, c in 0.0f64..0.05) {
        let pts: Vec<(f64, f64)> = (0..30).map(|i| {
            let x = 0.5 + 0.2 * i as f64;
            (x, a * (-b / x).exp() + c)
        }).collect();
        let fit = fit_arrhenius(&pts).unwrap();
        prop_assert!((fit.get("a").unwrap() / a - 1.0).abs() < 1e-4);
        prop_assert!((fit.get("b").unwrap() / b - 1.0).abs() < 1e-4);
        prop_assert!((fit.get("c").unwrap() - c).abs() < 1e-5);
        prop_assert!(fit.std_errors.iter().all(|&e| e >= 0.0 && e.is_finite()));
    }
}

#[test]
fn noisy_decay_recovers_rate() {
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, 0.002).unwrap();
        let gamma = 0.03;
        let v: Vec<f64> = (0..100).map(|n| 0.8 * (-gamma * n as f64).exp() * (1.0 + noise.sample(&mut rng))).collect();
        let fit = fit_exponential_decay(&v, DEFAULT_DECAY_WINDOW).unwrap();
        assert!((fit.get("gamma").unwrap() / gamma - 1.0).abs() < 0.01);
    }
}

#[test]
fn fit_errors() {
    assert!(fit_exponential_decay(&[1.0; 10], DEFAULT_DECAY_WINDOW).is_err());
    assert!(fit_exponential_decay(&[1.0, 0.5, -0.1, 0.01], (0, 3)).is_err());
    assert!(fit_arrhenius(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).is_err());
    assert!(fit_arrhenius(&[(0.0, 1.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).is_err());
    assert!(normalize_to_first(&[]).is_err());
}

#[test]
fn fit_to_csv_layout() {
    let v: Vec<f64> = (0..80).map(|n| (-0.1 * n as f64).exp()).collect();
    let csv = fit_exponential_decay(&v, DEFAULT_DECAY_WINDOW).unwrap().to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "parameter,value,std_error");
    assert!(lines[1].starts_with("gamma,"));
    assert!(lines[2].starts_with("A,"));
    assert!(lines.iter().any(|l| l.starts_with("residual_norm,")));
}

#[test]
fn critical_points_over_sizes() {
    let curve = |shift: f64| {
        (0..20)
            .map(|i| {
                let x = 0.1 * (i + 1) as f64;
                (x, 2.0 / (1.0 + ((x - shift) * 4.0).exp()))
            })
            .collect::<Vec<_>>()
    };
    let cp = CriticalPoint::from_curves("demo", &[(8.0, curve(1.5)), (10.0, curve(1.2))], 0.5).unwrap();
    let jc: Vec<f64> = cp.jc_tau.iter().map(|c| c.value().unwrap()).collect();
    assert!(jc[0] > jc[1]);
    assert!((cp.reference[0] - curve(1.5)[0].1).abs() < 1e-15);
    let rows = cp.csv_rows();
    assert!(rows.starts_with("demo,8.0,"));
    assert_eq!(format!("{}", Crossing::NoCrossing), "no-crossing");
}
