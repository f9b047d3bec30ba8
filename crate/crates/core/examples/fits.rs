//! Decay-rate and Arrhenius fits on synthetic data.

use prethermal::analysis::{fit_arrhenius, fit_exponential_decay, DEFAULT_DECAY_WINDOW};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> prethermal::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let noise = Normal::new(0.0, 0.002).unwrap();
    let series: Vec<f64> = (0..100).map(|n| 0.9 * (-0.04 * n as f64).exp() * (1.0 + noise.sample(&mut rng))).collect();
    let decay = fit_exponential_decay(&series, DEFAULT_DECAY_WINDOW)?;
    print!("exponential decay, true γ=0.04 A=0.9\n{}", decay.to_csv());

    let noise = Normal::new(0.0, 0.01).unwrap();
    let points: Vec<(f64, f64)> = (0..40)
        .map(|i| {
            let x = 0.5 + 5.5 * i as f64 / 39.0;
            (x, (1.5 * (-2.5 / x).exp() + 0.2) * (1.0 + noise.sample(&mut rng)))
        })
        .collect();
    let arrhenius = fit_arrhenius(&points)?;
    print!("arrhenius, true a=1.5 b=2.5 c=0.2\n{}", arrhenius.to_csv());
    Ok(())
}
