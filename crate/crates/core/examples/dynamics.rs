//! Stroboscopic autocorrelations of the collective fields in the kicked dipolar model.
//!
//! `cargo run --release --example dynamics -- 10`

use prethermal::algebra::{collective, Axis, CouplingProfile};
use prethermal::ed::{correlation_values, infinite_time_corr, model_spectrum, Method};
use prethermal::{FloquetModel, ModelKind};

fn main() -> prethermal::Result<()> {
    let len = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    for jtau in [0.5, 2.0] {
        let model = FloquetModel::with_jtau(ModelKind::Kdm, jtau, len, CouplingProfile::NearestNeighbor)?;
        let spectrum = model_spectrum(&model, Method::Momentum)?;
        println!("KDM L={len} Jτ={jtau}: {} quasienergy clusters", spectrum.num_clusters());
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let o = collective(axis, len)?;
            let series = correlation_values(&o, &o, &spectrum, 200)?;
            let samples: Vec<String> = [0, 1, 10, 100, 200].iter().map(|&n| format!("{:.4}", series[n].re)).collect();
            let plateau = infinite_time_corr(&o, &o, &spectrum)?;
            println!("  {axis:?}: n=0,1,10,100,200 -> [{}], n→∞ {plateau:.4}", samples.join(", "));
        }
    }
    Ok(())
}
