//! Floquet-Magnus series: order norms and the infidelity of truncated prethermal Hamiltonians.
//!
//! `cargo run --release --example magnus -- 10`

use prethermal::algebra::CouplingProfile;
use prethermal::ed::{infinite_time_corr, model_spectrum, Method};
use prethermal::expansions::{floquet_magnus, h_pre, omega_norms};
use prethermal::{FloquetModel, ModelKind};

fn main() -> prethermal::Result<()> {
    let len = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let base = FloquetModel::with_jtau(kind, 0.2, len, CouplingProfile::NearestNeighbor)?;
        let series = floquet_magnus(&base, 8)?;
        let norms: Vec<String> = omega_norms(&series).iter().map(|n| format!("{n:.3e}")).collect();
        println!("{kind} L={len} ‖Ω_m‖, m=0..8: {}", norms.join(" "));
        for jtau in [0.2, 0.6, 1.0] {
            let spectrum = model_spectrum(&base.with_tau(jtau)?, Method::Momentum)?;
            let row: Vec<String> = (0..=6)
                .map(|m| {
                    let h = h_pre(&series, m, jtau)?;
                    let h = &h * (1.0 / h.norm());
                    Ok(format!("{:.2e}", 1.0 - infinite_time_corr(&h, &h, &spectrum)?))
                })
                .collect::<prethermal::Result<_>>()?;
            println!("  Jτ={jtau}: 1 - ⟨H_pre⟩∞ for m=0..6: {}", row.join(" "));
        }
    }
    Ok(())
}
