//! Rotated-frame expansion of the kicked model: generators S_j, dressed Hamiltonians D_j and
//! the frame quality of `e^{−S} D_pre e^{S}` against exact dynamics.
//!
//! `cargo run --release --example dpre -- 10`

use prethermal::algebra::CouplingProfile;
use prethermal::ed::{conjugated_autocorr, model_spectrum, Method};
use prethermal::expansions::dpre_expand;
use prethermal::{FloquetModel, ModelKind};

fn main() -> prethermal::Result<()> {
    let len = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let order = 5;
    for jtau in [0.2, 0.6, 1.0] {
        let model = FloquetModel::with_jtau(ModelKind::Kdm, jtau, len, CouplingProfile::NearestNeighbor)?;
        let e = dpre_expand(&model, order)?;
        let spectrum = model_spectrum(&model, Method::Momentum)?;
        println!("KDM L={len} Jτ={jtau}");
        for j in 2..=order {
            let (d, s) = e.frame(j)?;
            let d = &d * (1.0 / d.norm());
            let fidelity = conjugated_autocorr(&d, &s, &spectrum)?;
            println!(
                "  j={j}: ‖D_j‖={:.3e}, ‖S_{}‖={:.3e} range {}, frame fidelity {fidelity:.6}",
                e.d.orders[j].norm(),
                j - 1,
                e.s.orders[j - 1].norm(),
                e.s.orders[j - 1].cyclic_range()
            );
        }
    }
    Ok(())
}
