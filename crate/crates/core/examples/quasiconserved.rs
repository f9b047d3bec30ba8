//! Λ matrix over the local basis and its leading eigen-observables.
//!
//! `cargo run --release --example quasiconserved -- 10`

use prethermal::algebra::CouplingProfile;
use prethermal::ed::FloquetSolver;
use prethermal::ed::Method;
use prethermal::qc::{build_basis, lambda_matrix};
use prethermal::{FloquetModel, ModelKind};

fn main() -> prethermal::Result<()> {
    let len = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let basis = build_basis(len, 3)?;
    println!("basis size at L={len}, r_c=3: {}", basis.size());
    for kind in [ModelKind::Kdm, ModelKind::Adm] {
        let solver = FloquetSolver::new(
            &FloquetModel::with_jtau(kind, 0.0, len, CouplingProfile::NearestNeighbor)?,
            Method::Momentum,
        )?;
        println!("{kind}: Jτ, top three eigenvalues of Λ");
        for jtau in [0.2, 0.6, 1.0, 1.5, 2.0, 3.0] {
            let lambda = lambda_matrix(&basis, &solver.spectrum(jtau)?)?;
            let top: Vec<String> = lambda.eigenvalues.iter().take(3).map(|l| format!("{l:.4}")).collect();
            println!("  {jtau:.1}  {}", top.join("  "));
        }
        let lambda = lambda_matrix(&basis, &solver.spectrum(0.5)?)?;
        let (l1, e1) = &lambda.eigen_observables(1)?[0];
        let mut terms: Vec<_> = e1.iter().map(|(p, c)| (c.norm(), p.to_string())).collect();
        terms.sort_by(|a, b| b.0.total_cmp(&a.0));
        println!("  leading eigen-observable at Jτ=0.5 (λ={l1:.4}), largest terms:");
        for (w, p) in terms.iter().take(4) {
            println!("    {w:.4} {p}");
        }
    }
    Ok(())
}
