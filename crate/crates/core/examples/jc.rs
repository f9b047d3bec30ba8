//! Critical Trotter step versus chain length from normalized infinite-time autocorrelations.
//!
//! `cargo run --release --example jc -- 8 10`

use prethermal::algebra::{dipolar, Axis, CouplingProfile, OperatorSum};
use prethermal::analysis::CriticalPoint;
use prethermal::ed::{infinite_time_corr, FloquetSolver, Method};
use prethermal::{FloquetModel, ModelKind};

fn main() -> prethermal::Result<()> {
    let mut lengths: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if lengths.is_empty() {
        lengths = vec![6, 8];
    }
    let profile = CouplingProfile::InverseCubeMinimalImage;
    let mut grid = vec![0.05];
    grid.extend((1..=30).map(|i| 0.1 * i as f64));
    let unit = |o: OperatorSum| &o * (1.0 / o.norm());
    let mut curves = vec![Vec::new(), Vec::new(), Vec::new()];
    for &len in &lengths {
        let kdm = FloquetSolver::new(&FloquetModel::with_jtau(ModelKind::Kdm, 0.0, len, profile)?, Method::Momentum)?;
        let adm = FloquetSolver::new(&FloquetModel::with_jtau(ModelKind::Adm, 0.0, len, profile)?, Method::Momentum)?;
        let dz = unit(dipolar(Axis::Z, len, profile)?);
        let (mut hk, mut d, mut ha) = (Vec::new(), Vec::new(), Vec::new());
        for &jt in &grid {
            let hbar_k = unit(FloquetModel::with_jtau(ModelKind::Kdm, jt, len, profile)?.hbar());
            let hbar_a = unit(FloquetModel::with_jtau(ModelKind::Adm, jt, len, profile)?.hbar());
            let sk = kdm.spectrum(jt)?;
            hk.push((jt, infinite_time_corr(&hbar_k, &hbar_k, &sk)?));
            d.push((jt, infinite_time_corr(&dz, &dz, &sk)?));
            ha.push((jt, infinite_time_corr(&hbar_a, &hbar_a, &adm.spectrum(jt)?)?));
        }
        for (c, v) in curves.iter_mut().zip([hk, d, ha]) {
            c.push((len as f64, v));
        }
    }
    println!("observable,L,jc_tau");
    for (label, c) in ["Hbar_KDM", "Dz_KDM", "Hbar_ADM"].iter().zip(&curves) {
        print!("{}", CriticalPoint::from_curves(label, c, 0.5)?.csv_rows());
    }
    Ok(())
}
