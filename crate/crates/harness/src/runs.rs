//! The four sweeps. Each returns its files in memory; [`crate::cache::execute`] persists them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use prethermal::algebra::{dipolar, Axis, CouplingProfile, OperatorSum};
use prethermal::analysis::CriticalPoint;
use prethermal::ed::{eigenbasis_correlation, infinite_time_corr, CorrelationSeries, FloquetSolver, Method};
use prethermal::expansions::{dpre_expand, floquet_magnus, h_pre, omega_norms, MAX_DPRE_ORDER};
use prethermal::qc::{build_basis, lambda_matrix};
use prethermal::{FloquetModel, ModelKind};
use rayon::prelude::*;

use crate::cache::Outputs;
use crate::config::SweepConfig;
use crate::error::{HarnessError, Result};
use crate::observables::{ObservableSpec, Resolved, Resolver};

/// Shortest round-trip decimal.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn dynamics_file_name(kind: ModelKind, len: usize, jtau: f64, left: &str, right: &str) -> String {
    format!("{kind}_L{len}_jtau{}_{left}_{right}.csv", fmt_f64(jtau))
}

fn pool(cfg: &SweepConfig) -> Result<rayon::ThreadPool> {
    let n = cfg.workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| HarnessError::Config(format!("worker pool: {e}")))
}

/// One cached solver per chain length; `J = h = 1`, so `τ = Jτ`.
fn solvers(kind: ModelKind, lengths: &[usize], profile: CouplingProfile) -> Result<Vec<(usize, FloquetSolver)>> {
    lengths
        .par_iter()
        .map(|&len| {
            let model = FloquetModel::with_jtau(kind, 0.0, len, profile)?;
            Ok((len, FloquetSolver::new(&model, Method::Momentum)?))
        })
        .collect()
}

/// Every `(length, jτ)` pair in sweep order.
fn grid_tasks<'a>(solvers: &'a [(usize, FloquetSolver)], grid: &[f64]) -> Vec<(usize, &'a FloquetSolver, f64)> {
    solvers.iter().flat_map(|(len, s)| grid.iter().map(move |&jt| (*len, s, jt))).collect()
}

pub fn run_dynamics(cfg: &SweepConfig) -> Result<Outputs> {
    let kind = cfg.kind()?;
    let profile = cfg.profile()?;
    let grid = cfg.jtau_values()?;
    let pairs = cfg.pairs()?;
    let pool = pool(cfg)?;
    pool.install(|| {
        let solvers = solvers(kind, &cfg.lengths, profile)?;
        let parts = grid_tasks(&solvers, &grid)
            .into_par_iter()
            .map(|(len, solver, jt)| {
                let model = FloquetModel::with_jtau(kind, jt, len, profile)?;
                let spectrum = solver.spectrum(jt)?;
                let mut resolver = Resolver::new(&model, &spectrum, cfg.r_c);
                let mut out = Outputs::default();
                for p in &pairs {
                    let a = resolver.resolve(p.left)?.eigenbasis(&spectrum)?;
                    let b = resolver.resolve(p.right)?.eigenbasis(&spectrum)?;
                    let values =
                        eigenbasis_correlation(&a, &b, &spectrum, cfg.n_max)?.into_iter().map(|z| z.re).collect();
                    let series = CorrelationSeries {
                        model: kind.to_string(),
                        left: p.left.to_string(),
                        right: p.right.to_string(),
                        values,
                    };
                    let name = dynamics_file_name(kind, len, jt, &series.left, &series.right);
                    out.insert(name, series.to_csv());
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut all = Outputs::default();
        parts.into_iter().for_each(|p| all.extend(p));
        Ok(all)
    })
}

fn contains(values: &[f64], x: f64) -> bool {
    values.iter().any(|v| (v - x).abs() < 1e-9)
}

pub fn run_spectrum(cfg: &SweepConfig) -> Result<Outputs> {
    let kind = cfg.kind()?;
    let profile = cfg.profile()?;
    let grid = cfg.jtau_values()?;
    let mut points = grid.clone();
    for &d in &cfg.dump_jtau {
        if !contains(&points, d) {
            points.push(d);
        }
    }
    points.sort_by(f64::total_cmp);
    let pool = pool(cfg)?;
    pool.install(|| {
        let bases =
            cfg.lengths.iter().map(|&l| Ok((l, build_basis(l, cfg.r_c)?))).collect::<Result<BTreeMap<_, _>>>()?;
        let solvers = solvers(kind, &cfg.lengths, profile)?;
        let rows = grid_tasks(&solvers, &points)
            .into_par_iter()
            .map(|(len, solver, jt)| {
                let lambda = lambda_matrix(&bases[&len], &solver.spectrum(jt)?)?;
                let mut dumps = Outputs::default();
                if contains(&cfg.dump_jtau, jt) {
                    for (k, (_, op)) in lambda.eigen_observables(cfg.top_k)?.into_iter().enumerate() {
                        dumps.insert(format!("{kind}_L{len}_jtau{}_eigen{}.txt", fmt_f64(jt), k + 1), op.to_text());
                    }
                }
                let top: Vec<f64> = lambda.eigenvalues.iter().take(cfg.top_k).copied().collect();
                Ok((len, jt, top, dumps))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Outputs::default();
        let mut tables: BTreeMap<usize, String> = BTreeMap::new();
        for (len, jt, top, dumps) in rows {
            out.extend(dumps);
            if !contains(&grid, jt) {
                continue;
            }
            let t = tables.entry(len).or_insert_with(|| {
                let mut h = String::from("jtau");
                for k in 1..=cfg.top_k {
                    let _ = write!(h, ",lambda_{k}");
                }
                h.push('\n');
                h
            });
            t.push_str(&fmt_f64(jt));
            for v in top {
                let _ = write!(t, ",{}", fmt_f64(v));
            }
            t.push('\n');
        }
        for (len, t) in tables {
            out.insert(format!("{kind}_L{len}_spectrum.csv"), t);
        }
        Ok(out)
    })
}

fn norm_csv(norms: &[f64]) -> String {
    let mut s = String::from("m,norm_normalized\n");
    for (m, v) in norms.iter().enumerate() {
        let _ = writeln!(s, "{m},{}", fmt_f64(*v));
    }
    s
}

fn normalized_norm(a: &OperatorSum) -> f64 {
    a.normalized_norm()
}

struct ExpansionPoint {
    len: usize,
    jt: f64,
    /// fidelity of `H_pre` at orders `0..=max`
    hpre: Vec<f64>,
    /// fidelity of `D_pre` at orders `2..=max`, KDM only
    dpre: Vec<(usize, f64)>,
    dpre_norms: Vec<f64>,
    dumps: Outputs,
}

pub fn run_expansions(cfg: &SweepConfig) -> Result<Outputs> {
    let kind = cfg.kind()?;
    let profile = cfg.profile()?;
    let grid = cfg.jtau_values()?;
    let max = cfg.max_order();
    let kicked = kind == ModelKind::Kdm;
    let d_order = max.clamp(2, MAX_DPRE_ORDER);
    let pool = pool(cfg)?;
    pool.install(|| {
        let mut out = Outputs::default();
        let mut series = BTreeMap::new();
        for &len in &cfg.lengths {
            let magnus = floquet_magnus(&FloquetModel::with_jtau(kind, 0.0, len, profile)?, max)?;
            out.insert(format!("{kind}_L{len}_magnus_norms.csv"), norm_csv(&omega_norms(&magnus)));
            for (m, om) in magnus.orders.iter().enumerate() {
                out.insert(format!("{kind}_L{len}_omega{m}.txt"), om.to_text());
            }
            series.insert(len, magnus);
        }
        let solvers = solvers(kind, &cfg.lengths, profile)?;
        let points = grid_tasks(&solvers, &grid)
            .into_par_iter()
            .map(|(len, solver, jt)| {
                let model = FloquetModel::with_jtau(kind, jt, len, profile)?;
                let spectrum = solver.spectrum(jt)?;
                let magnus = &series[&len];
                let hpre = (0..=max)
                    .map(|m| {
                        let h = h_pre(magnus, m, jt)?;
                        Ok(infinite_time_corr(&h, &h, &spectrum)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut point = ExpansionPoint {
                    len,
                    jt,
                    hpre,
                    dpre: Vec::new(),
                    dpre_norms: Vec::new(),
                    dumps: Outputs::default(),
                };
                if kicked {
                    let ex = dpre_expand(&model, d_order)?;
                    for order in 2..=d_order.min(max.max(2)) {
                        let (d, s) = ex.frame(order)?;
                        point.dpre.push((order, Resolved::Frame { d, s }.fidelity(&spectrum)?));
                    }
                    point.dpre_norms = ex.d_pre_terms(d_order)?.iter().map(normalized_norm).collect();
                    if contains(&cfg.dump_jtau, jt) {
                        let tag = format!("{kind}_L{len}_jtau{}", fmt_f64(jt));
                        for (j, sj) in ex.s.orders.iter().enumerate().skip(1) {
                            point.dumps.insert(format!("{tag}_S{j}.txt"), sj.to_text());
                        }
                        for (j, dj) in ex.d.orders.iter().enumerate().skip(1) {
                            point.dumps.insert(format!("{tag}_D{j}.txt"), dj.to_text());
                        }
                    }
                }
                Ok(point)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut infid: BTreeMap<usize, String> = BTreeMap::new();
        let mut dinfid: BTreeMap<usize, String> = BTreeMap::new();
        let mut fid: BTreeMap<usize, String> = BTreeMap::new();
        for p in points {
            let t = infid.entry(p.len).or_insert_with(|| "jtau,m,infidelity\n".into());
            for (m, f) in p.hpre.iter().enumerate() {
                let _ = writeln!(t, "{},{m},{}", fmt_f64(p.jt), fmt_f64(1.0 - f));
            }
            let t = fid
                .entry(p.len)
                .or_insert_with(|| if kicked { "jtau,order,hpre,dpre\n" } else { "jtau,order,hpre\n" }.into());
            for &order in &cfg.orders {
                let _ = write!(t, "{},{order},{}", fmt_f64(p.jt), fmt_f64(p.hpre[order]));
                if kicked {
                    let d = p.dpre.iter().find(|(o, _)| *o == order).map(|(_, f)| fmt_f64(*f));
                    let _ = write!(t, ",{}", d.unwrap_or_else(|| "nan".into()));
                }
                t.push('\n');
            }
            if kicked {
                let t = dinfid.entry(p.len).or_insert_with(|| "jtau,order,infidelity\n".into());
                for (order, f) in &p.dpre {
                    let _ = writeln!(t, "{},{order},{}", fmt_f64(p.jt), fmt_f64(1.0 - f));
                }
                out.insert(format!("{kind}_L{}_jtau{}_dpre_norms.csv", p.len, fmt_f64(p.jt)), norm_csv(&p.dpre_norms));
            }
            out.extend(p.dumps);
        }
        for (len, t) in infid {
            out.insert(format!("{kind}_L{len}_hpre_infidelity.csv"), t);
        }
        for (len, t) in dinfid {
            out.insert(format!("{kind}_L{len}_dpre_infidelity.csv"), t);
        }
        for (len, t) in fid {
            out.insert(format!("{kind}_L{len}_fidelity.csv"), t);
        }
        Ok(out)
    })
}

/// The three observables of the critical-step scan.
pub const JC_OBSERVABLES: [(ModelKind, ObservableSpec, &str); 3] = [
    (ModelKind::Kdm, ObservableSpec::Hbar, "Hbar_KDM"),
    (ModelKind::Kdm, ObservableSpec::Dipolar(Axis::Z), "Dz_KDM"),
    (ModelKind::Adm, ObservableSpec::Hbar, "Hbar_ADM"),
];

/// Infinite-time autocorrelation curves `(L, [(jτ, value)])` for one observable.
pub fn jc_curves(
    kind: ModelKind,
    spec: ObservableSpec,
    lengths: &[usize],
    grid: &[f64],
    profile: CouplingProfile,
) -> Result<Vec<(usize, Vec<(f64, f64)>)>> {
    let solvers = solvers(kind, lengths, profile)?;
    let values = grid_tasks(&solvers, grid)
        .into_par_iter()
        .map(|(len, solver, jt)| {
            let model = FloquetModel::with_jtau(kind, jt, len, profile)?;
            let op = match spec {
                ObservableSpec::Hbar => model.hbar(),
                ObservableSpec::Dipolar(a) => dipolar(a, len, profile)?,
                other => return Err(HarnessError::Config(format!("{other} is not a critical-step observable"))),
            };
            let spectrum = solver.spectrum(jt)?;
            Ok((len, jt, infinite_time_corr(&op, &op, &spectrum)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut curves: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for (len, jt, v) in values {
        curves.entry(len).or_default().push((jt, v));
    }
    Ok(curves.into_iter().collect())
}

pub fn run_jc(cfg: &SweepConfig) -> Result<Outputs> {
    let profile = cfg.profile()?;
    let grid = cfg.jtau_values()?;
    let pool = pool(cfg)?;
    pool.install(|| {
        let mut out = Outputs::default();
        let mut table = String::from("observable,control,jc_tau\n");
        for (kind, spec, label) in JC_OBSERVABLES {
            let curves = jc_curves(kind, spec, &cfg.lengths, &grid, profile)?;
            let controls: Vec<(f64, Vec<(f64, f64)>)> = curves.iter().map(|(l, c)| (*l as f64, c.clone())).collect();
            let cp = CriticalPoint::from_curves(label, &controls, cfg.threshold)?;
            table.push_str(&cp.csv_rows());
            for ((len, curve), reference) in curves.iter().zip(&cp.reference) {
                let mut s = String::from("jtau,value,normalized\n");
                for (jt, v) in curve {
                    let _ = writeln!(s, "{},{},{}", fmt_f64(*jt), fmt_f64(*v), fmt_f64(v / reference));
                }
                out.insert(format!("jc_curve_{label}_L{len}.csv"), s);
            }
        }
        out.insert("jc.csv", table);
        Ok(out)
    })
}
