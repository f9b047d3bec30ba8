//! Decay-rate fits, heating-rate fits and critical Trotter steps.

use std::fmt;

use ndarray::{Array1, Array2};
use ndarray_linalg::{Inverse, Solve};

use crate::error::{Error, Result};

/// Default fit window for stroboscopic decays.
pub const DEFAULT_DECAY_WINDOW: (usize, usize) = (20, 64);

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub names: Vec<&'static str>,
    pub values: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub window: Option<(f64, f64)>,
    pub residual_norm: f64,
}

impl FitResult {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| *n == name).map(|i| self.values[i])
    }

    pub fn std_error(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| *n == name).map(|i| self.std_errors[i])
    }

    /// `parameter,value,std_error` rows plus window and residual lines.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("parameter,value,std_error\n");
        for ((n, v), e) in self.names.iter().zip(&self.values).zip(&self.std_errors) {
            s.push_str(&format!("{n},{v:?},{e:?}\n"));
        }
        if let Some((lo, hi)) = self.window {
            s.push_str(&format!("window_lo,{lo:?},\nwindow_hi,{hi:?},\n"));
        }
        s.push_str(&format!("residual_norm,{:?},\n", self.residual_norm));
        s
    }
}

/// Covariance `s² (JᵀJ)⁻¹` with `s² = ‖r‖² / (n − p)`.
fn covariance_errors(jac: &Array2<f64>, residual_sq: f64) -> Result<Vec<f64>> {
    let (n, p) = jac.dim();
    let jtj = jac.t().dot(jac);
    let inv = jtj.inv().map_err(|e| Error::FitFailed(format!("singular normal matrix: {e}")))?;
    let s2 = if n > p { residual_sq / (n - p) as f64 } else { 0.0 };
    Ok((0..p).map(|i| (s2 * inv[[i, i]]).max(0.0).sqrt()).collect())
}

/// `value(n) = A e^{−γ n}` by least squares on `log value` over `n ∈ [lo, hi]`.
pub fn fit_exponential_decay(values: &[f64], window: (usize, usize)) -> Result<FitResult> {
    let (lo, hi) = window;
    if lo >= hi || hi >= values.len() {
        return Err(Error::InvalidArgument(format!(
            "window [{lo}, {hi}] must satisfy lo < hi < {} (series length)",
            values.len()
        )));
    }
    let xs: Vec<f64> = (lo..=hi).map(|n| n as f64).collect();
    let ys = values[lo..=hi]
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v > 0.0 {
                Ok(v.ln())
            } else {
                Err(Error::InvalidArgument(format!("nonpositive value {v} at n = {}", lo + i)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let s2 = rss / (m - 2.0).max(1.0);
    let se_slope = (s2 / sxx).sqrt();
    let se_intercept = (s2 * (1.0 / m + mx * mx / sxx)).sqrt();
    let amp = intercept.exp();
    Ok(FitResult {
        names: vec!["gamma", "A"],
        values: vec![-slope, amp],
        std_errors: vec![se_slope, amp * se_intercept],
        window: Some((lo as f64, hi as f64)),
        residual_norm: rss.sqrt(),
    })
}

fn arrhenius_model(p: &[f64; 3], x: f64) -> f64 {
    p[0] * (-p[1] / x).exp() + p[2]
}

/// Best `(a, c)` and squared residual for fixed `b`.
fn linear_ac(xs: &[f64], ys: &[f64], b: f64) -> Option<([f64; 3], f64)> {
    let e: Vec<f64> = xs.iter().map(|x| (-b / x).exp()).collect();
    let n = xs.len() as f64;
    let (se, see) = (e.iter().sum::<f64>(), e.iter().map(|v| v * v).sum::<f64>());
    let (sy, sey) = (ys.iter().sum::<f64>(), e.iter().zip(ys).map(|(a, y)| a * y).sum::<f64>());
    let det = see * n - se * se;
    if det.abs() < 1e-300 * (1.0 + see * n) {
        return None;
    }
    let a = (sey * n - se * sy) / det;
    let c = (see * sy - se * sey) / det;
    let p = [a, b, c];
    let rss = xs.iter().zip(ys).map(|(&x, &y)| (y - arrhenius_model(&p, x)).powi(2)).sum();
    Some((p, rss))
}

fn arrhenius_jacobian(p: &[f64; 3], xs: &[f64]) -> Array2<f64> {
    let mut j = Array2::zeros((xs.len(), 3));
    for (i, &x) in xs.iter().enumerate() {
        let e = (-p[1] / x).exp();
        j[[i, 0]] = e;
        j[[i, 1]] = -p[0] * e / x;
        j[[i, 2]] = 1.0;
    }
    j
}

fn rss_of(p: &[f64; 3], xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter().zip(ys).map(|(&x, &y)| (y - arrhenius_model(p, x)).powi(2)).sum()
}

/// Damped Gauss–Newton refinement; returns the final parameters and residual.
fn gauss_newton(start: [f64; 3], xs: &[f64], ys: &[f64]) -> Option<([f64; 3], f64)> {
    let mut p = start;
    let mut rss = rss_of(&p, xs, ys);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        let jac = arrhenius_jacobian(&p, xs);
        let r = Array1::from_iter(xs.iter().zip(ys).map(|(&x, &y)| y - arrhenius_model(&p, x)));
        let jtj = jac.t().dot(&jac);
        let g = jac.t().dot(&r);
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for i in 0..3 {
                a[[i, i]] += lambda * jtj[[i, i]].max(1e-300);
            }
            let Ok(step) = a.solve(&g) else {
                lambda *= 10.0;
                continue;
            };
            let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
            let trial_rss = rss_of(&trial, xs, ys);
            if trial_rss.is_finite() && trial_rss <= rss {
                let rel = (rss - trial_rss) / rss.max(1e-300);
                p = trial;
                rss = trial_rss;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                if rel < 1e-14 {
                    return Some((p, rss));
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    rss.is_finite().then_some((p, rss))
}

/// Heating-rate fit `γ = a e^{−b/x} + c` over points `(x, γ)`.
pub fn fit_arrhenius(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 points, got {}", points.len())));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::InvalidArgument("abscissae must be positive and all values finite".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let xmin = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let xmax = xs.iter().copied().fold(0.0, f64::max);

    // log-spaced b grid, scored by the projected (a, c) residual
    let (b_lo, b_hi) = (1e-3 * xmin, 1e3 * xmax);
    let steps = 80;
    let mut starts: Vec<([f64; 3], f64)> = (0..=steps)
        .filter_map(|i| {
            let b = b_lo * (b_hi / b_lo).powf(i as f64 / steps as f64);
            linear_ac(&xs, &ys, b)
        })
        .collect();
    starts.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut best: Option<([f64; 3], f64)> = None;
    let mut tried = Vec::new();
    for (start, _) in starts.iter().take(6) {
        tried.push(start[1]);
        if let Some((p, rss)) = gauss_newton(*start, &xs, &ys) {
            if best.as_ref().is_none_or(|b| rss < b.1) {
                best = Some((p, rss));
            }
        }
    }
    let (p, rss) =
        best.ok_or_else(|| Error::FitFailed(format!("Gauss-Newton diverged from every start (b starts {tried:?})")))?;
    let std_errors = covariance_errors(&arrhenius_jacobian(&p, &xs), rss)?;
    Ok(FitResult {
        names: vec!["a", "b", "c"],
        values: p.to_vec(),
        std_errors,
        window: Some((xmin, xmax)),
        residual_norm: rss.sqrt(),
    })
}

/// Outcome of a threshold search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Crossing {
    At(f64),
    NoCrossing,
}

impl Crossing {
    pub fn value(self) -> Option<f64> {
        match self {
            Crossing::At(x) => Some(x),
            Crossing::NoCrossing => None,
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::At(x) => write!(f, "{x:?}"),
            Crossing::NoCrossing => f.write_str("no-crossing"),
        }
    }
}

/// First downward crossing of `threshold` by the piecewise-linear curve.
pub fn critical_jtau(curve: &[(f64, f64)], threshold: f64) -> Result<Crossing> {
    if curve.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::InvalidArgument("curve must be strictly increasing in Jτ".into()));
    }
    for w in curve.windows(2) {
        let ((x0, v0), (x1, v1)) = (w[0], w[1]);
        if v0 >= threshold && v1 < threshold {
            return Ok(Crossing::At(x0 + (threshold - v0) * (x1 - x0) / (v1 - v0)));
        }
    }
    Ok(Crossing::NoCrossing)
}

/// Divides every value by the one at the smallest Jτ.
pub fn normalize_to_first(curve: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    let &(_, reference) = curve.first().ok_or_else(|| Error::InvalidArgument("empty curve".into()))?;
    if reference == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(curve.iter().map(|&(x, v)| (x, v / reference)).collect())
}

/// Critical steps of one observable across a list of controls.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub observable: String,
    pub controls: Vec<f64>,
    pub jc_tau: Vec<Crossing>,
    pub threshold: f64,
    pub reference: Vec<f64>,
}

impl CriticalPoint {
    /// Normalizes each curve to its smallest-Jτ value and locates the crossing.
    pub fn from_curves(observable: &str, curves: &[(f64, Vec<(f64, f64)>)], threshold: f64) -> Result<Self> {
        let mut controls = Vec::new();
        let mut jc_tau = Vec::new();
        let mut reference = Vec::new();
        for (control, curve) in curves {
            let normalized = normalize_to_first(curve)?;
            controls.push(*control);
            reference.push(curve[0].1);
            jc_tau.push(critical_jtau(&normalized, threshold)?);
        }
        Ok(CriticalPoint { observable: observable.to_string(), controls, jc_tau, threshold, reference })
    }

    /// `observable,control,jc_tau` rows (no header).
    pub fn csv_rows(&self) -> String {
        self.controls.iter().zip(&self.jc_tau).map(|(c, j)| format!("{},{c:?},{j}\n", self.observable)).collect()
    }
}
