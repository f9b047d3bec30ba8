//! `log(e^X e^Y)` for graded series via the derivative recursion
//! `Z'(t) = ad_Z / (1 − e^{−ad_Z}) · Y` with `Z(t) = log(e^X e^{tY})`.

use num_complex::Complex64 as C64;

use super::series::Series;
use crate::error::{Error, Result};

/// `b_n = B_n^+ / n!`, the Taylor coefficients of `x / (1 − e^{−x})`.
pub(crate) fn bernoulli_plus_over_factorial(n_max: usize) -> Vec<f64> {
    // a_n = B_n / n! from Σ_{k≤n} a_k / (n+1−k)! = 0
    let mut a = vec![0.0f64; n_max + 1];
    a[0] = 1.0;
    let mut inv_fact = vec![1.0f64; n_max + 2];
    for k in 1..n_max + 2 {
        inv_fact[k] = inv_fact[k - 1] / k as f64;
    }
    for n in 1..=n_max {
        let s: f64 = (0..n).map(|k| a[k] * inv_fact[n + 1 - k]).sum();
        a[n] = -s;
    }
    if n_max >= 1 {
        a[1] = -a[1];
    }
    a
}

/// `log(e^X e^Y)` truncated at `max_order`; both inputs must vanish at order 0.
pub fn bch(x: &Series, y: &Series, max_order: usize) -> Result<Series> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
        return Err(Error::InvalidArgument("BCH inputs need a vanishing zeroth order".into()));
    }
    let x = x.truncate(max_order);
    let y = y.truncate(max_order);
    if y.is_zero() {
        return Ok(x);
    }
    if x.is_zero() {
        return Ok(y);
    }
    let b = bernoulli_plus_over_factorial(max_order);
    let one = C64::new(1.0, 0.0);

    // z[s]: t^s coefficient of Z(t); r[n][s]: t^s coefficient of ad_Z^n Y
    let zero = Series::zero(y.len(), max_order)?;
    let mut r = vec![vec![zero.clone(); max_order + 1]; max_order + 1];
    r[0][0] = y;
    let mut z: Vec<Series> = vec![x];
    for s in 0..max_order {
        let mut next = r[0][s].clone();
        for n in 1..=max_order {
            let mut acc = zero.clone();
            for i in 0..=s {
                if z[i].is_zero() || r[n - 1][s - i].is_zero() {
                    continue;
                }
                acc.add_assign_scaled(&z[i].commutator(&r[n - 1][s - i])?, one);
            }
            if b[n] != 0.0 {
                next.add_assign_scaled(&acc, C64::new(b[n], 0.0));
            }
            r[n][s] = acc;
        }
        z.push(next.scale(C64::new(1.0 / (s + 1) as f64, 0.0)));
    }
    let mut out = zero;
    for zs in &z {
        out.add_assign_scaled(zs, one);
    }
    Ok(out)
}
