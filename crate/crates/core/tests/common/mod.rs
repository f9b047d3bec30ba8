//! Reference implementations that share no code with the library's numerics.
#![allow(dead_code)]

use ndarray::{s, Array2};
use ndarray_linalg::{Eig, Inverse, SVD};
use num_complex::Complex64 as C64;
use prethermal::algebra::{Letter, OperatorSum, PauliString};
use rand::Rng;

pub type M = Array2<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Spin-1/2 matrix `σ/2` (identity for `I`).
pub fn spin(l: Letter) -> M {
    let z = c(0.0, 0.0);
    let h = 0.5;
    let m = match l {
        Letter::I => [[c(1.0, 0.0), z], [z, c(1.0, 0.0)]],
        Letter::X => [[z, c(h, 0.0)], [c(h, 0.0), z]],
        Letter::Y => [[z, c(0.0, -h)], [c(0.0, h), z]],
        Letter::Z => [[c(h, 0.0), z], [z, c(-h, 0.0)]],
    };
    Array2::from_shape_fn((2, 2), |(i, j)| m[i][j])
}

pub fn kron(a: &M, b: &M) -> M {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            out.slice_mut(s![i * rb..(i + 1) * rb, j * cb..(j + 1) * cb]).assign(&(b * a[[i, j]]));
        }
    }
    out
}

/// Tensor product with site 0 as the least significant index bit.
pub fn dense_string(p: &PauliString) -> M {
    let letters = p.letters();
    let mut m = spin(letters[letters.len() - 1]);
    for &l in letters.iter().rev().skip(1) {
        m = kron(&m, &spin(l));
    }
    m
}

pub fn dense(a: &OperatorSum) -> M {
    let d = 1usize << a.len();
    let mut m = Array2::zeros((d, d));
    for (p, &coef) in a.iter() {
        m = m + dense_string(p) * coef;
    }
    m
}

pub fn dagger(a: &M) -> M {
    a.t().mapv(|z| z.conj())
}

pub fn fro(a: &M) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn spectral_norm(a: &M) -> f64 {
    let (_, s, _) = a.svd(false, false).expect("svd");
    s.iter().copied().fold(0.0, f64::max)
}

pub fn trace(a: &M) -> C64 {
    a.diag().iter().sum()
}

pub fn identity(d: usize) -> M {
    Array2::from_diag_elem(d, c(1.0, 0.0))
}

/// `e^{A}` by scaling and squaring a degree-24 Taylor polynomial.
pub fn expm(a: &M) -> M {
    let n = fro(a);
    let k = if n > 0.5 { (n / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a * c(0.5f64.powi(k as i32), 0.0);
    let d = a.nrows();
    let mut out = identity(d);
    let mut term = identity(d);
    for j in 1..=24 {
        term = term.dot(&scaled) * c(1.0 / j as f64, 0.0);
        out = out + &term;
    }
    for _ in 0..k {
        out = out.dot(&out);
    }
    out
}

/// `(1/T) Σ_{n<T} Tr[U^n O U^{−n} O'] / (‖O‖‖O'‖)` from a general eigendecomposition of `U`.
pub fn long_time_average(u: &M, o: &M, o2: &M, t: usize) -> f64 {
    let (w, v) = u.eig().expect("eig");
    let vinv = v.inv().expect("inverse");
    let a = vinv.dot(o).dot(&v);
    let b = vinv.dot(o2).dot(&v);
    let d = w.len();
    let mut acc = c(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            // U^n O U^{-n} picks up (w_i / w_j)^n on the (i, j) entry
            let r = w[i] / w[j];
            let mean = if (r - c(1.0, 0.0)).norm() < 1e-12 {
                c(1.0, 0.0)
            } else {
                (c(1.0, 0.0) - r.powu(t as u32)) / (c(1.0, 0.0) - r) / t as f64
            };
            acc += mean * a[[i, j]] * b[[j, i]];
        }
    }
    acc.re / (fro(o) * fro(o2))
}

/// Formal `log(e^{τX} e^{τY})` as coefficients of `τ^0..τ^order`, by operator products only.
pub fn formal_log_of_product(x: &OperatorSum, y: &OperatorSum, order: usize) -> Vec<OperatorSum> {
    let len = x.len();
    let zero = || OperatorSum::zero(len).unwrap();
    let exp_series = |a: &OperatorSum| {
        let mut out = vec![OperatorSum::identity(len).unwrap()];
        for k in 1..=order {
            out.push(&out[k - 1].product(a).unwrap() * (1.0 / k as f64));
        }
        out
    };
    let mul = |p: &[OperatorSum], q: &[OperatorSum]| {
        let mut out: Vec<OperatorSum> = (0..=order).map(|_| zero()).collect();
        for (i, pi) in p.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                if i + j <= order && !pi.is_zero() && !qj.is_zero() {
                    out[i + j] = &out[i + j] + &pi.product(qj).unwrap();
                }
            }
        }
        out
    };
    let mut r = mul(&exp_series(x), &exp_series(y));
    r[0] = zero();
    let mut log: Vec<OperatorSum> = (0..=order).map(|_| zero()).collect();
    let mut power = r.clone();
    for n in 1..=order {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        for k in 0..=order {
            log[k] = &log[k] + &(&power[k] * (sign / n as f64));
        }
        power = mul(&power, &r);
    }
    log
}

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

pub fn random_string<R: Rng>(rng: &mut R, len: usize) -> PauliString {
    let letters: Vec<Letter> = (0..len).map(|_| LETTERS[rng.gen_range(0..4)]).collect();
    PauliString::from_letters(&letters).unwrap()
}

pub fn random_operator<R: Rng>(rng: &mut R, len: usize, terms: usize) -> OperatorSum {
    let t = (0..terms).map(|_| (random_string(rng, len), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
    OperatorSum::from_terms(len, t).unwrap()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, len: usize, terms: usize) -> OperatorSum {
    let t = (0..terms).map(|_| (random_string(rng, len), c(rng.gen_range(-1.0..1.0), 0.0)));
    OperatorSum::from_terms(len, t).unwrap()
}

/// Every string on `len` sites.
pub fn all_strings(len: usize) -> Vec<PauliString> {
    (0..4usize.pow(len as u32))
        .map(|mut k| {
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let l = LETTERS[k % 4];
                    k /= 4;
                    l
                })
                .collect();
            PauliString::from_letters(&letters).unwrap()
        })
        .collect()
}
