use num_complex::Complex64 as C64;

use crate::algebra::CyclicSum;
use crate::error::{Error, Result};

/// Formal power series `Σ_k t^k A_k` truncated after `max_order`.
#[derive(Clone, Debug)]
pub struct Series {
    len: usize,
    coeffs: Vec<CyclicSum>,
}

impl Series {
    pub fn zero(len: usize, max_order: usize) -> Result<Self> {
        let z = CyclicSum::zero(len)?;
        Ok(Series { len, coeffs: vec![z; max_order + 1] })
    }

    /// `t^order · a`, dropped if beyond the truncation.
    pub fn monomial(a: CyclicSum, order: usize, max_order: usize) -> Self {
        let len = a.len();
        let mut s = Series::zero(len, max_order).expect("length already validated");
        if order <= max_order {
            s.coeffs[order] = a;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; the chain has at least one site.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &CyclicSum {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[CyclicSum] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, a: CyclicSum) {
        self.coeffs[k] = a;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CyclicSum::is_zero)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, max_order: usize) -> Series {
        let mut coeffs: Vec<CyclicSum> = self.coeffs.iter().take(max_order + 1).cloned().collect();
        while coeffs.len() < max_order + 1 {
            coeffs.push(CyclicSum::zero(self.len).expect("length already validated"));
        }
        Series { len: self.len, coeffs }
    }

    pub fn add_assign_scaled(&mut self, other: &Series, s: C64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.add_assign_scaled(b, s);
            }
        }
    }

    pub fn scale(&self, s: C64) -> Series {
        Series { len: self.len, coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// `[A, B]` truncated at the smaller of the two truncation orders.
    pub fn commutator(&self, other: &Series) -> Result<Series> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        let max = self.max_order().min(other.max_order());
        let mut out = Series::zero(self.len, max)?;
        for (i, a) in self.coeffs.iter().enumerate().take(max + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(max + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let c = a.commutator(b)?;
                out.coeffs[i + j].add_assign_scaled(&c, C64::new(1.0, 0.0));
            }
        }
        Ok(out)
    }

    /// `Σ_k t^k A_k` at a numeric `t`.
    pub fn evaluate(&self, t: f64) -> CyclicSum {
        let mut out = CyclicSum::zero(self.len).expect("length already validated");
        let mut p = 1.0;
        for c in &self.coeffs {
            out.add_assign_scaled(c, C64::new(p, 0.0));
            p *= t;
        }
        out
    }
}
