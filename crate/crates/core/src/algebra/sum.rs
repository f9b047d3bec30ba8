use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use super::coherence::coherence_components;
use super::pauli::{check_len, PauliString};
use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped after every operation.
pub const PRUNE_TOL: f64 = 1e-14;

/// `Tr(P†P)` for a spin string with `weight` non-identity sites on `len` sites.
#[inline]
pub(crate) fn string_trace(len: usize, weight: u32) -> f64 {
    2f64.powi(len as i32 - 2 * weight as i32)
}

/// A finite complex-weighted sum of Pauli strings of a common length.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSum {
    len: usize,
    terms: BTreeMap<PauliString, C64>,
}

impl OperatorSum {
    pub fn zero(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(OperatorSum { len, terms: BTreeMap::new() })
    }

    pub fn identity(len: usize) -> Result<Self> {
        let mut op = Self::zero(len)?;
        op.terms.insert(PauliString::identity(len)?, C64::new(1.0, 0.0));
        Ok(op)
    }

    pub fn from_string(p: PauliString, coeff: C64) -> Self {
        let mut op = OperatorSum { len: p.len(), terms: BTreeMap::new() };
        op.add_term(p, coeff);
        op.prune();
        op
    }

    /// Collects terms, summing repeated strings.
    pub fn from_terms<I>(len: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, C64)>,
    {
        let mut op = Self::zero(len)?;
        for (p, c) in terms {
            if p.len() != len {
                return Err(Error::LengthMismatch { left: len, right: p.len() });
            }
            op.add_term(p, c);
        }
        op.prune();
        Ok(op)
    }

    /// Accumulates without pruning; callers must `prune` afterwards.
    pub(crate) fn from_terms_unchecked<I>(len: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (PauliString, C64)>,
    {
        let mut op = OperatorSum { len, terms: BTreeMap::new() };
        for (p, c) in terms {
            op.add_term(p, c);
        }
        op.prune();
        op
    }

    #[inline]
    pub(crate) fn add_term(&mut self, p: PauliString, c: C64) {
        *self.terms.entry(p).or_insert(C64::new(0.0, 0.0)) += c;
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Always false; the chain has at least one site.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> C64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    fn check_same_len(&self, other: &OperatorSum) -> Result<()> {
        if self.len != other.len {
            Err(Error::LengthMismatch { left: self.len, right: other.len })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, s: C64) -> OperatorSum {
        let mut out = OperatorSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, c * s)).collect() };
        out.prune();
        out
    }

    pub fn try_add(&self, other: &OperatorSum) -> Result<OperatorSum> {
        self.check_same_len(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn try_sub(&self, other: &OperatorSum) -> Result<OperatorSum> {
        self.try_add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn adjoint(&self) -> OperatorSum {
        OperatorSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect() }
    }

    /// Operator product `A·B`.
    pub fn product(&self, other: &OperatorSum) -> Result<OperatorSum> {
        self.check_same_len(other)?;
        let mut out = OperatorSum { len: self.len, terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (ph, c, _) = PauliString::mul_raw(a, b);
                out.add_term(c, ca * cb * ph);
            }
        }
        out.prune();
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &OperatorSum) -> Result<OperatorSum> {
        self.check_same_len(other)?;
        let mut out = OperatorSum { len: self.len, terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (ph, c, anti) = PauliString::mul_raw(a, b);
                if anti {
                    out.add_term(c, ca * cb * ph * 2.0);
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Hilbert–Schmidt product `Tr(A†B)`.
    pub fn hs_inner(&self, other: &OperatorSum) -> Result<C64> {
        self.check_same_len(other)?;
        let (small, big, flip) =
            if self.terms.len() <= other.terms.len() { (self, other, false) } else { (other, self, true) };
        let mut acc = C64::new(0.0, 0.0);
        for (p, c) in &small.terms {
            if let Some(d) = big.terms.get(p) {
                let w = string_trace(self.len, p.weight());
                acc += if flip { d.conj() * c } else { c.conj() * d } * w;
            }
        }
        Ok(acc)
    }

    /// `√Tr(A†A)`; equals `√Tr A²` for Hermitian operators.
    pub fn norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.norm_sqr() * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    /// Intensive norm `‖A‖ / √(L·2^L)`.
    pub fn normalized_norm(&self) -> f64 {
        self.norm() / (self.len as f64 * 2f64.powi(self.len as i32)).sqrt()
    }

    /// Normalized overlap `Tr(A†B) / (‖A‖‖B‖)`.
    pub fn inner_product(&self, other: &OperatorSum) -> Result<C64> {
        let (na, nb) = (self.norm(), other.norm());
        if na == 0.0 || nb == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.hs_inner(other)? / (na * nb))
    }

    /// Norm of the anti-Hermitian part `(A − A†)/2`.
    pub fn anti_hermitian_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.im * c.im * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    /// Norm of the Hermitian part `(A + A†)/2`.
    pub fn hermitian_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.re * c.re * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> OperatorSum {
        let mut out =
            OperatorSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, C64::new(c.re, 0.0))).collect() };
        out.prune();
        out
    }

    /// `(A − A†)/2`.
    pub fn anti_hermitian_part(&self) -> OperatorSum {
        let mut out =
            OperatorSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, C64::new(0.0, c.im))).collect() };
        out.prune();
        out
    }

    /// Spin strings are Hermitian, so the sum is Hermitian iff every coefficient is real.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn range(&self) -> usize {
        self.terms.keys().map(|p| p.range()).max().unwrap_or(0)
    }

    pub fn cyclic_range(&self) -> usize {
        self.terms.keys().map(|p| p.cyclic_range()).max().unwrap_or(0)
    }

    pub fn translate(&self, shift: usize) -> OperatorSum {
        OperatorSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (p.translate(shift), *c)).collect() }
    }

    pub fn is_translation_invariant(&self, tol: f64) -> bool {
        self.terms.iter().all(|(p, c)| (self.coefficient(&p.translate(1)) - c).norm() <= tol)
    }

    /// Splits into components with `[Z, A_q] = q·A_q`, keyed by `q`.
    pub fn coherence_decompose(&self) -> BTreeMap<i32, OperatorSum> {
        coherence_components(self.terms.iter().map(|(p, c)| (*p, *c)))
            .into_iter()
            .map(|(q, terms)| (q, OperatorSum::from_terms_unchecked(self.len, terms)))
            .filter(|(_, op)| !op.is_zero())
            .collect()
    }

    /// One term per line: `<re> <im> <letters>`, canonical order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, c) in &self.terms {
            let _ = writeln!(s, "{:?} {:?} {}", clean_zero(c.re), clean_zero(c.im), p);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<OperatorSum> {
        let mut terms = Vec::new();
        let mut len = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let bad = || Error::Parse(format!("line {}: expected `<re> <im> <letters>`", lineno + 1));
            let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let im: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let p: PauliString = parts.next().ok_or_else(bad)?.parse()?;
            if parts.next().is_some() {
                return Err(bad());
            }
            match len {
                None => len = Some(p.len()),
                Some(l) if l != p.len() => return Err(Error::LengthMismatch { left: l, right: p.len() }),
                _ => {}
            }
            terms.push((p, C64::new(re, im)));
        }
        let len = len.ok_or_else(|| Error::Parse("empty operator text; length unknown".into()))?;
        OperatorSum::from_terms(len, terms)
    }
}

fn clean_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl<'a> Add for &'a OperatorSum {
    type Output = OperatorSum;
    fn add(self, rhs: &'a OperatorSum) -> OperatorSum {
        self.try_add(rhs).expect("operator lengths differ")
    }
}

impl<'a> Sub for &'a OperatorSum {
    type Output = OperatorSum;
    fn sub(self, rhs: &'a OperatorSum) -> OperatorSum {
        self.try_sub(rhs).expect("operator lengths differ")
    }
}

impl Neg for &OperatorSum {
    type Output = OperatorSum;
    fn neg(self) -> OperatorSum {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &OperatorSum {
    type Output = OperatorSum;
    fn mul(self, rhs: f64) -> OperatorSum {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<C64> for &OperatorSum {
    type Output = OperatorSum;
    fn mul(self, rhs: C64) -> OperatorSum {
        self.scale(rhs)
    }
}
