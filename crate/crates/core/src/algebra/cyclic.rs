//! Translation-invariant operators stored by orbit representative.
//!
//! `CyclicSum` with entry `(r, c)` stands for `c · Σ T^j r`, the sum running
//! over the distinct translates of `r`. Commutators only multiply the
//! representatives of one factor against the expanded other factor, which
//! cuts the work by a factor of the chain length.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use rustc_hash::FxHashMap;

use super::coherence::coherence_components;
use super::pauli::{check_len, PauliString};
use super::sum::{string_trace, OperatorSum, PRUNE_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct CyclicSum {
    len: usize,
    terms: FxHashMap<PauliString, C64>,
}

/// Gathers `Σ_{j<L} T^j X` for an explicit `X` into orbit coefficients.
struct Symmetrizer {
    len: usize,
    acc: FxHashMap<PauliString, (C64, usize)>,
}

impl Symmetrizer {
    fn new(len: usize) -> Self {
        Symmetrizer { len, acc: FxHashMap::default() }
    }

    #[inline]
    fn push(&mut self, p: PauliString, c: C64) {
        let (rep, period) = p.canonical();
        let e = self.acc.entry(rep).or_insert((C64::new(0.0, 0.0), period));
        e.0 += c;
    }

    fn finish(self) -> CyclicSum {
        let len = self.len as f64;
        let terms = self
            .acc
            .into_iter()
            .map(|(r, (c, period))| (r, c * (len / period as f64)))
            .filter(|(_, c)| c.norm() >= PRUNE_TOL)
            .collect();
        CyclicSum { len: self.len, terms }
    }
}

impl CyclicSum {
    pub fn zero(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(CyclicSum { len, terms: FxHashMap::default() })
    }

    /// Orbit sum of a single string: `c · Σ_distinct T^j p`.
    pub fn orbit(p: PauliString, c: C64) -> Self {
        let mut s = CyclicSum { len: p.len(), terms: FxHashMap::default() };
        s.terms.insert(p.canonical().0, c);
        s.prune();
        s
    }

    /// Translation-invariant sum `Σ_j T^j p` over all `L` shifts (not only distinct ones).
    pub fn translation_sum(p: PauliString, c: C64) -> Self {
        let (rep, period) = p.canonical();
        let mut s = CyclicSum { len: p.len(), terms: FxHashMap::default() };
        s.terms.insert(rep, c * (p.len() / period) as f64);
        s.prune();
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; the chain has at least one site.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_orbits(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.terms.iter()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    fn check_same_len(&self, other: &CyclicSum) -> Result<()> {
        if self.len != other.len {
            Err(Error::LengthMismatch { left: self.len, right: other.len })
        } else {
            Ok(())
        }
    }

    /// Fails unless every translate of every string carries the same coefficient.
    pub fn from_operator_sum(op: &OperatorSum) -> Result<Self> {
        let tol = 1e-12 * (1.0 + op.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max));
        if !op.is_translation_invariant(tol) {
            return Err(Error::NotTranslationInvariant);
        }
        let mut s = CyclicSum::zero(op.len())?;
        for (p, c) in op.iter() {
            let (rep, _) = p.canonical();
            if rep == *p {
                s.terms.insert(rep, *c);
            }
        }
        s.prune();
        Ok(s)
    }

    pub fn to_operator_sum(&self) -> OperatorSum {
        let mut terms = Vec::with_capacity(self.terms.len() * self.len);
        for (r, c) in &self.terms {
            let (_, period) = r.canonical();
            for j in 0..period {
                terms.push((r.translate(j), *c));
            }
        }
        OperatorSum::from_terms_unchecked(self.len, terms)
    }

    /// All distinct strings with coefficients.
    fn expanded(&self) -> Vec<(PauliString, C64)> {
        let mut out = Vec::with_capacity(self.terms.len() * self.len);
        for (r, c) in &self.terms {
            let (_, period) = r.canonical();
            for j in 0..period {
                out.push((r.translate(j), *c));
            }
        }
        out
    }

    /// Representatives weighted so that `A = Σ_{j<L} T^j (Σ w·r)`.
    fn weighted_reps(&self) -> impl Iterator<Item = (PauliString, C64)> + '_ {
        let len = self.len as f64;
        self.terms.iter().map(move |(r, c)| {
            let (_, period) = r.canonical();
            (*r, c * (period as f64 / len))
        })
    }

    pub fn scale(&self, s: C64) -> CyclicSum {
        let mut out = CyclicSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, c * s)).collect() };
        out.prune();
        out
    }

    pub fn add_assign_scaled(&mut self, other: &CyclicSum, s: C64) {
        assert_eq!(self.len, other.len, "operator lengths differ");
        for (p, c) in &other.terms {
            *self.terms.entry(*p).or_insert(C64::new(0.0, 0.0)) += c * s;
        }
        self.prune();
    }

    pub fn try_add(&self, other: &CyclicSum) -> Result<CyclicSum> {
        self.check_same_len(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, C64::new(1.0, 0.0));
        Ok(out)
    }

    pub fn adjoint(&self) -> CyclicSum {
        CyclicSum { len: self.len, terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect() }
    }

    /// `[A, B]`, iterating over the orbit representatives of the larger factor.
    pub fn commutator(&self, other: &CyclicSum) -> Result<CyclicSum> {
        self.check_same_len(other)?;
        if self.is_zero() || other.is_zero() {
            return CyclicSum::zero(self.len);
        }
        if self.terms.len() >= other.terms.len() {
            Ok(Self::commutator_reps(self, other, 2.0))
        } else {
            Ok(Self::commutator_reps(other, self, -2.0))
        }
    }

    fn commutator_reps(reps_of: &CyclicSum, expand: &CyclicSum, factor: f64) -> CyclicSum {
        let len = reps_of.len;
        let terms = expand.expanded();
        let mut by_site: Vec<Vec<u32>> = vec![Vec::new(); len];
        for (idx, (p, _)) in terms.iter().enumerate() {
            let mut s = p.support_mask();
            while s != 0 {
                let j = s.trailing_zeros() as usize;
                by_site[j].push(idx as u32);
                s &= s - 1;
            }
        }
        let mut sym = Symmetrizer::new(len);
        for (a, wa) in reps_of.weighted_reps() {
            let sa = a.support_mask();
            let mut s = sa;
            while s != 0 {
                let j = s.trailing_zeros() as usize;
                let lower = sa & ((1u64 << j) - 1);
                for &idx in &by_site[j] {
                    let (b, cb) = &terms[idx as usize];
                    if b.support_mask() & lower != 0 {
                        continue;
                    }
                    let (ph, c, anti) = PauliString::mul_raw(&a, b);
                    if anti {
                        sym.push(c, wa * cb * ph * factor);
                    }
                }
                s &= s - 1;
            }
        }
        sym.finish()
    }

    /// `Tr(A†B)` over the full chain.
    pub fn hs_inner(&self, other: &CyclicSum) -> Result<C64> {
        self.check_same_len(other)?;
        let mut acc = C64::new(0.0, 0.0);
        for (p, c) in &self.terms {
            if let Some(d) = other.terms.get(p) {
                let (_, period) = p.canonical();
                acc += c.conj() * d * (period as f64 * string_trace(self.len, p.weight()));
            }
        }
        Ok(acc)
    }

    pub fn norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.norm_sqr() * p.canonical().1 as f64 * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    pub fn normalized_norm(&self) -> f64 {
        self.norm() / (self.len as f64 * 2f64.powi(self.len as i32)).sqrt()
    }

    pub fn anti_hermitian_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.im * c.im * p.canonical().1 as f64 * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.re * c.re * p.canonical().1 as f64 * string_trace(self.len, p.weight()))
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }

    pub fn cyclic_range(&self) -> usize {
        self.terms.keys().map(|p| p.cyclic_range()).max().unwrap_or(0)
    }

    /// Coherence components `A_q` with `[Z, A_q] = q·A_q`.
    pub fn coherence_decompose(&self) -> BTreeMap<i32, CyclicSum> {
        coherence_components(self.weighted_reps())
            .into_iter()
            .map(|(q, terms)| {
                let mut sym = Symmetrizer::new(self.len);
                for (p, c) in terms {
                    sym.push(p, c);
                }
                (q, sym.finish())
            })
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }
}
