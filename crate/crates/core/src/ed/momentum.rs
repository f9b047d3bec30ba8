//! Translation-momentum sectors of a periodic chain.
//!
//! For a representative bit string `r` of period `R` the sector-`k` state is
//! `|r,k⟩ ∝ Σ_l e^{−ipl} T^l |r⟩` with `p = 2πk/L`, admissible when `kR ≡ 0 (mod L)`.

use num_complex::Complex64 as C64;

use super::dense::{check_cap, DENSE_CAP};
use super::sparse::{flip_groups, group_amplitude, SparseMatrix};
use crate::algebra::OperatorSum;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MomentumBasis {
    len: usize,
    reps: Vec<u64>,
    periods: Vec<u32>,
    /// per basis state: (index into `reps`, shift `l` with `state = T^l rep`)
    lookup: Vec<(u32, u32)>,
    /// per sector: positions of its admissible representatives in `reps`
    sectors: Vec<Vec<u32>>,
    /// per representative and sector: position inside that sector, or `u32::MAX`
    position: Vec<Vec<u32>>,
}

fn rotl(b: u64, len: usize) -> u64 {
    let m = (1u64 << len) - 1;
    ((b << 1) | (b >> (len - 1))) & m
}

impl MomentumBasis {
    pub fn new(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidArgument(format!("momentum basis needs L >= 2, got {len}")));
        }
        check_cap(len, DENSE_CAP)?;
        let dim = 1usize << len;
        let mut lookup = vec![(u32::MAX, 0u32); dim];
        let mut reps = Vec::new();
        let mut periods = Vec::new();
        for b in 0..dim as u64 {
            if lookup[b as usize].0 != u32::MAX {
                continue;
            }
            // b is the smallest member of its orbit since smaller states were visited first
            let idx = reps.len() as u32;
            let mut s = b;
            let mut l = 0u32;
            loop {
                lookup[s as usize] = (idx, l);
                s = rotl(s, len);
                l += 1;
                if s == b {
                    break;
                }
            }
            reps.push(b);
            periods.push(l);
        }
        let mut sectors = vec![Vec::new(); len];
        let mut position = vec![vec![u32::MAX; len]; reps.len()];
        for (i, &period) in periods.iter().enumerate() {
            for (k, sector) in sectors.iter_mut().enumerate() {
                if (k * period as usize).is_multiple_of(len) {
                    position[i][k] = sector.len() as u32;
                    sector.push(i as u32);
                }
            }
        }
        Ok(MomentumBasis { len, reps, periods, lookup, sectors, position })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; `L >= 2`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_sectors(&self) -> usize {
        self.len
    }

    pub fn sector_dim(&self, k: usize) -> usize {
        self.sectors[k].len()
    }

    /// Image of a translation-invariant operator in sector `k`.
    pub fn sector_matrix(&self, op: &OperatorSum, k: usize) -> Result<SparseMatrix> {
        if op.len() != self.len {
            return Err(Error::LengthMismatch { left: self.len, right: op.len() });
        }
        if k >= self.len {
            return Err(Error::InvalidArgument(format!("momentum index {k} outside 0..{}", self.len)));
        }
        let tol = 1e-12 * (1.0 + op.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max));
        if !op.is_translation_invariant(tol) {
            return Err(Error::NotTranslationInvariant);
        }
        let p = 2.0 * std::f64::consts::PI * k as f64 / self.len as f64;
        let groups = flip_groups(op);
        let members = &self.sectors[k];
        let mut entries = Vec::with_capacity(members.len() * groups.len());
        for (col, &ri) in members.iter().enumerate() {
            let r = self.reps[ri as usize];
            let rr = self.periods[ri as usize] as f64;
            for (x, zs) in &groups {
                let amp = group_amplitude(zs, r);
                if amp == C64::new(0.0, 0.0) {
                    continue;
                }
                let (si, l) = self.lookup[(r ^ x) as usize];
                let row = self.position[si as usize][k];
                if row == u32::MAX {
                    // the overlap with an inadmissible orbit cancels
                    continue;
                }
                let rs = self.periods[si as usize] as f64;
                let v = amp * C64::from_polar((rr / rs).sqrt(), p * l as f64);
                entries.push((row, col as u32, v));
            }
        }
        Ok(SparseMatrix::from_entries(members.len(), entries))
    }
}
