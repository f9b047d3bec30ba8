use ndarray::{Array2, ArrayView2};
use num_complex::Complex64 as C64;
use rustc_hash::FxHashMap;

use crate::algebra::OperatorSum;

/// Terms of an operator grouped by flip mask: `x → [(z mask, scalar)]`.
///
/// A string with masks `(x, z)` acts as `|b⟩ ↦ 2^{−w} i^{#Y} (−1)^{|b∧z|} |b⊕x⟩`.
pub(crate) fn flip_groups(op: &OperatorSum) -> Vec<(u64, Vec<(u64, C64)>)> {
    let mut groups: FxHashMap<u64, Vec<(u64, C64)>> = FxHashMap::default();
    for (p, c) in op.iter() {
        let (x, z) = (p.x_mask(), p.z_mask());
        let ny = (x & z).count_ones();
        let iy = match ny % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        let scale = 0.5f64.powi(p.weight() as i32);
        groups.entry(x).or_default().push((z, c * iy * scale));
    }
    let mut out: Vec<_> = groups.into_iter().collect();
    out.sort_unstable_by_key(|(x, _)| *x);
    out
}

#[inline]
pub(crate) fn group_amplitude(zs: &[(u64, C64)], b: u64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &(z, c) in zs {
        if (b & z).count_ones().is_multiple_of(2) {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// Square sparse matrix in coordinate form, rows sorted.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub(crate) dim: usize,
    pub(crate) entries: Vec<(u32, u32, C64)>,
}

impl SparseMatrix {
    pub(crate) fn from_entries(dim: usize, mut entries: Vec<(u32, u32, C64)>) -> Self {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(u32, u32, C64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2.norm() > 1e-15);
        SparseMatrix { dim, entries: merged }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for &(r, c, v) in &self.entries {
            m[[r as usize, c as usize]] += v;
        }
        m
    }

    /// `self · v` for a dense `v`.
    pub fn matmul(&self, v: ArrayView2<C64>) -> Array2<C64> {
        let mut out = Array2::zeros((self.dim, v.ncols()));
        for &(r, c, val) in &self.entries {
            let src = v.row(c as usize);
            let mut dst = out.row_mut(r as usize);
            dst.scaled_add(val, &src);
        }
        out
    }
}
