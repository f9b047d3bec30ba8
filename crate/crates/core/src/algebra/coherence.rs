//! Quantum-coherence splitting with respect to the collective `Z`.
//!
//! Strings that share the same transverse sites (letters X or Y) and the same
//! Z letters elsewhere span a `2^k`-dimensional block. Each block is rotated
//! site by site into the ladder basis `{S+, S−}`, binned by
//! `q = #S+ − #S−`, and rotated back.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use rustc_hash::FxHashMap;

use super::pauli::PauliString;

const MAX_TRANSVERSE: u32 = 26;

fn deposit(bits: usize, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if (bits >> i) & 1 == 1 {
            out |= low;
        }
        m &= m - 1;
        i += 1;
    }
    out
}

fn extract(v: u64, mask: u64) -> usize {
    let mut out = 0usize;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if v & low != 0 {
            out |= 1 << i;
        }
        m &= m - 1;
        i += 1;
    }
    out
}

/// Components keyed by coherence order `q`; unpruned, possibly repeated strings.
pub(crate) fn coherence_components<I>(terms: I) -> BTreeMap<i32, Vec<(PauliString, C64)>>
where
    I: IntoIterator<Item = (PauliString, C64)>,
{
    let half = C64::new(0.5, 0.0);
    let i_half = C64::new(0.0, 0.5);
    let i = C64::new(0.0, 1.0);

    let mut groups: FxHashMap<(u64, u64), FxHashMap<usize, C64>> = FxHashMap::default();
    let mut len = 0usize;
    for (p, c) in terms {
        len = p.len();
        let t = p.x_mask();
        let zrest = p.z_mask() & !t;
        let ybits = extract(p.z_mask() & t, t);
        *groups.entry((t, zrest)).or_default().entry(ybits).or_default() += c;
    }

    let mut out: BTreeMap<i32, Vec<(PauliString, C64)>> = BTreeMap::new();
    for ((t, zrest), entries) in groups {
        let k = t.count_ones();
        if k == 0 {
            let bucket = out.entry(0).or_default();
            for (_, c) in entries {
                bucket.push((PauliString::from_masks(len, 0, zrest), c));
            }
            continue;
        }
        assert!(k <= MAX_TRANSVERSE, "coherence splitting needs at most {MAX_TRANSVERSE} transverse sites");
        let dim = 1usize << k;
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for (idx, c) in entries {
            v[idx] += c;
        }
        // (X, Y) -> (S+, S−) on every transverse site
        for axis in 0..k {
            let bit = 1usize << axis;
            for idx in 0..dim {
                if idx & bit == 0 {
                    let (cx, cy) = (v[idx], v[idx | bit]);
                    v[idx] = half * cx - i_half * cy;
                    v[idx | bit] = half * cx + i_half * cy;
                }
            }
        }
        let mut by_q: BTreeMap<i32, Vec<C64>> = BTreeMap::new();
        for (idx, c) in v.iter().enumerate() {
            if *c == C64::new(0.0, 0.0) {
                continue;
            }
            let q = k as i32 - 2 * idx.count_ones() as i32;
            by_q.entry(q).or_insert_with(|| vec![C64::new(0.0, 0.0); dim])[idx] = *c;
        }
        for (q, mut w) in by_q {
            for axis in 0..k {
                let bit = 1usize << axis;
                for idx in 0..dim {
                    if idx & bit == 0 {
                        let (dp, dm) = (w[idx], w[idx | bit]);
                        w[idx] = dp + dm;
                        w[idx | bit] = i * (dp - dm);
                    }
                }
            }
            let bucket = out.entry(q).or_default();
            for (idx, c) in w.into_iter().enumerate() {
                if c != C64::new(0.0, 0.0) {
                    bucket.push((PauliString::from_masks(len, t, zrest | deposit(idx, t)), c));
                }
            }
        }
    }
    out
}
