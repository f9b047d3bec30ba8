//! Spin-1/2 Pauli strings on a ring of up to 64 sites.
//!
//! A string is a product of single-site spin operators `S_a = σ_a / 2`.
//! Letters are stored as two bitmasks (`x` for X/Y, `z` for Z/Y) with bit `j`
//! addressing site `j`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const MAX_SITES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' | '0' => Some(Letter::I),
            'X' | 'x' => Some(Letter::X),
            'Y' | 'y' => Some(Letter::Y),
            'Z' | 'z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn code(self) -> u128 {
        self as u128
    }
}

/// Spatial axis of a spin operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn letter(self) -> Letter {
        match self {
            Axis::X => Letter::X,
            Axis::Y => Letter::Y,
            Axis::Z => Letter::Z,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::Parse(format!("unknown axis `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    len: u8,
    x: u64,
    z: u64,
}

#[inline]
fn site_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

pub(crate) fn check_len(len: usize) -> Result<()> {
    if len == 0 || len > MAX_SITES {
        Err(Error::UnsupportedLength(len))
    } else {
        Ok(())
    }
}

impl PauliString {
    pub fn identity(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(PauliString { len: len as u8, x: 0, z: 0 })
    }

    /// Single-site operator `S_letter` at `site`.
    pub fn single(len: usize, site: usize, letter: Letter) -> Result<Self> {
        let mut p = Self::identity(len)?;
        if site >= len {
            return Err(Error::InvalidArgument(format!("site {site} outside chain of length {len}")));
        }
        p.set(site, letter);
        Ok(p)
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let mut p = Self::identity(letters.len())?;
        for (j, &l) in letters.iter().enumerate() {
            p.set(j, l);
        }
        Ok(p)
    }

    pub(crate) fn from_masks(len: usize, x: u64, z: u64) -> Self {
        debug_assert!((1..=MAX_SITES).contains(&len));
        let m = site_mask(len);
        PauliString { len: len as u8, x: x & m, z: z & m }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false: a string has at least one site.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn x_mask(&self) -> u64 {
        self.x
    }

    pub(crate) fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, site: usize) -> Letter {
        match ((self.x >> site) & 1, (self.z >> site) & 1) {
            (0, 0) => Letter::I,
            (1, 0) => Letter::X,
            (1, 1) => Letter::Y,
            _ => Letter::Z,
        }
    }

    pub fn set(&mut self, site: usize, letter: Letter) {
        let (bx, bz) = letter.bits();
        let b = 1u64 << site;
        self.x = if bx { self.x | b } else { self.x & !b };
        self.z = if bz { self.z | b } else { self.z & !b };
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.len()).map(|j| self.letter(j)).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (self.support_mask() >> j) & 1 == 1).collect()
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> u32 {
        self.support_mask().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    /// Linear extent `max − min + 1` of the support, 0 for the identity.
    pub fn range(&self) -> usize {
        let s = self.support_mask();
        if s == 0 {
            return 0;
        }
        (63 - s.leading_zeros() as usize) - s.trailing_zeros() as usize + 1
    }

    /// Length of the shortest arc of the ring covering the support.
    pub fn cyclic_range(&self) -> usize {
        let s = self.support_mask();
        if s == 0 {
            return 0;
        }
        let n = self.len();
        // largest run of empty sites, going around the ring
        let mut best_gap = 0usize;
        let mut gap = 0usize;
        for j in 0..2 * n {
            if (s >> (j % n)) & 1 == 1 {
                gap = 0;
            } else {
                gap += 1;
                best_gap = best_gap.max(gap.min(n));
            }
        }
        n - best_gap
    }

    /// Shift every letter from site `j` to site `j + shift` (periodic).
    pub fn translate(&self, shift: usize) -> Self {
        let n = self.len();
        let shift = shift % n;
        if shift == 0 {
            return *self;
        }
        let m = site_mask(n);
        let rot = |v: u64| ((v << shift) | (v >> (n - shift))) & m;
        PauliString { len: self.len, x: rot(self.x), z: rot(self.z) }
    }

    /// Site-major sort key with letter order I < X < Y < Z.
    pub fn sort_key(&self) -> u128 {
        let mut key = 0u128;
        for j in 0..self.len() {
            key |= self.letter(j).code() << (2 * (MAX_SITES - 1 - j));
        }
        key
    }

    /// σ-product phase exponent (power of i) and anticommutation flag.
    #[inline]
    fn sigma_phase(a: &PauliString, b: &PauliString) -> (u32, bool) {
        let (xa, ya, za) = (a.x & !a.z, a.x & a.z, !a.x & a.z);
        let (xb, yb, zb) = (b.x & !b.z, b.x & b.z, !b.x & b.z);
        let plus = (xa & yb) | (ya & zb) | (za & xb);
        let minus = (ya & xb) | (za & yb) | (xa & zb);
        let p = plus.count_ones();
        let m = minus.count_ones();
        ((4 + p % 4 - m % 4) % 4, (p + m) % 2 == 1)
    }

    /// Product of equal-length strings without the length check.
    #[inline]
    pub(crate) fn mul_raw(a: &PauliString, b: &PauliString) -> (C64, PauliString, bool) {
        let (k, anti) = Self::sigma_phase(a, b);
        let c = PauliString { len: a.len, x: a.x ^ b.x, z: a.z ^ b.z };
        let exp = c.weight() as i32 - a.weight() as i32 - b.weight() as i32;
        let mag = (2.0f64).powi(exp);
        let phase = match k {
            0 => C64::new(mag, 0.0),
            1 => C64::new(0.0, mag),
            2 => C64::new(-mag, 0.0),
            _ => C64::new(0.0, -mag),
        };
        (phase, c, anti)
    }

    /// `a·b = λ·c` in the spin-1/2 algebra; returns `(λ, c)`.
    pub fn multiply(a: &PauliString, b: &PauliString) -> Result<(C64, PauliString)> {
        if a.len != b.len {
            return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
        }
        let (ph, c, _) = Self::mul_raw(a, b);
        Ok((ph, c))
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        !Self::sigma_phase(self, other).1
    }

    /// Smallest translate under `sort_key`-independent internal order, and the orbit size.
    pub(crate) fn canonical(&self) -> (PauliString, usize) {
        let n = self.len();
        let m = site_mask(n);
        let (mut bx, mut bz) = (self.x, self.z);
        let (x0, z0) = (self.x, self.z);
        let mut period = n;
        let (mut cx, mut cz) = (self.x, self.z);
        for s in 1..n {
            cx = ((cx << 1) | (cx >> (n - 1))) & m;
            cz = ((cz << 1) | (cz >> (n - 1))) & m;
            if cx == x0 && cz == z0 {
                period = s;
                break;
            }
            if (cx, cz) < (bx, bz) {
                bx = cx;
                bz = cz;
            }
        }
        (PauliString { len: self.len, x: bx, z: bz }, period)
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = (self.x ^ other.x) | (self.z ^ other.z);
            if diff == 0 {
                return Ordering::Equal;
            }
            let j = diff.trailing_zeros() as usize;
            self.letter(j).cmp(&other.letter(j))
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len() {
            write!(f, "{}", self.letter(j).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter `{c}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        PauliString::from_letters(&letters)
    }
}
