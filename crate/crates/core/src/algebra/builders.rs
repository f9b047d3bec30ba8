use num_complex::Complex64 as C64;

use super::pauli::{Axis, Letter, PauliString};
use super::sum::OperatorSum;
use crate::error::{Error, Result};

/// Bond weights of the dipolar couplings on a periodic chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CouplingProfile {
    NearestNeighbor,
    InverseCubeMinimalImage,
}

impl CouplingProfile {
    pub fn name(self) -> &'static str {
        match self {
            CouplingProfile::NearestNeighbor => "nearest_neighbor",
            CouplingProfile::InverseCubeMinimalImage => "inverse_cube_minimal_image",
        }
    }

    /// Coupling between sites `j` and `k` on a ring of `len` sites.
    pub fn weight(self, len: usize, j: usize, k: usize) -> f64 {
        let d = j.abs_diff(k);
        let d = d.min(len - d);
        match self {
            CouplingProfile::NearestNeighbor => (d == 1) as u8 as f64,
            CouplingProfile::InverseCubeMinimalImage => 1.0 / (d as f64).powi(3),
        }
    }
}

impl std::str::FromStr for CouplingProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nearest_neighbor" | "nearest" | "nn" => Ok(CouplingProfile::NearestNeighbor),
            "inverse_cube_minimal_image" | "inverse_cube" | "dipolar" | "exact" => {
                Ok(CouplingProfile::InverseCubeMinimalImage)
            }
            _ => Err(Error::InvalidArgument(format!("unknown coupling profile `{s}`"))),
        }
    }
}

/// `D_α = Σ_{j<k} J_jk · ½(3 S_α^j S_α^k − S_j·S_k)`.
pub fn dipolar(axis: Axis, len: usize, profile: CouplingProfile) -> Result<OperatorSum> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!("dipolar operator needs L >= 2, got {len}")));
    }
    let mut terms = Vec::new();
    for j in 0..len {
        for k in j + 1..len {
            let w = profile.weight(len, j, k);
            if w == 0.0 {
                continue;
            }
            for b in Axis::ALL {
                let c = if b == axis { w } else { -0.5 * w };
                let mut p = PauliString::identity(len)?;
                p.set(j, b.letter());
                p.set(k, b.letter());
                terms.push((p, C64::new(c, 0.0)));
            }
        }
    }
    OperatorSum::from_terms(len, terms)
}

/// Collective spin `Σ_j S_axis^j`.
pub fn collective(axis: Axis, len: usize) -> Result<OperatorSum> {
    let terms = (0..len)
        .map(|j| PauliString::single(len, j, axis.letter()).map(|p| (p, C64::new(1.0, 0.0))))
        .collect::<Result<Vec<_>>>()?;
    OperatorSum::from_terms(len, terms)
}

/// Translation sum `Σ_j T^j (S_{α1}^0 ⋯ S_{αr}^{r−1})` of a letter pattern.
pub fn pattern_sum(pattern: &[Letter], len: usize) -> Result<OperatorSum> {
    if pattern.len() > len {
        return Err(Error::InvalidArgument(format!("pattern of length {} exceeds L = {len}", pattern.len())));
    }
    let mut base = PauliString::identity(len)?;
    for (j, &l) in pattern.iter().enumerate() {
        base.set(j, l);
    }
    OperatorSum::from_terms(len, (0..len).map(|s| (base.translate(s), C64::new(1.0, 0.0))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bond_dipolar() {
        let d = dipolar(Axis::Z, 2, CouplingProfile::NearestNeighbor).unwrap();
        let expected = OperatorSum::from_text("-0.5 0 XX\n-0.5 0 YY\n1 0 ZZ").unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn minimal_image_distance() {
        let d = dipolar(Axis::Z, 4, CouplingProfile::InverseCubeMinimalImage).unwrap();
        let p: PauliString = "ZIZI".parse().unwrap();
        assert_eq!(d.coefficient(&p), C64::new(0.125, 0.0));
        let q: PauliString = "ZIIZ".parse().unwrap();
        assert_eq!(d.coefficient(&q), C64::new(1.0, 0.0));
    }

    #[test]
    fn dipolar_axes_sum_to_zero() {
        for profile in [CouplingProfile::NearestNeighbor, CouplingProfile::InverseCubeMinimalImage] {
            let s = Axis::ALL
                .iter()
                .map(|&a| dipolar(a, 6, profile).unwrap())
                .fold(OperatorSum::zero(6).unwrap(), |acc, d| &acc + &d);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn collective_norm() {
        let z = collective(Axis::Z, 5).unwrap();
        assert!((z.norm().powi(2) - 5.0 * 32.0 / 4.0).abs() < 1e-12);
        assert!(z.commutator(&dipolar(Axis::Z, 5, CouplingProfile::NearestNeighbor).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn short_chains_rejected() {
        assert!(dipolar(Axis::X, 1, CouplingProfile::NearestNeighbor).is_err());
    }
}
