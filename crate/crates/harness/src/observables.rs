//! Observable names used in configs and file names.

use std::fmt;
use std::str::FromStr;

use prethermal::algebra::{collective, dipolar, Axis, OperatorSum};
use prethermal::ed::{DiagonalProjection, EigenbasisOperator, FloquetSpectrum};
use prethermal::expansions::{dpre_expand, floquet_magnus, h_pre, MAX_DPRE_ORDER, MAX_MAGNUS_ORDER};
use prethermal::qc::{build_basis, lambda_matrix, LambdaMatrix};
use prethermal::{FloquetModel, ModelKind};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObservableSpec {
    Collective(Axis),
    Dipolar(Axis),
    Hbar,
    Hpre(usize),
    Dpre(usize),
    /// 1-based, counted from the largest Λ eigenvalue.
    Eigen(usize),
}

fn axis_char(a: Axis) -> char {
    match a {
        Axis::X => 'x',
        Axis::Y => 'y',
        Axis::Z => 'z',
    }
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservableSpec::Collective(a) => write!(f, "{}", axis_char(*a).to_ascii_uppercase()),
            ObservableSpec::Dipolar(a) => write!(f, "D{}", axis_char(*a)),
            ObservableSpec::Hbar => f.write_str("Hbar"),
            ObservableSpec::Hpre(m) => write!(f, "Hpre({m})"),
            ObservableSpec::Dpre(m) => write!(f, "Dpre({m})"),
            ObservableSpec::Eigen(k) => write!(f, "eigen({k})"),
        }
    }
}

fn call_arg(s: &str, name: &str) -> Option<String> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')').map(|a| a.trim().to_string())
}

impl FromStr for ObservableSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let simple = match s {
            "X" => Some(ObservableSpec::Collective(Axis::X)),
            "Y" => Some(ObservableSpec::Collective(Axis::Y)),
            "Z" => Some(ObservableSpec::Collective(Axis::Z)),
            "Dx" | "D_x" => Some(ObservableSpec::Dipolar(Axis::X)),
            "Dy" | "D_y" => Some(ObservableSpec::Dipolar(Axis::Y)),
            "Dz" | "D_z" => Some(ObservableSpec::Dipolar(Axis::Z)),
            "Hbar" => Some(ObservableSpec::Hbar),
            _ => None,
        };
        if let Some(o) = simple {
            return Ok(o);
        }
        let unknown = || HarnessError::UnknownObservable(s.to_string());
        for (name, make) in [
            ("Hpre", ObservableSpec::Hpre as fn(usize) -> ObservableSpec),
            ("Dpre", ObservableSpec::Dpre),
            ("eigen", ObservableSpec::Eigen),
        ] {
            if let Some(arg) = call_arg(s, name) {
                return arg.parse::<usize>().map(make).map_err(|_| unknown());
            }
        }
        Err(unknown())
    }
}

impl ObservableSpec {
    /// Static checks against the model kind and order caps.
    pub fn check(self, kind: ModelKind) -> Result<()> {
        match self {
            ObservableSpec::Hpre(m) if m > MAX_MAGNUS_ORDER => {
                Err(HarnessError::Config(format!("Hpre order {m} exceeds {MAX_MAGNUS_ORDER}")))
            }
            ObservableSpec::Dpre(m) if kind != ModelKind::Kdm => {
                Err(HarnessError::Config(format!("Dpre({m}) is defined for KDM only")))
            }
            ObservableSpec::Dpre(m) if !(2..=MAX_DPRE_ORDER).contains(&m) => {
                Err(HarnessError::Config(format!("Dpre order {m} outside 2..={MAX_DPRE_ORDER}")))
            }
            ObservableSpec::Eigen(0) => Err(HarnessError::Config("eigen(k) is 1-based".into())),
            _ => Ok(()),
        }
    }

    pub fn needs_basis(self) -> bool {
        matches!(self, ObservableSpec::Eigen(_))
    }
}

/// `O` or `O:O'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObservablePair {
    pub left: ObservableSpec,
    pub right: ObservableSpec,
}

impl FromStr for ObservablePair {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((a, b)) => Ok(ObservablePair { left: a.parse()?, right: b.parse()? }),
            None => {
                let o: ObservableSpec = s.parse()?;
                Ok(ObservablePair { left: o, right: o })
            }
        }
    }
}

/// An operator, or a rotated-frame operator `e^{−S} D e^{S}` kept as the pair `(D, S)`.
#[derive(Clone, Debug)]
pub enum Resolved {
    Plain(OperatorSum),
    Frame { d: OperatorSum, s: OperatorSum },
}

impl Resolved {
    pub fn eigenbasis(&self, spectrum: &FloquetSpectrum) -> Result<EigenbasisOperator> {
        Ok(match self {
            Resolved::Plain(a) => EigenbasisOperator::new(a, spectrum)?,
            Resolved::Frame { d, s } => EigenbasisOperator::conjugated(d, s, spectrum)?,
        })
    }

    pub fn projection(&self, spectrum: &FloquetSpectrum) -> Result<DiagonalProjection> {
        Ok(match self {
            Resolved::Plain(a) => DiagonalProjection::new(a, spectrum)?,
            Resolved::Frame { d, s } => DiagonalProjection::conjugated(d, s, spectrum)?,
        })
    }

    /// `⟨A(∞) A⟩`.
    pub fn fidelity(&self, spectrum: &FloquetSpectrum) -> Result<f64> {
        let p = self.projection(spectrum)?;
        Ok(p.overlap(&p))
    }
}

/// Builds operators for one model point, computing Λ lazily.
pub struct Resolver<'a> {
    model: &'a FloquetModel,
    spectrum: &'a FloquetSpectrum,
    r_c: usize,
    lambda: Option<LambdaMatrix>,
}

impl<'a> Resolver<'a> {
    pub fn new(model: &'a FloquetModel, spectrum: &'a FloquetSpectrum, r_c: usize) -> Self {
        Resolver { model, spectrum, r_c, lambda: None }
    }

    pub fn resolve(&mut self, spec: ObservableSpec) -> Result<Resolved> {
        spec.check(self.model.kind)?;
        let len = self.model.len;
        let profile = self.model.profile;
        let op = match spec {
            ObservableSpec::Collective(a) => collective(a, len)?,
            ObservableSpec::Dipolar(a) => dipolar(a, len, profile)?,
            ObservableSpec::Hbar => self.model.hbar(),
            ObservableSpec::Hpre(m) => h_pre(&floquet_magnus(self.model, m)?, m, self.model.tau)?,
            ObservableSpec::Dpre(m) => {
                let (d, s) = dpre_expand(self.model, m)?.frame(m)?;
                return Ok(Resolved::Frame { d, s });
            }
            ObservableSpec::Eigen(k) => {
                if self.lambda.is_none() {
                    let basis = build_basis(len, self.r_c)?;
                    self.lambda = Some(lambda_matrix(&basis, self.spectrum)?);
                }
                self.lambda.as_ref().expect("set above").eigen_observable(k - 1)?
            }
        };
        Ok(Resolved::Plain(op))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in ["X", "Y", "Z", "Dx", "Dy", "Dz", "Hbar", "Hpre(7)", "Dpre(3)", "eigen(2)"] {
            assert_eq!(s.parse::<ObservableSpec>().unwrap().to_string(), s);
        }
        assert!("Q".parse::<ObservableSpec>().is_err());
        assert!("Hpre(x)".parse::<ObservableSpec>().is_err());
    }

    #[test]
    fn pairs() {
        let p: ObservablePair = "X:Z".parse().unwrap();
        assert_eq!(p.left, ObservableSpec::Collective(Axis::X));
        assert_eq!(p.right, ObservableSpec::Collective(Axis::Z));
        let q: ObservablePair = "Dz".parse().unwrap();
        assert_eq!(q.left, q.right);
    }

    #[test]
    fn dpre_needs_kicked_model() {
        assert!(ObservableSpec::Dpre(7).check(ModelKind::Adm).is_err());
        assert!(ObservableSpec::Dpre(7).check(ModelKind::Kdm).is_ok());
        assert!(ObservableSpec::Hpre(11).check(ModelKind::Kdm).is_err());
    }
}
