use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::algebra::{collective, dipolar, Axis, CouplingProfile, OperatorSum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `H1 = J·D_y`, `H2 = h·Z`.
    Kdm,
    /// `H1 = J·D_y`, `H2 = J·D_x`.
    Adm,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Kdm => "KDM",
            ModelKind::Adm => "ADM",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "KDM" => Ok(ModelKind::Kdm),
            "ADM" => Ok(ModelKind::Adm),
            _ => Err(Error::InvalidArgument(format!("unknown model kind `{s}`"))),
        }
    }
}

/// Two-step drive `U_F = exp(−i H2 τ) exp(−i H1 τ)` on a periodic chain.
#[derive(Clone, Debug)]
pub struct FloquetModel {
    pub kind: ModelKind,
    pub j: f64,
    pub h: f64,
    pub tau: f64,
    pub len: usize,
    pub profile: CouplingProfile,
    h1: OperatorSum,
    h2: OperatorSum,
}

impl FloquetModel {
    pub fn new(kind: ModelKind, j: f64, h: f64, tau: f64, len: usize, profile: CouplingProfile) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidArgument(format!("model needs L >= 2, got {len}")));
        }
        if !(j.is_finite() && h.is_finite() && tau.is_finite()) || tau < 0.0 {
            return Err(Error::InvalidArgument("couplings must be finite and tau nonnegative".into()));
        }
        let h1 = dipolar(Axis::Y, len, profile)?.scale(C64::new(j, 0.0));
        let h2 = match kind {
            ModelKind::Kdm => collective(Axis::Z, len)?.scale(C64::new(h, 0.0)),
            ModelKind::Adm => dipolar(Axis::X, len, profile)?.scale(C64::new(j, 0.0)),
        };
        Ok(FloquetModel { kind, j, h, tau, len, profile, h1, h2 })
    }

    /// `J = h = 1` with `τ = jtau`.
    pub fn with_jtau(kind: ModelKind, jtau: f64, len: usize, profile: CouplingProfile) -> Result<Self> {
        Self::new(kind, 1.0, 1.0, jtau, len, profile)
    }

    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        Self::new(self.kind, self.j, self.h, tau, self.len, self.profile)
    }

    pub fn jtau(&self) -> f64 {
        self.j * self.tau
    }

    pub fn h1(&self) -> &OperatorSum {
        &self.h1
    }

    pub fn h2(&self) -> &OperatorSum {
        &self.h2
    }

    /// Average Hamiltonian `H1 + H2`.
    pub fn hbar(&self) -> OperatorSum {
        &self.h1 + &self.h2
    }
}
