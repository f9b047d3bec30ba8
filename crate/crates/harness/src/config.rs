use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use prethermal::algebra::CouplingProfile;
use prethermal::ModelKind;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::observables::ObservablePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Dynamics,
    Spectrum,
    Expansions,
    Jc,
}

impl Command {
    pub const ALL: [Command; 4] = [Command::Dynamics, Command::Spectrum, Command::Expansions, Command::Jc];

    pub fn name(self) -> &'static str {
        match self {
            Command::Dynamics => "dynamics",
            Command::Spectrum => "spectrum",
            Command::Expansions => "expansions",
            Command::Jc => "jc",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CachePolicy {
    #[default]
    Reuse,
    Overwrite,
}

impl FromStr for CachePolicy {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reuse" => Ok(CachePolicy::Reuse),
            "overwrite" => Ok(CachePolicy::Overwrite),
            _ => Err(HarnessError::Config(format!("cache policy must be `reuse` or `overwrite`, got `{s}`"))),
        }
    }
}

/// A Jτ grid, either `"start:stop:step"` or an explicit list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JtauGrid {
    Range(String),
    List(Vec<f64>),
}

/// Rounds away the accumulation error of `start + i·step`.
fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

impl JtauGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let v = match self {
            JtauGrid::List(v) => v.clone(),
            JtauGrid::Range(s) => {
                let parts: Vec<f64> = s
                    .split(':')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| HarnessError::Config(format!("bad Jτ grid `{s}`")))?;
                let [start, stop, step] = parts[..] else {
                    return Err(HarnessError::Config(format!("Jτ grid `{s}` must be start:stop:step")));
                };
                if !(step > 0.0) || stop < start {
                    return Err(HarnessError::Config(format!("Jτ grid `{s}` needs step > 0 and stop >= start")));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| snap(start + i as f64 * step)).collect()
            }
        };
        if v.is_empty() {
            return Err(HarnessError::Config("Jτ grid is empty".into()));
        }
        if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(HarnessError::Config("Jτ values must be finite and nonnegative".into()));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(HarnessError::Config("Jτ grid must be strictly increasing".into()));
        }
        Ok(v)
    }
}

impl FromStr for JtauGrid {
    type Err = HarnessError;

    /// `a:b:c` or a comma-separated list.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains(':') {
            return Ok(JtauGrid::Range(s.to_string()));
        }
        let v = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| HarnessError::Config(format!("bad Jτ list `{s}`")))?;
        Ok(JtauGrid::List(v))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: String,
    #[serde(rename = "L")]
    pub lengths: Vec<usize>,
    pub jtau: JtauGrid,
    pub r_c: usize,
    pub orders: Vec<usize>,
    /// `O` for an autocorrelation or `O:O'` for a pair.
    pub observables: Vec<String>,
    pub n_max: usize,
    pub coupling_profile: String,
    pub threshold: f64,
    pub top_k: usize,
    /// Jτ values at which operators are dumped as text.
    pub dump_jtau: Vec<f64>,
    pub out: PathBuf,
    pub cache: CachePolicy,
    pub workers: Option<usize>,
}

/// Keys that do not change results and stay out of the digest.
const NON_RESULT_KEYS: [&str; 3] = ["out", "cache", "workers"];

impl SweepConfig {
    pub fn defaults(command: Command) -> Self {
        let base = SweepConfig {
            model: "KDM".into(),
            lengths: vec![8, 10, 12],
            jtau: JtauGrid::Range("0.1:3.0:0.1".into()),
            r_c: 3,
            orders: vec![7],
            observables: vec!["X".into(), "Y".into(), "Z".into()],
            n_max: 1000,
            coupling_profile: "nearest_neighbor".into(),
            threshold: 0.5,
            top_k: 3,
            dump_jtau: Vec::new(),
            out: PathBuf::from("out"),
            cache: CachePolicy::Reuse,
            workers: None,
        };
        match command {
            Command::Dynamics => SweepConfig { jtau: JtauGrid::List(vec![0.5, 2.0]), ..base },
            Command::Spectrum => SweepConfig { lengths: vec![10, 12], dump_jtau: vec![0.5], ..base },
            Command::Expansions => {
                SweepConfig { lengths: vec![12], jtau: JtauGrid::Range("0.2:2.0:0.2".into()), ..base }
            }
            Command::Jc => {
                let mut grid = vec![0.05];
                grid.extend((1..=30).map(|i| snap(0.1 * i as f64)));
                SweepConfig {
                    jtau: JtauGrid::List(grid),
                    coupling_profile: "inverse_cube_minimal_image".into(),
                    ..base
                }
            }
        }
    }

    /// Defaults for `command`, overlaid with the keys present in `doc`.
    pub fn from_json(command: Command, doc: &str) -> Result<Self> {
        let overlay: Value = serde_json::from_str(doc)?;
        let Value::Object(overlay) = overlay else {
            return Err(HarnessError::Config("config document must be a JSON object".into()));
        };
        let Value::Object(mut merged) = serde_json::to_value(Self::defaults(command))? else {
            unreachable!("config serializes to an object")
        };
        for (k, v) in overlay {
            if !merged.contains_key(&k) {
                return Err(HarnessError::Config(format!("unknown config key `{k}`")));
            }
            merged.insert(k, v);
        }
        let cfg: SweepConfig = serde_json::from_value(Value::Object(merged))?;
        Ok(cfg)
    }

    pub fn load(command: Command, path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::defaults(command)),
            Some(p) => {
                let doc = std::fs::read_to_string(p).map_err(|e| HarnessError::io(p, e))?;
                Self::from_json(command, &doc)
            }
        }
    }

    /// Sorted-key JSON of the result-relevant fields.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Value::Object(m) = &mut v {
            for k in NON_RESULT_KEYS {
                m.remove(k);
            }
        }
        // serde_json maps are ordered by key
        serde_json::to_string(&v).expect("value serializes")
    }

    /// SHA-256 of the canonical encoding, hex.
    pub fn digest(&self) -> String {
        hex(&Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn kind(&self) -> Result<ModelKind> {
        Ok(self.model.parse()?)
    }

    pub fn profile(&self) -> Result<CouplingProfile> {
        Ok(self.coupling_profile.parse()?)
    }

    pub fn jtau_values(&self) -> Result<Vec<f64>> {
        self.jtau.values()
    }

    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    pub fn pairs(&self) -> Result<Vec<ObservablePair>> {
        self.observables.iter().map(|s| s.parse()).collect()
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self, command: Command) -> Result<()> {
        let kind = self.kind()?;
        self.profile()?;
        self.jtau_values()?;
        if self.lengths.is_empty() {
            return Err(HarnessError::Config("L list is empty".into()));
        }
        if let Some(&l) = self.lengths.iter().find(|&&l| !(2..=prethermal::ed::DENSE_CAP).contains(&l)) {
            return Err(HarnessError::Config(format!("L = {l} outside 2..={}", prethermal::ed::DENSE_CAP)));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(HarnessError::Config("threshold must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(HarnessError::Config("workers must be at least 1".into()));
        }
        let needs_basis = match command {
            Command::Spectrum => true,
            Command::Dynamics => {
                let pairs = self.pairs()?;
                if pairs.is_empty() {
                    return Err(HarnessError::Config("no observables".into()));
                }
                for p in &pairs {
                    p.left.check(kind)?;
                    p.right.check(kind)?;
                }
                pairs.iter().any(|p| p.left.needs_basis() || p.right.needs_basis())
            }
            Command::Expansions => {
                if self.orders.is_empty() {
                    return Err(HarnessError::Config("orders list is empty".into()));
                }
                let cap = match kind {
                    ModelKind::Kdm => prethermal::expansions::MAX_DPRE_ORDER,
                    ModelKind::Adm => prethermal::expansions::MAX_MAGNUS_ORDER,
                };
                if self.max_order() > cap {
                    return Err(HarnessError::Config(format!(
                        "order {} exceeds the cap {cap} for {kind}",
                        self.max_order()
                    )));
                }
                false
            }
            Command::Jc => false,
        };
        if needs_basis {
            if let Some(&l) = self.lengths.iter().find(|&&l| l < 2 * self.r_c + 2) {
                return Err(HarnessError::Config(format!("L = {l} is below 2·r_c + 2 = {}", 2 * self.r_c + 2)));
            }
        }
        Ok(())
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
