//! Run configuration: presets, a flat `key = value` format and
//! `SUPERQ_`-prefixed environment overrides.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Osp,
    Affine,
    RootVectors,
    Prefund,
    Grothendieck,
    Functional,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Osp,
        Suite::Affine,
        Suite::RootVectors,
        Suite::Prefund,
        Suite::Grothendieck,
        Suite::Functional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Osp => "osp",
            Suite::Affine => "affine",
            Suite::RootVectors => "root-vectors",
            Suite::Prefund => "prefund",
            Suite::Grothendieck => "grothendieck",
            Suite::Functional => "functional",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|x| vec![*x])
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Fast,
    Full,
    Convergence,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Preset::Fast),
            "full" => Ok(Preset::Full),
            "convergence" => Ok(Preset::Convergence),
            _ => Err(Error::Parse(format!("unknown preset `{s}`"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Fast => "fast",
            Preset::Full => "full",
            Preset::Convergence => "convergence",
        })
    }
}

/// Which kinds of check to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Exact checks on Gaussian rationals only.
    Exact,
    /// Floating-point checks only.
    Numeric,
    Both,
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "numeric" => Ok(Backend::Numeric),
            "both" => Ok(Backend::Both),
            _ => Err(Error::Parse(format!("unknown backend `{s}`"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Numeric => "numeric",
            Backend::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub preset: Preset,
    pub backend: Backend,
    /// Base seed; sample `k` uses `seed + k`.
    pub seed: u64,
    /// Sample points for checks evaluated pointwise.
    pub seeds: usize,
    pub max_spin: i64,
    /// Fock levels `N`.
    pub fock_levels: usize,
    /// Root-vector truncation of universal products.
    pub nmax: usize,
    /// Order `M` of the `f_q` series.
    pub fq_order: usize,
    pub tolerance: f64,
    /// Real twist `t`.
    pub twist: f64,
    /// Real ratio `λ/ν` for lattice numerics.
    pub lambda_ratio: f64,
    pub sites: usize,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    pub report: Option<String>,
    /// Keep only checks whose id contains this text.
    pub filter: Option<String>,
}

impl RunConfig {
    pub fn preset(preset: Preset) -> Self {
        let base = RunConfig {
            suites: Vec::new(),
            preset,
            backend: Backend::Both,
            seed: 0,
            seeds: 3,
            max_spin: 2,
            fock_levels: 16,
            nmax: 8,
            fq_order: 40,
            tolerance: 1e-6,
            twist: 0.5,
            lambda_ratio: 1.0 / 6.0,
            sites: 1,
            workers: 0,
            report: None,
            filter: None,
        };
        match preset {
            Preset::Fast => base,
            Preset::Full => RunConfig {
                seeds: 7,
                max_spin: 4,
                fock_levels: 28,
                nmax: 12,
                ..base
            },
            Preset::Convergence => RunConfig {
                fock_levels: 28,
                nmax: 12,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let range = |name: &str, ok: bool, allowed: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be in {allowed}")))
            }
        };
        range("seeds", (1..=32).contains(&self.seeds), "1..=32")?;
        range("max-spin", (0..=4).contains(&self.max_spin), "0..=4")?;
        range("fock-levels", (6..=40).contains(&self.fock_levels), "6..=40")?;
        range("nmax", (2..=20).contains(&self.nmax), "2..=20")?;
        range("fq-order", (4..=120).contains(&self.fq_order), "4..=120")?;
        range("tolerance", self.tolerance > 0.0 && self.tolerance <= 1e-2, "(0, 1e-2]")?;
        range("twist", self.twist > 0.0 && self.twist < 1.0, "(0, 1)")?;
        range("lambda-ratio", self.lambda_ratio > 0.0 && self.lambda_ratio <= 0.3, "(0, 0.3]")?;
        range("sites", (1..=3).contains(&self.sites), "1..=3")?;
        range("workers", self.workers <= 256, "0..=256")?;
        Ok(())
    }

    const KEYS: [&'static str; 16] = [
        "suites",
        "preset",
        "backend",
        "seed",
        "seeds",
        "max-spin",
        "fock-levels",
        "nmax",
        "fq-order",
        "tolerance",
        "twist",
        "lambda-ratio",
        "sites",
        "workers",
        "report",
        "filter",
    ];

    /// Sets one key. `preset` resets every other field to that preset.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Parse(format!("bad value `{v}` for {key}")))
        }
        let v = value.trim();
        match key {
            "suites" => {
                let mut out = Vec::new();
                for name in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    for s in Suite::parse_selection(name)? {
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
                out.sort();
                self.suites = out;
            }
            "preset" => {
                let suites = std::mem::take(&mut self.suites);
                *self = RunConfig {
                    suites,
                    ..RunConfig::preset(v.parse()?)
                };
            }
            "backend" => self.backend = v.parse()?,
            "seed" => self.seed = num(key, v)?,
            "seeds" => self.seeds = num(key, v)?,
            "max-spin" => self.max_spin = num(key, v)?,
            "fock-levels" => self.fock_levels = num(key, v)?,
            "nmax" => self.nmax = num(key, v)?,
            "fq-order" => self.fq_order = num(key, v)?,
            "tolerance" => self.tolerance = num(key, v)?,
            "twist" => self.twist = num(key, v)?,
            "lambda-ratio" => self.lambda_ratio = num(key, v)?,
            "sites" => self.sites = num(key, v)?,
            "workers" => self.workers = num(key, v)?,
            "report" => self.report = (!v.is_empty()).then(|| v.to_string()),
            "filter" => self.filter = (!v.is_empty()).then(|| v.to_string()),
            _ => return Err(Error::Parse(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
        let mut pairs = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", no + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(pairs)
    }

    /// Starts from the last `preset` given (default `fast`), then applies
    /// the other keys in order.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let mut cfg = RunConfig::preset(Preset::Fast);
        if let Some((_, v)) = pairs.iter().rev().find(|(k, _)| k == "preset") {
            cfg.set("preset", v)?;
        }
        for (k, v) in pairs.iter().filter(|(k, _)| k != "preset") {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        Self::from_pairs(&Self::parse_kv(text)?)
    }

    pub fn to_kv(&self) -> String {
        self.pairs().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let suites = self.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
        vec![
            ("suites", suites),
            ("preset", self.preset.to_string()),
            ("backend", self.backend.to_string()),
            ("seed", self.seed.to_string()),
            ("seeds", self.seeds.to_string()),
            ("max-spin", self.max_spin.to_string()),
            ("fock-levels", self.fock_levels.to_string()),
            ("nmax", self.nmax.to_string()),
            ("fq-order", self.fq_order.to_string()),
            ("tolerance", format!("{:e}", self.tolerance)),
            ("twist", self.twist.to_string()),
            ("lambda-ratio", self.lambda_ratio.to_string()),
            ("sites", self.sites.to_string()),
            ("workers", self.workers.to_string()),
            ("report", self.report.clone().unwrap_or_default()),
            ("filter", self.filter.clone().unwrap_or_default()),
        ]
    }

    /// `SUPERQ_<KEY>` variables as pairs, with `-` in keys written as `_`.
    pub fn env_pairs(get: impl Fn(&str) -> Option<String>) -> Vec<(String, String)> {
        Self::KEYS
            .iter()
            .filter_map(|key| {
                let var = format!("SUPERQ_{}", key.to_uppercase().replace('-', "_"));
                get(&var).map(|v| (key.to_string(), v))
            })
            .collect()
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::preset(Preset::Fast)
    }
}
