//! `key = value` sweep configuration. Blank lines and `#` comments are
//! ignored; unknown keys and repeated keys are errors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{parse_rational, serde_rational, Rational};
use crate::solver::SolveBudget;
use crate::tournament::RemovalStrategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Exhaustive Nash-Williams check at tiny `n`.
    Conjecture1,
    /// Approximate Nash-Williams filter, then Hamiltonicity.
    Theorem2,
    /// Semi-degree plus robust outexpansion filter, then Hamiltonicity.
    Expanderthm,
    /// Degree hypothesis, then semi-degree and robust expansion.
    RobustG,
    /// Edge removals from regular tournaments.
    Thomassen,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Conjecture1,
        Experiment::Theorem2,
        Experiment::Expanderthm,
        Experiment::RobustG,
        Experiment::Thomassen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Conjecture1 => "conjecture1",
            Experiment::Theorem2 => "theorem2",
            Experiment::Expanderthm => "expanderthm",
            Experiment::RobustG => "robust-g",
            Experiment::Thomassen => "thomassen",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown experiment {s:?}")))
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Random digraph model for sampled sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleModel {
    /// Each ordered pair independently with probability `density`.
    Gnp,
    /// Per instance, one of: `G(n, density)`, `G(n, p)` with `p` uniform in
    /// `[density, 1)`, or two random blocks dense inside and sparse across.
    Mixed,
}

impl FromStr for SampleModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(SampleModel::Gnp),
            "mixed" => Ok(SampleModel::Mixed),
            _ => Err(Error::InvalidParams(format!("unknown model {s:?}"))),
        }
    }
}

impl fmt::Display for SampleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleModel::Gnp => "gnp",
            SampleModel::Mixed => "mixed",
        })
    }
}

/// `start:end:step` (inclusive), `start:end`, or a single `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl NRange {
    pub fn single(n: usize) -> Self {
        NRange {
            start: n,
            end: n,
            step: 1,
        }
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step).collect()
    }
}

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("bad n range {s:?}; use n, a:b or a:b:step"));
        let parts: Vec<usize> = s
            .split(':')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let r = match parts[..] {
            [n] => NRange::single(n),
            [a, b] => NRange {
                start: a,
                end: b,
                step: 1,
            },
            [a, b, c] => NRange {
                start: a,
                end: b,
                step: c,
            },
            _ => return Err(bad()),
        };
        if r.step == 0 || r.start > r.end {
            return Err(bad());
        }
        Ok(r)
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub experiment: Experiment,
    pub n: NRange,
    pub model: SampleModel,
    #[serde(with = "serde_rational")]
    pub density: Rational,
    #[serde(with = "serde_rational")]
    pub eta: Rational,
    #[serde(with = "serde_rational")]
    pub nu: Rational,
    #[serde(with = "serde_rational")]
    pub tau: Rational,
    /// Instances per `n` for sampled experiments.
    pub trials: u64,
    pub seed: u64,
    pub strategies: Vec<RemovalStrategy>,
    /// Seeds per `(n, strategy, r)` cell for the tournament sweep.
    pub seeds: u64,
    pub budget: SolveBudget,
    /// Output prefix: writes `<out>.json` and `<out>.csv`.
    pub out: Option<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            experiment: Experiment::Theorem2,
            n: NRange::single(12),
            model: SampleModel::Gnp,
            density: Rational::new(1, 2),
            eta: Rational::new(1, 5),
            nu: Rational::new(1, 20),
            tau: Rational::new(1, 4),
            trials: 100,
            seed: 0,
            strategies: RemovalStrategy::ALL.to_vec(),
            seeds: 20,
            budget: SolveBudget::default(),
            out: None,
        }
    }
}

pub fn parse_strategies(s: &str) -> Result<Vec<RemovalStrategy>> {
    if s.trim() == "all" {
        return Ok(RemovalStrategy::ALL.to_vec());
    }
    s.split(',').map(|p| p.trim().parse()).collect()
}

impl SweepConfig {
    pub const KEYS: [&'static str; 14] = [
        "experiment",
        "n",
        "model",
        "density",
        "eta",
        "nu",
        "tau",
        "trials",
        "seed",
        "strategies",
        "seeds",
        "max_n_dp",
        "node_budget",
        "out",
    ];

    /// Parses the key-value format, starting from [`SweepConfig::default`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let mut seen = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key.to_string()) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("duplicate key {key:?}"),
                });
            }
            cfg.set(key, value).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            seen.push(key.to_string());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| -> Result<u64> {
            v.parse()
                .map_err(|_| Error::InvalidParams(format!("{key}: {v:?} is not a non-negative integer")))
        };
        match key {
            "experiment" => self.experiment = value.parse()?,
            "n" => self.n = value.parse()?,
            "model" => self.model = value.parse()?,
            "density" => self.density = parse_rational(value)?,
            "eta" => self.eta = parse_rational(value)?,
            "nu" => self.nu = parse_rational(value)?,
            "tau" => self.tau = parse_rational(value)?,
            "trials" => self.trials = int(value)?,
            "seed" => self.seed = int(value)?,
            "strategies" => self.strategies = parse_strategies(value)?,
            "seeds" => self.seeds = int(value)?,
            "max_n_dp" => self.budget = SolveBudget::new(int(value)? as usize, self.budget.node_budget),
            "node_budget" => self.budget = SolveBudget::new(self.budget.max_n_dp, int(value)?),
            "out" => self.out = Some(value.to_string()),
            _ => {
                return Err(Error::InvalidParams(format!(
                    "unknown key {key:?}; known keys: {}",
                    Self::KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if !(zero < self.density && self.density <= one) {
            return Err(Error::InvalidParams(format!("density {} outside (0, 1]", self.density)));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidParams("no removal strategies".into()));
        }
        Ok(())
    }

    /// Serialises back to the key-value format; `parse` inverts it.
    pub fn to_kv(&self) -> String {
        let strategies: Vec<&str> = self.strategies.iter().map(|s| s.name()).collect();
        let mut s = format!(
            "experiment = {}\nn = {}\nmodel = {}\ndensity = {}\neta = {}\nnu = {}\ntau = {}\n\
             trials = {}\nseed = {}\nstrategies = {}\nseeds = {}\nmax_n_dp = {}\nnode_budget = {}\n",
            self.experiment,
            self.n,
            self.model,
            self.density,
            self.eta,
            self.nu,
            self.tau,
            self.trials,
            self.seed,
            strategies.join(","),
            self.seeds,
            self.budget.max_n_dp,
            self.budget.node_budget,
        );
        if let Some(out) = &self.out {
            s.push_str(&format!("out = {out}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "# tournament sweep\nexperiment = thomassen\nn = 7:13:2\nstrategies = split, random\nseeds = 5\n\n";
        let cfg = SweepConfig::parse(text).unwrap();
        assert_eq!(cfg.experiment, Experiment::Thomassen);
        assert_eq!(cfg.n.values(), vec![7, 9, 11, 13]);
        assert_eq!(cfg.strategies, vec![RemovalStrategy::Split, RemovalStrategy::Random]);
        assert_eq!(SweepConfig::parse(&cfg.to_kv()).unwrap(), cfg);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = SweepConfig::parse("n = 5\nbogus = 1\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                msg: e.to_string().split_once(": ").unwrap().1.to_string()
            }
        );
        assert!(matches!(
            SweepConfig::parse("n = 5\nn = 6\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SweepConfig::parse("density = 0\n"),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            SweepConfig::parse("just text\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!("9:7".parse::<NRange>().is_err());
    }
}
