//! Run configuration: flags override a `key=value` file, which overrides the
//! `CALKIT_SEED` environment variable (seed only) and the per-command
//! defaults. Everything is validated before any computation starts.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use calkit_core::exactcore::parse_scalar;
use calkit_core::{ExactScalar, ModelKind, ModelParams, PairCoefficient};
use serde::{Serialize, Serializer};

pub const SEED_ENV: &str = "CALKIT_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Every key accepted in a config file (and, with a `--` prefix, as a flag).
pub const KEYS: &[&str] = &[
    "alpha",
    "bessel-order",
    "bn",
    "bn-pair-coefficient",
    "box-hi",
    "box-lo",
    "delta",
    "fd-order",
    "fd-step",
    "format",
    "ksq",
    "lambda",
    "lambda1",
    "levels",
    "m",
    "max-degree",
    "model",
    "n",
    "negative-controls",
    "order",
    "out",
    "points",
    "samples",
    "seed",
    "tol-fd",
    "tol-ratio",
    "tol-sf",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

type CResult<T> = std::result::Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> CResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    AlgebraCheck,
    Kernel,
    Coherent,
    ScatterVerify,
    BoundVerify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AlgebraCheck => "algebra-check",
            Command::Kernel => "kernel",
            Command::Coherent => "coherent",
            Command::ScatterVerify => "scatter-verify",
            Command::BoundVerify => "bound-verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Key/value pairs collected from flags or a file, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> CResult<()> {
        if !KEYS.contains(&key) {
            return err(format!("unknown config key `{key}`"));
        }
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> CResult<Self> {
        let mut raw = RawConfig::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("config line {}: expected key=value, got `{line}`", idx + 1));
            };
            raw.set(k.trim(), v.trim())
                .map_err(|e| ConfigError(format!("config line {}: {e}", idx + 1)))?;
        }
        Ok(raw)
    }

    /// Entries of `over` replace entries of `self`.
    pub fn overlay(mut self, over: &RawConfig) -> Self {
        for (k, v) in &over.values {
            self.values.insert(k.clone(), v.clone());
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedSource {
    Flag,
    File,
    Env,
    Default,
}

fn ser_scalars<S: Serializer>(v: &[ExactScalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn ser_kind<S: Serializer>(k: &ModelKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match k {
        ModelKind::An => "an",
        ModelKind::Bn => "bn",
    })
}

fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Fully resolved configuration; echoed verbatim into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(serialize_with = "ser_kind")]
    pub model: ModelKind,
    /// Adds the B_N grid to an A_N run.
    pub bn: bool,
    pub n: Vec<usize>,
    #[serde(serialize_with = "ser_scalars")]
    pub alpha: Vec<ExactScalar>,
    #[serde(serialize_with = "ser_scalars")]
    pub lambda: Vec<ExactScalar>,
    #[serde(serialize_with = "ser_scalars")]
    pub lambda1: Vec<ExactScalar>,
    #[serde(serialize_with = "ser_display")]
    pub bn_pair_coefficient: PairCoefficient,
    pub m: Vec<u32>,
    #[serde(serialize_with = "ser_scalars")]
    pub ksq: Vec<ExactScalar>,
    pub order: u32,
    pub bessel_order: u32,
    pub seed: u64,
    pub seed_source: SeedSource,
    pub samples: usize,
    pub max_degree: u32,
    pub levels: u32,
    pub points: usize,
    pub box_lo: f64,
    pub box_hi: f64,
    pub delta: f64,
    pub fd_order: u8,
    pub fd_step: f64,
    pub tol_fd: f64,
    pub tol_sf: f64,
    pub tol_ratio: f64,
    pub negative_controls: bool,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn parse_list<T>(key: &str, text: &str, f: impl Fn(&str) -> CResult<T>) -> CResult<Vec<T>> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return err(format!("--{key}: empty entry in `{text}`"));
    }
    items.into_iter().map(f).collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, text: &str) -> CResult<T> {
    text.trim()
        .parse()
        .map_err(|_| ConfigError(format!("--{key}: cannot parse `{text}`")))
}

fn parse_bool(key: &str, text: &str) -> CResult<bool> {
    match text.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => err(format!("--{key}: expected true or false, got `{other}`")),
    }
}

fn parse_rational(key: &str, text: &str) -> CResult<ExactScalar> {
    parse_scalar(text).map_err(|e| ConfigError(format!("--{key}: {e} in `{text}`")))
}

struct Defaults {
    n: &'static str,
    alpha: &'static str,
    lambda: &'static str,
    lambda1: &'static str,
    m: &'static str,
    ksq: &'static str,
    order: u32,
}

fn defaults(command: Command, model: ModelKind) -> Defaults {
    let bn = model == ModelKind::Bn;
    let (n, alpha, m, ksq, order) = match command {
        Command::AlgebraCheck => ("2,3", "1/2,2", "0,1,2,3", "1", 10),
        Command::Kernel => ("2", "2", if bn { "0,2,4" } else { "0,1,2" }, "1", 10),
        Command::Coherent => ("2", "2", "0", "1", 10),
        Command::ScatterVerify => ("2", "2", if bn { "0" } else { "0,1" }, "1", 30),
        Command::BoundVerify => ("2", "2", if bn { "0,2" } else { "0,1,2,3" }, "1", 10),
    };
    Defaults {
        n,
        alpha,
        lambda: "1",
        lambda1: "1",
        m,
        ksq,
        order,
    }
}

impl RunConfig {
    /// `flags` wins over `file`; `env_seed` is consulted only when neither
    /// sets a seed.
    pub fn resolve(
        command: Command,
        flags: &RawConfig,
        file: Option<&RawConfig>,
        env_seed: Option<&str>,
    ) -> CResult<Self> {
        let raw = match file {
            Some(f) => f.clone().overlay(flags),
            None => flags.clone(),
        };
        let get = |k: &str| raw.get(k);

        let model = match get("model").unwrap_or("an") {
            "an" => ModelKind::An,
            "bn" => ModelKind::Bn,
            other => return err(format!("--model: expected an or bn, got `{other}`")),
        };
        let d = defaults(command, model);
        let bn = get("bn").map(|v| parse_bool("bn", v)).transpose()?.unwrap_or(false);

        let n = parse_list("n", get("n").unwrap_or(d.n), |s| parse_num::<usize>("n", s))?;
        if let Some(bad) = n.iter().find(|&&v| v == 0 || v > 8) {
            return err(format!("--n: particle count {bad} outside 1..=8"));
        }
        let alpha = parse_list("alpha", get("alpha").unwrap_or(d.alpha), |s| parse_rational("alpha", s))?;
        let lambda = parse_list("lambda", get("lambda").unwrap_or(d.lambda), |s| parse_rational("lambda", s))?;
        let lambda1 = parse_list("lambda1", get("lambda1").unwrap_or(d.lambda1), |s| {
            parse_rational("lambda1", s)
        })?;
        let bn_pair_coefficient = match get("bn-pair-coefficient").unwrap_or("doubled") {
            "doubled" => PairCoefficient::Doubled,
            "single" => PairCoefficient::Single,
            other => {
                return err(format!(
                    "--bn-pair-coefficient: expected doubled or single, got `{other}`"
                ))
            }
        };
        let m = parse_list("m", get("m").unwrap_or(d.m), |s| parse_num::<u32>("m", s))?;
        if let Some(bad) = m.iter().find(|&&v| v > 12) {
            return err(format!("--m: degree {bad} above 12"));
        }
        let ksq = parse_list("ksq", get("ksq").unwrap_or(d.ksq), |s| parse_rational("ksq", s))?;

        let num = |key: &str, default: &str| -> CResult<f64> {
            let v: f64 = parse_num(key, get(key).unwrap_or(default))?;
            if !v.is_finite() {
                return err(format!("--{key}: must be finite"));
            }
            Ok(v)
        };
        let positive = |key: &str, default: &str| -> CResult<f64> {
            let v = num(key, default)?;
            if v <= 0.0 {
                return err(format!("--{key}: must be positive, got {v}"));
            }
            Ok(v)
        };

        let (seed, seed_source) = if let Some(s) = flags.get("seed") {
            (parse_num("seed", s)?, SeedSource::Flag)
        } else if let Some(s) = file.and_then(|f| f.get("seed")) {
            (parse_num("seed", s)?, SeedSource::File)
        } else if let Some(s) = env_seed {
            (
                s.trim()
                    .parse()
                    .map_err(|_| ConfigError(format!("{SEED_ENV}: cannot parse `{s}`")))?,
                SeedSource::Env,
            )
        } else {
            (DEFAULT_SEED, SeedSource::Default)
        };

        let fd_order: u8 = parse_num("fd-order", get("fd-order").unwrap_or("4"))?;
        if fd_order != 2 && fd_order != 4 {
            return err(format!("--fd-order: expected 2 or 4, got {fd_order}"));
        }
        let box_lo = num("box-lo", "0.5")?;
        let box_hi = num("box-hi", "3")?;
        if box_lo >= box_hi {
            return err(format!("--box-lo {box_lo} must be below --box-hi {box_hi}"));
        }
        let format = match get("format").unwrap_or("json") {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            other => return err(format!("--format: expected json, csv or text, got `{other}`")),
        };
        let order = parse_num("order", get("order").unwrap_or(&d.order.to_string()))?;
        if order > 200 {
            return err(format!("--order: {order} above 200"));
        }

        let cfg = RunConfig {
            command,
            model,
            bn,
            n,
            alpha,
            lambda,
            lambda1,
            bn_pair_coefficient,
            m,
            ksq,
            order,
            bessel_order: parse_num("bessel-order", get("bessel-order").unwrap_or("60"))?,
            seed,
            seed_source,
            samples: parse_num("samples", get("samples").unwrap_or("5"))?,
            max_degree: parse_num("max-degree", get("max-degree").unwrap_or("6"))?,
            levels: parse_num("levels", get("levels").unwrap_or("10"))?,
            points: parse_num("points", get("points").unwrap_or("20"))?,
            box_lo,
            box_hi,
            delta: positive("delta", "0.2")?,
            fd_order,
            fd_step: positive("fd-step", "1e-3")?,
            tol_fd: positive("tol-fd", "1e-6")?,
            tol_sf: positive("tol-sf", "1e-10")?,
            tol_ratio: positive("tol-ratio", "1e-8")?,
            negative_controls: get("negative-controls")
                .map(|v| parse_bool("negative-controls", v))
                .transpose()?
                .unwrap_or(false),
            format,
            out: get("out").map(PathBuf::from),
        };
        cfg.grid()?;
        Ok(cfg)
    }

    /// Model parameter grid: `n × alpha` for A_N, `n × lambda × lambda1` for
    /// B_N (both when `bn` is set on an A_N run).
    pub fn grid(&self) -> CResult<Vec<ModelParams>> {
        let mut out = Vec::new();
        let invalid = |e: calkit_core::Error| ConfigError(e.to_string());
        if self.model == ModelKind::An {
            for &n in &self.n {
                for a in &self.alpha {
                    out.push(ModelParams::a_n(n, a.clone()).map_err(invalid)?);
                }
            }
        }
        if self.model == ModelKind::Bn || self.bn {
            for &n in &self.n {
                for l in &self.lambda {
                    for l1 in &self.lambda1 {
                        out.push(
                            ModelParams::b_n(n, l.clone(), l1.clone())
                                .map_err(invalid)?
                                .with_pair_coefficient(self.bn_pair_coefficient),
                        );
                    }
                }
            }
        }
        Ok(out)
    }
}
