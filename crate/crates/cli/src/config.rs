//! Run configuration read from TOML (or JSON, by extension).
//!
//! Every table rejects unknown keys. Functions are written as inline tables
//! tagged by `name`, e.g. `h = { name = "power", exponent = 2.0 }`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Seed for generated coefficients; `--seed` overrides it.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Output path; `--out` overrides it.
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub series: SeriesConfig,
    /// Density function `h` of the measures and conditions.
    #[serde(default)]
    pub h: FnSpec,
    /// Class function `Φ`; `φ` is its inverse.
    #[serde(default)]
    pub phi: FnSpec,
    /// Detection threshold on `M/μ − 1` and `M/m − 1`.
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_b_grid")]
    pub b_grid: Vec<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub radius: Option<RadiusConfig>,
    #[serde(default)]
    pub criteria: Option<CriteriaConfig>,
    #[serde(default)]
    pub construct: Option<ConstructConfig>,
    #[serde(default)]
    pub lemma1: Option<Lemma1Config>,
}

fn default_beta() -> f64 {
    0.3
}

fn default_b_grid() -> Vec<f64> {
    gapseries::criteria::DEFAULT_B_GRID.to_vec()
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKindConfig {
    #[default]
    Dirichlet,
    GapPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HorizonConfig {
    Complete,
    #[default]
    Truncated,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    #[serde(default)]
    pub kind: SeriesKindConfig,
    /// `complete` for finite sums, `truncated` for prefixes of infinite series.
    #[serde(default)]
    pub horizon: HorizonConfig,
    pub exponents: ExponentsConfig,
    #[serde(default)]
    pub coefficients: Option<CoefficientsConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExponentsConfig {
    Explicit {
        values: Vec<f64>,
    },
    /// `λ_n = c·nᵖ`, `n = 0..count`.
    Power {
        c: f64,
        p: f64,
        count: usize,
    },
    /// `λ_0 = 0, λ_n = cⁿ` with `zero_first`, otherwise `λ_n = cⁿ` from `n = 0`.
    Geometric {
        c: f64,
        count: usize,
        #[serde(default = "yes")]
        zero_first: bool,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoefficientsConfig {
    Explicit {
        log_moduli: Vec<f64>,
        #[serde(default)]
        phases: Option<Vec<f64>>,
    },
    /// `ln|a_n| = −λ_n g(λ_n) + U[0,1]`, phases uniform on `[0, 2π)`.
    Random {
        growth: FnSpec,
        #[serde(default = "yes")]
        random_phases: bool,
    },
    /// Positive series with `ν(x) = n` on `[κ_n, κ_{n+1})`.
    Extremal {
        #[serde(default = "one")]
        b: f64,
        #[serde(default)]
        phi1: FnSpec,
    },
    /// `ln|a_n| = −ln Γ(λ_n + 1)`.
    ReciprocalFactorial {},
}

/// A built-in increasing function.
///
/// Parameterless variants are empty struct variants so that stray keys are
/// rejected like everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FnSpec {
    Identity {},
    Power {
        exponent: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    Exp {
        #[serde(default = "one")]
        rate: f64,
    },
    Expm1 {},
    Log {
        #[serde(default = "one")]
        scale: f64,
    },
    Log1p {},
    Xlog {},
}

impl Default for FnSpec {
    fn default() -> Self {
        FnSpec::Identity {}
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub delta: f64,
    pub guard_margin: usize,
    pub grid_points: usize,
    pub phase_tol: f64,
    pub quad_tol: f64,
    pub tail_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let eval = gapseries::series::EvalOptions::<f64>::default();
        let search = gapseries::series::PhaseSearchOpts::<f64>::default();
        Self {
            rel_tol: eval.rel_tol,
            delta: eval.delta,
            guard_margin: eval.guard_margin,
            grid_points: search.grid_points,
            phase_tol: search.phase_tol,
            quad_tol: 1e-10,
            tail_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Condition {
    #[serde(rename = "gap")]
    Gap,
    #[serde(rename = "8")]
    C8,
    #[serde(rename = "11")]
    C11,
    #[serde(rename = "12")]
    C12,
    #[serde(rename = "thm6")]
    Thm6,
    #[serde(rename = "88")]
    C88,
    #[serde(rename = "conjecture")]
    Conjecture,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::Gap,
        Condition::C8,
        Condition::C11,
        Condition::C12,
        Condition::Thm6,
        Condition::C88,
        Condition::Conjecture,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::Gap => "gap",
            Condition::C8 => "8",
            Condition::C11 => "11",
            Condition::C12 => "12",
            Condition::Thm6 => "thm6",
            Condition::C88 => "88",
            Condition::Conjecture => "conjecture",
        }
    }

    /// Whether the condition is quantified over `b`.
    pub fn uses_b(&self) -> bool {
        !matches!(self, Condition::Gap | Condition::Conjecture)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaConfig {
    /// Number of terms.
    pub n: usize,
    /// Term counts at which rows are emitted; defaults to `[n]`.
    #[serde(default)]
    pub checkpoints: Option<Vec<usize>>,
    #[serde(default = "all_conditions")]
    pub conditions: Vec<Condition>,
    /// Exponent of `Φ₀(x) = x^α` in the `thm6` condition.
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default)]
    pub phi0: FnSpec,
    #[serde(default)]
    pub phi1: FnSpec,
}

fn all_conditions() -> Vec<Condition> {
    Condition::ALL.to_vec()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructConfig {
    #[serde(default = "one")]
    pub b: f64,
    #[serde(default)]
    pub phi1: FnSpec,
    /// Exceptional intervals checked with three points each.
    #[serde(default = "default_verify")]
    pub verify_intervals: usize,
    /// `N` at which h-measure partial sums are reported.
    #[serde(default = "default_hmeas")]
    pub hmeas_checkpoints: Vec<usize>,
    #[serde(default)]
    pub membership: Option<MembershipConfig>,
}

fn default_verify() -> usize {
    30
}

fn default_hmeas() -> Vec<usize> {
    vec![100]
}

/// `ln μ(x) ≥ K₁ x Φ(K₂ x)` sampled at `samples` points of `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipConfig {
    pub k1: f64,
    pub k2: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma1Config {
    #[serde(default = "default_q")]
    pub q: Vec<f64>,
    /// Largest index; defaults to the last stored exponent.
    #[serde(default)]
    pub n_max: Option<usize>,
    /// Explicit bound on the unstored reciprocal-gap remainder; otherwise
    /// a ratio test over the last ten stored gaps is used.
    #[serde(default)]
    pub tail_bound: Option<f64>,
}

fn default_q() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let cfg = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        } else {
            Self::from_toml(&text).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
                other => other,
            })?
        };
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.beta > 0.0) {
            return bad(format!("beta = {} must be positive", self.beta));
        }
        if let Some(s) = &self.sweep {
            if !(s.x_min < s.x_max && s.step > 0.0) {
                return bad(format!("sweep needs x_min < x_max and step > 0, got {s:?}"));
            }
        }
        if let Some(r) = &self.radius {
            if !(0.0 < r.r_min && r.r_min < r.r_max && r.step > 0.0) {
                return bad(format!(
                    "radius needs 0 < r_min < r_max and step > 0, got {r:?}"
                ));
            }
        }
        if self.b_grid.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
            return bad(format!(
                "b_grid entries must be positive, got {:?}",
                self.b_grid
            ));
        }
        Ok(())
    }
}

/// `min, min + step, …` up to `max` (inclusive within a relative `1e-9` step).
pub fn grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| min + step * i as f64).collect()
}
