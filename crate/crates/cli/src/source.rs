//! Series and functions described by a [`RunConfig`](crate::config::RunConfig).

use gapseries::constructions::{build_extremal, ExtremalSeries};
use gapseries::measure::{Builtin, PhiHandle};
use gapseries::series::{ExponentSequence, Horizon, SeriesSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{
    CoefficientsConfig, ExponentsConfig, FnSpec, HorizonConfig, SeriesConfig, SeriesKindConfig,
};
use crate::error::CliError;

pub fn builtin(spec: FnSpec) -> Builtin<f64> {
    match spec {
        FnSpec::Identity {} => Builtin::Identity,
        FnSpec::Power { exponent, scale } => Builtin::Power { scale, exponent },
        FnSpec::Exp { rate } => Builtin::Exp { rate },
        FnSpec::Expm1 {} => Builtin::ExpM1,
        FnSpec::Log { scale } => Builtin::Log { scale },
        FnSpec::Log1p {} => Builtin::Log1p,
        FnSpec::Xlog {} => Builtin::XLog,
    }
}

/// `Φ` together with its closed-form inverse when one exists.
pub struct ClassFn {
    pub forward: Builtin<f64>,
    inverse: Option<Builtin<f64>>,
}

impl ClassFn {
    pub fn new(spec: FnSpec) -> Self {
        let forward = builtin(spec);
        Self {
            inverse: forward.inverse(),
            forward,
        }
    }

    /// `φ = Φ⁻¹`, numeric when no closed form is known.
    pub fn phi(&self) -> PhiHandle<'_, f64> {
        match &self.inverse {
            Some(inv) => PhiHandle::Direct(inv),
            None => PhiHandle::inverse_of(&self.forward),
        }
    }
}

fn raw_exponents(cfg: &ExponentsConfig) -> Result<Vec<f64>, CliError> {
    Ok(match *cfg {
        ExponentsConfig::Explicit { ref values } => values.clone(),
        ExponentsConfig::Power { c, p, count } => {
            (0..count).map(|n| c * (n as f64).powf(p)).collect()
        }
        ExponentsConfig::Geometric {
            c,
            count,
            zero_first,
        } => {
            if zero_first {
                std::iter::once(0.0)
                    .chain((1..count).map(|n| c.powi(n as i32)))
                    .collect()
            } else {
                (0..count).map(|n| c.powi(n as i32)).collect()
            }
        }
    })
}

pub fn exponents(cfg: &SeriesConfig) -> Result<ExponentSequence<f64>, CliError> {
    let values = raw_exponents(&cfg.exponents)?;
    match cfg.kind {
        SeriesKindConfig::Dirichlet => Ok(ExponentSequence::dirichlet(values)?),
        SeriesKindConfig::GapPower => {
            let ints = values
                .iter()
                .map(|&v| {
                    (v >= 0.0 && v.fract() == 0.0 && v < 2f64.powi(53))
                        .then_some(v as u64)
                        .ok_or_else(|| {
                            CliError::Config(format!(
                                "gap-power exponent {v} is not a nonnegative integer"
                            ))
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ExponentSequence::gap_power(&ints)?)
        }
    }
}

fn horizon(cfg: &SeriesConfig) -> Horizon {
    match cfg.horizon {
        HorizonConfig::Complete => Horizon::Complete,
        HorizonConfig::Truncated => Horizon::Truncated,
    }
}

/// Series of the config; the extremal construction is returned alongside
/// when the coefficients come from it.
pub fn build_series(
    cfg: &SeriesConfig,
    seed: u64,
) -> Result<(SeriesSpec<f64>, Option<ExtremalSeries<f64>>), CliError> {
    let exps = exponents(cfg)?;
    let coeffs = cfg.coefficients.as_ref().ok_or_else(|| {
        CliError::Config("series.coefficients is required for this command".into())
    })?;
    let l = exps.values().to_vec();
    let spec = match coeffs {
        CoefficientsConfig::Explicit { log_moduli, phases } => {
            let phases = phases.clone().unwrap_or_else(|| vec![0.0; l.len()]);
            SeriesSpec::new(exps, log_moduli.clone(), phases, horizon(cfg))?
        }
        CoefficientsConfig::Random {
            growth,
            random_phases,
        } => {
            let g = builtin(*growth);
            let (c, p) = random_coefficients(&l, &g, *random_phases, seed);
            SeriesSpec::new(exps, c, p, horizon(cfg))?
        }
        CoefficientsConfig::ReciprocalFactorial {} => {
            let c = l
                .iter()
                .map(|&v| -statrs::function::gamma::ln_gamma(v + 1.0))
                .collect();
            SeriesSpec::positive(exps, c, horizon(cfg))?
        }
        CoefficientsConfig::Extremal { b, phi1 } => {
            let phi1 = builtin(*phi1);
            let es = build_extremal(&exps, &PhiHandle::Direct(&phi1), *b, l.len())?;
            return Ok((es.spec.clone(), Some(es)));
        }
    };
    Ok((spec, None))
}

/// `ln|a_n| = −λ_n g(λ_n) + U[0,1]`, then the phase `U[0, 2π)` when requested,
/// drawn in index order from `ChaCha8` seeded with `seed`.
pub fn random_coefficients(
    lambdas: &[f64],
    growth: &dyn gapseries::measure::MonotoneFn<f64>,
    random_phases: bool,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Vec::with_capacity(lambdas.len());
    let mut p = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let decay = if l == 0.0 { 0.0 } else { l * growth.value(l) };
        c.push(-decay + rng.gen::<f64>());
        p.push(if random_phases {
            rng.gen_range(0.0..std::f64::consts::TAU)
        } else {
            0.0
        });
    }
    (c, p)
}
