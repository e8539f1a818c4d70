//! Entire Dirichlet series and gap power series in log-domain form.
//!
//! A series `F(z) = Σ a_n e^{zλ_n}` is stored through its exponents `λ_n`,
//! the log-moduli `ln|a_n|` and the phases `arg a_n`. A gap power series
//! `f(z) = Σ f_k z^{n_k}` is the same object with integer exponents, read
//! through the substitution `z = e^s`, `s = ln r + iφ`.

mod eval;
mod maxterm;

pub(crate) use eval::ScaledTerms;
pub use eval::{
    BoundKind, EvalOptions, Evaluation, ModulusEstimate, PhaseDomain, PhaseExtremes,
    PhaseSearchOpts,
};
pub use maxterm::{CentralIndexTable, MaxTerm};

use crate::error::{Error, Result};
use crate::scalar::{wrap_phase, Real};

/// How the exponent sequence is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `λ_0 = 0 < λ_1 < ...`, arbitrary real exponents.
    Dirichlet,
    /// Non-negative integer exponents `n_k` of a lacunary power series.
    GapPower,
}

/// Whether the stored terms are the whole series or a prefix of an
/// infinite one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizon {
    /// The stored terms are all the nonzero terms (a polynomial or an
    /// exponential polynomial). No truncation guard applies.
    Complete,
    /// The stored terms are a prefix of an entire series; maximal-term and
    /// tail computations must be certified against the end of the prefix.
    Truncated,
}

/// Strictly increasing exponent sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSequence<T> {
    values: Vec<T>,
    kind: SeriesKind,
}

pub(crate) fn check_increasing<T: Real>(values: &[T]) -> Result<()> {
    if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSeries(format!(
            "exponent {bad} is not finite"
        )));
    }
    if let Some(w) = values.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSeries(format!(
            "exponents not strictly increasing at index {}",
            w + 1
        )));
    }
    Ok(())
}

impl<T: Real> ExponentSequence<T> {
    /// Dirichlet exponents; the first value must be exactly zero.
    pub fn dirichlet(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("empty exponent sequence".into()));
        }
        if values[0] != T::zero() {
            return Err(Error::InvalidSeries(
                "Dirichlet exponents must start at 0".into(),
            ));
        }
        check_increasing(&values)?;
        Ok(Self {
            values,
            kind: SeriesKind::Dirichlet,
        })
    }

    /// Integer exponents of a gap power series.
    pub fn gap_power(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("empty exponent sequence".into()));
        }
        let converted = values
            .iter()
            .map(|&n| {
                T::from_u64(n)
                    .filter(|v| v.to_u64() == Some(n))
                    .ok_or_else(|| {
                        Error::InvalidSeries(format!("exponent {n} not exact in scalar type"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        check_increasing(&converted)?;
        Ok(Self {
            values: converted,
            kind: SeriesKind::GapPower,
        })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest gap `λ_{n+1} − λ_n`, or `None` for a single exponent.
    pub fn min_gap(&self) -> Option<T> {
        self.values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(None, |acc: Option<T>, g| Some(acc.map_or(g, |a| a.min(g))))
    }

    /// True when every exponent is an integer, so `y ↦ F(x+iy)` is 2π-periodic.
    pub fn is_integral(&self) -> bool {
        self.kind == SeriesKind::GapPower || self.values.iter().all(|v| v.fract() == T::zero())
    }

    /// First `len` exponents.
    pub fn prefix(&self, len: usize) -> Self {
        Self {
            values: self.values[..len.min(self.values.len())].to_vec(),
            kind: self.kind,
        }
    }
}

/// `ln|a_n| + (x+iy)λ_n + i·arg a_n` split into magnitude and reduced phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermValue<T> {
    pub log_magnitude: T,
    pub phase: T,
}

/// Series with nonzero coefficients stored in log-polar form.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec<T> {
    exponents: ExponentSequence<T>,
    log_moduli: Vec<T>,
    phases: Vec<T>,
    horizon: Horizon,
}

impl<T: Real> SeriesSpec<T> {
    pub fn new(
        exponents: ExponentSequence<T>,
        log_moduli: Vec<T>,
        phases: Vec<T>,
        horizon: Horizon,
    ) -> Result<Self> {
        if log_moduli.len() != exponents.len() || phases.len() != exponents.len() {
            return Err(Error::InvalidSeries(format!(
                "length mismatch: {} exponents, {} log-moduli, {} phases",
                exponents.len(),
                log_moduli.len(),
                phases.len()
            )));
        }
        if let Some(i) = log_moduli.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "log-modulus {i} is not finite"
            )));
        }
        if let Some(i) = phases.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidSeries(format!("phase {i} is not finite")));
        }
        let phases = phases.into_iter().map(wrap_phase).collect();
        Ok(Self {
            exponents,
            log_moduli,
            phases,
            horizon,
        })
    }

    /// Series with all coefficients positive.
    pub fn positive(
        exponents: ExponentSequence<T>,
        log_moduli: Vec<T>,
        horizon: Horizon,
    ) -> Result<Self> {
        let phases = vec![T::zero(); log_moduli.len()];
        Self::new(exponents, log_moduli, phases, horizon)
    }

    pub fn exponents(&self) -> &ExponentSequence<T> {
        &self.exponents
    }

    pub fn lambdas(&self) -> &[T] {
        self.exponents.values()
    }

    pub fn log_moduli(&self) -> &[T] {
        &self.log_moduli
    }

    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn horizon(&self) -> Horizon {
        self.horizon
    }

    pub fn kind(&self) -> SeriesKind {
        self.exponents.kind()
    }

    pub fn len(&self) -> usize {
        self.log_moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_moduli.is_empty()
    }

    /// Term `a_n e^{(x+iy)λ_n}` in log-polar form.
    pub fn term(&self, n: usize, x: T, y: T) -> TermValue<T> {
        let lambda = self.lambdas()[n];
        TermValue {
            log_magnitude: self.log_moduli[n] + x * lambda,
            phase: wrap_phase(self.phases[n] + y * lambda),
        }
    }

    /// Same exponents and phases with replaced log-moduli.
    pub fn with_log_moduli(&self, log_moduli: Vec<T>) -> Result<Self> {
        Self::new(
            self.exponents.clone(),
            log_moduli,
            self.phases.clone(),
            self.horizon,
        )
    }

    /// First `len` terms, still marked with this series' horizon.
    pub fn prefix(&self, len: usize) -> Self {
        let len = len.min(self.len());
        Self {
            exponents: self.exponents.prefix(len),
            log_moduli: self.log_moduli[..len].to_vec(),
            phases: self.phases[..len].to_vec(),
            horizon: self.horizon,
        }
    }

    /// Smallest index `m` such that `ln|a_n|/λ_n` is nonincreasing for all
    /// stored `n ≥ m` with `λ_n > 0`; the stored-prefix proxy for entirety.
    pub fn decay_onset(&self) -> usize {
        let lambdas = self.lambdas();
        let first = lambdas
            .iter()
            .position(|&l| l > T::zero())
            .unwrap_or(self.len());
        let mut onset = self.len().saturating_sub(1).max(first);
        while onset > first {
            let prev = self.log_moduli[onset - 1] / lambdas[onset - 1];
            let cur = self.log_moduli[onset] / lambdas[onset];
            if cur > prev {
                break;
            }
            onset -= 1;
        }
        onset
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_requires_zero_start() {
        assert!(ExponentSequence::dirichlet(vec![1.0f64, 2.0]).is_err());
        assert!(ExponentSequence::dirichlet(vec![0.0f64, 2.0, 2.0]).is_err());
        assert!(ExponentSequence::<f64>::dirichlet(vec![]).is_err());
        let e = ExponentSequence::dirichlet(vec![0.0f64, 0.5, 3.0]).unwrap();
        assert_eq!(e.min_gap(), Some(0.5));
        assert!(!e.is_integral());
    }

    #[test]
    fn gap_power_integers() {
        let e = ExponentSequence::<f64>::gap_power(&[1, 2, 4, 8]).unwrap();
        assert_eq!(e.kind(), SeriesKind::GapPower);
        assert!(e.is_integral());
        assert!(ExponentSequence::<f64>::gap_power(&[3, 3]).is_err());
        // 2^24 + 1 is not representable in f32
        assert!(ExponentSequence::<f32>::gap_power(&[0, 16_777_217]).is_err());
    }

    #[test]
    fn spec_validation() {
        let e = ExponentSequence::dirichlet(vec![0.0f64, 1.0]).unwrap();
        assert!(SeriesSpec::new(e.clone(), vec![0.0], vec![0.0, 0.0], Horizon::Complete).is_err());
        assert!(SeriesSpec::new(
            e.clone(),
            vec![0.0, f64::NEG_INFINITY],
            vec![0.0, 0.0],
            Horizon::Complete
        )
        .is_err());
        let s = SeriesSpec::new(e, vec![0.0, -1.0], vec![-1.0, 7.0], Horizon::Complete).unwrap();
        assert!(s
            .phases()
            .iter()
            .all(|&p| (0.0..std::f64::consts::TAU).contains(&p)));
    }

    #[test]
    fn decay_onset_finds_monotone_tail() {
        let e = ExponentSequence::dirichlet(vec![0.0f64, 1.0, 2.0, 3.0, 4.0]).unwrap();
        // ln|a_n|/λ_n = 0, -1, -2, -3 for n ≥ 1
        let s = SeriesSpec::positive(
            e.clone(),
            vec![0.0, 0.0, -2.0, -6.0, -12.0],
            Horizon::Truncated,
        )
        .unwrap();
        assert_eq!(s.decay_onset(), 1);
        // bump at n = 3 breaks monotonicity
        let s =
            SeriesSpec::positive(e, vec![0.0, 0.0, -2.0, 3.0, -12.0], Horizon::Truncated).unwrap();
        assert_eq!(s.decay_onset(), 3);
    }
}
