//! μ-scaled evaluation of `F(x+iy)` and the phase search for `M` and `m`.

use num_complex::Complex;

use super::{Horizon, SeriesSpec};
use crate::error::{Error, Result};
use crate::optimize::golden_section_min;
use crate::scalar::Real;

/// Truncation controls shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions<T> {
    /// Bound on the unsummed tail, relative to `μ(x,F)`.
    pub rel_tol: T,
    /// Shift `δ` in the tail estimate `μ(x+δ) e^{-δλ_N} / (1 - e^{-δ g_min})`.
    pub delta: T,
    pub guard_margin: usize,
}

impl<T: Real> Default for EvalOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::epsilon() * T::lit(1e4),
            delta: T::one(),
            guard_margin: 5,
        }
    }
}

impl<T: Real> EvalOptions<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// `F(x+iy)/μ(x,F)` together with the scale and truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub ratio: Complex<T>,
    pub log_mu: T,
    pub nu: usize,
    pub terms_used: usize,
    /// Certified bound on the omitted tail in μ-scaled units.
    pub tail_bound: T,
}

/// Terms at a fixed abscissa, scaled by the maximal term.
#[derive(Debug, Clone)]
pub(crate) struct ScaledTerms<T> {
    weights: Vec<T>,
    lambdas: Vec<T>,
    phases: Vec<T>,
    pub(crate) log_mu: T,
    pub(crate) nu: usize,
    pub(crate) tail_bound: T,
    periodic: bool,
}

impl<T: Real> ScaledTerms<T> {
    pub(crate) fn new(spec: &SeriesSpec<T>, x: T, opts: &EvalOptions<T>) -> Result<Self> {
        if !(opts.rel_tol > T::zero() && opts.rel_tol < T::one()) {
            return Err(Error::InvalidTolerance(
                opts.rel_tol.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let mt = spec.log_maximal_term(x, opts.guard_margin)?;
        let lambdas = spec.lambdas();
        let (count, tail_bound) = match spec.horizon() {
            Horizon::Complete => (spec.len(), T::zero()),
            Horizon::Truncated => truncation_point(spec, x, mt.log_mu, mt.nu, opts)?,
        };
        let lead_c = spec.log_moduli()[mt.nu];
        let lead_l = lambdas[mt.nu];
        let weights = (0..count)
            .map(|n| ((spec.log_moduli()[n] - lead_c) + x * (lambdas[n] - lead_l)).exp())
            .collect();
        Ok(Self {
            weights,
            lambdas: lambdas[..count].to_vec(),
            phases: spec.phases()[..count].to_vec(),
            log_mu: mt.log_mu,
            nu: mt.nu,
            tail_bound,
            periodic: spec.exponents().is_integral(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.weights.len()
    }

    pub(crate) fn at(&self, y: T) -> Complex<T> {
        let y = if self.periodic { y % T::TAU() } else { y };
        self.weights
            .iter()
            .zip(&self.lambdas)
            .zip(&self.phases)
            .fold(Complex::new(T::zero(), T::zero()), |acc, ((&w, &l), &p)| {
                let (s, c) = (p + y * l).sin_cos();
                acc + Complex::new(w * c, w * s)
            })
    }

    /// Value of the `n`-th scaled term at `y`.
    pub(crate) fn term_at(&self, n: usize, y: T) -> Complex<T> {
        let y = if self.periodic { y % T::TAU() } else { y };
        Complex::from_polar(self.weights[n], self.phases[n] + y * self.lambdas[n])
    }

    /// `Σ|terms| + tail`, inflated to cover rounding in the summation.
    pub(crate) fn abs_sum(&self) -> T {
        let raw: T = self.weights.iter().copied().sum::<T>() + self.tail_bound;
        raw * (T::one() + T::lit(8.0) * T::epsilon() * T::from_index(self.len() + 1))
    }
}

/// Number of terms to sum and the certified tail bound for a truncated series.
fn truncation_point<T: Real>(
    spec: &SeriesSpec<T>,
    x: T,
    log_mu: T,
    nu: usize,
    opts: &EvalOptions<T>,
) -> Result<(usize, T)> {
    let lambdas = spec.lambdas();
    let g_min = match spec.exponents().min_gap() {
        Some(g) => g,
        None => return Ok((spec.len(), T::zero())),
    };
    let shifted = spec.log_maximal_term(x + opts.delta, opts.guard_margin)?;
    let lift = shifted.log_mu - log_mu;
    let denom = T::one() - (-opts.delta * g_min).exp();
    let bound_from = |n: usize| {
        let lambda_n = if n < lambdas.len() {
            lambdas[n]
        } else {
            lambdas[lambdas.len() - 1] + g_min
        };
        (lift - opts.delta * lambda_n).exp() / denom
    };
    for count in (nu + 1)..=lambdas.len() {
        let bound = bound_from(count);
        if bound < opts.rel_tol {
            return Ok((count, bound));
        }
    }
    Err(Error::TailNotDominated {
        bound: bound_from(lambdas.len()).to_f64().unwrap_or(f64::INFINITY),
        tol: opts.rel_tol.to_f64().unwrap_or(f64::NAN),
    })
}

impl<T: Real> SeriesSpec<T> {
    /// `F(x+iy)/μ(x,F)` with a certified truncation of the tail.
    pub fn evaluate(&self, x: T, y: T, opts: &EvalOptions<T>) -> Result<Evaluation<T>> {
        let terms = ScaledTerms::new(self, x, opts)?;
        Ok(Evaluation {
            ratio: terms.at(y),
            log_mu: terms.log_mu,
            nu: terms.nu,
            terms_used: terms.len(),
            tail_bound: terms.tail_bound,
        })
    }

    /// μ-scaled upper envelope `Σ|a_n| e^{xλ_n} / μ(x,F)` of the maximum modulus.
    pub fn sum_modulus(&self, x: T, opts: &EvalOptions<T>) -> Result<T> {
        Ok(ScaledTerms::new(self, x, opts)?.abs_sum())
    }

    /// Lower estimate of `M(x,F)/μ(x,F)` by phase search.
    pub fn max_modulus(&self, x: T, opts: &PhaseSearchOpts<T>) -> Result<ModulusEstimate<T>> {
        Ok(self.phase_extremes(x, opts)?.max)
    }

    /// Upper estimate of `m(x,F)/μ(x,F)` by phase search.
    pub fn min_modulus(&self, x: T, opts: &PhaseSearchOpts<T>) -> Result<ModulusEstimate<T>> {
        Ok(self.phase_extremes(x, opts)?.min)
    }

    /// Maximum and minimum of `|F(x+iy)|/μ` from one shared phase grid.
    pub fn phase_extremes(&self, x: T, opts: &PhaseSearchOpts<T>) -> Result<PhaseExtremes<T>> {
        let terms = ScaledTerms::new(self, x, &opts.eval)?;
        let domain = if self.exponents().is_integral() {
            PhaseDomain::Period
        } else {
            let window = match opts.y_window {
                Some(w) => w,
                None => {
                    let g = self.exponents().min_gap().unwrap_or_else(T::one);
                    T::lit(10.0) * T::TAU() / g
                }
            };
            PhaseDomain::Window(window)
        };
        let modulus = |y: T| terms.at(y).norm();
        let (h, samples) = sample_grid(&modulus, domain, opts);
        let (max_y, max_v) = search(&modulus, domain, opts, true, h, &samples);
        let (min_y, min_v) = search(&modulus, domain, opts, false, h, &samples);
        let mk = |value, y, bound| ModulusEstimate {
            value,
            y,
            log_mu: terms.log_mu,
            bound,
            domain,
        };
        Ok(PhaseExtremes {
            max: mk(max_v, max_y, BoundKind::LowerBoundOfMax),
            min: mk(min_v, min_y, BoundKind::UpperBoundOfMin),
            sum: terms.abs_sum(),
            nu: terms.nu,
        })
    }
}

/// Controls for the grid-plus-golden-section phase search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSearchOpts<T> {
    pub grid_points: usize,
    pub phase_tol: T,
    /// Search window `[0, Y]` for non-integer exponents.
    pub y_window: Option<T>,
    /// Number of best grid brackets refined by golden section.
    pub refine_candidates: usize,
    pub eval: EvalOptions<T>,
}

impl<T: Real> Default for PhaseSearchOpts<T> {
    fn default() -> Self {
        Self {
            grid_points: 4096,
            phase_tol: T::lit(1e-10).max(T::epsilon().sqrt()),
            y_window: None,
            refine_candidates: 3,
            eval: EvalOptions::default(),
        }
    }
}

/// Which side of the true extremum an estimate lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// An attained value, hence `≤ M(x,F)`.
    LowerBoundOfMax,
    /// An attained value, hence `≥ m(x,F)`.
    UpperBoundOfMin,
}

/// Set of `y` values searched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseDomain<T> {
    /// One full period `[0, 2π)`; exact for integer exponents.
    Period,
    /// Finite window `[0, Y]`; the sup/inf over ℝ is only approximated.
    Window(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusEstimate<T> {
    /// `|F(x+iy)|/μ(x,F)` at the located `y`.
    pub value: T,
    pub y: T,
    pub log_mu: T,
    pub bound: BoundKind,
    pub domain: PhaseDomain<T>,
}

impl<T> ModulusEstimate<T> {
    pub fn window_approximate(&self) -> bool {
        matches!(self.domain, PhaseDomain::Window(_))
    }
}

/// Output of [`SeriesSpec::phase_extremes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseExtremes<T> {
    pub max: ModulusEstimate<T>,
    pub min: ModulusEstimate<T>,
    /// Scaled sum envelope at the same abscissa.
    pub sum: T,
    pub nu: usize,
}

/// Spacing and values of `f` on the coarse phase grid.
fn sample_grid<T: Real>(
    f: &impl Fn(T) -> T,
    domain: PhaseDomain<T>,
    opts: &PhaseSearchOpts<T>,
) -> (T, Vec<T>) {
    let n = opts.grid_points.max(3);
    let (len, steps) = match domain {
        PhaseDomain::Period => (T::TAU(), n),
        PhaseDomain::Window(w) => (w, n - 1),
    };
    let h = len / T::from_index(steps);
    (h, (0..n).map(|i| f(T::from_index(i) * h)).collect())
}

fn search<T: Real>(
    f: &impl Fn(T) -> T,
    domain: PhaseDomain<T>,
    opts: &PhaseSearchOpts<T>,
    maximize: bool,
    h: T,
    samples: &[T],
) -> (T, T) {
    let n = samples.len();
    let sign = if maximize { -T::one() } else { T::one() };
    // minimize sign * f
    let g = |y: T| sign * f(y);
    let values: Vec<T> = samples.iter().map(|&v| sign * v).collect();

    let is_local = |i: usize| {
        let prev = match (i, domain) {
            (0, PhaseDomain::Period) => Some(values[n - 1]),
            (0, _) => None,
            _ => Some(values[i - 1]),
        };
        let next = match domain {
            PhaseDomain::Period => Some(values[(i + 1) % n]),
            _ if i + 1 < n => Some(values[i + 1]),
            _ => None,
        };
        prev.is_none_or(|p| values[i] <= p) && next.is_none_or(|q| values[i] <= q)
    };
    let mut candidates: Vec<usize> = (0..n).filter(|&i| is_local(i)).collect();
    candidates.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    candidates.truncate(opts.refine_candidates.max(1));

    let mut best_i = candidates.first().copied().unwrap_or(0);
    for i in 0..n {
        if values[i] < values[best_i] {
            best_i = i;
        }
    }
    let mut best = (T::from_index(best_i) * h, values[best_i]);
    for &i in &candidates {
        let yi = T::from_index(i) * h;
        let (mut a, mut b) = (yi - h, yi + h);
        if let PhaseDomain::Window(w) = domain {
            a = a.max(T::zero());
            b = b.min(w);
        }
        let (y, v) = golden_section_min(&g, a, b, opts.phase_tol);
        if v < best.1 {
            best = (y, v);
        }
    }
    let y = match domain {
        PhaseDomain::Period => crate::scalar::wrap_phase(best.0),
        PhaseDomain::Window(_) => best.0,
    };
    (y, sign * best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ExponentSequence;
    use approx::assert_relative_eq;

    fn complete(l: &[f64], c: &[f64], p: &[f64]) -> SeriesSpec<f64> {
        SeriesSpec::new(
            ExponentSequence::dirichlet(l.to_vec()).unwrap(),
            c.to_vec(),
            p.to_vec(),
            Horizon::Complete,
        )
        .unwrap()
    }

    #[test]
    fn single_term_ratio_is_unimodular() {
        let s = complete(&[0.0], &[1.5], &[0.7]);
        let e = s.evaluate(3.0, 11.0, &EvalOptions::default()).unwrap();
        assert_relative_eq!(e.ratio.re, 0.7f64.cos(), epsilon = 1e-15);
        assert_relative_eq!(e.ratio.im, 0.7f64.sin(), epsilon = 1e-15);
        assert_eq!(e.log_mu, 1.5);
        let ext = s.phase_extremes(3.0, &PhaseSearchOpts::default()).unwrap();
        assert_relative_eq!(ext.max.value, 1.0, epsilon = 1e-14);
        assert_relative_eq!(ext.min.value, 1.0, epsilon = 1e-14);
        assert_relative_eq!(
            s.sum_modulus(3.0, &EvalOptions::default()).unwrap(),
            1.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn equal_terms_sum_to_three() {
        let s = complete(&[0.0, 2.0, 4.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]);
        let e = s.evaluate(0.0, 0.0, &EvalOptions::default()).unwrap();
        assert_eq!(e.ratio, Complex::new(3.0, 0.0));
        assert_relative_eq!(
            s.sum_modulus(0.0, &EvalOptions::default()).unwrap(),
            3.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn one_plus_z_on_unit_circle() {
        let s = SeriesSpec::positive(
            ExponentSequence::gap_power(&[0, 1]).unwrap(),
            vec![0.0, 0.0],
            Horizon::Complete,
        )
        .unwrap();
        let ext = s.phase_extremes(0.0, &PhaseSearchOpts::default()).unwrap();
        assert_relative_eq!(ext.max.value, 2.0, epsilon = 1e-12);
        assert!(ext.min.value < 1e-9, "{}", ext.min.value);
        assert_relative_eq!(ext.min.y, std::f64::consts::PI, epsilon = 1e-6);
        assert_eq!(ext.max.bound, BoundKind::LowerBoundOfMax);
        assert!(!ext.max.window_approximate());
    }

    #[test]
    fn non_integer_exponents_use_window() {
        let s = complete(&[0.0, 0.5, 1.7], &[0.0, -0.1, -0.3], &[0.0, 1.0, 2.0]);
        let ext = s.phase_extremes(0.2, &PhaseSearchOpts::default()).unwrap();
        assert!(ext.max.window_approximate());
        assert!(
            matches!(ext.max.domain, PhaseDomain::Window(w) if (w - 40.0 * std::f64::consts::PI).abs() < 1e-9)
        );
        assert!(ext.min.value <= ext.max.value && ext.max.value <= ext.sum);
    }

    #[test]
    fn invalid_tolerance() {
        let s = complete(&[0.0], &[0.0], &[0.0]);
        let bad = EvalOptions::default().with_rel_tol(1.5);
        assert_eq!(
            s.evaluate(0.0, 0.0, &bad).unwrap_err(),
            Error::InvalidTolerance(1.5)
        );
        let bad = EvalOptions::default().with_rel_tol(0.0);
        assert!(s.sum_modulus(0.0, &bad).is_err());
    }

    #[test]
    fn truncated_tail_certification() {
        // exp(z) truncated: n_k = k, ln f_k = -ln k!
        let n = 120;
        let mut c = vec![0.0f64; n];
        for k in 1..n {
            c[k] = c[k - 1] - (k as f64).ln();
        }
        let e = ExponentSequence::gap_power(&(0..n as u64).collect::<Vec<_>>()).unwrap();
        let s = SeriesSpec::positive(e, c, Horizon::Truncated).unwrap();
        let opts = EvalOptions::default();
        let ev = s.evaluate(2.0f64.ln(), 0.0, &opts).unwrap();
        assert!(ev.tail_bound < opts.rel_tol);
        assert!(ev.terms_used < n);
        // F(2)/μ(2) = e^2 / (2^2/2!)
        assert_relative_eq!(
            ev.ratio.re * ev.log_mu.exp(),
            2.0f64.exp(),
            max_relative = 1e-11
        );
        // far out the prefix cannot certify anything
        assert!(s.evaluate(100.0f64.ln(), 0.0, &opts).is_err());
    }

    #[test]
    fn tail_not_dominated_when_prefix_too_short() {
        let n = 12;
        let mut c = vec![0.0f64; n];
        for k in 1..n {
            c[k] = c[k - 1] - (k as f64).ln();
        }
        let e = ExponentSequence::gap_power(&(0..n as u64).collect::<Vec<_>>()).unwrap();
        let s = SeriesSpec::positive(e, c, Horizon::Truncated).unwrap();
        let err = s
            .evaluate(0.5f64.ln(), 0.0, &EvalOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::TailNotDominated { .. }), "{err:?}");
    }
}
