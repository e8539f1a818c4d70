use crate::error::{Error, Result};
use crate::measure::{Interval, IntervalSet, MonotoneFn, PhiHandle};
use crate::scalar::Real;
use crate::series::{EvalOptions, ExponentSequence, Horizon, SeriesSpec};

/// Positive series `Σ a_n e^{zλ_n}` with `ln a_n = −Σ_{k≤n} κ_k(λ_k − λ_{k−1})`,
/// so that `ν(x) = n` on `[κ_n, κ_{n+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSeries<T> {
    pub b: T,
    /// `1 + e^{-1}`: on the exceptional intervals `M(x) ≥ β μ(x)`.
    pub beta: T,
    /// `ψ_k = b φ₁(b λ_k)`.
    psi: Vec<T>,
    /// `r[k-1] = r_k = max(ψ_{k+1} − ψ_k, 1/(λ_{k+1} − λ_k))`, with `ψ_2` in place
    /// of the difference at `k = 1`.
    r: Vec<T>,
    /// `kappa[n-1] = κ_n` for `n = 1..=len`.
    kappa: Vec<T>,
    pub spec: SeriesSpec<T>,
    /// Least `n ≥ 1` from which `κ_n ≥ ψ_{n-1}` holds for every stored `n`.
    pub eq14_from: usize,
    /// Least `n ≥ 1` from which `[κ_n, κ_n + 1/g_{n-1}] ⊂ [κ_n, κ_{n+1}]`.
    pub fits_from: usize,
    intervals: Vec<Interval<T>>,
}

impl<T: Real> ExtremalSeries<T> {
    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty()
    }

    /// `r_k`, `1 ≤ k ≤ len − 2`.
    pub fn r(&self, k: usize) -> T {
        self.r[k - 1]
    }

    /// `κ_n`, `1 ≤ n ≤ len`.
    pub fn kappa(&self, n: usize) -> T {
        self.kappa[n - 1]
    }

    /// `b φ₁(b λ_k)`.
    pub fn psi(&self, k: usize) -> T {
        self.psi[k]
    }

    pub fn lambdas(&self) -> &[T] {
        self.spec.lambdas()
    }
}

/// Builds the first `n_terms` terms from `n_terms` exponents.
///
/// `φ₁` must be increasing on `b λ_k` for `k ≥ 1`, otherwise
/// [`Error::MonotoneViolation`] is returned.
pub fn build_extremal<T: Real>(
    lambdas: &ExponentSequence<T>,
    phi1: &PhiHandle<'_, T>,
    b: T,
    n_terms: usize,
) -> Result<ExtremalSeries<T>> {
    if lambdas.values().first() != Some(&T::zero()) {
        return Err(Error::InvalidSeries("extremal series needs λ_0 = 0".into()));
    }
    if !(b > T::zero()) {
        return Err(Error::InvalidArgument(format!("b = {b} must be positive")));
    }
    if n_terms < 3 || n_terms > lambdas.len() {
        return Err(Error::InvalidArgument(format!(
            "{n_terms} terms requested from {} exponents (need at least 3)",
            lambdas.len()
        )));
    }
    let l = &lambdas.values()[..n_terms];
    let psi: Vec<T> = l
        .iter()
        .map(|&x| phi1.eval(b * x).map(|v| b * v))
        .collect::<Result<_>>()?;
    for k in 1..n_terms - 1 {
        if !(psi[k + 1] > psi[k]) {
            return Err(Error::MonotoneViolation {
                a: (b * l[k]).to_f64().unwrap_or(f64::NAN),
                b: (b * l[k + 1]).to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let r: Vec<T> = (1..n_terms - 1)
        .map(|k| {
            let step = if k == 1 { psi[2] } else { psi[k + 1] - psi[k] };
            step.max(T::one() / (l[k + 1] - l[k]))
        })
        .collect();
    let mut kappa = vec![T::one(), T::one()];
    let mut acc = T::zero();
    for &rk in &r {
        acc = acc + rk;
        kappa.push(acc);
    }
    if let Some(n) = kappa.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::Construction(format!(
            "κ decreases at n = {}: {} < {}",
            n + 2,
            kappa[n + 1],
            kappa[n]
        )));
    }
    let mut log_a = Vec::with_capacity(n_terms);
    log_a.push(T::zero());
    for n in 1..n_terms {
        let prev = log_a[n - 1];
        log_a.push(prev - kappa[n - 1] * (l[n] - l[n - 1]));
    }
    let spec = SeriesSpec::positive(lambdas.prefix(n_terms), log_a, Horizon::Truncated)?;

    // κ_n ≥ r_1 + ψ_{n-1} − ψ_2 ≥ ψ_{n-1} for n ≥ 3; allow for summation rounding
    let slack =
        |n: usize, v: T| T::lit(4.0) * T::epsilon() * T::from_index(n) * v.abs().max(T::one());
    let eq14_from = (1..=n_terms)
        .rev()
        .take_while(|&n| kappa[n - 1] + slack(n, psi[n - 1]) >= psi[n - 1])
        .last()
        .unwrap_or(n_terms + 1);
    let fits_from = (1..n_terms)
        .rev()
        .take_while(|&n| {
            kappa[n] - kappa[n - 1] + slack(n, kappa[n]) >= T::one() / (l[n] - l[n - 1])
        })
        .last()
        .unwrap_or(n_terms);
    let intervals = (1..n_terms)
        .map(|n| Interval::closed(kappa[n - 1], kappa[n - 1] + T::one() / (l[n] - l[n - 1])))
        .collect();
    Ok(ExtremalSeries {
        b,
        beta: T::one() + (-T::one()).exp(),
        psi,
        r,
        kappa,
        spec,
        eq14_from,
        fits_from,
        intervals,
    })
}

/// `[κ_n, κ_n + 1/(λ_n − λ_{n−1})]` for `n = 1..=count`, unmerged.
pub fn extremal_intervals<T: Real>(es: &ExtremalSeries<T>, count: usize) -> Result<&[Interval<T>]> {
    es.intervals.get(..count).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{count} intervals requested, {} available",
            es.intervals.len()
        ))
    })
}

/// Union of the first `count` exceptional intervals.
pub fn extremal_exceptional_set<T: Real>(
    es: &ExtremalSeries<T>,
    count: usize,
) -> Result<IntervalSet<T>> {
    IntervalSet::from_intervals(extremal_intervals(es, count)?.iter().copied())
}

/// Outcome of evaluating `M(x)/μ(x)` on the extremal series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification<T> {
    /// `M(x)/μ(x) = F(x)/μ(x)` since all coefficients are positive.
    pub ratio: T,
    pub nu: usize,
    /// Whether `x` lies in one of the stored exceptional intervals; the
    /// lower bound `β` is only claimed there.
    pub in_set: bool,
}

pub fn extremal_verify<T: Real>(
    es: &ExtremalSeries<T>,
    x: T,
    opts: &EvalOptions<T>,
) -> Result<Verification<T>> {
    let ev = es.spec.evaluate(x, T::zero(), opts)?;
    Ok(Verification {
        ratio: ev.ratio.re,
        nu: ev.nu,
        in_set: es.intervals.iter().any(|i| i.contains(x)),
    })
}

/// Partial sums over `n = 1..=N` of the divergent series attached to the
/// exceptional intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct HMeasPartials<T> {
    /// `Σ h(κ_n + 1/g_{n-1}) − h(κ_n)`.
    pub h_measure: Vec<T>,
    /// `Σ h'(κ_n)/g_{n-1}`, a lower bound of `h_measure` for increasing `h'`.
    pub derivative_lower: Vec<T>,
    /// `Σ h'(b φ₁(b λ_{n-1}))/g_{n-1}`, the divergent gap condition.
    pub gap_condition: Vec<T>,
}

pub fn extremal_hmeas_partials<T: Real>(
    es: &ExtremalSeries<T>,
    h: &dyn MonotoneFn<T>,
    count: usize,
) -> Result<HMeasPartials<T>> {
    let iv = extremal_intervals(es, count)?;
    let l = es.lambdas();
    let mut out = HMeasPartials {
        h_measure: Vec::with_capacity(count),
        derivative_lower: Vec::with_capacity(count),
        gap_condition: Vec::with_capacity(count),
    };
    let (mut hm, mut dl, mut gc) = (T::zero(), T::zero(), T::zero());
    for (i, int) in iv.iter().enumerate() {
        let n = i + 1;
        let recip = T::one() / (l[n] - l[n - 1]);
        hm = hm + (h.value(int.end) - h.value(int.start));
        dl = dl + recip * h.derivative(int.start);
        gc = gc + recip * h.derivative(es.psi[n - 1]);
        out.h_measure.push(hm);
        out.derivative_lower.push(dl);
        out.gap_condition.push(gc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Builtin;

    fn linear(n: usize) -> ExponentSequence<f64> {
        ExponentSequence::dirichlet((0..n).map(|k| k as f64).collect()).unwrap()
    }

    fn build(n: usize) -> ExtremalSeries<f64> {
        let id = Builtin::Identity;
        build_extremal(&linear(n), &PhiHandle::Direct(&id), 1.0, n).unwrap()
    }

    #[test]
    fn linear_identity_instance() {
        let es = build(40);
        assert_eq!(es.r(1), 2.0);
        for k in 2..=38 {
            assert_eq!(es.r(k), 1.0);
        }
        assert_eq!((es.kappa(1), es.kappa(2)), (1.0, 1.0));
        for n in 3..=40 {
            assert_eq!(es.kappa(n), (n - 1) as f64);
        }
        assert_eq!(es.eq14_from, 1);
        // κ_2 − κ_1 = 0 is shorter than the unit interval at n = 1
        assert_eq!(es.fits_from, 2);
        let la = es.spec.log_moduli();
        for (n, &l) in la.iter().enumerate().take(40).skip(1) {
            let oracle: f64 = -(1..=n).map(|k| es.kappa(k)).sum::<f64>();
            assert_eq!(l, oracle);
        }
    }

    #[test]
    fn kappa_identity_holds_from_three() {
        let es = build(30);
        for n in 3..29 {
            assert_eq!(es.kappa(n + 1) - es.kappa(n), es.r(n - 1));
        }
        assert_eq!(es.kappa(3) - es.kappa(2), es.r(1) - 1.0);
    }

    #[test]
    fn interval_lengths_and_set() {
        let es = build(20);
        for (i, iv) in extremal_intervals(&es, 19).unwrap().iter().enumerate() {
            assert_eq!(iv.length(), 1.0, "n = {}", i + 1);
            assert!(iv.closed);
        }
        let set = extremal_exceptional_set(&es, 19).unwrap();
        // [1,2] twice, then touching [n-1, n]
        assert_eq!(set.total_length(), 18.0);
        assert!(extremal_intervals(&es, 20).is_err());
    }

    #[test]
    fn ratio_on_intervals() {
        let es = build(60);
        let opts = EvalOptions::default();
        for n in 1..=30 {
            let iv = extremal_intervals(&es, n).unwrap()[n - 1];
            for x in [iv.start, 0.5 * (iv.start + iv.end), iv.end] {
                let v = extremal_verify(&es, x, &opts).unwrap();
                assert!(v.in_set);
                assert!(v.ratio >= es.beta - 1e-9, "n={n} x={x} ratio={}", v.ratio);
            }
        }
        assert!(!extremal_verify(&es, 0.5, &opts).unwrap().in_set);
    }

    #[test]
    fn partials_match_closed_form() {
        let es = build(102);
        let sq = Builtin::power(2.0);
        let p = extremal_hmeas_partials(&es, &sq, 100).unwrap();
        // h = x²: 3 + 3 + Σ_{n=3}^{N} (2n − 1) = N² + 2
        assert_eq!(p.h_measure[99], 10002.0);
        assert_eq!(p.h_measure[0], 3.0);
    }

    #[test]
    fn rejects_decreasing_phi() {
        let f = crate::measure::Custom::new(|t: f64| -t, |_| -1.0, crate::measure::FnClass::L);
        let err = build_extremal(&linear(10), &PhiHandle::Direct(&f), 1.0, 10).unwrap_err();
        assert!(matches!(err, Error::MonotoneViolation { .. }));
    }
}
