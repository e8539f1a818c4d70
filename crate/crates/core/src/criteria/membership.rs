//! Growth-class membership of a series on a sampled range.

use crate::error::{Error, Result};
use crate::measure::MonotoneFn;
use crate::scalar::Real;
use crate::series::{PhaseSearchOpts, SeriesSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// `ln μ(x) ≥ xΦ(x)`
    D,
    /// `ln μ(x) ≥ K xΦ(x)`
    D0,
    /// `ln μ(x) ≥ K₁ xΦ(K₂x)`
    D1,
    /// `ln|a_n| ≤ −λ_n φ(λ_n)` for `n ≥ n₀`; `phi` is read as `φ`.
    DPhi,
}

pub struct ClassMembershipParams<'a, T> {
    /// `Φ` for the `D` classes, `φ` for `D_φ`.
    pub phi: &'a dyn MonotoneFn<T>,
    pub k: T,
    pub k1: T,
    pub k2: T,
    pub x0: T,
    pub n0: usize,
    pub sample_grid: Vec<T>,
    pub guard_margin: usize,
}

impl<'a, T: Real> ClassMembershipParams<'a, T> {
    pub fn new(phi: &'a dyn MonotoneFn<T>, sample_grid: Vec<T>) -> Self {
        Self {
            phi,
            k: T::one(),
            k1: T::one(),
            k2: T::one(),
            x0: T::one(),
            n0: 0,
            sample_grid,
            guard_margin: 5,
        }
    }
}

/// Margins `lhs − rhs` at each sample; nonnegative margins pass.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport<T> {
    /// `(x, margin)`; for `D_φ` the abscissa is `λ_n`.
    pub points: Vec<(T, T)>,
    pub passed: bool,
    /// Smallest sample from which every later sample passes.
    pub holds_from: Option<T>,
}

impl<T: Real> MembershipReport<T> {
    fn from_points(points: Vec<(T, T)>) -> Self {
        let passed = points.iter().all(|&(_, m)| m >= T::zero());
        let tail = points
            .iter()
            .rev()
            .take_while(|&&(_, m)| m >= T::zero())
            .count();
        let holds_from = (tail > 0).then(|| points[points.len() - tail].0);
        Self {
            points,
            passed,
            holds_from,
        }
    }
}

pub fn class_membership<T: Real>(
    spec: &SeriesSpec<T>,
    params: &ClassMembershipParams<'_, T>,
    which: ClassKind,
) -> Result<MembershipReport<T>> {
    for (name, v) in [("K", params.k), ("K1", params.k1), ("K2", params.k2)] {
        if !(v > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "{name} = {v} must be positive"
            )));
        }
    }
    let phi = params.phi;
    if which == ClassKind::DPhi {
        let points = (params.n0..spec.len())
            .map(|n| {
                let lambda = spec.lambdas()[n];
                (lambda, -lambda * phi.value(lambda) - spec.log_moduli()[n])
            })
            .collect();
        return Ok(MembershipReport::from_points(points));
    }
    let points = params
        .sample_grid
        .iter()
        .map(|&x| {
            if x < params.x0 {
                return Err(Error::InvalidArgument(format!(
                    "sample {x} lies below x0 = {}",
                    params.x0
                )));
            }
            let log_mu = spec.log_maximal_term(x, params.guard_margin)?.log_mu;
            let rhs = match which {
                ClassKind::D => x * phi.value(x),
                ClassKind::D0 => params.k * x * phi.value(x),
                ClassKind::D1 => params.k1 * x * phi.value(params.k2 * x),
                ClassKind::DPhi => unreachable!(),
            };
            Ok((x, log_mu - rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MembershipReport::from_points(points))
}

/// Bracket of `min ln ln M(r) / ln r` over the upper half of a radius grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerOrderEstimate<T> {
    /// Uses the attained maximum (a lower bound for `M`).
    pub from_max_modulus: T,
    /// Uses `Σ|f_k| r^{n_k}` (an upper bound for `M`).
    pub from_sum_modulus: T,
    /// Radii at or above this value form the tail.
    pub tail_start: T,
    /// Heuristic flag: both estimates positive.
    pub positive: bool,
}

/// Heuristic liminf surrogate for the lower order.
///
/// The tail is `r ≥ (r_min + r_max)/2`, so refining a grid with the same
/// endpoints can only lower (or keep) the estimates.
pub fn estimate_lower_order<T: Real>(
    spec: &SeriesSpec<T>,
    r_grid: &[T],
    opts: &PhaseSearchOpts<T>,
) -> Result<LowerOrderEstimate<T>> {
    if r_grid.len() < 2 || r_grid.windows(2).any(|w| w[1] <= w[0]) || r_grid[0] <= T::one() {
        return Err(Error::InvalidArgument(
            "radius grid must be increasing and above 1".into(),
        ));
    }
    let tail_start = (r_grid[0] + r_grid[r_grid.len() - 1]) / T::lit(2.0);
    let ratio = |log_m: T, r: T| {
        if log_m > T::zero() {
            log_m.ln() / r.ln()
        } else {
            T::neg_infinity()
        }
    };
    let mut lo = T::infinity();
    let mut hi = T::infinity();
    for &r in r_grid.iter().filter(|&&r| r >= tail_start) {
        let ext = spec.phase_extremes(r.ln(), opts)?;
        let log_m_lo = ext.max.log_mu + ext.max.value.ln();
        let log_m_hi = ext.max.log_mu + ext.sum.ln();
        lo = lo.min(ratio(log_m_lo, r));
        hi = hi.min(ratio(log_m_hi, r));
    }
    Ok(LowerOrderEstimate {
        from_max_modulus: lo,
        from_sum_modulus: hi,
        tail_start,
        positive: lo > T::zero() && hi > T::zero(),
    })
}
