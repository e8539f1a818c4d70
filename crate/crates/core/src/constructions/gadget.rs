use crate::error::{Error, Result};
use crate::measure::{Interval, IntervalSet, MonotoneFn, PhiHandle};
use crate::scalar::Real;
use crate::series::{check_increasing, EvalOptions, ScaledTerms, SeriesSpec};

/// How the remainder `Σ_{m ≥ L-1} 1/(λ_{m+1} − λ_m)` beyond the stored
/// exponents is bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel<T> {
    /// Ratio test on the last `window` reciprocal gaps: with largest ratio
    /// `ρ < 1` the remainder is at most `last · ρ/(1 − ρ)`.
    Geometric { window: usize },
    /// Caller-supplied bound on the remainder.
    Explicit(T),
}

impl<T> Default for TailModel<T> {
    fn default() -> Self {
        TailModel::Geometric { window: 10 }
    }
}

/// Weights `ln α_n = qΔ_n` and shifts `τ_k` for indices `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget<T> {
    pub q: T,
    lambdas: Vec<T>,
    /// `Δ_n`, with `Δ_0 = 0`.
    pub delta: Vec<T>,
    /// `ln α_n = qΔ_n`.
    pub log_alpha: Vec<T>,
    /// `x_k = (Δ_{k-1} − Δ_k)/(λ_k − λ_{k-1})`; entry 0 is unused and set to zero.
    pub x_seq: Vec<T>,
    /// `τ_k = q x_k + q/(λ_k − λ_{k-1})` for `k ≥ 1`; `τ_0 = τ_1 − 2q/(λ_1 − λ_0)`.
    pub tau: Vec<T>,
    /// Bound on the remainder of the inner sums that was not stored.
    pub inner_tail_error: T,
}

impl<T: Real> Gadget<T> {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }
}

fn tail_bound<T: Real>(recip_gaps: &[T], model: TailModel<T>) -> Option<T> {
    match model {
        TailModel::Explicit(b) => Some(b),
        TailModel::Geometric { window } => {
            let w = window.max(2).min(recip_gaps.len());
            if w < 2 {
                return None;
            }
            let tail = &recip_gaps[recip_gaps.len() - w..];
            let rho = tail.windows(2).map(|p| p[1] / p[0]).fold(T::zero(), T::max);
            (rho < T::one()).then(|| tail[w - 1] * rho / (T::one() - rho))
        }
    }
}

/// Builds the gadget for indices `0..=n` of the exponent sequence.
pub fn build_gadget<T: Real>(
    lambdas: &[T],
    q: T,
    n: usize,
    tail_tol: T,
    tail: TailModel<T>,
) -> Result<Gadget<T>> {
    check_increasing(lambdas)?;
    if !(q > T::zero()) {
        return Err(Error::InvalidArgument(format!("q = {q} must be positive")));
    }
    if lambdas.len() < 2 || n + 1 > lambdas.len() {
        return Err(Error::InvalidArgument(format!(
            "{} exponents cannot carry indices 0..={n}",
            lambdas.len()
        )));
    }
    let recip: Vec<T> = lambdas
        .windows(2)
        .map(|w| T::one() / (w[1] - w[0]))
        .collect();
    let remainder = tail_bound(&recip, tail).unwrap_or_else(T::infinity);
    if !(remainder <= tail_tol) {
        return Err(Error::TailNotCertified {
            bound: remainder.to_f64().unwrap_or(f64::INFINITY),
            tol: tail_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    // suffix[i] = Σ_{m ≥ i} 1/(λ_{m+1} − λ_m), the unstored part replaced by its bound
    let mut suffix = vec![remainder; lambdas.len()];
    for i in (0..recip.len()).rev() {
        suffix[i] = recip[i] + suffix[i + 1];
    }
    let mut delta = Vec::with_capacity(n + 1);
    delta.push(T::zero());
    for j in 0..n {
        let gap = lambdas[j + 1] - lambdas[j];
        let prev = delta[j];
        delta.push(prev + gap * (suffix[j] + suffix[j + 1]));
    }
    let log_alpha = delta.iter().map(|&d| q * d).collect();
    let mut x_seq = vec![T::zero(); n + 1];
    let mut tau = vec![T::zero(); n + 1];
    for k in 1..=n {
        let gap = lambdas[k] - lambdas[k - 1];
        x_seq[k] = (delta[k - 1] - delta[k]) / gap;
        tau[k] = q * x_seq[k] + q / gap;
    }
    if n >= 1 {
        tau[0] = tau[1] - (q + q) / (lambdas[1] - lambdas[0]);
    } else {
        tau[0] = -(q + q) * suffix[0];
    }
    Ok(Gadget {
        q,
        lambdas: lambdas[..=n].to_vec(),
        delta,
        log_alpha,
        x_seq,
        tau,
        inner_tail_error: remainder,
    })
}

/// `−q|n−k| − (ln α_n − ln α_k + τ_k(λ_n − λ_k))`; nonnegative up to rounding.
pub fn lemma1_check<T: Real>(g: &Gadget<T>, n: usize, k: usize) -> Result<T> {
    if n >= g.len() || k >= g.len() {
        return Err(Error::InvalidArgument(format!(
            "indices ({n}, {k}) outside gadget of length {}",
            g.len()
        )));
    }
    let dist = T::from_index(n.abs_diff(k));
    let lhs = g.log_alpha[n] - g.log_alpha[k] + g.tau[k] * (g.lambdas[n] - g.lambdas[k]);
    Ok(-g.q * dist - lhs)
}

/// Series with coefficients `a_n/α_n`.
pub fn modified_series<T: Real>(spec: &SeriesSpec<T>, g: &Gadget<T>) -> Result<SeriesSpec<T>> {
    if g.len() < spec.len() {
        return Err(Error::InvalidArgument(format!(
            "gadget covers {} indices, series has {} terms",
            g.len(),
            spec.len()
        )));
    }
    if g.lambdas[..spec.len()] != *spec.lambdas() {
        return Err(Error::InvalidArgument(
            "gadget and series exponents differ".into(),
        ));
    }
    let log_moduli = spec
        .log_moduli()
        .iter()
        .zip(&g.log_alpha)
        .map(|(&c, &a)| c - a)
        .collect();
    spec.with_log_moduli(log_moduli)
}

/// `E₁(q)` together with the complementary segments on which the central
/// index of the original series is known.
#[derive(Debug, Clone, PartialEq)]
pub struct E1Set<T> {
    pub set: IntervalSet<T>,
    /// `(k, [R + τ_k, R' + τ_k))`: the original series has central index `k` there.
    pub good_segments: Vec<(usize, Interval<T>)>,
    /// Index `k` of the last central index reached; the set accounts for
    /// gaps `λ_{j+1} − λ_j` with `j < covered_depth`.
    pub covered_depth: usize,
}

/// Union of `[R_j + τ_{k_{j-1}}, R_j + τ_{k_j})` over the first `count` jumps
/// `R_j` of the modified series, where the central index passes from
/// `k_{j-1}` to `k_j`.
pub fn exceptional_set_e1<T: Real>(
    spec: &SeriesSpec<T>,
    g: &Gadget<T>,
    count: usize,
    guard_margin: usize,
) -> Result<E1Set<T>> {
    let modified = modified_series(spec, g)?;
    let table = modified.central_index_table();
    let jumps = table.jump_points();
    let idx = table.indices();
    if count > jumps.len() {
        let nu = idx.last().copied().unwrap_or(0);
        return Err(Error::HorizonExceeded {
            nu,
            last: spec.len() - 1,
            guard: guard_margin,
        });
    }
    if count > 0 {
        modified.check_horizon(idx[count], guard_margin)?;
    }
    let tau = &g.tau;
    let set = IntervalSet::from_pairs(
        (1..=count).map(|j| (jumps[j - 1] + tau[idx[j - 1]], jumps[j - 1] + tau[idx[j]])),
    )?;
    let good_segments = (0..count)
        .map(|j| {
            let k = idx[j];
            let start = if j == 0 {
                T::neg_infinity()
            } else {
                jumps[j - 1] + tau[k]
            };
            (k, Interval::half_open(start, jumps[j] + tau[k]))
        })
        .collect();
    Ok(E1Set {
        set,
        good_segments,
        covered_depth: idx[count],
    })
}

/// `2q Σ_{k<depth} h'(φ(λ_k) + 2q/(λ_{k+1} − λ_k)) / (λ_{k+1} − λ_k)`.
pub fn bound_meas<T: Real>(
    lambdas: &[T],
    g: &Gadget<T>,
    h: &dyn MonotoneFn<T>,
    phi: &PhiHandle<'_, T>,
    depth: usize,
) -> Result<T> {
    check_increasing(lambdas)?;
    if depth + 1 > lambdas.len() {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} needs {} exponents",
            depth + 1
        )));
    }
    let two_q = g.q + g.q;
    let mut sum = T::zero();
    for k in 0..depth {
        let gap = lambdas[k + 1] - lambdas[k];
        sum = sum + (T::one() / gap) * h.derivative(phi.eval(lambdas[k])? + two_q / gap);
    }
    Ok(two_q * sum)
}

/// `2e^{-q}/(1 − e^{-q})`, the bound on `|F − a_ν e^{zλ_ν}|/μ` off `E₁(q)`.
pub fn central_term_threshold<T: Real>(q: T) -> T {
    let e = (-q).exp();
    (e + e) / (T::one() - e)
}

/// Worst `|F(x+iy) − a_ν e^{(x+iy)λ_ν}| / μ(x,F)` over the given `y`,
/// including the certified tail of a truncated series.
pub fn central_term_bound_check<T: Real>(
    spec: &SeriesSpec<T>,
    x: T,
    ys: &[T],
    opts: &EvalOptions<T>,
) -> Result<T> {
    let terms = ScaledTerms::new(spec, x, opts)?;
    Ok(ys
        .iter()
        .map(|&y| (terms.at(y) - terms.term_at(terms.nu, y)).norm())
        .fold(T::zero(), T::max)
        + terms.tail_bound)
}
