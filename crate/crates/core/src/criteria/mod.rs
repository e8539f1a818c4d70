//! Finite diagnostics of the gap conditions and class-membership checks.
//!
//! Every condition is a series of nonnegative terms `w_n/(λ_{n+1} − λ_n)`.
//! A [`CriterionReport`] keeps the raw terms and partial sums and adds a
//! verdict read off the increments over dyadic index blocks
//! `[2^j − 1, 2^{j+1} − 1)`: when the last three increments shrink with both
//! ratios below 0.9 the verdict is converging, when both ratios exceed 0.99
//! it is diverging, anything else is inconclusive.

mod conditions;
mod membership;

pub use conditions::{
    cond_11, cond_12, cond_8, cond_88, cond_conjecture, cond_gap, cond_thm6, over_b_grid,
    DEFAULT_B_GRID,
};
pub use membership::{
    class_membership, estimate_lower_order, ClassKind, ClassMembershipParams, LowerOrderEstimate,
    MembershipReport,
};

use crate::scalar::Real;

pub const CONVERGING_RATIO: f64 = 0.9;
pub const DIVERGING_RATIO: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<T> {
    pub terms: Vec<T>,
    pub partial_sums: Vec<T>,
    pub verdict: Verdict,
    pub block_ratios: Vec<T>,
}

impl<T: Real> CriterionReport<T> {
    pub fn from_terms(terms: Vec<T>) -> Self {
        let mut acc = T::zero();
        let partial_sums = terms
            .iter()
            .map(|&t| {
                acc = acc + t;
                acc
            })
            .collect();
        let block_ratios = block_ratios(&terms);
        let verdict = classify(&terms, &block_ratios);
        Self {
            terms,
            partial_sums,
            verdict,
            block_ratios,
        }
    }

    /// Last partial sum, or zero with no terms.
    pub fn total(&self) -> T {
        self.partial_sums.last().copied().unwrap_or_else(T::zero)
    }

    /// Report restricted to the first `n` terms.
    pub fn truncated(&self, n: usize) -> Self {
        Self::from_terms(self.terms[..n.min(self.terms.len())].to_vec())
    }
}

fn block_ratios<T: Real>(terms: &[T]) -> Vec<T> {
    let mut increments = Vec::new();
    let mut start = 0usize;
    let mut width = 1usize;
    while start + width <= terms.len() {
        increments.push(terms[start..start + width].iter().copied().sum::<T>());
        start += width;
        width *= 2;
    }
    increments
        .windows(2)
        .map(|w| {
            if w[0] == T::zero() {
                if w[1] == T::zero() {
                    T::zero()
                } else {
                    T::infinity()
                }
            } else {
                w[1] / w[0]
            }
        })
        .collect()
}

fn classify<T: Real>(terms: &[T], ratios: &[T]) -> Verdict {
    if terms.iter().any(|t| t.is_infinite()) {
        return Verdict::Diverging;
    }
    if ratios.len() < 2 {
        return Verdict::Inconclusive;
    }
    // three increments, two ratios
    let last = &ratios[ratios.len() - 2..];
    if last.iter().all(|&r| r < T::lit(CONVERGING_RATIO)) {
        Verdict::Converging
    } else if last.iter().all(|&r| r > T::lit(DIVERGING_RATIO)) {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    }
}
