//! Maximal term, central index and the Newton-majorant segment table.

use super::{Horizon, SeriesSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `ln μ(x,F)` together with the central index `ν(x,F)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxTerm<T> {
    pub log_mu: T,
    pub nu: usize,
}

impl<T: Real> SeriesSpec<T> {
    /// `ln μ(x,F) = max_n (ln|a_n| + xλ_n)` and the largest index attaining it.
    ///
    /// For a truncated series the central index must stay at least
    /// `guard_margin` terms before the end of the stored prefix.
    pub fn log_maximal_term(&self, x: T, guard_margin: usize) -> Result<MaxTerm<T>> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "abscissa {x} is not finite"
            )));
        }
        if self.is_empty() {
            return Err(Error::InvalidSeries("empty series".into()));
        }
        let mut best = MaxTerm {
            log_mu: T::neg_infinity(),
            nu: 0,
        };
        for (n, (&c, &l)) in self.log_moduli().iter().zip(self.lambdas()).enumerate() {
            let v = c + x * l;
            // `>=` keeps the largest tied index
            if v >= best.log_mu {
                best = MaxTerm { log_mu: v, nu: n };
            }
        }
        self.check_horizon(best.nu, guard_margin)?;
        Ok(best)
    }

    pub(crate) fn check_horizon(&self, nu: usize, guard_margin: usize) -> Result<()> {
        let last = self.len() - 1;
        if self.horizon() == Horizon::Truncated && nu + guard_margin > last {
            return Err(Error::HorizonExceeded {
                nu,
                last,
                guard: guard_margin,
            });
        }
        Ok(())
    }

    /// Segment table of the central index built from the upper convex hull
    /// of the points `(λ_n, ln|a_n|)`.
    pub fn central_index_table(&self) -> CentralIndexTable<T> {
        CentralIndexTable::build(self.lambdas(), self.log_moduli())
    }
}

/// Jump abscissas of the central index.
///
/// Segment `s` is `[jump_points[s-1], jump_points[s])` (unbounded at both
/// ends) and the central index equals `indices[s]` on it.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralIndexTable<T> {
    jump_points: Vec<T>,
    indices: Vec<usize>,
}

impl<T: Real> CentralIndexTable<T> {
    /// Builds the table from lines `ln|a_n| + xλ_n` with increasing slopes.
    pub fn build(lambdas: &[T], log_moduli: &[T]) -> Self {
        let mut indices: Vec<usize> = Vec::with_capacity(lambdas.len());
        // starts[i] is where indices[i] begins to dominate
        let mut starts: Vec<T> = Vec::with_capacity(lambdas.len());
        for n in 0..lambdas.len() {
            let mut start = T::neg_infinity();
            while let Some(&top) = indices.last() {
                // new line overtakes `top` (ties go to the larger index) at:
                let cross = (log_moduli[top] - log_moduli[n]) / (lambdas[n] - lambdas[top]);
                let top_start = *starts.last().expect("parallel stacks");
                if indices.len() > 1 && cross <= top_start {
                    indices.pop();
                    starts.pop();
                    continue;
                }
                start = cross;
                break;
            }
            indices.push(n);
            starts.push(start);
        }
        let jump_points = starts.into_iter().skip(1).collect();
        Self {
            jump_points,
            indices,
        }
    }

    /// Jump points `R_k`, strictly increasing.
    pub fn jump_points(&self) -> &[T] {
        &self.jump_points
    }

    /// Central index on each segment; these are the hull vertices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn segment_count(&self) -> usize {
        self.indices.len()
    }

    /// Segment containing `x`.
    pub fn segment_of(&self, x: T) -> usize {
        self.jump_points.partition_point(|&r| r <= x)
    }

    /// Central index `ν(x)`.
    pub fn index_at(&self, x: T) -> usize {
        self.indices[self.segment_of(x)]
    }

    /// Start of the segment on which `index` is central, if it is a vertex.
    /// The first segment starts at `-∞`.
    pub fn segment_start(&self, index: usize) -> Option<T> {
        let s = self.indices.binary_search(&index).ok()?;
        Some(if s == 0 {
            T::neg_infinity()
        } else {
            self.jump_points[s - 1]
        })
    }
}
