//! Numerical Wiman–Valiron toolkit for entire Dirichlet series
//! `F(z) = Σ a_n e^{zλ_n}` and gap power series `f(z) = Σ f_k z^{n_k}`.
//!
//! * [`series`]: maximal term, central index, μ-scaled evaluation, maximum
//!   and minimum modulus.
//! * [`measure`]: increasing density functions, interval sets, h-measure,
//!   logarithmic and h-logarithmic measure.
//! * [`criteria`]: finite diagnostics of the gap-convergence conditions and
//!   class-membership checks.
//! * [`constructions`]: the central-term gadget with its exceptional set and
//!   the extremal series whose exceptional set has infinite h-measure.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

// `!(a <= b)` is used on purpose so that NaN fails argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constructions;
pub mod criteria;
mod error;
pub mod measure;
pub mod optimize;
mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{wrap_phase, Real};

pub type ExponentSequence64 = series::ExponentSequence<f64>;
pub type SeriesSpec64 = series::SeriesSpec<f64>;
pub type CentralIndexTable64 = series::CentralIndexTable<f64>;
pub type IntervalSet64 = measure::IntervalSet<f64>;
pub type Builtin64 = measure::Builtin<f64>;
pub type CriterionReport64 = criteria::CriterionReport<f64>;
pub type Gadget64 = constructions::Gadget<f64>;
pub type ExtremalSeries64 = constructions::ExtremalSeries<f64>;

pub type ExponentSequence32 = series::ExponentSequence<f32>;
pub type SeriesSpec32 = series::SeriesSpec<f32>;
pub type IntervalSet32 = measure::IntervalSet<f32>;
