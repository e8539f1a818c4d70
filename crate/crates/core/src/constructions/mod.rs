//! Explicit constructions around the central-term asymptotics.
//!
//! [`Gadget`] carries the weights `α_n = e^{qΔ_n}` and shifts `τ_k` that
//! separate the terms of a series by a factor `e^{-q|n-k|}` outside a small
//! exceptional set `E₁(q)`. [`ExtremalSeries`] is the positive series whose
//! exceptional set, where `M ≥ (1 + e^{-1}) μ`, has infinite h-measure.

mod extremal;
mod gadget;

pub use extremal::{
    build_extremal, extremal_exceptional_set, extremal_hmeas_partials, extremal_intervals,
    extremal_verify, ExtremalSeries, HMeasPartials, Verification,
};
pub use gadget::{
    bound_meas, build_gadget, central_term_bound_check, central_term_threshold, exceptional_set_e1,
    lemma1_check, modified_series, E1Set, Gadget, TailModel,
};
