//! Density functions and the measures of exceptional sets.
//!
//! For an increasing `h` the h-measure of a set `E` is `∫_E dh`; with `h(x) = x`
//! it is the Lebesgue measure. On the radius axis, the logarithmic measure
//! is `∫_E d ln r` and the h-log-measure is `∫_E dh(r)/r`.

mod intervals;
mod inverse;
mod monotone;
pub mod quad;

pub use intervals::{Interval, IntervalSet};
pub use inverse::{numeric_inverse, InverseOpts};
pub use monotone::{
    check_class, require_increasing, Builtin, ClassCheck, Custom, FnClass, MonotoneFn, PhiHandle,
};

use crate::error::{Error, Result};
use crate::scalar::Real;

const QUAD_DEPTH: u32 = 50;

fn domain_error<T: Real>(point: T, floor: T) -> Error {
    Error::Domain {
        point: point.to_f64().unwrap_or(f64::NAN),
        floor: floor.to_f64().unwrap_or(f64::NAN),
    }
}

/// `Σ_i h(b_i) − h(a_i)`, the Stieltjes measure of the set.
pub fn h_measure<T: Real>(h: &dyn MonotoneFn<T>, set: &IntervalSet<T>) -> Result<T> {
    let floor = h.domain_floor();
    let mut total = T::zero();
    for iv in set.intervals() {
        if iv.start < floor {
            return Err(domain_error(iv.start, floor));
        }
        total = total + (h.value(iv.end) - h.value(iv.start));
    }
    Ok(total)
}

/// `Σ_i ln b_i − ln a_i`.
///
/// With `strict` any interval starting below 1 is an error; otherwise the set
/// is intersected with `[1, ∞)` first.
pub fn log_measure<T: Real>(set: &IntervalSet<T>, strict: bool) -> Result<T> {
    let mut total = T::zero();
    for iv in set.intervals() {
        if iv.start < T::one() {
            if strict {
                return Err(domain_error(iv.start, T::one()));
            }
            if iv.end <= T::one() {
                continue;
            }
        }
        total = total + (iv.end.ln() - iv.start.max(T::one()).ln());
    }
    Ok(total)
}

/// `∫_E h'(r)/r dr` by adaptive quadrature on each interval.
pub fn h_log_measure<T: Real>(
    h: &dyn MonotoneFn<T>,
    set_r: &IntervalSet<T>,
    quad_tol: T,
) -> Result<T> {
    let n = T::from_index(set_r.len().max(1));
    let mut total = T::zero();
    for iv in set_r.intervals() {
        if iv.start <= T::zero() {
            return Err(domain_error(iv.start, T::zero()));
        }
        let q = quad::integrate(
            |r: T| h.derivative(r) / r,
            iv.start,
            iv.end,
            quad_tol / n,
            QUAD_DEPTH,
        )?;
        total = total + q.value;
    }
    Ok(total)
}

/// `∫_E density(x) dx`: the h-measure for an `h` known only through its derivative.
pub fn measure_with_density<T: Real>(
    density: impl Fn(T) -> T,
    set: &IntervalSet<T>,
    quad_tol: T,
) -> Result<T> {
    let n = T::from_index(set.len().max(1));
    let mut total = T::zero();
    for iv in set.intervals() {
        total =
            total + quad::integrate(&density, iv.start, iv.end, quad_tol / n, QUAD_DEPTH)?.value;
    }
    Ok(total)
}

/// h₁-measure of the image `{ln r : r ∈ E}` where `h₁'(x) = h'(e^x)`.
///
/// Equals [`h_log_measure`] of `E` by the substitution `r = e^x`.
pub fn h1_measure_of_log_image<T: Real>(
    h: &dyn MonotoneFn<T>,
    set_r: &IntervalSet<T>,
    quad_tol: T,
) -> Result<T> {
    if let Some(iv) = set_r.intervals().first().filter(|iv| iv.start <= T::zero()) {
        return Err(domain_error(iv.start, T::zero()));
    }
    let image = set_r.map_increasing(T::ln)?;
    measure_with_density(|x: T| h.derivative(x.exp()), &image, quad_tol)
}
