//! One-dimensional search helpers.

use crate::scalar::Real;

/// Golden-section search for a local minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f(x_min))`; the bracket is shrunk until it is shorter than `tol`.
pub fn golden_section_min<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // the bracket shrinks geometrically; cap guards against tol below rounding
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
