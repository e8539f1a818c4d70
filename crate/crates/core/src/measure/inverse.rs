use super::monotone::MonotoneFn;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bracketing and stopping controls for [`numeric_inverse`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseOpts<T> {
    /// Accept `x` once `|f(x) − target| ≤ tol`.
    pub tol: T,
    /// Largest right endpoint tried while doubling the bracket.
    pub ceiling: T,
}

impl<T: Real> Default for InverseOpts<T> {
    fn default() -> Self {
        Self {
            tol: T::epsilon() * T::lit(1e4),
            ceiling: T::max_value().sqrt(),
        }
    }
}

/// Solves `f(x) = target` for an increasing `f` by doubling then bisection.
///
/// When the bracket collapses to adjacent floats before `tol` is met (steep
/// `f`), the midpoint of the last bracket is returned.
pub fn numeric_inverse<T: Real, F: MonotoneFn<T> + ?Sized>(
    f: &F,
    target: T,
    opts: &InverseOpts<T>,
) -> Result<T> {
    let bracket_err = || Error::Bracket {
        target: target.to_f64().unwrap_or(f64::NAN),
        ceiling: opts.ceiling.to_f64().unwrap_or(f64::NAN),
    };
    if !target.is_finite() {
        return Err(bracket_err());
    }
    let floor = f.domain_floor();
    let f_floor = f.value(floor);
    if (f_floor - target).abs() <= opts.tol {
        return Ok(floor);
    }
    if f_floor > target {
        return Err(bracket_err());
    }
    let mut lo = floor;
    let mut step = T::one();
    let mut hi = floor + step;
    while f.value(hi) < target {
        lo = hi;
        step = step + step;
        hi = floor + step;
        if hi > opts.ceiling {
            return Err(bracket_err());
        }
    }
    loop {
        let mid = lo + (hi - lo) / T::lit(2.0);
        let fm = f.value(mid);
        if (fm - target).abs() <= opts.tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if fm < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Builtin;

    #[test]
    fn identity_and_square() {
        let opts = InverseOpts {
            tol: 1e-12,
            ..Default::default()
        };
        let x = numeric_inverse(&Builtin::<f64>::Identity, 5.0, &opts).unwrap();
        assert!((x - 5.0).abs() <= 1e-12);
        let x = numeric_inverse(&Builtin::power(2.0), 9.0, &opts).unwrap();
        assert!((x - 3.0).abs() <= 1e-12);
    }

    #[test]
    fn target_below_range_is_bracket_error() {
        let f = Builtin::<f64>::Exp { rate: 1.0 };
        assert!(matches!(
            numeric_inverse(&f, 0.5, &InverseOpts::default()),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn ceiling_stops_doubling() {
        let opts = InverseOpts {
            tol: 1e-9,
            ceiling: 100.0,
        };
        let err = numeric_inverse(&Builtin::<f64>::Log1p, 50.0, &opts).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn steep_function_returns_collapsed_bracket() {
        let f = Builtin::<f64>::Exp { rate: 40.0 };
        let x = numeric_inverse(
            &f,
            1e100,
            &InverseOpts {
                tol: 1e-300,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((x - 1e100f64.ln() / 40.0).abs() < 1e-12);
    }
}
