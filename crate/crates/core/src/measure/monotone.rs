//! Increasing functions of the classes `L`, `L⁺` and `L⁻`.

use super::inverse::{numeric_inverse, InverseOpts};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Class tag of an increasing function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnClass {
    /// Positive, continuous, increasing to `+∞`.
    L,
    /// `L` with nondecreasing derivative.
    LPlus,
    /// `L` with nonincreasing derivative.
    LMinus,
}

/// Increasing function with an explicit derivative.
pub trait MonotoneFn<T: Real>: Send + Sync {
    fn value(&self, x: T) -> T;
    fn derivative(&self, x: T) -> T;
    fn class(&self) -> FnClass;

    /// Left end of the domain.
    fn domain_floor(&self) -> T {
        T::zero()
    }
}

/// Library of closed-form functions used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin<T> {
    /// `x`
    Identity,
    /// `scale · x^exponent`
    Power { scale: T, exponent: T },
    /// `e^{rate·x}`
    Exp { rate: T },
    /// `e^x − 1`
    ExpM1,
    /// `scale · ln x`
    Log { scale: T },
    /// `ln(1 + x)`
    Log1p,
    /// `x · ln(e + x)`
    XLog,
}

impl<T: Real> Builtin<T> {
    pub fn power(exponent: T) -> Self {
        Builtin::Power {
            scale: T::one(),
            exponent,
        }
    }

    /// Closed-form inverse, when the library has one.
    pub fn inverse(&self) -> Option<Self> {
        Some(match *self {
            Builtin::Identity => Builtin::Identity,
            Builtin::Power { scale, exponent } => Builtin::Power {
                scale: scale.powf(-exponent.recip()),
                exponent: exponent.recip(),
            },
            Builtin::Exp { rate } => Builtin::Log {
                scale: rate.recip(),
            },
            Builtin::Log { scale } => Builtin::Exp {
                rate: scale.recip(),
            },
            Builtin::Log1p => Builtin::ExpM1,
            Builtin::ExpM1 => Builtin::Log1p,
            Builtin::XLog => return None,
        })
    }
}

impl<T: Real> MonotoneFn<T> for Builtin<T> {
    fn value(&self, x: T) -> T {
        match *self {
            Builtin::Identity => x,
            Builtin::Power { scale, exponent } => scale * x.powf(exponent),
            Builtin::Exp { rate } => (rate * x).exp(),
            Builtin::ExpM1 => x.exp_m1(),
            Builtin::Log { scale } => scale * x.ln(),
            Builtin::Log1p => x.ln_1p(),
            Builtin::XLog => x * (T::E() + x).ln(),
        }
    }

    fn derivative(&self, x: T) -> T {
        match *self {
            Builtin::Identity => T::one(),
            Builtin::Power { scale, exponent } => {
                if exponent == T::one() {
                    scale
                } else if exponent == T::lit(2.0) {
                    // keep x² derivatives exact
                    scale * (x + x)
                } else {
                    scale * exponent * x.powf(exponent - T::one())
                }
            }
            Builtin::Exp { rate } => rate * (rate * x).exp(),
            Builtin::ExpM1 => x.exp(),
            Builtin::Log { scale } => scale / x,
            Builtin::Log1p => (T::one() + x).recip(),
            Builtin::XLog => (T::E() + x).ln() + x / (T::E() + x),
        }
    }

    fn class(&self) -> FnClass {
        match *self {
            Builtin::Identity | Builtin::Exp { .. } | Builtin::ExpM1 | Builtin::XLog => {
                FnClass::LPlus
            }
            Builtin::Power { exponent, .. } if exponent >= T::one() => FnClass::LPlus,
            Builtin::Power { .. } | Builtin::Log { .. } | Builtin::Log1p => FnClass::LMinus,
        }
    }
}

/// Increasing function given by user closures.
pub struct Custom<T> {
    value: Box<dyn Fn(T) -> T + Send + Sync>,
    derivative: Box<dyn Fn(T) -> T + Send + Sync>,
    class: FnClass,
    floor: T,
}

impl<T: Real> Custom<T> {
    pub fn new(
        value: impl Fn(T) -> T + Send + Sync + 'static,
        derivative: impl Fn(T) -> T + Send + Sync + 'static,
        class: FnClass,
    ) -> Self {
        Self {
            value: Box::new(value),
            derivative: Box::new(derivative),
            class,
            floor: T::zero(),
        }
    }

    pub fn with_floor(mut self, floor: T) -> Self {
        self.floor = floor;
        self
    }
}

impl<T: Real> MonotoneFn<T> for Custom<T> {
    fn value(&self, x: T) -> T {
        (self.value)(x)
    }
    fn derivative(&self, x: T) -> T {
        (self.derivative)(x)
    }
    fn class(&self) -> FnClass {
        self.class
    }
    fn domain_floor(&self) -> T {
        self.floor
    }
}

/// `φ`: either an explicit function or the numeric inverse of `Φ`.
#[derive(Clone, Copy)]
pub enum PhiHandle<'a, T> {
    Direct(&'a dyn MonotoneFn<T>),
    InverseOf {
        of: &'a dyn MonotoneFn<T>,
        opts: InverseOpts<T>,
    },
}

impl<'a, T: Real> PhiHandle<'a, T> {
    pub fn inverse_of(of: &'a dyn MonotoneFn<T>) -> Self {
        PhiHandle::InverseOf {
            of,
            opts: InverseOpts::default(),
        }
    }

    pub fn eval(&self, t: T) -> Result<T> {
        match self {
            PhiHandle::Direct(f) => Ok(f.value(t)),
            PhiHandle::InverseOf { of, opts } => numeric_inverse(*of, t, opts),
        }
    }
}

/// Result of sampling a function against its class tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCheck {
    pub increasing: bool,
    pub derivative_monotone: bool,
}

impl ClassCheck {
    pub fn passed(&self) -> bool {
        self.increasing && self.derivative_monotone
    }
}

/// Spot-checks the class tag on the given sorted grid.
pub fn check_class<T: Real>(f: &dyn MonotoneFn<T>, class: FnClass, grid: &[T]) -> ClassCheck {
    let increasing = grid
        .windows(2)
        .all(|w| w[0] >= w[1] || f.value(w[0]) < f.value(w[1]));
    let derivative_monotone = grid.windows(2).all(|w| {
        let (d0, d1) = (f.derivative(w[0]), f.derivative(w[1]));
        match class {
            FnClass::L => true,
            FnClass::LPlus => d0 <= d1,
            FnClass::LMinus => d0 >= d1,
        }
    });
    ClassCheck {
        increasing,
        derivative_monotone,
    }
}

/// First pair of grid points on which `f` fails to increase.
pub fn require_increasing<T: Real>(f: &dyn MonotoneFn<T>, points: &[T]) -> Result<()> {
    for w in points.windows(2) {
        if w[0] < w[1] && f.value(w[0]) >= f.value(w[1]) {
            return Err(Error::MonotoneViolation {
                a: w[0].to_f64().unwrap_or(f64::NAN),
                b: w[1].to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_builtins() -> Vec<Builtin<f64>> {
        vec![
            Builtin::Identity,
            Builtin::power(2.0),
            Builtin::power(0.5),
            Builtin::Power {
                scale: 3.0,
                exponent: 1.5,
            },
            Builtin::Exp { rate: 0.7 },
            Builtin::ExpM1,
            Builtin::Log { scale: 2.0 },
            Builtin::Log1p,
            Builtin::XLog,
        ]
    }

    #[test]
    fn derivatives_match_central_differences() {
        for f in all_builtins() {
            for &x in &[0.3, 1.0, 2.5, 7.0] {
                let eps = 1e-6;
                let fd = (f.value(x + eps) - f.value(x - eps)) / (2.0 * eps);
                let d = f.derivative(x);
                assert!(
                    (d - fd).abs() <= 1e-6 * d.abs().max(1.0),
                    "{f:?} at {x}: {d} vs {fd}"
                );
            }
        }
    }

    #[test]
    fn class_tags_hold_on_grid() {
        let grid: Vec<f64> = (1..200).map(|i| f64::from(i) * 0.05).collect();
        for f in all_builtins() {
            let check = check_class(&f, f.class(), &grid);
            assert!(check.passed(), "{f:?}: {check:?}");
        }
        let x2 = Builtin::power(2.0);
        assert!(!check_class(&x2, FnClass::LMinus, &grid).derivative_monotone);
    }

    #[test]
    fn closed_inverses_round_trip() {
        for f in all_builtins() {
            if let Some(g) = f.inverse() {
                for &x in &[0.5, 1.0, 3.0] {
                    let back = g.value(f.value(x));
                    assert!((back - x).abs() < 1e-12, "{f:?} at {x}: {back}");
                }
            }
        }
    }

    #[test]
    fn identity_derivative_is_exactly_one() {
        assert_eq!(Builtin::<f64>::Identity.derivative(123.456), 1.0);
        assert_eq!(Builtin::<f64>::power(1.0).derivative(9.0), 1.0);
    }

    #[test]
    fn phi_handle_variants() {
        let id = Builtin::<f64>::Identity;
        assert_eq!(PhiHandle::Direct(&id).eval(4.0).unwrap(), 4.0);
        let sq = Builtin::power(2.0);
        let phi: PhiHandle<f64> = PhiHandle::inverse_of(&sq);
        assert!((phi.eval(9.0).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn custom_function_and_monotone_violation() {
        let f = Custom::new(|x: f64| x * x * x, |x| 3.0 * x * x, FnClass::LPlus);
        assert!(require_increasing(&f, &[0.0, 1.0, 2.0]).is_ok());
        let g = Custom::new(|x: f64| (x - 1.0).powi(2), |x| 2.0 * (x - 1.0), FnClass::L);
        assert_eq!(
            require_increasing(&g, &[0.0, 0.5, 2.0]).unwrap_err(),
            Error::MonotoneViolation { a: 0.0, b: 0.5 }
        );
    }
}
