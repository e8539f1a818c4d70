//! Term sequences of the convergence conditions.
//!
//! All terms are formed as `(1/gap) · h'(argument)` so that with `h' ≡ 1`
//! each sequence coincides bit for bit with [`cond_gap`].

use super::CriterionReport;
use crate::error::{Error, Result};
use crate::measure::{MonotoneFn, PhiHandle};
use crate::scalar::Real;
use crate::series::check_increasing;

/// Default grid standing in for "for all b > 0".
pub const DEFAULT_B_GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

fn check_inputs<T: Real>(lambdas: &[T], n: usize) -> Result<()> {
    check_increasing(lambdas)?;
    if n + 1 > lambdas.len() {
        return Err(Error::InvalidArgument(format!(
            "{n} terms need {} exponents, only {} stored",
            n + 1,
            lambdas.len()
        )));
    }
    Ok(())
}

fn check_b<T: Real>(b: T) -> Result<()> {
    if b > T::zero() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("b = {b} must be positive")))
    }
}

fn build<T: Real>(
    lambdas: &[T],
    n: usize,
    mut weight: impl FnMut(T, T) -> Result<T>,
) -> Result<CriterionReport<T>> {
    check_inputs(lambdas, n)?;
    let terms = (0..n)
        .map(|k| {
            let gap = lambdas[k + 1] - lambdas[k];
            let term = (T::one() / gap) * weight(lambdas[k], gap)?;
            if term.is_nan() {
                return Err(Error::InvalidArgument(format!(
                    "term {k} is undefined: λ = {} lies outside the domain of h or φ",
                    lambdas[k]
                )));
            }
            Ok(term)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionReport::from_terms(terms))
}

/// `Σ 1/(λ_{n+1} − λ_n)`.
pub fn cond_gap<T: Real>(lambdas: &[T], n: usize) -> Result<CriterionReport<T>> {
    check_inputs(lambdas, n)?;
    let terms = (0..n)
        .map(|k| T::one() / (lambdas[k + 1] - lambdas[k]))
        .collect();
    Ok(CriterionReport::from_terms(terms))
}

/// `Σ h'(φ(λ_k) + b/(λ_{k+1} − λ_k)) / (λ_{k+1} − λ_k)`.
pub fn cond_8<T: Real>(
    lambdas: &[T],
    h: &dyn MonotoneFn<T>,
    phi: &PhiHandle<'_, T>,
    b: T,
    n: usize,
) -> Result<CriterionReport<T>> {
    check_b(b)?;
    build(lambdas, n, |lambda, gap| {
        Ok(h.derivative(phi.eval(lambda)? + b / gap))
    })
}

/// `Σ h'(φ₀(bλ_n) + b/(λ_{n+1} − λ_n)) / (λ_{n+1} − λ_n)`.
pub fn cond_11<T: Real>(
    lambdas: &[T],
    h: &dyn MonotoneFn<T>,
    phi0: &PhiHandle<'_, T>,
    b: T,
    n: usize,
) -> Result<CriterionReport<T>> {
    check_b(b)?;
    build(lambdas, n, |lambda, gap| {
        Ok(h.derivative(phi0.eval(b * lambda)? + b / gap))
    })
}

/// `Σ h'(b φ₁(bλ_n)) / (λ_{n+1} − λ_n)`; divergence for some `b` is the
/// hypothesis of the extremal construction.
pub fn cond_12<T: Real>(
    lambdas: &[T],
    h: &dyn MonotoneFn<T>,
    phi1: &PhiHandle<'_, T>,
    b: T,
    n: usize,
) -> Result<CriterionReport<T>> {
    check_b(b)?;
    build(lambdas, n, |lambda, _| {
        Ok(h.derivative(b * phi1.eval(b * lambda)?))
    })
}

/// `Σ h'(b λ_n^{1/α} + b/(λ_{n+1} − λ_n)) / (λ_{n+1} − λ_n)` for `Φ₀(x) = x^α`.
pub fn cond_thm6<T: Real>(
    lambdas: &[T],
    h: &dyn MonotoneFn<T>,
    alpha: T,
    b: T,
    n: usize,
) -> Result<CriterionReport<T>> {
    check_b(b)?;
    if !(alpha > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    build(lambdas, n, |lambda, gap| {
        Ok(h.derivative(b * lambda.powf(alpha.recip()) + b / gap))
    })
}

/// `Σ h'(exp{φ(n_k) + b/(n_{k+1} − n_k)}) / (n_{k+1} − n_k)` for gap power series.
pub fn cond_88<T: Real>(
    exponents: &[T],
    h: &dyn MonotoneFn<T>,
    phi: &PhiHandle<'_, T>,
    b: T,
    n: usize,
) -> Result<CriterionReport<T>> {
    check_b(b)?;
    build(exponents, n, |nk, gap| {
        Ok(h.derivative((phi.eval(nk)? + b / gap).exp()))
    })
}

/// `Σ h'(φ(λ_n)) / (λ_{n+1} − λ_n)`, the exploratory condition for `h ∈ L⁻`
/// on the class `D_φ`. No theorem backs a verdict on it.
pub fn cond_conjecture<T: Real>(
    lambdas: &[T],
    h: &dyn MonotoneFn<T>,
    phi: &PhiHandle<'_, T>,
    n: usize,
) -> Result<CriterionReport<T>> {
    build(lambdas, n, |lambda, _| Ok(h.derivative(phi.eval(lambda)?)))
}

/// Evaluates `cond` at every `b` of the grid.
pub fn over_b_grid<T: Real, R>(
    grid: &[T],
    mut cond: impl FnMut(T) -> Result<R>,
) -> Vec<(T, Result<R>)> {
    grid.iter().map(|&b| (b, cond(b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Verdict;
    use crate::measure::Builtin;

    fn geometric(n: usize) -> Vec<f64> {
        std::iter::once(0.0)
            .chain((1..=n as i32).map(|k| 2f64.powi(k)))
            .collect()
    }

    #[test]
    fn gap_on_geometric_sequence() {
        let r = cond_gap(&geometric(30), 30).unwrap();
        assert_eq!(&r.terms[..4], &[0.5, 0.5, 0.25, 0.125]);
        // 1/2 + Σ_{k≥1} 2^{-k} truncated at 2^{-29}
        assert!((r.total() - (1.5 - 2f64.powi(-29))).abs() < 1e-15);
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn gap_on_unit_and_square_steps() {
        let lin: Vec<f64> = (0..=64).map(f64::from).collect();
        let r = cond_gap(&lin, 64).unwrap();
        assert!(r.terms.iter().all(|&t| t == 1.0));
        assert_eq!(r.verdict, Verdict::Diverging);
        let sq: Vec<f64> = (0..=4096).map(|n| f64::from(n * n)).collect();
        let r = cond_gap(&sq, 4095).unwrap();
        assert_eq!(r.terms[5], 1.0 / 11.0);
        assert_eq!(r.verdict, Verdict::Diverging);
    }

    #[test]
    fn length_and_parameter_checks() {
        assert!(cond_gap(&[0.0f64, 1.0], 2).is_err());
        assert!(cond_gap(&[0.0f64, 1.0, 1.0], 1).is_err());
        let id = Builtin::Identity;
        let phi = PhiHandle::Direct(&id);
        assert!(cond_8(&[0.0f64, 1.0], &id, &phi, 0.0, 1).is_err());
        assert!(cond_thm6(&[0.0f64, 1.0], &id, -1.0, 1.0, 1).is_err());
    }

    #[test]
    fn identity_density_reduces_to_gap() {
        let lambdas = geometric(20);
        let id = Builtin::Identity;
        let sq = Builtin::power(2.0);
        let phi = PhiHandle::Direct(&sq);
        let gap = cond_gap(&lambdas, 20).unwrap().terms;
        for b in DEFAULT_B_GRID {
            assert_eq!(cond_8(&lambdas, &id, &phi, b, 20).unwrap().terms, gap);
            assert_eq!(cond_11(&lambdas, &id, &phi, b, 20).unwrap().terms, gap);
            assert_eq!(cond_12(&lambdas, &id, &phi, b, 20).unwrap().terms, gap);
            assert_eq!(cond_thm6(&lambdas, &id, 1.0, b, 20).unwrap().terms, gap);
            assert_eq!(cond_88(&lambdas, &id, &phi, b, 20).unwrap().terms, gap);
        }
        assert_eq!(cond_conjecture(&lambdas, &id, &phi, 20).unwrap().terms, gap);
    }

    #[test]
    fn cond_8_geometric_square_density() {
        let lambdas = geometric(31);
        let h = Builtin::power(2.0);
        let id = Builtin::Identity;
        let r = cond_8(&lambdas, &h, &PhiHandle::Direct(&id), 1.0, 30).unwrap();
        // independent evaluation: (1/g)·2(λ_k + 1/g)
        for k in 0..30 {
            let g = lambdas[k + 1] - lambdas[k];
            let expect = 2.0 * (lambdas[k] + 1.0 / g) / g;
            assert!((r.terms[k] - expect).abs() <= 1e-15 * expect, "k={k}");
        }
        assert!((r.terms[29] - 2.0).abs() < 1e-8);
        assert_eq!(r.verdict, Verdict::Diverging);
    }

    #[test]
    fn cond_8_exponential_phi_converges() {
        let lambdas: Vec<f64> = (0..=40).map(|n| f64::from(n).exp()).collect();
        let h = Builtin::power(2.0);
        let ln = Builtin::Log { scale: 1.0 };
        let r = cond_8(&lambdas, &h, &PhiHandle::Direct(&ln), 1.0, 40).unwrap();
        for k in 0..40 {
            let g = lambdas[k + 1] - lambdas[k];
            let expect = 2.0 * (k as f64 + 1.0 / g) / g;
            assert!((r.terms[k] - expect).abs() <= 1e-13 * expect);
        }
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn cond_11_matches_cond_8_at_unit_b() {
        let lambdas = geometric(25);
        let h = Builtin::Exp { rate: 0.01 };
        let phi = Builtin::power(0.5);
        let p = PhiHandle::Direct(&phi);
        assert_eq!(
            cond_11(&lambdas, &h, &p, 1.0, 25).unwrap(),
            cond_8(&lambdas, &h, &p, 1.0, 25).unwrap()
        );
    }

    #[test]
    fn cond_11_geometric_diverges() {
        let lambdas = geometric(31);
        let h = Builtin::power(2.0);
        let id = Builtin::Identity;
        let r = cond_11(&lambdas, &h, &PhiHandle::Direct(&id), 2.0, 30).unwrap();
        for k in 0..30 {
            let g = lambdas[k + 1] - lambdas[k];
            assert!((r.terms[k] - 2.0 * (2.0 * lambdas[k] + 2.0 / g) / g).abs() < 1e-12);
        }
        assert_eq!(r.verdict, Verdict::Diverging);
    }

    #[test]
    fn cond_12_cubic_density_log_phi() {
        let lambdas = geometric(31);
        let h = Builtin::power(3.0);
        let phi = Builtin::Log1p;
        let r = cond_12(&lambdas, &h, &PhiHandle::Direct(&phi), 1.0, 30).unwrap();
        for k in 0..30 {
            let g = lambdas[k + 1] - lambdas[k];
            let expect = 3.0 * (1.0 + lambdas[k]).ln().powi(2) / g;
            assert!((r.terms[k] - expect).abs() <= 1e-13 * expect.max(1e-300));
        }
        // 30 terms give only four dyadic blocks; the k²/2^k decay shows with more
        let long = geometric(63);
        let r = cond_12(&long, &h, &PhiHandle::Direct(&phi), 1.0, 62).unwrap();
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn cond_thm6_against_cond_11() {
        let lambdas = geometric(31);
        let h = Builtin::power(2.0);
        let root = Builtin::power(0.5);
        let a = cond_thm6(&lambdas, &h, 2.0, 1.0, 30).unwrap();
        let b = cond_11(&lambdas, &h, &PhiHandle::Direct(&root), 1.0, 30).unwrap();
        for k in 0..30 {
            let g = lambdas[k + 1] - lambdas[k];
            let expect = 2.0 * (lambdas[k].sqrt() + 1.0 / g) / g;
            assert!((a.terms[k] - expect).abs() <= 1e-14 * expect);
            assert!((a.terms[k] - b.terms[k]).abs() <= 1e-14 * expect);
        }
        // b·λ^{1/α} and (bλ)^{1/α} differ once b ≠ 1
        let a2 = cond_thm6(&lambdas, &h, 2.0, 4.0, 30).unwrap();
        let b2 = cond_11(&lambdas, &h, &PhiHandle::Direct(&root), 4.0, 30).unwrap();
        assert!(a2.terms[10] > b2.terms[10]);
    }

    #[test]
    fn cond_88_examples() {
        let nk: Vec<f64> = (0..=40).map(|k| 2f64.powi(k)).collect();
        let h = Builtin::Log1p;
        let id = Builtin::Identity;
        let r = cond_88(&nk, &h, &PhiHandle::Direct(&id), 1.0, 40).unwrap();
        for k in 0..40 {
            let g = nk[k + 1] - nk[k];
            let expect = 1.0 / (1.0 + (nk[k] + 1.0 / g).exp()) / g;
            assert!((r.terms[k] - expect).abs() <= 1e-14 * expect.max(1e-300));
        }
        assert_eq!(r.verdict, Verdict::Converging);
        let cubes: Vec<f64> = (0..=200).map(|k| f64::from(k * k * k)).collect();
        let r = cond_88(&cubes, &id, &PhiHandle::Direct(&id), 1.0, 200).unwrap();
        assert_eq!(r.terms[3], 1.0 / 37.0);
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn b_grid_collects_per_b_results() {
        let lambdas = geometric(10);
        let id = Builtin::Identity;
        let rows = over_b_grid(&[1.0, -1.0], |b| {
            cond_8(&lambdas, &id, &PhiHandle::Direct(&id), b, 10)
        });
        assert!(rows[0].1.is_ok());
        assert!(rows[1].1.is_err());
    }

    #[test]
    fn undefined_terms_are_errors() {
        let lambdas = geometric(10);
        let xlog = Builtin::XLog;
        let log = Builtin::Log { scale: 1.0 };
        // φ = ln at λ_0 = 0 sends h' = ln(e + x) + x/(e + x) to −∞ + ∞
        let err = cond_conjecture(&lambdas, &xlog, &PhiHandle::Direct(&log), 10).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }
}
