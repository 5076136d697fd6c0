//! Numerical oracles for the coefficient, area and derivative lemmas.
//!
//! Each check returns both sides of an inequality. Truncated sums on the
//! left are padded with the series tail bound, so `holds` is never claimed on
//! the strength of a missing tail.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{domain, BohrError, Result};
use crate::functionals::{area_ratio, bohr_tail};
use crate::scalar::{factorial, powu, Scalar};
use crate::series::CoefficientSeries;

/// Absolute slack below zero still accepted as `holds`.
pub const HOLD_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub holds: bool,
}

impl<T: Scalar> BoundReport<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        let tol = T::lit(HOLD_TOLERANCE).max(T::epsilon() * T::lit(1e3));
        let slack = rhs - lhs;
        Self {
            lhs,
            rhs,
            slack,
            holds: slack >= -tol,
        }
    }
}

fn open_radius<T: Scalar>(r: T) -> Result<()> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain("r", r.as_f64(), "[0, 1)"));
    }
    Ok(())
}

fn area_radius<T: Scalar>(r: T) -> Result<()> {
    if !(r >= T::zero()) {
        return Err(domain("r", r.as_f64(), "[0, 1/sqrt 2]"));
    }
    if r > T::FRAC_1_SQRT_2() {
        return Err(BohrError::OutOfLemmaRange(r.as_f64()));
    }
    Ok(())
}

/// `|a_n| <= 1 - |a_0|^2` over the stored coefficients.
pub fn check_coeff_bound<T: Scalar>(s: &CoefficientSeries<T>) -> BoundReport<T> {
    let lhs = (1..=s.trunc_order())
        .map(|n| s.coeff_abs(n))
        .fold(T::zero(), T::max);
    let a0 = s.a0();
    BoundReport::new(lhs, T::one() - a0 * a0)
}

/// `sum_{n>=1} |a_n|^2 r^(pn) <= r^p (1 - |a_0|^2)^2 / (1 - |a_0|^2 r^p)`.
pub fn check_sq_sum_bound<T: Scalar>(
    s: &CoefficientSeries<T>,
    r: T,
    p: T,
) -> Result<BoundReport<T>> {
    open_radius(r)?;
    if !(p > T::zero()) {
        return Err(domain("p", p.as_f64(), "(0, inf)"));
    }
    let y = r.powf(p);
    let head: T = (1..=s.trunc_order())
        .map(|n| s.coeffs()[n].norm_sqr() * powu(y, n))
        .sum();
    let lhs = head + s.sq_tail_bound(y, false);
    let q = T::one() - s.a0() * s.a0();
    let rhs = y * q * q / (T::one() - s.a0() * s.a0() * y);
    Ok(BoundReport::new(lhs, rhs))
}

/// `S_r / pi <= r^2 (1 - |a_0|^2)^2 / (1 - |a_0|^2 r^2)^2` for `r <= 1/sqrt 2`.
pub fn check_area_bound<T: Scalar>(s: &CoefficientSeries<T>, r: T) -> Result<BoundReport<T>> {
    area_radius(r)?;
    let lhs = area_ratio(s, r)? + s.sq_tail_bound(r * r, true);
    let a2 = s.a0() * s.a0();
    let q = T::one() - a2;
    let d = T::one() - a2 * r * r;
    Ok(BoundReport::new(lhs, r * r * q * q / (d * d)))
}

/// Tail lemma with `t = floor((N - 1) / 2)`:
///
/// ```text
/// sum_{n>=N} |a_n| r^n + sgn(t) sum_{n=1..t} |a_n|^2 r^N/(1-r)
///   + (1/(1+|a_0|) + r/(1-r)) sum_{n>=t+1} |a_n|^2 r^(2n)  <=  (1 - |a_0|^2) r^N / (1 - r)
/// ```
pub fn check_tail_lemma<T: Scalar>(
    s: &CoefficientSeries<T>,
    r: T,
    n: usize,
) -> Result<BoundReport<T>> {
    open_radius(r)?;
    if n < 1 {
        return Err(domain("N", 0.0, "[1, inf)"));
    }
    let order = s.trunc_order();
    let t = (n - 1) / 2;
    let one = T::one();
    let a0 = s.a0();
    let rn = powu(r, n);
    let r2 = r * r;

    let linear = bohr_tail(s, r, n)? + s.tail_bound(r, 0);
    let middle: T = (1..=t.min(order))
        .map(|k| s.coeffs()[k].norm_sqr())
        .sum::<T>()
        * rn
        / (one - r);
    let factor = one / (one + a0) + r / (one - r);
    let squares: T = (t + 1..=order)
        .map(|k| s.coeffs()[k].norm_sqr() * powu(r2, k))
        .sum::<T>()
        + s.sq_tail_bound(r2, false);
    let lhs = linear + middle + factor * squares;
    let rhs = (one - a0 * a0) * rn / (one - r);
    Ok(BoundReport::new(lhs, rhs))
}

/// `|f^(k)(z)| <= k! (1 - |f(z)|^2) (1 + |z|)^(k-1) / (1 - |z|^2)^k` for `1 <= k <= 4`.
pub fn check_schwarz_pick_deriv<T: Scalar>(
    s: &CoefficientSeries<T>,
    z: Complex<T>,
    k: usize,
) -> Result<BoundReport<T>> {
    if !(1..=4).contains(&k) {
        return Err(domain("k", k as f64, "{1, 2, 3, 4}"));
    }
    let d = s.derivative_at(z, k)?;
    let f = s.eval(z)?;
    let lhs = d.value.norm() + d.abs_error_bound;
    // largest admissible |f(z)| gives the smallest right side
    let fmax = (f.value.norm() + f.abs_error_bound).min(T::one());
    let t = z.norm();
    let one = T::one();
    let rhs = factorial::<T>(k) * (one - fmax * fmax) * powu(one + t, k - 1) / powu(one - t * t, k);
    Ok(BoundReport::new(lhs, rhs))
}

/// `1 - S_r/pi >= (1 - r^2)(1 - r^2 |a_0|^4) / (1 - |a_0|^2 r^2)^2` for `r <= 1/sqrt 2`.
///
/// Here `lhs` is the closed-form expression and `rhs` is `1 - S_r/pi`.
pub fn check_area_complement<T: Scalar>(s: &CoefficientSeries<T>, r: T) -> Result<BoundReport<T>> {
    area_radius(r)?;
    let one = T::one();
    let a2 = s.a0() * s.a0();
    let r2 = r * r;
    let d = one - a2 * r2;
    let lhs = (one - r2) * (one - r2 * a2 * a2) / (d * d);
    let rhs = one - area_ratio(s, r)? - s.sq_tail_bound(r2, true);
    Ok(BoundReport::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{automorphism_series, AutomorphismParams, BlaschkeProduct};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn auto(a: f64) -> CoefficientSeries<f64> {
        automorphism_series(AutomorphismParams::minus(a), 200).unwrap()
    }

    fn blaschke(degree: usize, seed: u64) -> CoefficientSeries<f64> {
        BlaschkeProduct::sample(degree, seed)
            .unwrap()
            .series(200)
            .unwrap()
    }

    #[test]
    fn coeff_bound_examples() {
        let r = check_coeff_bound(&auto(0.5));
        assert_relative_eq!(r.lhs, 0.75);
        assert_relative_eq!(r.rhs, 0.75);
        assert!(r.holds && r.slack.abs() < 1e-15);
        let r = check_coeff_bound(&auto(0.0));
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        for seed in 0..20 {
            assert!(check_coeff_bound(&blaschke(3, seed)).holds);
        }
    }

    #[test]
    fn sq_sum_examples() {
        for a in [0.0, 0.3, 0.7, 0.9] {
            for r in [0.1, 0.5, 0.8] {
                for p in [0.5, 1.0, 2.0] {
                    let rep = check_sq_sum_bound(&auto(a), r, p).unwrap();
                    assert!(rep.slack.abs() <= 1e-12, "a={a} r={r} p={p}");
                }
            }
        }
        let rep = check_sq_sum_bound(&auto(0.0), 0.5, 2.0).unwrap();
        assert_relative_eq!(rep.lhs, 0.25, epsilon = 1e-15);
        assert_relative_eq!(rep.rhs, 0.25, epsilon = 1e-15);
        assert!(check_sq_sum_bound(&auto(0.5), 1.0, 1.0).is_err());
        for seed in 0..20 {
            assert!(
                check_sq_sum_bound(&blaschke(2, seed), 0.6, 1.0)
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn area_bound_examples() {
        let rep = check_area_bound(&auto(0.5), 0.5).unwrap();
        assert!(rep.slack.abs() <= 1e-12);
        assert_relative_eq!(rep.rhs, 0.16, epsilon = 1e-14);
        let rep = check_area_bound(&auto(0.5), 1e-8).unwrap();
        assert!(rep.lhs < 1e-15 && rep.rhs < 1e-15);
        assert_eq!(
            check_area_bound(&auto(0.5), 0.8),
            Err(BohrError::OutOfLemmaRange(0.8))
        );
        for seed in 0..20 {
            assert!(check_area_bound(&blaschke(3, seed), 0.7).unwrap().holds);
        }
    }

    #[test]
    fn tail_lemma_examples() {
        // automorphisms are extremal here as well: both sides equal 0.1875
        let rep = check_tail_lemma(&auto(0.5), 0.2, 1).unwrap();
        assert!(rep.holds && rep.slack.abs() < 1e-15);
        assert_relative_eq!(rep.rhs, 0.1875, epsilon = 1e-15);
        let rep = check_tail_lemma(&blaschke(2, 5), 0.2, 1).unwrap();
        assert!(rep.holds && rep.slack > 0.0);
        let rep = check_tail_lemma(&auto(0.5), 0.0, 1).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
        for seed in 0..20 {
            for n in [3, 4] {
                let rep = check_tail_lemma(&blaschke(3, seed), 0.4, n).unwrap();
                assert!(rep.holds, "seed={seed} N={n}");
            }
        }
        assert!(check_tail_lemma(&auto(0.5), 1.0, 2).is_err());
    }

    #[test]
    fn tail_lemma_direct_sum() {
        // N = 1, a = 0.5, r = 0.2 summed independently
        let (a, r) = (0.5f64, 0.2f64);
        let c = |n: i32| (1.0 - a * a) * a.powi(n - 1);
        let lin: f64 = (1..400).map(|n| c(n) * r.powi(n)).sum();
        let sq: f64 = (1..400).map(|n| c(n).powi(2) * r.powi(2 * n)).sum();
        let lhs = lin + (1.0 / (1.0 + a) + r / (1.0 - r)) * sq;
        let rep = check_tail_lemma(&auto(a), r, 1).unwrap();
        assert_relative_eq!(rep.lhs, lhs, epsilon = 1e-14);
        assert_relative_eq!(rep.rhs, 0.75 * 0.2 / 0.8, epsilon = 1e-15);
    }

    #[test]
    fn schwarz_pick_examples() {
        let rep = check_schwarz_pick_deriv(&auto(0.0), Complex::new(0.0, 0.0), 1).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (1.0, 1.0));
        // automorphisms attain the k = 1 bound everywhere
        let rep = check_schwarz_pick_deriv(&auto(0.5), Complex::new(-0.3, 0.0), 1).unwrap();
        assert_relative_eq!(rep.lhs, 0.75 / 1.3225, epsilon = 1e-12);
        assert_relative_eq!(rep.rhs, 0.567108, epsilon = 1e-6);
        assert!(rep.holds && rep.slack.abs() < 1e-12);
        assert!(check_schwarz_pick_deriv(&auto(0.5), Complex::new(0.1, 0.0), 5).is_err());
    }

    #[test]
    fn area_complement_examples() {
        for a in [0.0, 0.2, 0.5, 0.8, 0.95] {
            for r in [0.05, 0.3, 0.5, 0.7] {
                assert!(check_area_complement(&auto(a), r).unwrap().holds);
            }
        }
        let rep = check_area_complement(&auto(0.3), 1e-9).unwrap();
        assert_relative_eq!(rep.lhs, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.rhs, 1.0, epsilon = 1e-12);
        assert!(check_area_complement(&auto(0.3), 0.75).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn oracles_hold_on_blaschke(seed in any::<u64>(), degree in 1usize..5, frac in 0.01..0.99f64,
                                    ang in 0.0..6.3f64) {
            let s = blaschke(degree, seed);
            let r = frac * 0.9;
            prop_assert!(check_coeff_bound(&s).holds);
            prop_assert!(check_sq_sum_bound(&s, r, 1.5).unwrap().holds);
            prop_assert!(check_tail_lemma(&s, r, 1 + degree).unwrap().holds);
            for k in 1..=4 {
                let z = Complex::from_polar(r * 0.8, ang);
                prop_assert!(check_schwarz_pick_deriv(&s, z, k).unwrap().holds);
            }
            let ra = frac * std::f64::consts::FRAC_1_SQRT_2;
            prop_assert!(check_area_bound(&s, ra).unwrap().holds);
            prop_assert!(check_area_complement(&s, ra).unwrap().holds);
        }

        #[test]
        fn automorphisms_are_extremal(a in 0.0..0.9f64, r in 0.0..0.7f64) {
            let s = auto(a);
            prop_assert!(check_sq_sum_bound(&s, r, 2.0).unwrap().slack.abs() <= 1e-12);
            prop_assert!(check_area_bound(&s, r).unwrap().slack.abs() <= 1e-12);
            let z = Complex::new(-r, 0.0);
            prop_assert!(check_schwarz_pick_deriv(&s, z, 1).unwrap().slack.abs() <= 1e-12);
        }
    }
}
