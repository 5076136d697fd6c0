//! Bohr-type functionals assembled from reusable building blocks.
//!
//! Every inequality studied here has the shape
//!
//! ```text
//! head + sum_{k=1..K} |f^(k)(z)| r^k / k! + B_N(f, r) + |a_1|^2 r^m / (1 - r)
//!      + A(f_0 or f_1, r) + lambda * (S_r/pi  or  S_r/(pi - S_r))  <=  1
//! ```
//!
//! with `r = |z|`. A [`FunctionalDescriptor`] picks the pieces and
//! [`eval_functional`] evaluates them on a truncated series, keeping a
//! per-term breakdown and a bound on the truncation error.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, BohrError, Result};
use crate::scalar::{factorial, powu, Scalar};
use crate::series::CoefficientSeries;

/// Leading term of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeadTerm {
    None,
    /// `|f(z)|`
    AbsF,
    /// `|f(z)|^2`
    AbsFSq,
    /// `|a_0|`
    AbsA0,
    /// `|a_0|^2`
    AbsA0Sq,
}

/// Which refinement quantity `A(f_0, r)` or `A(f_1, r)` to add.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Refinement {
    None,
    AF0,
    AF1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AreaTerm {
    None,
    /// `S_r / pi`
    SOverPi,
    /// `S_r / (pi - S_r)`
    SOverPiMinusS,
}

/// Recipe for one Bohr-type functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalDescriptor<T> {
    pub head: HeadTerm,
    /// Include `|f^(k)(z)| r^k / k!` for `k = 1..=deriv_terms`.
    pub deriv_terms: usize,
    /// Include `B_N(f, r)` with `N = tail_start`.
    pub tail_start: usize,
    pub refinement: Refinement,
    /// `Some(m)` adds `|a_1|^2 r^m / (1 - r)`.
    pub coeff_sq_power: Option<u32>,
    pub area: AreaTerm,
    pub lambda: T,
}

impl<T: Scalar> FunctionalDescriptor<T> {
    /// `head + B_N(f, r)` with nothing else.
    pub fn new(head: HeadTerm, tail_start: usize) -> Self {
        Self {
            head,
            deriv_terms: 0,
            tail_start,
            refinement: Refinement::None,
            coeff_sq_power: None,
            area: AreaTerm::None,
            lambda: T::zero(),
        }
    }

    /// `B_0(f, r) = |a_0| + sum_{n>=1} |a_n| r^n`.
    pub fn classical_bohr() -> Self {
        Self::new(HeadTerm::AbsA0, 1)
    }

    pub fn derivatives(mut self, k: usize) -> Self {
        self.deriv_terms = k;
        self
    }

    pub fn refined(mut self, which: Refinement) -> Self {
        self.refinement = which;
        self
    }

    pub fn coeff_sq(mut self, m: u32) -> Self {
        self.coeff_sq_power = Some(m);
        self
    }

    pub fn area(mut self, term: AreaTerm, lambda: T) -> Self {
        self.area = term;
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.tail_start < 1 {
            return Err(BohrError::InvalidDescriptor(
                "tail_start must be at least 1",
            ));
        }
        if self.tail_start < self.deriv_terms + 1 {
            return Err(BohrError::InvalidDescriptor(
                "tail_start must exceed deriv_terms (coefficients counted twice)",
            ));
        }
        if self.refinement == Refinement::AF1 && self.tail_start < 3 {
            return Err(BohrError::InvalidDescriptor(
                "A(f_1, r) requires tail_start >= 3",
            ));
        }
        if !(self.lambda >= T::zero()) {
            return Err(BohrError::InvalidDescriptor("lambda must be nonnegative"));
        }
        if self.area == AreaTerm::None && self.lambda != T::zero() {
            return Err(BohrError::InvalidDescriptor(
                "lambda given without an area term",
            ));
        }
        Ok(())
    }
}

/// Value of a functional with its breakdown.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalValue<T> {
    pub total: T,
    pub parts: BTreeMap<String, T>,
    pub error_bound: T,
}

fn check_radius<T: Scalar>(r: T) -> Result<()> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain("r", r.as_f64(), "[0, 1)"));
    }
    Ok(())
}

/// `B_k(f, r) = sum_{n>=k} |a_n| r^n`, truncated at the series order.
pub fn bohr_tail<T: Scalar>(s: &CoefficientSeries<T>, r: T, k: usize) -> Result<T> {
    check_radius(r)?;
    Ok((k..=s.trunc_order())
        .map(|n| s.coeff_abs(n) * powu(r, n))
        .sum())
}

/// `||f_0||_r^2` (start = 1) or `||f_1||_r^2` (start = 2).
pub fn norm_sq<T: Scalar>(s: &CoefficientSeries<T>, r: T, start: usize) -> Result<T> {
    check_radius(r)?;
    if !(1..=2).contains(&start) {
        return Err(domain("start", start as f64, "{1, 2}"));
    }
    let r2 = r * r;
    Ok((start..=s.trunc_order())
        .map(|n| s.coeffs()[n].norm_sqr() * powu(r2, n))
        .sum())
}

fn refinement_factor<T: Scalar>(a0: T, r: T) -> T {
    T::one() / (T::one() + a0) + r / (T::one() - r)
}

/// `A(f_0, r)` or `A(f_1, r)`; zero for [`Refinement::None`].
pub fn refinement_a<T: Scalar>(s: &CoefficientSeries<T>, r: T, which: Refinement) -> Result<T> {
    check_radius(r)?;
    let start = match which {
        Refinement::None => return Ok(T::zero()),
        Refinement::AF0 => 1,
        Refinement::AF1 => 2,
    };
    Ok(refinement_factor(s.a0(), r) * norm_sq(s, r, start)?)
}

/// `S_r / pi = sum_{n>=1} n |a_n|^2 r^(2n)`.
pub fn area_ratio<T: Scalar>(s: &CoefficientSeries<T>, r: T) -> Result<T> {
    check_radius(r)?;
    let r2 = r * r;
    Ok((1..=s.trunc_order())
        .map(|n| T::of_usize(n) * s.coeffs()[n].norm_sqr() * powu(r2, n))
        .sum())
}

/// `S_r / (pi - S_r)`.
pub fn area_odds<T: Scalar>(s: &CoefficientSeries<T>, r: T) -> Result<T> {
    let x = area_ratio(s, r)?;
    if x >= T::one() {
        return Err(BohrError::DegenerateArea(x.as_f64()));
    }
    Ok(x / (T::one() - x))
}

/// Evaluates the functional described by `d` at `z`, with `r = |z|`.
pub fn eval_functional<T: Scalar>(
    d: &FunctionalDescriptor<T>,
    s: &CoefficientSeries<T>,
    z: Complex<T>,
) -> Result<FunctionalValue<T>> {
    d.validate()?;
    let r = z.norm();
    check_radius(r)?;
    let mut parts = BTreeMap::new();
    let mut err = T::zero();

    match d.head {
        HeadTerm::None => {}
        HeadTerm::AbsF | HeadTerm::AbsFSq => {
            let e = s.eval(z)?;
            let m = e.value.norm();
            if d.head == HeadTerm::AbsF {
                parts.insert("head".to_string(), m);
                err = err + e.abs_error_bound;
            } else {
                parts.insert("head".to_string(), m * m);
                let de = e.abs_error_bound;
                err = err + (T::lit(2.0) * m + de) * de;
            }
        }
        HeadTerm::AbsA0 => {
            parts.insert("head".to_string(), s.a0());
        }
        HeadTerm::AbsA0Sq => {
            parts.insert("head".to_string(), s.a0() * s.a0());
        }
    }

    for k in 1..=d.deriv_terms {
        let e = s.derivative_at(z, k)?;
        let w = powu(r, k) / factorial::<T>(k);
        parts.insert(format!("deriv_{k}"), e.value.norm() * w);
        err = err + e.abs_error_bound * w;
    }

    parts.insert("tail".to_string(), bohr_tail(s, r, d.tail_start)?);
    err = err + s.tail_bound(r, 0);

    if let Some(m) = d.coeff_sq_power {
        let a1 = s.coeff_abs(1);
        parts.insert(
            "coeff_sq".to_string(),
            a1 * a1 * powu(r, m as usize) / (T::one() - r),
        );
    }

    if d.refinement != Refinement::None {
        parts.insert("refinement".to_string(), refinement_a(s, r, d.refinement)?);
        err = err + refinement_factor(s.a0(), r) * s.sq_tail_bound(r * r, false);
    }

    match d.area {
        AreaTerm::None => {}
        AreaTerm::SOverPi => {
            parts.insert("area".to_string(), d.lambda * area_ratio(s, r)?);
            err = err + d.lambda * s.sq_tail_bound(r * r, true);
        }
        AreaTerm::SOverPiMinusS => {
            let x = area_ratio(s, r)?;
            let odds = area_odds(s, r)?;
            parts.insert("area".to_string(), d.lambda * odds);
            let hi = x + s.sq_tail_bound(r * r, true);
            let bound = if hi < T::one() {
                hi / (T::one() - hi) - odds
            } else {
                T::infinity()
            };
            err = err + d.lambda * bound;
        }
    }

    let total = parts.values().copied().sum();
    Ok(FunctionalValue {
        total,
        parts,
        error_bound: err,
    })
}

/// Functionals whose value on the extremal automorphism has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtremalForm<T> {
    /// `D_f` on `f_a` at `z = -r`.
    Df,
    /// `J_{f,1}` on `f_a` at `z = -r`.
    J1,
    /// `J_{f,2}` on `f_a` at `z = -r`; no polynomial form is available.
    J2,
    /// `G_{1,f}` on `f*_a` at `z = r`.
    G1 { lambda: T },
    /// `G_{2,f}` on `f*_a` at `z = r`.
    G2 { lambda: T },
}

/// `E_1(a, r)`: the sign of `D_{f_a}(-r, r) - 1`.
pub fn e1_poly<T: Scalar>(a: T, r: T) -> T {
    let c = |x: f64| T::lit(x);
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r3 * r;
    c(-1.0) + c(2.0) * r - a * r + c(3.0) * a * r2 - a * r3
        + c(2.0) * a * r4
        + c(3.0) * a * a * r4 * r
        + a * a * a * r3 * r3
}

/// `E_2(a, r)`: the sign of `J_{f_a,1}(-r, r) - 1`.
pub fn e2_poly<T: Scalar>(a: T, r: T) -> T {
    // coefficient of r^j as a polynomial in a (ascending)
    const ROWS: [&[f64]; 9] = [
        &[-1.0],
        &[3.0, -2.0],
        &[-2.0, 8.0],
        &[0.0, -6.0, 6.0, 2.0],
        &[1.0, 1.0, -6.0, -1.0],
        &[0.0, 4.0, 4.0, -1.0],
        &[0.0, 0.0, 6.0, 6.0],
        &[0.0, 0.0, 0.0, 4.0, 4.0],
        &[0.0, 0.0, 0.0, 0.0, 1.0, 1.0],
    ];
    ROWS.iter().rev().fold(T::zero(), |acc, row| {
        let coeff = row.iter().rev().fold(T::zero(), |p, &x| p * a + T::lit(x));
        acc * r + coeff
    })
}

/// `G_{1,f}` or `G_{2,f}` on `f*_a` at `z = r` written out as rational functions.
fn g_rational<T: Scalar>(a: T, r: T, lambda: T, odds: bool) -> T {
    let one = T::one();
    let s = one - a * a;
    let head = (r + a) / (one + r * a);
    let deriv = s * r / ((one + a * r) * (one + a * r));
    let tail = s * a * r * r / (one - a * r);
    let refine = (one + a * r) / ((one + a) * (one - r)) * s * s * r * r / (one - a * a * r * r);
    let area = if odds {
        // S_r/(pi - S_r) for the automorphism: the denominator factors exactly
        s * s * r * r / ((one - r * r) * (one - a * a * a * a * r * r))
    } else {
        let q = one - a * a * r * r;
        s * s * r * r / (q * q)
    };
    head + deriv + tail + refine + lambda * area
}

/// Closed-form value of a functional at its extremal automorphism.
pub fn extremal_closed_form<T: Scalar>(form: ExtremalForm<T>, a: T, r: T) -> Result<T> {
    if !(a >= T::zero() && a < T::one()) {
        return Err(domain("a", a.as_f64(), "[0, 1)"));
    }
    check_radius(r)?;
    let one = T::one();
    let q = one + a * r;
    Ok(match form {
        ExtremalForm::Df => one + (one - a * a) * e1_poly(a, r) / ((one - r) * q * q * q),
        ExtremalForm::J1 => one + (one - a) * e2_poly(a, r) / ((one - r) * q * q * q * q),
        ExtremalForm::J2 => return Err(BohrError::NotImplemented("J_{f,2} extremal")),
        ExtremalForm::G1 { lambda } => g_rational(a, r, lambda, false),
        ExtremalForm::G2 { lambda } => g_rational(a, r, lambda, true),
    })
}

/// `(sqrt 17 - 3) / 4`.
pub fn liu_radius<T: Scalar>() -> T {
    (T::lit(17.0).sqrt() - T::lit(3.0)) / T::lit(4.0)
}

/// `(221 - 43 sqrt 17) / 64`.
pub fn g_lambda<T: Scalar>() -> T {
    (T::lit(221.0) - T::lit(43.0) * T::lit(17.0).sqrt()) / T::lit(64.0)
}

/// `F_2(a, lambda)`, which fixes the sign of `G_{1,f*_a} - 1` at `r = (sqrt 17 - 3)/4`.
pub fn f2_poly<T: Scalar>(a: T, lambda: T) -> T {
    let q = T::lit(17.0).sqrt();
    let k = |x: f64, y: f64| T::lit(x) + T::lit(y) * q;
    let a2 = a * a;
    let a3 = a2 * a;
    let one_plus = T::one() + a;
    k(-1248.0, 288.0)
        + k(-5456.0, 1328.0) * a
        + k(-9168.0, 2224.0) * a2
        + k(-8164.0, 1980.0) * a3
        + k(-4082.0, 990.0) * a3 * a
        + T::lit(16.0) * lambda * k(71.0, -17.0) * one_plus * one_plus
}

/// `F_4(a, lambda)`, which fixes the sign of `G_{2,f*_a} - 1` at `r = (sqrt 17 - 3)/4`.
pub fn f4_poly<T: Scalar>(a: T, lambda: T) -> T {
    let q = T::lit(17.0).sqrt();
    let k = |x: f64, y: f64| T::lit(x) + T::lit(y) * q;
    let a2 = a * a;
    let a4 = a2 * a2;
    let one_plus = T::one() + a;
    k(10464.0, -2592.0)
        + T::lit(16.0) * k(611.0, -149.0) * a
        + T::lit(2.0) * k(5588.0, -1356.0) * a2
        + T::lit(24.0) * k(-1397.0, 339.0) * a4
        + T::lit(4.0) * k(-7771.0, 1885.0) * a4 * a
        + T::lit(2.0) * k(-17725.0, 4299.0) * a4 * a2
        + T::lit(16.0)
            * lambda
            * one_plus
            * one_plus
            * (k(284.0, -68.0) + T::lit(4.0) * k(-251.0, 61.0) * a + k(895.0, -217.0) * a2)
}

/// `G_{1,f*_a}` or `G_{2,f*_a}` at `r = (sqrt 17 - 3)/4` through the `F_2` / `F_4`
/// factorisations.
pub fn g_sharp_form<T: Scalar>(form: ExtremalForm<T>, a: T) -> Result<T> {
    if !(a >= T::zero() && a < T::one()) {
        return Err(domain("a", a.as_f64(), "[0, 1)"));
    }
    let q = T::lit(17.0).sqrt();
    let one = T::one();
    let om = one - a;
    match form {
        ExtremalForm::G1 { lambda } => {
            let d = T::lit(8.0) + (T::lit(-13.0) + T::lit(3.0) * q) * a * a;
            Ok(one + om * om * f2_poly(a, lambda) / ((T::lit(7.0) - q) * d * d))
        }
        ExtremalForm::G2 { lambda } => {
            let b = T::lit(4.0) + (q - T::lit(3.0)) * a;
            let a4 = a * a * a * a;
            let d = T::lit(52.0) * q - T::lit(172.0) + (T::lit(611.0) - T::lit(149.0) * q) * a4;
            Ok(one + om * om * f4_poly(a, lambda) / (b * b * d))
        }
        _ => Err(BohrError::NotImplemented("F-form outside G_1 / G_2")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{automorphism_series, AutomorphismParams, BlaschkeProduct};
    use approx::assert_relative_eq;

    fn auto(a: f64) -> CoefficientSeries<f64> {
        automorphism_series(AutomorphismParams::minus(a), 200).unwrap()
    }

    fn minus_z() -> CoefficientSeries<f64> {
        auto(0.0)
    }

    fn real(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn bohr_tail_examples() {
        let s = auto(0.5);
        assert_relative_eq!(bohr_tail(&s, 1.0 / 3.0, 0).unwrap(), 0.8, epsilon = 1e-14);
        assert_relative_eq!(bohr_tail(&s, 1.0 / 3.0, 1).unwrap(), 0.3, epsilon = 1e-14);
        assert_eq!(bohr_tail(&s, 0.0, 1).unwrap(), 0.0);
        assert!(bohr_tail(&s, 1.0, 1).is_err());
    }

    #[test]
    fn norm_sq_examples() {
        let s = auto(0.5);
        let closed = 0.5625 * 0.25 / (1.0 - 0.0625);
        assert_relative_eq!(norm_sq(&s, 0.5, 1).unwrap(), closed, epsilon = 1e-14);
        assert_relative_eq!(closed, 0.15, epsilon = 1e-14);
        assert_eq!(norm_sq(&s, 0.0, 1).unwrap(), 0.0);
        assert_relative_eq!(norm_sq(&minus_z(), 0.5, 1).unwrap(), 0.25);
        assert_eq!(norm_sq(&minus_z(), 0.5, 2).unwrap(), 0.0);
        assert!(norm_sq(&s, 0.5, 3).is_err());
    }

    #[test]
    fn refinement_examples() {
        let s = auto(0.5);
        assert_eq!(refinement_a(&s, 0.0, Refinement::AF0).unwrap(), 0.0);
        let r = 1.0 / 3.0;
        let ns = 0.5625 / 9.0 / (1.0 - 0.25 / 9.0);
        let expect = (1.0 / 1.5 + 0.5) * ns;
        assert_relative_eq!(
            refinement_a(&s, r, Refinement::AF0).unwrap(),
            expect,
            epsilon = 1e-14
        );
        assert_relative_eq!(expect, 0.075, epsilon = 1e-12);
        let b = BlaschkeProduct::new(vec![real(0.0)], real(1.0)).unwrap();
        let deg1 = b.series(30).unwrap();
        assert_eq!(refinement_a(&deg1, 0.4, Refinement::AF1).unwrap(), 0.0);
    }

    #[test]
    fn area_examples() {
        let s = auto(0.5);
        let closed = 0.25 * 0.5625 / (0.9375 * 0.9375);
        assert_relative_eq!(area_ratio(&s, 0.5).unwrap(), closed, epsilon = 1e-14);
        assert_relative_eq!(closed, 0.16, epsilon = 1e-14);
        assert_eq!(area_ratio(&s, 0.0).unwrap(), 0.0);
        assert_relative_eq!(area_ratio(&minus_z(), 0.6).unwrap(), 0.36, epsilon = 1e-15);
        assert_eq!(area_odds(&s, 0.0).unwrap(), 0.0);
        assert_relative_eq!(area_odds(&minus_z(), 0.6).unwrap(), 0.5625, epsilon = 1e-14);
        assert_relative_eq!(area_odds(&s, 0.5).unwrap(), 0.16 / 0.84, epsilon = 1e-14);
        assert_relative_eq!(0.16 / 0.84, 0.190476, epsilon = 1e-6);
    }

    #[test]
    fn degenerate_area() {
        // 2 z^2 is not a self-map but makes S_r/pi reach 1 at r = 1/sqrt(sqrt 8)
        let s = CoefficientSeries::from_real(&[0.0, 0.0, 2.0]).unwrap();
        assert!(matches!(
            area_odds(&s, 0.7),
            Err(BohrError::DegenerateArea(_))
        ));
    }

    #[test]
    fn descriptor_invariants() {
        let d = FunctionalDescriptor::<f64>::new(HeadTerm::AbsF, 2).derivatives(2);
        assert!(d.validate().is_err());
        let d = FunctionalDescriptor::<f64>::new(HeadTerm::AbsF, 2).refined(Refinement::AF1);
        assert!(d.validate().is_err());
        let d = FunctionalDescriptor::<f64>::new(HeadTerm::AbsF, 0);
        assert!(d.validate().is_err());
        let mut d = FunctionalDescriptor::<f64>::classical_bohr();
        d.lambda = 1.0;
        assert!(d.validate().is_err());
        assert!(FunctionalDescriptor::<f64>::classical_bohr()
            .validate()
            .is_ok());
    }

    fn df_descriptor() -> FunctionalDescriptor<f64> {
        FunctionalDescriptor::new(HeadTerm::AbsFSq, 3)
            .derivatives(2)
            .refined(Refinement::AF1)
            .coeff_sq(3)
    }

    #[test]
    fn classical_bohr_examples() {
        let d = FunctionalDescriptor::classical_bohr();
        let v = eval_functional(&d, &auto(0.5), real(1.0 / 3.0)).unwrap();
        assert_relative_eq!(v.total, 0.8, epsilon = 1e-14);
        let v = eval_functional(&d, &minus_z(), real(-1.0 / 3.0)).unwrap();
        assert_relative_eq!(v.total, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn df_crosses_one_at_its_radius() {
        let d = df_descriptor();
        let s = auto(0.99);
        let below = eval_functional(&d, &s, real(-0.393727)).unwrap();
        assert!(below.total < 1.0);
        let above = eval_functional(&d, &s, real(-0.45)).unwrap();
        assert!(above.total > 1.0);
    }

    #[test]
    fn breakdown_adds_up() {
        let b = BlaschkeProduct::<f64>::sample(3, 9).unwrap();
        let s = b.series(200).unwrap();
        let d = FunctionalDescriptor::new(HeadTerm::AbsF, 4)
            .derivatives(3)
            .refined(Refinement::AF1)
            .coeff_sq(4)
            .area(AreaTerm::SOverPi, 0.5);
        let v = eval_functional(&d, &s, Complex::from_polar(0.3, 2.0)).unwrap();
        let sum: f64 = v.parts.values().sum();
        assert!((v.total - sum).abs() <= 1e-14);
        assert!(v.parts.values().all(|&p| p >= 0.0));
        assert_eq!(v.parts.len(), 8);
        assert!(v.error_bound >= 0.0);
    }

    #[test]
    fn closed_form_matches_series() {
        let d = df_descriptor();
        let s = auto(0.5);
        let v = eval_functional(&d, &s, real(-0.3)).unwrap();
        let c = extremal_closed_form(ExtremalForm::Df, 0.5, 0.3).unwrap();
        assert!((v.total - c).abs() <= v.error_bound + 1e-13);
    }

    #[test]
    fn closed_form_at_zero_radius() {
        for a in [0.0, 0.3, 0.8] {
            // only the head term survives: a^2 for D_f, a for the others
            assert_relative_eq!(
                extremal_closed_form(ExtremalForm::Df, a, 0.0).unwrap(),
                a * a,
                epsilon = 1e-15
            );
            assert_relative_eq!(
                extremal_closed_form(ExtremalForm::J1, a, 0.0).unwrap(),
                a,
                epsilon = 1e-15
            );
            let g = ExtremalForm::G1 { lambda: 0.7 };
            assert_relative_eq!(extremal_closed_form(g, a, 0.0).unwrap(), a, epsilon = 1e-15);
        }
        assert_eq!(
            extremal_closed_form(ExtremalForm::J2, 0.5, 0.2),
            Err(BohrError::NotImplemented("J_{f,2} extremal"))
        );
    }

    #[test]
    fn g_forms_tend_to_one() {
        let lam = g_lambda::<f64>();
        for form in [
            ExtremalForm::G1 { lambda: lam },
            ExtremalForm::G2 { lambda: lam },
        ] {
            let v = g_sharp_form(form, 1.0 - 1e-7).unwrap();
            assert!((v - 1.0).abs() < 1e-9);
        }
        // F_2 and F_4 vanish at a = 1 exactly for the critical lambda
        assert!(f2_poly(1.0, lam).abs() < 1e-9);
        assert!(f4_poly(1.0, lam).abs() < 1e-9);
    }

    #[test]
    fn e_polynomials_at_unit_radius() {
        assert_relative_eq!(e1_poly(1.0, 1.0), 8.0, epsilon = 1e-12);
        assert_relative_eq!(e2_poly(1.0, 1.0), 32.0, epsilon = 1e-12);
        assert_relative_eq!(e1_poly(1.0, 0.0), -1.0);
        assert_relative_eq!(e2_poly(1.0, 0.0), -1.0);
    }

    // The f_a extremal of D_f crosses 1 near r = 0.4243 as a -> 1, well past
    // the stated radius 0.393727.
    #[test]
    fn d_f_extremal_crossing() {
        let v = extremal_closed_form(ExtremalForm::Df, 0.999, 0.42).unwrap();
        assert!(v < 1.0);
        assert_relative_eq!(
            e1_poly(0.999, 0.42),
            -0.018_149_850_741_456,
            epsilon = 1e-14
        );
        assert!(e1_poly(0.999_99, 0.4240) < 0.0 && e1_poly(0.999_99, 0.4247) > 0.0);
        assert!(extremal_closed_form(ExtremalForm::Df, 0.999, 0.43).unwrap() > 1.0);
    }
}
