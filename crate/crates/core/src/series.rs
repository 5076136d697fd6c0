//! Truncated Taylor series of analytic self-maps of the unit disk.
//!
//! A [`CoefficientSeries`] stores `c_0..c_N` together with a geometric
//! envelope `|c_n| <= scale * ratio^(n-1)` valid for every `n > N`. Every
//! evaluation reports the value of the truncated polynomial and a rigorous
//! bound on the discarded tail.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, BohrError, Result};
use crate::scalar::{binomial, factorial, falling, powu, Scalar};

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_TRUNC_ORDER: usize = 200;

/// Truncation order used once evaluation radii reach [`ESCALATION_RADIUS`].
pub const ESCALATED_TRUNC_ORDER: usize = 2000;

pub const ESCALATION_RADIUS: f64 = 0.9;

/// Largest modulus allowed for a sampled Blaschke zero.
pub const BLASCHKE_ZERO_CAP: f64 = 0.95;

/// Truncation order that keeps the generic tail below `1e-12` at radius `r`.
pub fn default_trunc_order(r: f64) -> usize {
    if r >= ESCALATION_RADIUS {
        ESCALATED_TRUNC_ORDER
    } else {
        DEFAULT_TRUNC_ORDER
    }
}

/// Geometric envelope of the coefficients past the truncation order:
/// `|c_n| <= scale * ratio^(n-1)` for all `n > N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound<T> {
    pub scale: T,
    pub ratio: T,
}

impl<T: Scalar> TailBound<T> {
    pub fn new(scale: T, ratio: T) -> Result<Self> {
        if !(scale >= T::zero()) || !scale.is_finite() {
            return Err(domain("tail_scale", scale.as_f64(), "[0, inf)"));
        }
        if !(ratio >= T::zero() && ratio < T::one()) {
            return Err(domain("tail_ratio", ratio.as_f64(), "[0, 1)"));
        }
        Ok(Self { scale, ratio })
    }

    /// The series is an exact polynomial.
    pub fn exact() -> Self {
        Self {
            scale: T::zero(),
            ratio: T::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.scale == T::zero() || self.ratio == T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `f_a(z) = (a - z) / (1 - a z)`
    Minus,
    /// `f*_a(z) = (a + z) / (1 + a z)`
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomorphismParams<T> {
    pub a: T,
    pub variant: Variant,
}

impl<T: Scalar> AutomorphismParams<T> {
    pub fn new(a: T, variant: Variant) -> Self {
        Self { a, variant }
    }

    pub fn minus(a: T) -> Self {
        Self::new(a, Variant::Minus)
    }

    pub fn plus(a: T) -> Self {
        Self::new(a, Variant::Plus)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a >= T::zero() && self.a < T::one()) {
            return Err(domain("a", self.a.as_f64(), "[0, 1)"));
        }
        Ok(())
    }

    /// n-th Taylor coefficient in closed form.
    pub fn coeff(&self, n: usize) -> T {
        let a = self.a;
        if n == 0 {
            return a;
        }
        let s = T::one() - a * a;
        match self.variant {
            Variant::Minus => -s * powu(a, n - 1),
            Variant::Plus => s * powu(-a, n - 1),
        }
    }

    /// Direct evaluation of the Möbius map.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let a = Complex::from(self.a);
        let one = Complex::from(T::one());
        match self.variant {
            Variant::Minus => (a - z) / (one - a * z),
            Variant::Plus => (a + z) / (one + a * z),
        }
    }

    /// k-th derivative of the Möbius map in closed form.
    pub fn derivative(&self, z: Complex<T>, k: usize) -> Complex<T> {
        if k == 0 {
            return self.eval(z);
        }
        let a = self.a;
        let s = T::one() - a * a;
        let kf = factorial::<T>(k);
        let one = Complex::from(T::one());
        match self.variant {
            // f_a = 1/a - s/(a (1 - a z)); d^k/dz^k (1 - a z)^-1 = k! a^k (1 - a z)^-(k+1)
            Variant::Minus => {
                let w = one - z * a;
                -(w.powi(-(k as i32) - 1)) * (s * kf * powu(a, k - 1))
            }
            Variant::Plus => {
                let w = one + z * a;
                w.powi(-(k as i32) - 1) * (s * kf * powu(-a, k - 1))
            }
        }
    }
}

/// Value of a truncated evaluation and a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: Complex<T>,
    pub abs_error_bound: T,
}

/// Truncated Taylor coefficients `c_0..c_N` of an analytic map of the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries<T> {
    coeffs: Vec<Complex<T>>,
    tail: TailBound<T>,
    self_map: bool,
}

impl<T: Scalar> CoefficientSeries<T> {
    /// Arbitrary coefficients. Membership in the unit ball of `H^inf` is not
    /// checked, so the series is flagged unverified and only the supplied
    /// tail envelope is used for error bounds.
    pub fn new(coeffs: Vec<Complex<T>>, tail: TailBound<T>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(domain("trunc_order", 0.0, "[1, inf)"));
        }
        let c0 = coeffs[0].norm();
        if c0 > T::one() {
            return Err(domain("|c_0|", c0.as_f64(), "[0, 1]"));
        }
        Ok(Self {
            coeffs,
            tail,
            self_map: false,
        })
    }

    /// Real coefficients of an exact polynomial.
    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| Complex::from(c)).collect(),
            TailBound::exact(),
        )
    }

    pub(crate) fn verified(coeffs: Vec<Complex<T>>, tail: TailBound<T>) -> Self {
        Self {
            coeffs,
            tail,
            self_map: true,
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff_abs(&self, n: usize) -> T {
        self.coeffs.get(n).map_or(T::zero(), |c| c.norm())
    }

    /// `|c_0|`, written `a` in the inequalities.
    pub fn a0(&self) -> T {
        self.coeff_abs(0)
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail(&self) -> TailBound<T> {
        self.tail
    }

    pub fn tail_ratio(&self) -> T {
        self.tail.ratio
    }

    pub fn tail_scale(&self) -> T {
        self.tail.scale
    }

    /// True for series produced by the automorphism and Blaschke
    /// constructors, which are self-maps by construction.
    pub fn is_verified_self_map(&self) -> bool {
        self.self_map
    }

    /// `f(z)` by Horner's scheme.
    pub fn eval(&self, z: Complex<T>) -> Result<EvalResult<T>> {
        self.derivative_at(z, 0)
    }

    /// `f^(k)(z)` from the truncated series, with the tail bound obtained by
    /// differentiating the geometric envelope term by term.
    pub fn derivative_at(&self, z: Complex<T>, k: usize) -> Result<EvalResult<T>> {
        let t = z.norm();
        if !(t < T::one()) {
            return Err(domain("|z|", t.as_f64(), "[0, 1)"));
        }
        let order = self.trunc_order();
        if k > order {
            return Err(BohrError::InsufficientOrder { k, order });
        }
        let mut acc = Complex::from(T::zero());
        for n in (k..=order).rev() {
            acc = acc * z + self.coeffs[n] * falling::<T>(n, k);
        }
        Ok(EvalResult {
            value: acc,
            abs_error_bound: self.tail_bound(t, k),
        })
    }

    /// Upper bound for `sum_{n>N} n!/(n-k)! |c_n| t^(n-k)`.
    ///
    /// With `k = 0` and `t = r` this also bounds the neglected part of the
    /// majorant series.
    pub fn tail_bound(&self, t: T, k: usize) -> T {
        let n = self.trunc_order();
        let geometric = if self.tail.is_zero() {
            T::zero()
        } else {
            let rho = self.tail.ratio;
            self.tail.scale * powu(rho, k) / rho * differentiated_geometric_tail(rho * t, n, k)
        };
        if self.self_map {
            // |c_n| <= 1 for self-maps
            geometric.min(differentiated_geometric_tail(t, n, k))
        } else {
            geometric
        }
    }

    /// Upper bound for `sum_{n>N} w_n |c_n|^2 y^n` with `w_n = 1` or `w_n = n`.
    pub fn sq_tail_bound(&self, y: T, weighted: bool) -> T {
        let n = self.trunc_order();
        let tail = |x: T| {
            if weighted {
                weighted_power_tail(x, n)
            } else {
                power_tail(x, n)
            }
        };
        let geometric = if self.tail.is_zero() {
            T::zero()
        } else {
            let rho = self.tail.ratio;
            let s = self.tail.scale;
            s * s / (rho * rho) * tail(rho * rho * y)
        };
        if self.self_map {
            geometric.min(tail(y))
        } else {
            geometric
        }
    }
}

/// `d^k/dx^k [x^(N+1) / (1 - x)]`, i.e. `sum_{n>N} n!/(n-k)! x^(n-k)`.
fn differentiated_geometric_tail<T: Scalar>(x: T, n: usize, k: usize) -> T {
    if x == T::zero() {
        return if k == n + 1 {
            factorial::<T>(k)
        } else {
            T::zero()
        };
    }
    let one_minus = T::one() - x;
    (0..=k)
        .filter(|&j| j <= n + 1)
        .map(|j| {
            binomial::<T>(k, j)
                * falling::<T>(n + 1, j)
                * powu(x, n + 1 - j)
                * factorial::<T>(k - j)
                / powu(one_minus, k - j + 1)
        })
        .sum()
}

/// `sum_{n>N} x^n`.
pub(crate) fn power_tail<T: Scalar>(x: T, n: usize) -> T {
    powu(x, n + 1) / (T::one() - x)
}

/// `sum_{n>N} n x^n`.
pub(crate) fn weighted_power_tail<T: Scalar>(x: T, n: usize) -> T {
    let np1 = T::of_usize(n + 1);
    let nn = T::of_usize(n);
    let d = T::one() - x;
    powu(x, n + 1) * (np1 - nn * x) / (d * d)
}

/// Taylor coefficients of `f_a` or `f*_a` up to `trunc_order`.
pub fn automorphism_series<T: Scalar>(
    params: AutomorphismParams<T>,
    trunc_order: usize,
) -> Result<CoefficientSeries<T>> {
    params.validate()?;
    if trunc_order == 0 {
        return Err(domain("trunc_order", 0.0, "[1, inf)"));
    }
    let coeffs = (0..=trunc_order)
        .map(|n| Complex::from(params.coeff(n)))
        .collect();
    let a = params.a;
    let tail = TailBound {
        scale: T::one() - a * a,
        ratio: a,
    };
    Ok(CoefficientSeries::verified(coeffs, tail))
}

/// Finite Blaschke product `c * prod (alpha_j - z) / (1 - conj(alpha_j) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct<T> {
    pub zeros: Vec<Complex<T>>,
    pub unimodular: Complex<T>,
}

impl<T: Scalar> BlaschkeProduct<T> {
    pub fn new(zeros: Vec<Complex<T>>, unimodular: Complex<T>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(domain("degree", 0.0, "[1, inf)"));
        }
        for z in &zeros {
            let m = z.norm();
            if !(m < T::one()) {
                return Err(domain("|alpha|", m.as_f64(), "[0, 1)"));
            }
        }
        let u = unimodular.norm();
        if (u - T::one()).abs() > T::lit(1e-6) {
            return Err(domain("|c|", u.as_f64(), "{1}"));
        }
        Ok(Self { zeros, unimodular })
    }

    /// Zeros drawn uniformly from the disk of radius [`BLASCHKE_ZERO_CAP`]
    /// and a uniform unimodular constant, all from `seed`.
    pub fn sample(degree: usize, seed: u64) -> Result<Self> {
        if degree == 0 {
            return Err(domain("degree", 0.0, "[1, inf)"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = std::f64::consts::TAU;
        let zeros = (0..degree)
            .map(|_| {
                let rad = BLASCHKE_ZERO_CAP * rng.gen::<f64>().sqrt();
                let ang = tau * rng.gen::<f64>();
                Complex::from_polar(T::lit(rad), T::lit(ang))
            })
            .collect();
        let psi = tau * rng.gen::<f64>();
        Ok(Self {
            zeros,
            unimodular: Complex::from_polar(T::one(), T::lit(psi)),
        })
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Direct product evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let one = Complex::from(T::one());
        self.zeros.iter().fold(self.unimodular, |acc, &al| {
            acc * (al - z) / (one - al.conj() * z)
        })
    }

    /// Taylor expansion by convolving the factors' geometric series.
    pub fn series(&self, trunc_order: usize) -> Result<CoefficientSeries<T>> {
        if trunc_order == 0 {
            return Err(domain("trunc_order", 0.0, "[1, inf)"));
        }
        let len = trunc_order + 1;
        let mut acc = vec![Complex::from(T::zero()); len];
        acc[0] = self.unimodular;
        let mut factor = vec![Complex::from(T::zero()); len];
        for &al in &self.zeros {
            // (al - z)/(1 - conj(al) z) = al - (1 - |al|^2) sum_{k>=1} conj(al)^(k-1) z^k
            let s = T::one() - al.norm_sqr();
            factor[0] = al;
            let mut p = Complex::from(T::one());
            for c in factor.iter_mut().skip(1) {
                *c = -p * s;
                p = p * al.conj();
            }
            let mut next = vec![Complex::from(T::zero()); len];
            for (i, &x) in acc.iter().enumerate() {
                if x == Complex::from(T::zero()) {
                    continue;
                }
                for (j, &y) in factor[..len - i].iter().enumerate() {
                    next[i + j] = next[i + j] + x * y;
                }
            }
            acc = next;
        }
        Ok(CoefficientSeries::verified(acc, self.cauchy_tail()))
    }

    /// Cauchy estimate on the circle `|z| = R` with `1 < R < 1/max|alpha|`:
    /// `|c_n| <= M(R) R^-n` where `M(R) <= prod (|alpha| + R)/(1 - |alpha| R)`.
    fn cauchy_tail(&self) -> TailBound<T> {
        let rho = self.zeros.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        if rho == T::zero() {
            return TailBound::exact();
        }
        let two = T::lit(2.0);
        let big_r = (T::one() + T::one() / rho) / two;
        let m = self
            .zeros
            .iter()
            .map(|z| {
                let m = z.norm();
                (m + big_r) / (T::one() - m * big_r)
            })
            .fold(T::one(), |acc, x| acc * x);
        TailBound {
            scale: m / big_r,
            ratio: T::one() / big_r,
        }
    }
}

/// Taylor series of a seeded random Blaschke product of the given degree.
pub fn blaschke_sample<T: Scalar>(
    degree: usize,
    seed: u64,
    trunc_order: usize,
) -> Result<CoefficientSeries<T>> {
    BlaschkeProduct::sample(degree, seed)?.series(trunc_order)
}
