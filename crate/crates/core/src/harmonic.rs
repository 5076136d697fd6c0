//! Distance-form Bohr inequality for the harmonic class `P^0_H(M)`.
//!
//! Functions `f = h + conj(g)` with `h(z) = z + sum_{n>=2} a_n z^n` and
//! `g(z) = sum_{n>=2} b_n z^n` satisfy `|a_n| + |b_n| <= 2M / (n(n-1))`.
//! Everything here is driven by that bound and by a weight sequence
//! `phi_n(r)` replacing the monomials `r^n`.

use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, BohrError, Result};
use crate::lemmas::BoundReport;
use crate::radius::{self, RadiusEquation, RootResult};
use crate::scalar::{powu, Scalar};

/// Largest radius at which closed forms containing `ln(1 - r)` are evaluated.
pub const LOG_CAP: f64 = 1.0 - 1e-9;
/// Terms used by direct summations that cross-check closed forms.
pub const DIRECT_TERMS: usize = 10_000;
/// Agreement required between a closed form and a direct sum, beyond the
/// sum's own tail bound.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-10;

/// Taylor coefficients of `h` and `g`, indexed by `n` (entries 0 and 1 fixed).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoefficients<T> {
    pub h: Vec<Complex<T>>,
    pub g: Vec<Complex<T>>,
    pub m: T,
}

fn check_m<T: Scalar>(m: T) -> Result<()> {
    if !(m > T::zero() && m.is_finite()) {
        return Err(domain("M", m.as_f64(), "(0, inf)"));
    }
    Ok(())
}

/// `2M / (n(n-1))`.
pub fn coefficient_cap<T: Scalar>(m: T, n: usize) -> T {
    T::lit(2.0) * m / T::of_usize(n * (n - 1))
}

impl<T: Scalar> HarmonicCoefficients<T> {
    pub fn new(h: Vec<Complex<T>>, g: Vec<Complex<T>>, m: T) -> Result<Self> {
        check_m(m)?;
        if h.len() < 2 || h.len() != g.len() {
            return Err(BohrError::InvalidDescriptor(
                "h and g need equal length >= 2",
            ));
        }
        let zero = Complex::from(T::zero());
        if h[0] != zero || g[0] != zero || h[1] != Complex::from(T::one()) || g[1] != zero {
            return Err(BohrError::InvalidDescriptor(
                "normalisation requires h(0) = g(0) = 0, h'(0) = 1, g'(0) = 0",
            ));
        }
        Ok(Self { h, g, m })
    }

    /// Coefficients of `f_M(z) = z + 2M sum_{n>=2} z^n / (n(n-1))` up to `order`.
    pub fn extremal(m: T, order: usize) -> Result<Self> {
        check_m(m)?;
        let mut h = vec![Complex::from(T::zero()), Complex::from(T::one())];
        h.extend((2..=order).map(|n| Complex::from(coefficient_cap(m, n))));
        let g = vec![Complex::from(T::zero()); h.len()];
        Self::new(h, g, m)
    }

    /// Random coefficients inside the bound: `|a_n| + |b_n| = theta_n 2M/(n(n-1))`
    /// with `theta_n` uniform on `[0, 1)`, a uniform split between `a_n` and
    /// `b_n`, and uniform phases.
    pub fn sample(m: T, order: usize, seed: u64) -> Result<Self> {
        check_m(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zero = Complex::from(T::zero());
        let mut h = vec![zero, Complex::from(T::one())];
        let mut g = vec![zero, zero];
        for n in 2..=order {
            let total = T::lit(rng.gen::<f64>()) * coefficient_cap(m, n);
            let split = T::lit(rng.gen::<f64>());
            let pa = T::lit(rng.gen::<f64>() * std::f64::consts::TAU);
            let pb = T::lit(rng.gen::<f64>() * std::f64::consts::TAU);
            h.push(Complex::from_polar(split * total, pa));
            g.push(Complex::from_polar((T::one() - split) * total, pb));
        }
        Self::new(h, g, m)
    }

    pub fn order(&self) -> usize {
        self.h.len() - 1
    }
}

/// Checks `|a_n| + |b_n| <= 2M/(n(n-1))`. The companion bounds on
/// `||a_n| - |b_n||` and `|a_n|` have smaller left sides and are implied.
pub fn harmonic_coeff_bound<T: Scalar>(
    hc: &HarmonicCoefficients<T>,
    n: usize,
) -> Result<BoundReport<T>> {
    if n < 2 {
        return Err(domain("n", n as f64, "[2, inf)"));
    }
    let lhs = if n <= hc.order() {
        hc.h[n].norm() + hc.g[n].norm()
    } else {
        T::zero()
    };
    Ok(BoundReport::new(lhs, coefficient_cap(hc.m, n)))
}

/// Built-in weight families; all use `phi_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiFamily {
    /// `phi_n = r^n`
    Geometric,
    /// `phi_n = n^alpha r^n`, `alpha` in 1..=3
    Power(u32),
    /// `phi_n = (n+1)^beta r^n`, `beta` in 1..=3
    ShiftedPower(u32),
}

impl PhiFamily {
    fn weight<T: Scalar>(self, n: usize) -> T {
        match self {
            PhiFamily::Geometric => T::one(),
            PhiFamily::Power(a) => powu(T::of_usize(n), a as usize),
            PhiFamily::ShiftedPower(b) => powu(T::of_usize(n + 1), b as usize),
        }
    }

    fn diverges_at_one(self) -> bool {
        self != PhiFamily::Geometric
    }

    /// `sum_{n>=2} w(n) r^n / (n(n-1))` for `r < 1`.
    fn weighted_closed<T: Scalar>(self, r: T) -> T {
        let one = T::one();
        let c = |x: f64| T::lit(x);
        let l = (-r).ln_1p();
        let q = one - r;
        match self {
            PhiFamily::Geometric => q * l + r,
            PhiFamily::Power(1) => -r * l,
            PhiFamily::Power(2) => r * (r - q * l) / q,
            PhiFamily::Power(_) => r * ((c(3.0) - c(2.0) * r) * r / (q * q) - l),
            PhiFamily::ShiftedPower(1) => r + (one - c(2.0) * r) * l,
            PhiFamily::ShiftedPower(2) => (r + (one - c(5.0) * r + c(4.0) * r * r) * l) / q,
            PhiFamily::ShiftedPower(_) => {
                let r2 = r * r;
                (r + c(4.0) * r2 - c(4.0) * r2 * r + q * q * (one - c(8.0) * r) * l) / (q * q)
            }
        }
    }

    /// `sum_{n>=1} w(n) r^n` for `r < 1`.
    fn full_closed<T: Scalar>(self, r: T) -> T {
        let one = T::one();
        let q = one - r;
        // sum_{m>=1} m^k r^(m-1) for k = 1, 2, 3
        let shifted = |k: u32| match k {
            1 => one / (q * q),
            2 => (one + r) / (q * q * q),
            _ => (one + T::lit(4.0) * r + r * r) / (q * q * q * q),
        };
        match self {
            PhiFamily::Geometric => r / q,
            PhiFamily::Power(a) => r * shifted(a),
            PhiFamily::ShiftedPower(b) => shifted(b) - one,
        }
    }
}

type Phi0<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type PhiN<T> = Arc<dyn Fn(usize, T) -> T + Send + Sync>;

/// A weight sequence `{phi_n(r)}` with `phi_0` and `phi_n` for `n >= 1`.
#[derive(Clone)]
pub struct PhiSequence<T> {
    pub id: String,
    family: Option<PhiFamily>,
    phi0: Phi0<T>,
    phi_n: PhiN<T>,
}

impl<T: Scalar> std::fmt::Debug for PhiSequence<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhiSequence")
            .field("id", &self.id)
            .field("family", &self.family)
            .finish()
    }
}

impl<T: Scalar> PhiSequence<T> {
    pub fn builtin(family: PhiFamily) -> Result<Self> {
        let id = match family {
            PhiFamily::Geometric => "r^n".to_string(),
            PhiFamily::Power(a @ 1..=3) => format!("n^{a} r^n"),
            PhiFamily::ShiftedPower(b @ 1..=3) => format!("(n+1)^{b} r^n"),
            _ => return Err(BohrError::InvalidDescriptor("exponent must be 1, 2 or 3")),
        };
        Ok(Self {
            id,
            family: Some(family),
            phi0: Arc::new(|_| T::one()),
            phi_n: Arc::new(move |n, r| family.weight::<T>(n) * powu(r, n)),
        })
    }

    pub fn geometric() -> Self {
        Self::builtin(PhiFamily::Geometric).expect("valid family")
    }

    pub fn power(alpha: u32) -> Result<Self> {
        Self::builtin(PhiFamily::Power(alpha))
    }

    pub fn shifted_power(beta: u32) -> Result<Self> {
        Self::builtin(PhiFamily::ShiftedPower(beta))
    }

    /// Arbitrary weights. Sums are then computed directly and their tails are
    /// estimated from the ratio of the last two terms.
    pub fn custom(
        id: impl Into<String>,
        phi0: impl Fn(T) -> T + Send + Sync + 'static,
        phi_n: impl Fn(usize, T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            family: None,
            phi0: Arc::new(phi0),
            phi_n: Arc::new(phi_n),
        }
    }

    pub fn family(&self) -> Option<PhiFamily> {
        self.family
    }

    pub fn phi0(&self, r: T) -> T {
        (self.phi0)(r)
    }

    pub fn phi_n(&self, n: usize, r: T) -> T {
        (self.phi_n)(n, r)
    }

    fn weighted_term(&self, n: usize, r: T) -> T {
        self.phi_n(n, r) / T::of_usize(n * (n - 1))
    }

    /// Bound on `sum_{n>N} phi_n(r) / (n(n-1))`.
    ///
    /// For built-in families the term ratio is at most `r w(N+2)/w(N+1)`
    /// beyond `N`; for custom sequences the observed last ratio is used.
    pub fn weighted_tail_bound(&self, r: T, order: usize) -> T {
        let n = order.max(1);
        let first = self.weighted_term(n + 1, r);
        if first == T::zero() {
            return T::zero();
        }
        let q = match self.family {
            Some(f) => r * f.weight::<T>(n + 2) / f.weight::<T>(n + 1),
            None if n >= 2 => first / self.weighted_term(n, r),
            None => self.weighted_term(n + 2, r) / first,
        };
        if q < T::one() {
            first / (T::one() - q)
        } else {
            T::infinity()
        }
    }

    /// `sum_{n=2..N} phi_n(r)/(n(n-1))` together with a bound on the rest.
    pub fn weighted_sum_direct(&self, r: T, order: usize) -> (T, T) {
        let sum = compensated_sum((2..=order).map(|n| self.weighted_term(n, r)));
        (sum, self.weighted_tail_bound(r, order))
    }

    /// `sum_{n>=2} phi_n(r) / (n(n-1))`.
    ///
    /// Closed form for built-in families, capped at `r = 1 - 1e-9`; at `r = 1`
    /// the limit is returned (1 for the geometric family, infinity otherwise).
    pub fn weighted_sum(&self, r: T) -> Result<T> {
        if !(r >= T::zero() && r <= T::one()) {
            return Err(domain("r", r.as_f64(), "[0, 1]"));
        }
        match self.family {
            Some(f) if r == T::one() => Ok(if f.diverges_at_one() {
                T::infinity()
            } else {
                T::one()
            }),
            Some(f) => Ok(f.weighted_closed(r.min(T::lit(LOG_CAP)))),
            None => {
                let (s, tail) = self.weighted_sum_direct(r.min(T::lit(LOG_CAP)), DIRECT_TERMS);
                Ok(s + tail)
            }
        }
    }

    /// `sum_{n>=1} phi_n(r)`.
    pub fn full_sum(&self, r: T) -> Result<T> {
        if !(r >= T::zero() && r < T::one()) {
            return Err(domain("r", r.as_f64(), "[0, 1)"));
        }
        Ok(match self.family {
            Some(f) => f.full_closed(r),
            None => {
                let mut acc = T::zero();
                for n in 1..=100 * DIRECT_TERMS {
                    let t = self.phi_n(n, r);
                    acc = acc + t;
                    if n > 8 && t <= acc * T::epsilon() {
                        break;
                    }
                }
                acc
            }
        })
    }

    /// `sum_{n>=2} phi_n(0) / (n(n-1))`.
    pub fn phi_n_at_zero_sum(&self) -> T {
        match self.family {
            Some(_) => T::zero(),
            None => {
                let (s, tail) = self.weighted_sum_direct(T::zero(), DIRECT_TERMS);
                s + tail
            }
        }
    }
}

/// Neumaier summation; long direct sums near `r = 1` otherwise lose the
/// digits needed for the closed-form cross-checks.
pub(crate) fn compensated_sum<T: Scalar>(terms: impl Iterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp = comp + (sum - t) + x;
        } else {
            comp = comp + (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sharp bounds `lower <= |f(z)| <= upper` at `|z| = r`.
///
/// The closed forms are cross-checked against direct summation of the
/// defining series.
pub fn growth_envelope<T: Scalar>(m: T, r: T) -> Result<(T, T)> {
    check_m(m)?;
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain("r", r.as_f64(), "[0, 1)"));
    }
    let two_m = T::lit(2.0) * m;
    let one = T::one();
    let upper = r + two_m * ((one - r) * (-r).ln_1p() + r);
    let lower = r - two_m * ((one + r) * r.ln_1p() - r);

    let geo = PhiSequence::<T>::geometric();
    let (s_up, tail_up) = geo.weighted_sum_direct(r, DIRECT_TERMS);
    let s_lo = compensated_sum((2..=DIRECT_TERMS).map(|n| {
        let t = powu(r, n) / T::of_usize(n * (n - 1));
        if n % 2 == 0 {
            -t
        } else {
            t
        }
    }));
    // alternating series with decreasing terms: the first omitted term bounds the rest
    let tail_lo = powu(r, DIRECT_TERMS + 1) / T::of_usize(DIRECT_TERMS * (DIRECT_TERMS + 1));
    for (closed, direct, tail) in [
        (upper, r + two_m * s_up, two_m * tail_up),
        (lower, r + two_m * s_lo, two_m * tail_lo),
    ] {
        let tol = tail + T::lit(CROSS_CHECK_TOLERANCE);
        if (closed - direct).abs() > tol {
            return Err(BohrError::CrossCheck {
                closed: closed.as_f64(),
                direct: direct.as_f64(),
                tol: tol.as_f64(),
            });
        }
    }
    Ok((lower, upper))
}

/// `1 + 2M(1 - ln 4)`, the lower bound for `d(f(0), boundary of f(D))`.
pub fn distance_lower<T: Scalar>(m: T) -> T {
    T::one() + T::lit(2.0) * m * (T::one() - T::lit(4.0).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicSum<T> {
    pub value: T,
    /// Bound on the coefficients beyond the stored order, from the coefficient lemma.
    pub tail_bound: T,
}

/// `r phi_0(r) + sum_{n>=2} (|a_n| + |b_n|) phi_n(r)` over the stored coefficients.
pub fn bohr_sum_harmonic<T: Scalar>(
    hc: &HarmonicCoefficients<T>,
    phi: &PhiSequence<T>,
    r: T,
) -> Result<HarmonicSum<T>> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain("r", r.as_f64(), "[0, 1)"));
    }
    let body: T = (2..=hc.order())
        .map(|n| (hc.h[n].norm() + hc.g[n].norm()) * phi.phi_n(n, r))
        .sum();
    let tail = T::lit(2.0) * hc.m * phi.weighted_tail_bound(r, hc.order());
    Ok(HarmonicSum {
        value: r * phi.phi0(r) + body,
        tail_bound: tail,
    })
}

/// `H_M(r) = r phi_0(r) + 2M sum_{n>=2} phi_n(r)/(n(n-1)) - 1 - 2M(1 - ln 4)`.
pub fn h_m_function<T: Scalar>(phi: &PhiSequence<T>, m: T, r: T) -> Result<T> {
    Ok(r * phi.phi0(r) + T::lit(2.0) * m * phi.weighted_sum(r)? - distance_lower(m))
}

/// Checks `sum phi_n(0)/(n(n-1)) < 1/(2M) + 1 - ln 4` and `phi_0(1) = 1`.
pub fn check_validity<T: Scalar>(phi: &PhiSequence<T>, m: T) -> Result<()> {
    check_m(m)?;
    let limit = T::one() / (T::lit(2.0) * m) + T::one() - T::lit(4.0).ln();
    if !(phi.phi_n_at_zero_sum() < limit) {
        return Err(BohrError::InvalidM(m.as_f64()));
    }
    if (phi.phi0(T::one()) - T::one()).abs() > T::lit(1e-12) {
        return Err(BohrError::InvalidDescriptor("phi_0(1) must equal 1"));
    }
    Ok(())
}

fn h_m_equation<T: Scalar>(phi: &PhiSequence<T>, m: T) -> RadiusEquation<T> {
    let p = phi.clone();
    let eval = Arc::new(move |r: T| h_m_function(&p, m, r).unwrap_or(T::nan()));
    RadiusEquation::new(format!("R_f[{}]", phi.id), "H_M(r) = 0", eval).param("M", m)
}

/// Grid size used to confirm that `H_M` increases before solving.
pub const MONOTONE_GRID: usize = 200;

/// The radius `R_f(M)`: the root of `H_M` in `(0, 1)`.
pub fn solve_rf<T: Scalar>(phi: &PhiSequence<T>, m: T, tol: T) -> Result<RootResult<T>> {
    check_validity(phi, m)?;
    let eq = h_m_equation(phi, m);
    if !radius::verify_monotone(&eq, MONOTONE_GRID)? {
        return Err(BohrError::NotMonotone);
    }
    radius::solve(&eq, tol)
}

/// Whether the extremal `f_M` breaks the inequality at `R_f(M)(1 + delta)`.
pub fn sharpness_harmonic<T: Scalar>(phi: &PhiSequence<T>, m: T, delta: T) -> Result<bool> {
    if !(delta > T::zero()) {
        return Err(domain("delta", delta.as_f64(), "(0, inf)"));
    }
    let root = solve_rf(phi, m, T::lit(1e-13))?.root;
    let r = root * (T::one() + delta);
    if r >= T::one() {
        return Ok(true);
    }
    // the extremal sum of the infinite series is exactly r phi_0 + 2M * weighted_sum
    let value = r * phi.phi0(r) + T::lit(2.0) * m * phi.weighted_sum(r)?;
    Ok(value > distance_lower(m))
}

/// Points in the sign scan for [`generalized_phi_radius`].
pub const PHI_SCAN_POINTS: usize = 1000;

/// Minimal root of `phi_0(x) = (2/p) sum_{n>=1} phi_n(x)` in `(0, 1)`.
pub fn generalized_phi_radius<T: Scalar>(
    phi: &PhiSequence<T>,
    p: T,
    tol: T,
) -> Result<RootResult<T>> {
    if !(p > T::zero() && p <= T::lit(2.0)) {
        return Err(domain("p", p.as_f64(), "(0, 2]"));
    }
    let ph = phi.clone();
    let f = move |x: T| ph.phi0(x) - T::lit(2.0) / p * ph.full_sum(x).unwrap_or(T::infinity());
    let lo = T::lit(1e-12);
    let hi = T::lit(LOG_CAP);
    if !(f(lo) > T::zero()) {
        return Err(BohrError::NoRoot);
    }
    let step = (hi - lo) / T::of_usize(PHI_SCAN_POINTS);
    let mut a = lo;
    for i in 1..=PHI_SCAN_POINTS {
        let b = lo + step * T::of_usize(i);
        if f(b) <= T::zero() {
            let mut eq = RadiusEquation::new(
                format!("phi_radius[{}]", phi.id),
                "phi_0 = (2/p) sum phi_n",
                Arc::new(f),
            );
            eq.bracket = (a, b);
            return radius::solve(&eq, tol);
        }
        a = b;
    }
    Err(BohrError::NoRoot)
}

/// Values of `M` tabulated for the harmonic radii.
pub const TABLE_M: [f64; 9] = [
    0.431, 0.862, 1.210, 1.271, 1.289, 1.292, 1.2935, 1.29421, 1.29433,
];

/// Tabulated radii as printed: rows `n^alpha` for alpha = 1..3, then `(n+1)^beta`.
pub const TABLE_PRINTED: [[&str; 9]; 6] = [
    [
        "0.443", "0.230", "0.057", "0.017", "0.0040", "0.0018", "0.00065", "0.00010", "0.000015",
    ],
    [
        "0.358", "0.189", "0.029", "0.016", "0.0040", "0.0017", "0.00065", "0.00010", "0.000015",
    ],
    [
        "0.277", "0.149", "0.044", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015",
    ],
    [
        "0.404", "0.208", "0.054", "0.016", "0.0040", "0.0018", "0.00065", "0.00010", "0.000015",
    ],
    [
        "0.284", "0.147", "0.043", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015",
    ],
    [
        "0.203", "0.147", "0.043", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015",
    ],
];

pub const TABLE_FAMILIES: [PhiFamily; 6] = [
    PhiFamily::Power(1),
    PhiFamily::Power(2),
    PhiFamily::Power(3),
    PhiFamily::ShiftedPower(1),
    PhiFamily::ShiftedPower(2),
    PhiFamily::ShiftedPower(3),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "M")]
    pub m: f64,
    pub radius: f64,
    pub family: String,
    pub order: u32,
}

/// One table cell: the computed radius against the printed one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    #[serde(flatten)]
    pub row: TableRow,
    pub printed: String,
    /// One unit in the last printed digit.
    pub tolerance: f64,
    pub delta: f64,
    pub pass: bool,
}

fn family_label(f: PhiFamily) -> (String, u32) {
    match f {
        PhiFamily::Geometric => ("R".to_string(), 0),
        PhiFamily::Power(a) => (format!("R_{a}"), a),
        PhiFamily::ShiftedPower(b) => (format!("R*_{b}"), b),
    }
}

/// One unit in the last digit of a decimal string.
pub fn printed_ulp(printed: &str) -> f64 {
    let decimals = printed.split_once('.').map_or(0, |(_, frac)| frac.len());
    10f64.powi(-(decimals as i32))
}

/// Recomputes all 54 table cells (in table order).
pub fn reproduce_tables(tol: f64) -> Result<Vec<TableCell>> {
    let jobs: Vec<(usize, usize)> = (0..6).flat_map(|i| (0..9).map(move |j| (i, j))).collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let fam = TABLE_FAMILIES[i];
            let phi = PhiSequence::<f64>::builtin(fam)?;
            let m = TABLE_M[j];
            let root = solve_rf(&phi, m, tol)?.root;
            let printed = TABLE_PRINTED[i][j];
            let value: f64 = printed.parse().expect("numeric table entry");
            let tolerance = printed_ulp(printed);
            let delta = (root - value).abs();
            let (family, order) = family_label(fam);
            Ok(TableCell {
                row: TableRow {
                    m,
                    radius: root,
                    family,
                    order,
                },
                printed: printed.to_string(),
                tolerance,
                delta,
                pass: delta <= tolerance,
            })
        })
        .collect()
}
