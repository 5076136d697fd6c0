//! Sharp radii as roots of scalar equations on `(0, 1)`.
//!
//! Roots are found by bisection inside a bracket with a sign change. The
//! catalog lists every polynomial equation used for a sharp radius together
//! with the decimal value quoted for it, where one is quoted.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{domain, BohrError, Result};
use crate::functionals::{f2_poly, f4_poly, g_lambda, liu_radius};
use crate::scalar::Scalar;

pub const MAX_ITERATIONS: usize = 200;
pub const MIN_TOLERANCE: f64 = 1e-14;
/// Largest accepted `|eval(root)|`.
pub const MAX_RESIDUAL: f64 = 1e-10;
/// Agreement required between a computed root and a quoted six-figure value.
pub const QUOTED_TOLERANCE: f64 = 5e-6;
const SCAN_POINTS: usize = 64;
const EDGE: f64 = 1e-9;

/// Polynomial with integer coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn eval<T: Scalar>(&self, r: T) -> T {
        self.0
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * r + T::lit(c as f64))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

type EvalFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A radius equation `eval(r) = 0` with a bracket for its root.
#[derive(Clone)]
pub struct RadiusEquation<T> {
    pub id: String,
    pub params: BTreeMap<String, T>,
    pub eval: EvalFn<T>,
    pub bracket: (T, T),
    pub expected: Option<T>,
    /// Human-readable form of the equation.
    pub rendering: String,
}

impl<T: Scalar> fmt::Debug for RadiusEquation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadiusEquation")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("bracket", &self.bracket)
            .field("expected", &self.expected)
            .field("rendering", &self.rendering)
            .finish()
    }
}

impl<T: Scalar> RadiusEquation<T> {
    /// Equation on the default bracket `[1e-9, 1 - 1e-9]`.
    pub fn new(id: impl Into<String>, rendering: impl Into<String>, eval: EvalFn<T>) -> Self {
        Self {
            id: id.into(),
            params: BTreeMap::new(),
            eval,
            bracket: (T::lit(EDGE), T::one() - T::lit(EDGE)),
            expected: None,
            rendering: rendering.into(),
        }
    }

    pub fn polynomial(id: impl Into<String>, poly: IntPoly) -> Self {
        let rendering = format!("{poly} = 0");
        Self::new(id, rendering, Arc::new(move |r| poly.eval(r)))
    }

    pub fn expect(mut self, value: f64) -> Self {
        self.expected = Some(T::lit(value));
        self
    }

    pub fn param(mut self, name: &str, value: T) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn value(&self, r: T) -> T {
        (self.eval)(r)
    }

    /// The bracket itself when it straddles a root, otherwise the first
    /// sign change found on a uniform scan of it.
    pub fn sign_change(&self) -> Result<(T, T)> {
        let (lo, hi) = self.bracket;
        let f = |x| self.value(x);
        if f(lo) * f(hi) <= T::zero() {
            return Ok((lo, hi));
        }
        let step = (hi - lo) / T::of_usize(SCAN_POINTS);
        let mut a = lo;
        let mut fa = f(a);
        for i in 1..=SCAN_POINTS {
            let b = if i == SCAN_POINTS {
                hi
            } else {
                lo + step * T::of_usize(i)
            };
            let fb = f(b);
            if fa * fb <= T::zero() {
                return Ok((a, b));
            }
            a = b;
            fa = fb;
        }
        Err(BohrError::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult<T> {
    pub root: T,
    pub residual: T,
    pub iterations: usize,
}

/// Bisection to an interval of width at most `2 tol`.
pub fn solve<T: Scalar>(eq: &RadiusEquation<T>, tol: T) -> Result<RootResult<T>> {
    if !(tol >= T::lit(MIN_TOLERANCE)) {
        return Err(domain("tol", tol.as_f64(), "[1e-14, inf)"));
    }
    let (mut lo, mut hi) = eq.sign_change()?;
    let mut flo = eq.value(lo);
    if flo == T::zero() {
        return Ok(RootResult {
            root: lo,
            residual: flo,
            iterations: 0,
        });
    }
    let fhi = eq.value(hi);
    if fhi == T::zero() {
        return Ok(RootResult {
            root: hi,
            residual: fhi,
            iterations: 0,
        });
    }
    let two = T::lit(2.0);
    for it in 1..=MAX_ITERATIONS {
        let mid = lo + (hi - lo) / two;
        let fm = eq.value(mid);
        // the second test stops once the interval can no longer be split
        if fm == T::zero() || (hi - lo) / two <= tol || mid <= lo || mid >= hi {
            return Ok(RootResult {
                root: mid,
                residual: fm,
                iterations: it,
            });
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(BohrError::Convergence(MAX_ITERATIONS))
}

/// `true` when `eval` never decreases along a uniform grid on the bracket.
pub fn verify_monotone<T: Scalar>(eq: &RadiusEquation<T>, grid_size: usize) -> Result<bool> {
    if grid_size < 10 {
        return Err(domain("grid_size", grid_size as f64, "[10, inf)"));
    }
    let (lo, hi) = eq.bracket;
    let step = (hi - lo) / T::of_usize(grid_size - 1);
    let mut prev = eq.value(lo);
    for i in 1..grid_size {
        let v = eq.value(lo + step * T::of_usize(i));
        if v < prev {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}

/// `2(1+r) r^N - (1-r)^2 = 0`: radius for `|f(z)| + B_N(f, r) <= 1`.
pub fn rogosinski<T: Scalar>(n: u32) -> RadiusEquation<T> {
    let two = T::lit(2.0);
    let eval: EvalFn<T> = Arc::new(move |r: T| {
        two * (T::one() + r) * r.powi(n as i32) - (T::one() - r) * (T::one() - r)
    });
    RadiusEquation::new(
        format!("rogosinski_{n}"),
        format!("2(1+r)r^{n} - (1-r)^2 = 0"),
        eval,
    )
    .param("N", T::lit(n as f64))
}

/// `(1+r) r^N - (1-r)^2 = 0`: radius for `|f(z)|^2 + B_N(f, r) <= 1`.
pub fn rogosinski_sq<T: Scalar>(n: u32) -> RadiusEquation<T> {
    let eval: EvalFn<T> =
        Arc::new(move |r: T| (T::one() + r) * r.powi(n as i32) - (T::one() - r) * (T::one() - r));
    RadiusEquation::new(
        format!("rogosinski_sq_{n}"),
        format!("(1+r)r^{n} - (1-r)^2 = 0"),
        eval,
    )
    .param("N", T::lit(n as f64))
}

/// `(1-a^2) r^3 - (1+2a) r^2 - 2r + 1 = 0` with `a = |a_0|`.
///
/// The cubic coefficient is `1-a^2`: that is where the automorphism extremal
/// reaches equality. A version with `1-a^3` circulates and is violated by `f_a`.
pub fn refined_cubic<T: Scalar>(a: T) -> RadiusEquation<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let eval: EvalFn<T> =
        Arc::new(move |r: T| (one - a * a) * r * r * r - (one + two * a) * r * r - two * r + one);
    RadiusEquation::new(
        "refined_cubic",
        format!("(1-a^2)r^3 - (1+2a)r^2 - 2r + 1 = 0, a = {a}"),
        eval,
    )
    .param("a", a)
}

/// Every fixed radius equation, sorted by id.
pub fn catalog<T: Scalar>() -> Vec<RadiusEquation<T>> {
    let p = |id: &str, c: &[i64]| RadiusEquation::<T>::polynomial(id, IntPoly(c.to_vec()));
    let mut v = vec![
        p("D_f_radius", &[-1, 2, 1, 0, 2, 1]).expect(0.393727),
        p("refined_b3", &[-1, 3, 1, 1, 4, 2]).expect(0.287459),
        p("J1", &[-1, 4, -2, 0, 3, 2, -2, -2]).expect(0.285086),
        p("J2", &[-1, 3, -1, -1, 2, 1, -1, -1]).expect(0.386055),
        p("refined_b2_sq", &[1, -2, -1, -1, -1]).expect(0.385795),
        p("E1_limit", &[-1, 2, 3, -1, 2, 3, 1]).expect(0.333004),
        p("E2_limit", &[-1, 1, 8, 2, 1, 7, 12, 8, 2]).expect(0.283682),
        p("sqrt17_quadratic", &[-1, 3, 2]),
        p("R_1", &[-1, 4, 1]),
        p("R'_1", &[-1, 3]),
    ];
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

/// Looks up a catalog entry or instantiates a family member such as
/// `rogosinski_3`, `rogosinski_sq_2` or `refined_cubic_0.6`.
pub fn lookup<T: Scalar>(id: &str) -> Option<RadiusEquation<T>> {
    if let Some(eq) = catalog().into_iter().find(|e| e.id == id) {
        return Some(eq);
    }
    if let Some(n) = id.strip_prefix("rogosinski_sq_") {
        return n.parse().ok().filter(|&n| n >= 1).map(rogosinski_sq);
    }
    if let Some(n) = id.strip_prefix("rogosinski_") {
        return n.parse().ok().filter(|&n| n >= 1).map(rogosinski);
    }
    if let Some(a) = id.strip_prefix("refined_cubic_") {
        return a
            .parse::<f64>()
            .ok()
            .filter(|a| (0.0..1.0).contains(a))
            .map(|a| refined_cubic(T::lit(a)));
    }
    None
}

/// `2 / (3 + a + sqrt 5 (1 + a))`.
pub fn refined_radius<T: Scalar>(a: T) -> T {
    let one = T::one();
    T::lit(2.0) / (T::lit(3.0) + a + T::lit(5.0).sqrt() * (one + a))
}

/// `1 / (3 - a)`.
pub fn one_over_three_minus<T: Scalar>(a: T) -> T {
    T::one() / (T::lit(3.0) - a)
}

/// `1 / (2 (ln 4 - 1))`.
pub fn harmonic_threshold<T: Scalar>() -> T {
    T::one() / (T::lit(2.0) * (T::lit(4.0).ln() - T::one()))
}

/// Named closed-form constants.
pub fn constants<T: Scalar>() -> BTreeMap<&'static str, T> {
    let five = T::lit(5.0).sqrt();
    BTreeMap::from([
        ("sqrt17_radius", liu_radius()),
        ("g_lambda", g_lambda()),
        ("sqrt5_minus_2", five - T::lit(2.0)),
        ("area_weight_sqrt5", T::lit(2.0) * (five - T::one())),
        ("sixteen_ninths", T::lit(16.0) / T::lit(9.0)),
        ("nine_eighths", T::lit(9.0) / T::lit(8.0)),
        ("eight_ninths", T::lit(8.0) / T::lit(9.0)),
        ("harmonic_threshold", harmonic_threshold()),
    ])
}

/// The largest `lambda` with `F(1, lambda) <= 0`, recovered by bisection
/// from `F_2` (`odds = false`) or `F_4` (`odds = true`).
pub fn lambda_from_limit<T: Scalar>(odds: bool) -> Result<T> {
    let eval: EvalFn<T> = if odds {
        Arc::new(|l| f4_poly(T::one(), l))
    } else {
        Arc::new(|l| f2_poly(T::one(), l))
    };
    let mut eq = RadiusEquation::new("lambda", "F(1, lambda) = 0", eval);
    eq.bracket = (T::zero(), T::lit(2.0));
    Ok(solve(&eq, T::lit(MIN_TOLERANCE))?.root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{e1_poly, e2_poly};
    use approx::assert_relative_eq;

    fn get(id: &str) -> RadiusEquation<f64> {
        lookup(id).unwrap()
    }

    #[test]
    fn catalog_matches_quoted_values() {
        for eq in catalog::<f64>() {
            let res = solve(&eq, 1e-13).unwrap();
            assert!(res.residual.abs() <= MAX_RESIDUAL, "{}", eq.id);
            assert!(res.root > 0.0 && res.root < 1.0);
            if let Some(e) = eq.expected {
                assert!(
                    (res.root - e).abs() <= QUOTED_TOLERANCE,
                    "{}: {}",
                    eq.id,
                    res.root
                );
            }
        }
    }

    #[test]
    fn solver_examples() {
        let mut eq = get("D_f_radius");
        eq.bracket = (0.0, 0.5);
        assert!((solve(&eq, 1e-12).unwrap().root - 0.393727).abs() <= 5e-6);
        let res = solve(&get("R_1"), 1e-14).unwrap();
        assert_relative_eq!(res.root, 5f64.sqrt() - 2.0, epsilon = 2e-14);
        assert!(res.residual.abs() <= 1e-10);
        assert_relative_eq!(
            solve(&rogosinski::<f64>(1), 1e-14).unwrap().root,
            5f64.sqrt() - 2.0,
            epsilon = 2e-14
        );
        let res = solve(&get("sqrt17_quadratic"), 1e-14).unwrap();
        assert_relative_eq!(res.root, liu_radius::<f64>(), epsilon = 2e-14);
    }

    #[test]
    fn solver_errors() {
        let mut eq = RadiusEquation::<f64>::new("pos", "r + 1 = 0", Arc::new(|r| r + 1.0));
        assert!(matches!(solve(&eq, 1e-12), Err(BohrError::Bracket { .. })));
        eq.eval = Arc::new(|r| r - 0.5);
        assert!(solve(&eq, 1e-15).is_err());
        assert_relative_eq!(solve(&eq, 1e-14).unwrap().root, 0.5);
    }

    #[test]
    fn sign_scan_finds_interior_root() {
        // both ends of the default bracket are positive
        let mut eq = RadiusEquation::<f64>::new(
            "two",
            "(r-0.25)(r-0.75)",
            Arc::new(|r| (r - 0.25) * (r - 0.75)),
        );
        let res = solve(&eq, 1e-13).unwrap();
        assert_relative_eq!(res.root, 0.25, epsilon = 1e-12);
        eq.bracket = (0.5, 1.0);
        assert_relative_eq!(solve(&eq, 1e-13).unwrap().root, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(get("D_f_radius").rendering, "-1+2r+r^2+2r^4+r^5 = 0");
        assert_eq!(get("refined_b2_sq").rendering, "1-2r-r^2-r^3-r^4 = 0");
        assert_eq!(IntPoly(vec![0, 0]).to_string(), "0");
    }

    #[test]
    fn constants_examples() {
        let c = constants::<f64>();
        assert_relative_eq!(c["sqrt17_radius"], 0.2807764064, epsilon = 1e-10);
        assert!((c["harmonic_threshold"] - 1.29435).abs() <= 5e-6);
        assert_relative_eq!(c["g_lambda"], 0.682913, epsilon = 1e-6);
        assert_relative_eq!(
            refined_radius(0.0),
            (3.0 - 5f64.sqrt()) / 2.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(refined_radius(0.0), 0.381966, epsilon = 1e-6);
        assert_relative_eq!(one_over_three_minus(0.0), 1.0 / 3.0);
    }

    #[test]
    fn lambda_is_the_limit_root() {
        assert_relative_eq!(
            lambda_from_limit::<f64>(false).unwrap(),
            g_lambda(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            lambda_from_limit::<f64>(true).unwrap(),
            g_lambda(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn families_are_ordered() {
        // a later tail start leaves less to control, so R_N grows with N
        let mut prev = 0.0;
        for n in 1..=10 {
            let rn = solve(&rogosinski::<f64>(n), 1e-13).unwrap().root;
            let rn_sq = solve(&rogosinski_sq::<f64>(n), 1e-13).unwrap().root;
            assert!(rn > prev, "R_N not increasing at N={n}");
            assert!(rn_sq > rn, "R'_N <= R_N at N={n}");
            prev = rn;
        }
    }

    #[test]
    fn refined_cubic_bounds() {
        for a in [0.0, 0.3, 0.6, 0.9] {
            let r = solve(&refined_cubic::<f64>(a), 1e-13).unwrap().root;
            assert!(r > 1.0 / 3.0 && r < 1.0 / (2.0 + a), "a={a}: {r}");
        }
        for i in 0..100 {
            let a = i as f64 / 100.0;
            assert!(refined_radius(a) > 5f64.sqrt() - 2.0);
        }
        assert!(lookup::<f64>("refined_cubic_0.6").is_some());
        assert!(lookup::<f64>("refined_cubic_1.5").is_none());
        assert!(lookup::<f64>("rogosinski_0").is_none());
    }

    #[test]
    fn limit_roots_sit_below_radii() {
        let r1 = solve(&get("E1_limit"), 1e-13).unwrap().root;
        let r0 = solve(&get("D_f_radius"), 1e-13).unwrap().root;
        assert!(r1 < r0);
        let r2 = solve(&get("E2_limit"), 1e-13).unwrap().root;
        let rj = solve(&get("J1"), 1e-13).unwrap().root;
        assert!(r2 < rj);
    }

    #[test]
    fn monotone_limits() {
        assert!(verify_monotone(&get("E1_limit"), 1000).unwrap());
        assert!(verify_monotone(&get("E2_limit"), 1000).unwrap());
        assert!(!verify_monotone(&get("refined_b2_sq"), 1000).unwrap());
        let flat = RadiusEquation::<f64>::new("c", "1", Arc::new(|_| 1.0));
        assert!(verify_monotone(&flat, 10).unwrap());
        assert!(verify_monotone(&flat, 9).is_err());
        // limits evaluated at the right end
        assert_relative_eq!(get("E1_limit").value(1.0), 9.0);
        assert_relative_eq!(get("E2_limit").value(1.0), 40.0);
        assert_eq!(get("E1_limit").value(0.0), -1.0);
        // exact polynomials stay below their majorant limits at a = 1
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            assert!(e1_poly(1.0, r) <= get("E1_limit").value(r) + 1e-12);
            assert!(e2_poly(1.0, r) <= get("E2_limit").value(r) + 1e-12);
        }
    }
}
