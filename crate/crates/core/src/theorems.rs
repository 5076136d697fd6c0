//! Catalog of Bohr-type inequalities for self-maps of the disk, each with its
//! radius rule and the automorphism that makes it sharp.

use crate::error::{BohrError, Result};
use crate::functionals::{
    g_lambda, liu_radius, AreaTerm, FunctionalDescriptor, HeadTerm, Refinement,
};
use crate::radius::{self, lookup, one_over_three_minus, refined_cubic, refined_radius};
use crate::series::{AutomorphismParams, Variant};

/// Bisection tolerance for radii.
pub const RADIUS_TOL: f64 = 1e-14;

/// How the admissible radius is determined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusRule {
    Fixed(f64),
    /// `2 / (3 + a + sqrt 5 (1 + a))` with `a = |a_0|`.
    RefinedAbs,
    /// Root of `(1-a^2) r^3 - (1+2a) r^2 - 2r + 1`.
    RefinedCubic,
    /// `1 / (3 - a)`.
    OneOverThreeMinusA,
}

impl RadiusRule {
    pub fn radius(&self, a0: f64) -> Result<f64> {
        Ok(match *self {
            RadiusRule::Fixed(r) => r,
            RadiusRule::RefinedAbs => refined_radius(a0),
            RadiusRule::RefinedCubic => radius::solve(&refined_cubic(a0), RADIUS_TOL)?.root,
            RadiusRule::OneOverThreeMinusA => one_over_three_minus(a0),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            RadiusRule::Fixed(r) => format!("{r:.6}"),
            RadiusRule::RefinedAbs => "2/(3+a+sqrt5(1+a))".to_string(),
            RadiusRule::RefinedCubic => "root of (1-a^2)r^3-(1+2a)r^2-2r+1".to_string(),
            RadiusRule::OneOverThreeMinusA => "1/(3-a)".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Theorem {
    pub id: String,
    pub statement: String,
    pub descriptor: FunctionalDescriptor<f64>,
    pub radius: RadiusRule,
    /// `Minus`: `f_a` evaluated at `z = -r`; `Plus`: `f*_a` at `z = r`.
    pub extremal: Variant,
    /// Whether the radius is claimed to be best possible.
    pub sharp_radius: bool,
}

impl Theorem {
    pub fn extremal_params(&self, a: f64) -> AutomorphismParams<f64> {
        AutomorphismParams {
            a,
            variant: self.extremal,
        }
    }

    /// Sign of the evaluation point for the extremal.
    pub fn extremal_sign(&self) -> f64 {
        match self.extremal {
            Variant::Minus => -1.0,
            Variant::Plus => 1.0,
        }
    }
}

fn fixed(id: &str) -> Result<RadiusRule> {
    let eq = lookup::<f64>(id).ok_or(BohrError::InvalidDescriptor("unknown radius equation"))?;
    Ok(RadiusRule::Fixed(radius::solve(&eq, RADIUS_TOL)?.root))
}

struct Entry {
    id: String,
    statement: &'static str,
    d: FunctionalDescriptor<f64>,
    radius: RadiusRule,
    sharp: bool,
}

fn entry(
    id: impl Into<String>,
    statement: &'static str,
    d: FunctionalDescriptor<f64>,
    radius: RadiusRule,
) -> Entry {
    Entry {
        id: id.into(),
        statement,
        d,
        radius,
        sharp: true,
    }
}

/// Every inequality checked by the suites, sorted by id.
pub fn theorems() -> Result<Vec<Theorem>> {
    use AreaTerm::{SOverPi, SOverPiMinusS};
    use HeadTerm::{AbsA0, AbsA0Sq, AbsF, AbsFSq};
    use Refinement::{AF0, AF1};
    type D = FunctionalDescriptor<f64>;

    let liu = RadiusRule::Fixed(liu_radius());
    let third = RadiusRule::Fixed(1.0 / 3.0);
    let half = RadiusRule::Fixed(0.5);
    let lam = g_lambda::<f64>();

    let mut v = vec![
        entry("bohr_classical", "B_0 <= 1", D::classical_bohr(), third),
        entry(
            "derivative_b2",
            "|f| + |f'|r + B_2 <= 1",
            D::new(AbsF, 2).derivatives(1),
            liu,
        ),
        entry(
            "refined_b1",
            "|f| + B_1 + A(f_0) <= 1",
            D::new(AbsF, 1).refined(AF0),
            RadiusRule::RefinedAbs,
        ),
        entry(
            "refined_b1_sq",
            "|f|^2 + B_1 + A(f_0) <= 1",
            D::new(AbsFSq, 1).refined(AF0),
            RadiusRule::RefinedCubic,
        ),
        entry(
            "refined_b2",
            "|f| + |f'|r + B_2 + A(f_0) <= 1",
            D::new(AbsF, 2).derivatives(1).refined(AF0),
            liu,
        ),
        entry(
            "refined_b2_sq",
            "|f|^2 + |f'|r + B_2 + A(f_0) <= 1",
            D::new(AbsFSq, 2).derivatives(1).refined(AF0),
            fixed("refined_b2_sq")?,
        ),
        entry(
            "refined_b3",
            "|f| + |f'|r + |f''|r^2/2 + B_3 + |a_1|^2 r^3/(1-r) + A(f_1) <= 1",
            D::new(AbsF, 3).derivatives(2).refined(AF1).coeff_sq(3),
            fixed("refined_b3")?,
        ),
        entry(
            "D_f",
            "|f|^2 + |f'|r + |f''|r^2/2 + B_3 + |a_1|^2 r^3/(1-r) + A(f_1) <= 1",
            D::new(AbsFSq, 3).derivatives(2).refined(AF1).coeff_sq(3),
            fixed("D_f_radius")?,
        ),
        entry(
            "J1",
            "|f| + sum_{k<=3} |f^(k)|r^k/k! + B_4 + |a_1|^2 r^4/(1-r) + A(f_1) <= 1",
            D::new(AbsF, 4).derivatives(3).refined(AF1).coeff_sq(4),
            fixed("J1")?,
        ),
        entry(
            "J2",
            "|f|^2 + sum_{k<=3} |f^(k)|r^k/k! + B_4 + |a_1|^2 r^4/(1-r) + A(f_1) <= 1",
            D::new(AbsFSq, 4).derivatives(3).refined(AF1).coeff_sq(4),
            fixed("J2")?,
        ),
        entry(
            "G1",
            "|f| + |f'|r + B_2 + A(f_0) + lambda S_r/pi <= 1",
            D::new(AbsF, 2)
                .derivatives(1)
                .refined(AF0)
                .area(SOverPi, lam),
            liu,
        ),
        entry(
            "G2",
            "|f| + |f'|r + B_2 + A(f_0) + lambda S_r/(pi-S_r) <= 1",
            D::new(AbsF, 2)
                .derivatives(1)
                .refined(AF0)
                .area(SOverPiMinusS, lam),
            liu,
        ),
        entry(
            "area_bohr",
            "B_0 + (16/9) S_r/pi <= 1",
            D::classical_bohr().area(SOverPi, 16.0 / 9.0),
            third,
        ),
        entry(
            "area_sq",
            "|a_0|^2 + B_1 + (9/8) S_r/pi <= 1",
            D::new(AbsA0Sq, 1).area(SOverPi, 9.0 / 8.0),
            half,
        ),
        entry(
            "area_abs_f",
            "|f| + B_1 + 2(sqrt5-1) S_r/pi <= 1",
            D::new(AbsF, 1).area(SOverPi, 2.0 * (5f64.sqrt() - 1.0)),
            fixed("R_1")?,
        ),
        entry(
            "area_odds_bohr",
            "B_0 + (16/9) S_r/(pi-S_r) <= 1",
            D::classical_bohr().area(SOverPiMinusS, 16.0 / 9.0),
            third,
        ),
        entry(
            "area_odds_sq",
            "|a_0|^2 + B_1 + (9/8) S_r/(pi-S_r) <= 1",
            D::new(AbsA0Sq, 1).area(SOverPiMinusS, 9.0 / 8.0),
            half,
        ),
        entry(
            "area_refined",
            "B_0 + A(f_0) + (8/9) S_r/pi <= 1",
            D::new(AbsA0, 1).refined(AF0).area(SOverPi, 8.0 / 9.0),
            third,
        ),
        Entry {
            sharp: false,
            ..entry(
                "area_refined_sq",
                "|a_0|^2 + B_1 + A(f_0) + (9/8) S_r/pi <= 1",
                D::new(AbsA0Sq, 1).refined(AF0).area(SOverPi, 9.0 / 8.0),
                RadiusRule::OneOverThreeMinusA,
            )
        },
        Entry {
            sharp: false,
            ..entry(
                "area_refined_abs_sq",
                "|f|^2 + B_1 + A(f_0) + (8/9) S_r/pi <= 1",
                D::new(AbsFSq, 1).refined(AF0).area(SOverPi, 8.0 / 9.0),
                third,
            )
        },
        Entry {
            sharp: false,
            ..entry(
                "area_odds_refined_abs_sq",
                "|f|^2 + B_1 + A(f_0) + (8/9) S_r/(pi-S_r) <= 1",
                D::new(AbsFSq, 1)
                    .refined(AF0)
                    .area(SOverPiMinusS, 8.0 / 9.0),
                third,
            )
        },
    ];
    for n in 1..=3u32 {
        v.push(entry(
            format!("rogosinski_{n}"),
            "|f| + B_N <= 1",
            D::new(AbsF, n as usize),
            fixed(&format!("rogosinski_{n}"))?,
        ));
        v.push(entry(
            format!("rogosinski_sq_{n}"),
            "|f|^2 + B_N <= 1",
            D::new(AbsFSq, n as usize),
            fixed(&format!("rogosinski_sq_{n}"))?,
        ));
    }

    let mut out: Vec<Theorem> = v
        .into_iter()
        .map(|e| Theorem {
            extremal: if e.id.starts_with('G') {
                Variant::Plus
            } else {
                Variant::Minus
            },
            id: e.id,
            statement: e.statement.to_string(),
            descriptor: e.d,
            radius: e.radius,
            sharp_radius: e.sharp,
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_consistent() {
        let t = theorems().unwrap();
        assert_eq!(t.len(), 27);
        for th in &t {
            th.descriptor.validate().unwrap();
            let r = th.radius.radius(0.5).unwrap();
            assert!(r > 0.0 && r < 1.0, "{}", th.id);
        }
        let ids: Vec<&str> = t.iter().map(|t| t.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn radius_rules() {
        assert!((RadiusRule::RefinedAbs.radius(0.0).unwrap() - 0.381966).abs() < 1e-6);
        let r = RadiusRule::RefinedCubic.radius(0.3).unwrap();
        assert!(r > 1.0 / 3.0 && r < 1.0 / 2.3);
        assert_eq!(
            RadiusRule::OneOverThreeMinusA.radius(0.0).unwrap(),
            1.0 / 3.0
        );
        let t = theorems().unwrap();
        let d_f = t.iter().find(|t| t.id == "D_f").unwrap();
        assert!((d_f.radius.radius(0.0).unwrap() - 0.393727).abs() < 5e-6);
    }

    #[test]
    fn refined_cubic_is_attained_by_automorphisms() {
        use crate::functionals::eval_functional;
        use crate::series::automorphism_series;
        use num_complex::Complex;
        let t = theorems().unwrap();
        let th = t.iter().find(|t| t.id == "refined_b1_sq").unwrap();
        for a in [0.0, 0.3, 0.6, 0.9] {
            let r = th.radius.radius(a).unwrap();
            assert!(r > 1.0 / 3.0 && r < 1.0 / (2.0 + a));
            let s = automorphism_series(th.extremal_params(a), 400).unwrap();
            let v = eval_functional(&th.descriptor, &s, Complex::new(-r, 0.0)).unwrap();
            assert!((v.total - 1.0).abs() < 1e-12, "a={a} value={}", v.total);
        }
    }
}
