//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the library computes in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    /// Lossy view used for error payloads and reports.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `n!` as a scalar.
pub(crate) fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::of_usize(i))
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub(crate) fn falling<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    (0..k).fold(T::one(), |acc, i| acc * T::of_usize(n - i))
}

pub(crate) fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    falling::<T>(n, k) / factorial::<T>(k)
}

/// Integer power with `0^0 = 1`.
pub(crate) fn powu<T: Scalar>(x: T, n: usize) -> T {
    x.powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinatorics() {
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
        assert_eq!(falling::<f64>(5, 2), 20.0);
        assert_eq!(falling::<f64>(2, 3), 0.0);
        assert_eq!(binomial::<f64>(6, 3), 20.0);
        assert_eq!(powu(0.0_f64, 0), 1.0);
        assert_eq!(f32::lit(0.5), 0.5_f32);
    }
}
