use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use std::fmt::Debug;

/// Field-like scalar used by the numeric routines.
///
/// Implemented for `f64`, `f32` and [`crate::Rational`]; every operation used
/// by generic code is exact for the rational instance.
pub trait Scalar: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug {
    /// Exact conversion of small integers.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_ratio_is_exact() {
        let third = Rational::ratio(1, 3);
        assert_eq!(third.clone() + third.clone() + third, Rational::from_int(1));
    }

    #[test]
    fn float_ratio() {
        assert_eq!(f64::ratio(3, 4), 0.75);
    }
}
