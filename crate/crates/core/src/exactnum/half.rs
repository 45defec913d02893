use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::RacahError;

/// A half-integer quantum number (j, m, S, L, J, …), stored as its doubled
/// value so that both integers and half-odd-integers are exact.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// Builds from the doubled value: `from_twice(3)` is 3/2.
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn as_integer(self) -> Option<i32> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Whether `self` and `other` differ by an integer (2m ≡ 2j mod 2).
    pub const fn same_parity(self, other: Self) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// Whether `self` is a valid projection of `j`: |m| ≤ j with matching
    /// parity, so that m ranges over j, j−1, …, −j.
    pub fn is_projection_of(self, j: Self) -> bool {
        self.same_parity(j) && self.abs() <= j
    }

    /// The projections m = j, j−1, …, −j (descending).
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> {
        let top = self.twice;
        let count = if top < 0 { 0 } else { (top + 1) as usize };
        (0..count).map(move |k| HalfInt::from_twice(top - 2 * k as i32))
    }

    /// Inclusive range `lo, lo+1, …, hi` in unit steps.
    pub fn range_inclusive(lo: Self, hi: Self) -> impl DoubleEndedIterator<Item = HalfInt> {
        let count = if hi.twice < lo.twice {
            0
        } else {
            ((hi.twice - lo.twice) / 2 + 1) as usize
        };
        (0..count).map(move |k| HalfInt::from_twice(lo.twice + 2 * k as i32))
    }

    /// (−1)^self for an integer-valued exponent sum.
    ///
    /// Panics if the value is half-odd: callers must only form phases whose
    /// exponents are guaranteed integral by the selection rules in force.
    pub fn phase(self) -> i32 {
        match self.as_integer() {
            Some(n) => {
                if n % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            None => panic!("(-1)^({}) is not real: exponent must be an integer", self),
        }
    }
}

/// Triangle condition |j1−j2| ≤ j3 ≤ j1+j2 with integer perimeter.
pub(crate) fn triangle_ok(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    (j1 + j2 + j3).is_integer()
        && j3 <= j1 + j2
        && j1 <= j2 + j3
        && j2 <= j3 + j1
        && j1.twice() >= 0
        && j2.twice() >= 0
        && j3.twice() >= 0
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt::from_twice(-self.twice)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: Self) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: Self) {
        self.twice -= rhs.twice;
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> Self {
        iter.fold(HalfInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = RacahError;

    /// Accepts `"2"`, `"-3/2"`, and decimal forms `"1.5"`, `"-0.5"`, `"2.0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RacahError::invalid(format!("cannot parse half-integer from '{s}'"));
        if let Some((num, den)) = s.split_once('/') {
            let n: i32 = num.trim().parse().map_err(|_| bad())?;
            let d: i32 = den.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::from_twice(n)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
            let i: i32 = int.trim().parse().map_err(|_| bad())?;
            return match frac.trim() {
                "0" | "00" | "" => Ok(HalfInt::from_int(i)),
                "5" | "50" => Ok(HalfInt::from_twice(2 * i + sign)),
                _ => Err(bad()),
            };
        }
        let n: i32 = s.parse().map_err(|_| bad())?;
        Ok(HalfInt::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projections_descend_in_unit_steps() {
        let j = HalfInt::from_twice(3); // 3/2
        let ms: Vec<i32> = j.projections().map(|m| m.twice()).collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
        let j0 = HalfInt::ZERO;
        assert_eq!(j0.projections().count(), 1);
    }

    #[test]
    fn parity_and_projection_checks() {
        let j = HalfInt::from_twice(5);
        assert!(HalfInt::from_twice(-3).is_projection_of(j));
        assert!(!HalfInt::from_int(1).is_projection_of(j)); // wrong parity
        assert!(!HalfInt::from_twice(7).is_projection_of(j)); // out of range
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("-3/2".parse::<HalfInt>().unwrap().twice(), -3);
        assert_eq!("1.5".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("-0.5".parse::<HalfInt>().unwrap().twice(), -1);
        assert_eq!("2".parse::<HalfInt>().unwrap().twice(), 4);
        assert!("3/4".parse::<HalfInt>().is_err());
    }

    #[test]
    fn phase_requires_integer() {
        assert_eq!(HalfInt::from_int(3).phase(), -1);
        assert_eq!(HalfInt::from_int(-2).phase(), 1);
        let r = std::panic::catch_unwind(|| HalfInt::HALF.phase());
        assert!(r.is_err());
    }

    #[test]
    fn triangle_condition() {
        let h = HalfInt::from_twice;
        assert!(triangle_ok(h(1), h(1), h(2)));
        assert!(!triangle_ok(h(1), h(1), h(1))); // half-integer perimeter
        assert!(!triangle_ok(h(2), h(2), h(6)));
    }
}
