use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::SqrtRationalSum;

/// Exact complex number with [`SqrtRationalSum`] real and imaginary parts.
///
/// Needed because symmetry-adapted reduction coefficients contain the
/// imaginary unit; conjugation negates `im`, and the modulus squared of a
/// value with single-term parts is rational.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactComplex {
    pub re: SqrtRationalSum,
    pub im: SqrtRationalSum,
}

impl ExactComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(SqrtRationalSum::one())
    }

    pub fn i() -> Self {
        ExactComplex {
            re: SqrtRationalSum::zero(),
            im: SqrtRationalSum::one(),
        }
    }

    pub fn real(re: SqrtRationalSum) -> Self {
        ExactComplex {
            re,
            im: SqrtRationalSum::zero(),
        }
    }

    pub fn imag(im: SqrtRationalSum) -> Self {
        ExactComplex {
            re: SqrtRationalSum::zero(),
            im,
        }
    }

    pub fn new(re: SqrtRationalSum, im: SqrtRationalSum) -> Self {
        ExactComplex { re, im }
    }

    pub fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> SqrtRationalSum {
        self.re.square() + self.im.square()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ExactComplex {
            re: self.re.scale(r),
            im: self.im.scale(r),
        }
    }

    /// Multiplies by a real single-term value's reciprocal.
    pub fn div_real_single(&self, x: &SqrtRationalSum) -> crate::Result<Self> {
        let inv = x.recip()?;
        Ok(ExactComplex {
            re: &self.re * &inv,
            im: &self.im * &inv,
        })
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: Self) -> Self {
        ExactComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign for ExactComplex {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: Self) -> Self {
        ExactComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> Self {
        ExactComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul<&SqrtRationalSum> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &SqrtRationalSum) -> ExactComplex {
        ExactComplex {
            re: &self.re * rhs,
            im: &self.im * rhs,
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i·({})", self.re, self.im)
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_and_modulus() {
        let z = ExactComplex::new(
            SqrtRationalSum::sqrt_ratio(1, 2).unwrap(),
            SqrtRationalSum::sqrt_ratio(1, 2).unwrap(),
        );
        let zc = z.conj();
        assert_eq!(zc.im, -z.im.clone());
        let n = z.norm_sqr();
        assert_eq!(n.as_rational().unwrap(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn multiplication_matches_floats() {
        let z = ExactComplex::new(SqrtRationalSum::from_ratio(1, 3), SqrtRationalSum::sqrt_ratio(2, 1).unwrap());
        let w = ExactComplex::new(SqrtRationalSum::sqrt_ratio(3, 1).unwrap(), SqrtRationalSum::from_ratio(-1, 2));
        let p = (&z * &w).to_c64();
        let q = z.to_c64() * w.to_c64();
        assert!((p - q).norm() < 1e-12);
    }
}
