use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::RacahError;

/// Trial-division bound for square-free factorization.  Every radicand
/// arising from symbols with j ≤ 20 is far below this; residuals above the
/// bound are handled by a perfect-square check and otherwise taken as
/// square-free.
const FACTOR_BOUND: u64 = 1_000_000;

/// Splits `n > 0` into `(s, r)` with `n = r²·s` and `s` square-free.
fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    let mut rem = n.clone();
    let mut sf = BigUint::one();
    let mut root = BigUint::one();
    let mut d = 2u64;
    while d <= FACTOR_BOUND {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rem {
            break;
        }
        let mut count = 0u32;
        while (&rem % &big_d).is_zero() {
            rem /= &big_d;
            count += 1;
        }
        if count > 0 {
            for _ in 0..count / 2 {
                root *= &big_d;
            }
            if count % 2 == 1 {
                sf *= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // Residual has no factor ≤ min(bound, √rem); it is square-free unless it
    // is itself a perfect square of something above the bound.
    let s = rem.sqrt();
    if &s * &s == rem {
        root *= s;
    } else {
        sf *= rem;
    }
    (sf, root)
}

/// Canonicalizes a radicand `num/den` into `(r, c)` with |num/den| = c²·r,
/// where r is a square-free positive rational (numerator and denominator
/// square-free and coprime).  The sign of the input is carried on `c`.
pub fn canonicalize(num: &BigInt, den: &BigInt) -> Result<(BigRational, BigRational), RacahError> {
    if den.is_zero() {
        return Err(RacahError::invalid("canonicalize: zero denominator"));
    }
    if num.is_zero() {
        return Ok((BigRational::one(), BigRational::zero()));
    }
    let value = BigRational::new(num.clone(), den.clone());
    let sign = if value.is_negative() { -1 } else { 1 };
    let (sf_n, root_n) = squarefree_decompose(value.numer().magnitude());
    let (sf_d, root_d) = squarefree_decompose(value.denom().magnitude());
    let radicand = BigRational::new(BigInt::from(sf_n), BigInt::from(sf_d));
    let factor = BigRational::new(BigInt::from(sign) * BigInt::from(root_n), BigInt::from(root_d));
    Ok((radicand, factor))
}

/// A finite formal sum Σᵢ cᵢ·√(nᵢ) with rational coefficients cᵢ and
/// distinct square-free positive *integer* radicands nᵢ.
///
/// Rational radicands are normalized away on construction
/// (√(p/q) = (1/q)·√(pq)), so the stored radicands form a ℚ-linearly
/// independent set and the value is zero iff the sum is empty.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SqrtRationalSum {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SqrtRationalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(BigUint::one(), r);
        }
        SqrtRationalSum { terms }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// √(num/den) for a non-negative rational, exact.
    pub fn sqrt_ratio(num: i64, den: i64) -> Result<Self, RacahError> {
        Self::sqrt_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sqrt_rational(r: &BigRational) -> Result<Self, RacahError> {
        if r.is_negative() {
            return Err(RacahError::invalid("sqrt of a negative rational"));
        }
        Ok(Self::term(BigRational::one(), r.clone()))
    }

    /// Builds `coeff·√(radicand)` for any positive rational radicand,
    /// normalizing to the canonical internal form.  A non-positive radicand
    /// contributes only through `radicand = 0` (the zero value).
    pub fn term(coeff: BigRational, radicand: BigRational) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        assert!(
            radicand.is_positive(),
            "radicand must be positive, got {radicand}"
        );
        let (sf_n, root_n) = squarefree_decompose(radicand.numer().magnitude());
        let (sf_d, root_d) = squarefree_decompose(radicand.denom().magnitude());
        // √(p/q) = √(p·q)/q on square-free coprime p, q.
        let key = &sf_n * &sf_d;
        let scale = BigRational::new(
            BigInt::from(root_n),
            BigInt::from(root_d) * BigInt::from(sf_d),
        );
        let mut terms = BTreeMap::new();
        let c = coeff * scale;
        if !c.is_zero() {
            terms.insert(key, c);
        }
        SqrtRationalSum { terms }
    }

    /// Exact-zero test: by linear independence of √ of distinct square-free
    /// integers over ℚ, the value is zero iff no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (rad, c) = self.terms.iter().next().unwrap();
                if rad.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// `(coefficient, integer radicand)` when the sum has exactly one term.
    pub fn single_term(&self) -> Option<(BigRational, BigUint)> {
        if self.terms.len() == 1 {
            let (rad, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), rad.clone()))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(rad, c)| c.to_f64().unwrap_or(f64::NAN) * rad.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    /// The exact square.  Closed in the ring: √(n₁)·√(n₂) = g·√(n₁n₂/g²).
    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Reciprocal of a single-term value: 1/(c√n) = (1/(c·n))·√n.
    pub fn recip(&self) -> Result<Self, RacahError> {
        let (c, rad) = self
            .single_term()
            .ok_or_else(|| RacahError::invalid("reciprocal requires a single-term value"))?;
        let inv = BigRational::new(BigInt::one(), BigInt::from(rad.clone())) / c;
        Ok(Self {
            terms: BTreeMap::from([(rad, inv)]),
        })
    }

    /// Exact division by a single-term value.
    pub fn div_single(&self, other: &Self) -> Result<Self, RacahError> {
        Ok(self.clone() * other.recip()?)
    }

    /// √ of a non-negative rational value of `self`.
    pub fn sqrt(&self) -> Result<Self, RacahError> {
        let r = self
            .as_rational()
            .ok_or_else(|| RacahError::invalid("sqrt requires a rational value"))?;
        Self::sqrt_rational(&r)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SqrtRationalSum {
            terms: self
                .terms
                .iter()
                .map(|(rad, c)| (rad.clone(), c * r))
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    fn insert_term(&mut self, rad: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(rad) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Serialized term view: (coeff, radicand) pairs with integer radicands.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }
}

impl Add for SqrtRationalSum {
    type Output = SqrtRationalSum;
    fn add(mut self, rhs: Self) -> Self {
        for (rad, c) in rhs.terms {
            self.insert_term(rad, c);
        }
        self
    }
}

impl AddAssign for SqrtRationalSum {
    fn add_assign(&mut self, rhs: Self) {
        for (rad, c) in rhs.terms {
            self.insert_term(rad, c);
        }
    }
}

impl Sub for SqrtRationalSum {
    type Output = SqrtRationalSum;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for SqrtRationalSum {
    type Output = SqrtRationalSum;
    fn neg(self) -> Self {
        SqrtRationalSum {
            terms: self.terms.into_iter().map(|(rad, c)| (rad, -c)).collect(),
        }
    }
}

impl Mul for SqrtRationalSum {
    type Output = SqrtRationalSum;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &SqrtRationalSum {
    type Output = SqrtRationalSum;
    fn mul(self, rhs: &SqrtRationalSum) -> SqrtRationalSum {
        let mut out = SqrtRationalSum::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                // r1, r2 square-free: the square part of r1·r2 is gcd(r1,r2)².
                let g = num_integer::gcd(r1.clone(), r2.clone());
                let rad = (r1 / &g) * (r2 / &g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.insert_term(rad, coeff);
            }
        }
        out
    }
}

impl fmt::Display for SqrtRationalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (rad, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if rad.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·√{rad}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SqrtRationalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff_num: String,
    coeff_den: String,
    rad_num: String,
    rad_den: String,
}

impl Serialize for SqrtRationalSum {
    /// JSON form: array of `{coeff_num, coeff_den, rad_num, rad_den}` with
    /// decimal-string fields (lossless for arbitrary precision).
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let items: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(rad, c)| TermRepr {
                coeff_num: c.numer().to_string(),
                coeff_den: c.denom().to_string(),
                rad_num: rad.to_string(),
                rad_den: "1".to_string(),
            })
            .collect();
        items.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SqrtRationalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = SqrtRationalSum::zero();
        for t in items {
            let parse = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
            let cn = parse(&t.coeff_num)?;
            let cd = parse(&t.coeff_den)?;
            let rn = parse(&t.rad_num)?;
            let rd = parse(&t.rad_den)?;
            if cd.is_zero() || rd.is_zero() {
                return Err(D::Error::custom("zero denominator in term"));
            }
            if rn.is_negative() || rd.is_negative() {
                return Err(D::Error::custom("radicand must be positive"));
            }
            if rn.is_zero() {
                continue;
            }
            out += SqrtRationalSum::term(BigRational::new(cn, cd), BigRational::new(rn, rd));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonicalize_examples() {
        // 8 = 2²·2
        let (r, c) = canonicalize(&big(8), &big(1)).unwrap();
        assert_eq!(r, BigRational::from_integer(big(2)));
        assert_eq!(c, BigRational::from_integer(big(2)));
        // 1/2 already square-free
        let (r, c) = canonicalize(&big(1), &big(2)).unwrap();
        assert_eq!(r, BigRational::new(big(1), big(2)));
        assert_eq!(c, BigRational::one());
        // 45/4 = (3/2)²·5
        let (r, c) = canonicalize(&big(45), &big(4)).unwrap();
        assert_eq!(r, BigRational::from_integer(big(5)));
        assert_eq!(c, BigRational::new(big(3), big(2)));
    }

    #[test]
    fn canonicalize_rejects_zero_denominator_and_carries_sign() {
        assert!(canonicalize(&big(1), &big(0)).is_err());
        let (r, c) = canonicalize(&big(-8), &big(1)).unwrap();
        assert_eq!(r, BigRational::from_integer(big(2)));
        assert_eq!(c, BigRational::from_integer(big(-2)));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for (n, d) in [(8i64, 1i64), (45, 4), (1, 2), (360, 49), (7, 11)] {
            let (r, _) = canonicalize(&big(n), &big(d)).unwrap();
            let (r2, c2) = canonicalize(r.numer(), r.denom()).unwrap();
            assert_eq!(r, r2);
            assert_eq!(c2, BigRational::one());
        }
    }

    #[test]
    fn mixed_representations_of_equal_values_cancel() {
        // √(1/2) and (1/2)·√2 must land on the same canonical term.
        let a = SqrtRationalSum::sqrt_ratio(1, 2).unwrap();
        let b = SqrtRationalSum::term(
            BigRational::new(big(1), big(2)),
            BigRational::from_integer(big(2)),
        );
        assert_eq!(a, b);
        assert!((a - b).is_zero());
    }

    #[test]
    fn to_float_examples() {
        assert_eq!(SqrtRationalSum::zero().to_f64(), 0.0);
        let half_sqrt2 = SqrtRationalSum::sqrt_ratio(1, 2).unwrap();
        assert!((half_sqrt2.to_f64() - 0.7071067811865476).abs() < 1e-15);
        let sixth = SqrtRationalSum::from_ratio(1, 6);
        assert_eq!(sixth.to_f64(), 0.16666666666666666);
    }

    #[test]
    fn squaring_single_terms_is_rational() {
        let x = SqrtRationalSum::term(
            BigRational::new(big(-3), big(7)),
            BigRational::new(big(5), big(3)),
        );
        let sq = x.square();
        assert_eq!(sq.as_rational().unwrap(), BigRational::new(big(15), big(49)));
    }

    #[test]
    fn serde_round_trip() {
        let x = SqrtRationalSum::sqrt_ratio(3, 8).unwrap()
            + SqrtRationalSum::from_ratio(-2, 9);
        let json = serde_json::to_string(&x).unwrap();
        let y: SqrtRationalSum = serde_json::from_str(&json).unwrap();
        assert_eq!(x, y);
    }
}
