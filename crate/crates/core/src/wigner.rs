//! Exact SU(2) ⊃ U(1) coupling and recoupling symbols.
//!
//! Production evaluation uses the closed single-sum (Racah) forms for the
//! Clebsch-Gordan and 6-j symbols; the defining unitary-reduction and
//! recoupling sums are kept as independent test oracles elsewhere.  Values
//! are exact [`SqrtRationalSum`]s.  Symbols are memoized on canonicalized
//! arguments (sorted columns with the permutation sign recorded); the
//! intended argument domain is j ≤ 40, beyond which factorials merely get
//! slow, not wrong.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::exactnum::half::triangle_ok;
use crate::{HalfInt, RacahError, Result, SqrtRationalSum};

/// A coupling triad (j1, j2, j3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triad {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j3: HalfInt,
}

impl Triad {
    pub fn new(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Self {
        Triad { j1, j2, j3 }
    }

    /// Triangle condition |j1−j2| ≤ j3 ≤ j1+j2 with integer perimeter.
    pub fn is_valid(&self) -> bool {
        triangle_ok(self.j1, self.j2, self.j3)
    }
}

static FACTORIALS: Lazy<RwLock<Vec<BigInt>>> = Lazy::new(|| RwLock::new(vec![BigInt::one()]));

fn factorial(n: i32) -> BigInt {
    assert!(n >= 0, "factorial of negative argument");
    let n = n as usize;
    {
        let cache = FACTORIALS.read().unwrap();
        if n < cache.len() {
            return cache[n].clone();
        }
    }
    let mut cache = FACTORIALS.write().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

fn fact_rat(n: i32) -> BigRational {
    BigRational::from_integer(factorial(n))
}

/// Validates a (j, m) pair: m must run over j, j−1, …, −j.
fn check_projection(j: HalfInt, m: HalfInt, what: &str) -> Result<()> {
    if j.is_negative() {
        return Err(RacahError::invalid(format!("{what}: negative j = {j}")));
    }
    if !m.same_parity(j) {
        return Err(RacahError::invalid(format!(
            "{what}: parity mismatch between j = {j} and m = {m}"
        )));
    }
    if m.abs() > j {
        return Err(RacahError::invalid(format!("{what}: |m| = |{m}| exceeds j = {j}")));
    }
    Ok(())
}

/// The 1-jm Herring-Wigner metric: (−1)^{j+m} δ(m′, −m).
pub fn one_jm(j: HalfInt, m: HalfInt, mp: HalfInt) -> i32 {
    if mp != -m || !m.is_projection_of(j) {
        return 0;
    }
    (j + m).phase()
}

/// Clebsch-Gordan coefficient ⟨j1 m1 j2 m2 | j m⟩ in the Condon-Shortley
/// convention, exact.  Zero when m1+m2 ≠ m or the triangle fails.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<SqrtRationalSum> {
    check_projection(j1, m1, "cg")?;
    check_projection(j2, m2, "cg")?;
    check_projection(j, m, "cg")?;
    if m1 + m2 != m || !Triad::new(j1, j2, j).is_valid() {
        return Ok(SqrtRationalSum::zero());
    }
    // ⟨j1 m1 j2 m2|j m⟩ = (−1)^{j1−j2+m} √(2j+1) (j1 j2 j; m1 m2 −m)
    let phase = (j1 - j2 + m).phase();
    let value = three_jm(j1, j2, j, m1, m2, -m);
    let dim = SqrtRationalSum::sqrt_ratio(i64::from(j.twice()) + 1, 1)?;
    Ok((value * dim).scale_int(i64::from(phase)))
}

type SymbolKey = [i32; 6];

static THREE_JM_CACHE: Lazy<RwLock<HashMap<SymbolKey, SqrtRationalSum>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));
static SIX_J_CACHE: Lazy<RwLock<HashMap<SymbolKey, SqrtRationalSum>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));
static NINE_J_CACHE: Lazy<RwLock<HashMap<[i32; 9], SqrtRationalSum>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Canonical key for a 3-jm symbol: minimum over the 6 column permutations
/// and the simultaneous m-negation, with the (−1)^{j1+j2+j3} sign recorded.
fn canonical_3jm(tj: [i32; 3], tm: [i32; 3], perimeter_even: bool) -> (SymbolKey, i32) {
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([1, 0, 2], false),
        ([2, 1, 0], false),
    ];
    let odd_sign = if perimeter_even { 1 } else { -1 };
    let mut best: Option<(SymbolKey, i32)> = None;
    for (p, even) in PERMS {
        for negate in [false, true] {
            let f = if negate { -1 } else { 1 };
            let key = [
                tj[p[0]],
                tj[p[1]],
                tj[p[2]],
                f * tm[p[0]],
                f * tm[p[1]],
                f * tm[p[2]],
            ];
            let mut sign = if even { 1 } else { odd_sign };
            if negate {
                sign *= odd_sign;
            }
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, sign));
            }
        }
    }
    best.unwrap()
}

/// Wigner 3-jm symbol, exact.  Invalid selection rules give zero; a (j, m)
/// pair with mismatched parity or |m| > j is treated as zero as well.
pub fn three_jm(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> SqrtRationalSum {
    if !m1.is_projection_of(j1) || !m2.is_projection_of(j2) || !m3.is_projection_of(j3) {
        return SqrtRationalSum::zero();
    }
    if (m1 + m2 + m3) != HalfInt::ZERO || !Triad::new(j1, j2, j3).is_valid() {
        return SqrtRationalSum::zero();
    }
    let perimeter = j1 + j2 + j3;
    let perimeter_even = perimeter.as_integer().map(|p| p % 2 == 0).unwrap_or(false);
    let (key, sign) =
        canonical_3jm([j1.twice(), j2.twice(), j3.twice()], [m1.twice(), m2.twice(), m3.twice()], perimeter_even);
    if let Some(v) = THREE_JM_CACHE.read().unwrap().get(&key) {
        return v.clone().scale_int(i64::from(sign));
    }
    let cj = [HalfInt::from_twice(key[0]), HalfInt::from_twice(key[1]), HalfInt::from_twice(key[2])];
    let cm = [HalfInt::from_twice(key[3]), HalfInt::from_twice(key[4]), HalfInt::from_twice(key[5])];
    let value = raw_3jm(cj, cm);
    THREE_JM_CACHE.write().unwrap().insert(key, value.clone());
    value.scale_int(i64::from(sign))
}

/// Racah's closed single-sum form of the 3-jm symbol.
fn raw_3jm(j: [HalfInt; 3], m: [HalfInt; 3]) -> SqrtRationalSum {
    // (j1 j2 j3; m1 m2 m3) = (−1)^{j1−j2−m3} / √(2j3+1) · ⟨j1 m1 j2 m2|j3 −m3⟩
    let phase = (j[0] - j[1] - m[2]).phase();
    let cgv = raw_cg(j[0], m[0], j[1], m[1], j[2], -m[2]);
    let norm = SqrtRationalSum::sqrt_ratio(1, i64::from(j[2].twice()) + 1).unwrap();
    (cgv * norm).scale_int(i64::from(phase))
}

/// Racah's closed single-sum form of the Clebsch-Gordan coefficient.
/// Assumes selection rules already hold.
fn raw_cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j3: HalfInt, m3: HalfInt) -> SqrtRationalSum {
    let int = |h: HalfInt| h.as_integer().expect("integral combination");
    let a = int(j1 + j2 - j3);
    let b = int(j1 - j2 + j3);
    let c = int(j2 + j3 - j1);
    let perim = int(j1 + j2 + j3) + 1;
    let t1 = int(j1 + m1);
    let t2 = int(j1 - m1);
    let t3 = int(j2 + m2);
    let t4 = int(j2 - m2);
    let t5 = int(j3 + m3);
    let t6 = int(j3 - m3);

    let radicand = BigRational::from_integer(BigInt::from(i64::from(j3.twice()) + 1))
        * fact_rat(a)
        * fact_rat(b)
        * fact_rat(c)
        / fact_rat(perim)
        * fact_rat(t1)
        * fact_rat(t2)
        * fact_rat(t3)
        * fact_rat(t4)
        * fact_rat(t5)
        * fact_rat(t6);

    let alpha1 = int(j2 - j3 - m1);
    let alpha2 = int(j1 - j3 + m2);
    let k_lo = 0.max(alpha1).max(alpha2);
    let k_hi = a.min(t2).min(t3);
    let mut series = BigRational::zero();
    for k in k_lo..=k_hi {
        let den = fact_rat(k)
            * fact_rat(a - k)
            * fact_rat(t2 - k)
            * fact_rat(t3 - k)
            * fact_rat(k - alpha1)
            * fact_rat(k - alpha2);
        let term = BigRational::one() / den;
        if k % 2 == 0 {
            series += term;
        } else {
            series -= term;
        }
    }
    SqrtRationalSum::term(series, radicand)
}

/// Canonical key for a 6-j symbol: minimum over column permutations and the
/// upper/lower exchange of any two columns (all 24 leave the value fixed).
fn canonical_6j(t: [i32; 6]) -> SymbolKey {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    // Column i of {j1 j2 j3; j4 j5 j6} is (t[i], t[i+3]).
    const FLIPS: [[bool; 3]; 4] = [
        [false, false, false],
        [true, true, false],
        [true, false, true],
        [false, true, true],
    ];
    let mut best: Option<SymbolKey> = None;
    for p in PERMS {
        for fl in FLIPS {
            let mut key = [0; 6];
            for (slot, (&col, &flip)) in p.iter().zip(fl.iter()).enumerate() {
                let (up, lo) = (t[col], t[col + 3]);
                let (up, lo) = if flip { (lo, up) } else { (up, lo) };
                key[slot] = up;
                key[slot + 3] = lo;
            }
            if best.as_ref().is_none_or(|k| key < *k) {
                best = Some(key);
            }
        }
    }
    best.unwrap()
}

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}, exact.  Invalid triads give zero.
pub fn six_j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> SqrtRationalSum {
    let triads = [
        Triad::new(j1, j2, j3),
        Triad::new(j1, j5, j6),
        Triad::new(j4, j2, j6),
        Triad::new(j4, j5, j3),
    ];
    if triads.iter().any(|t| !t.is_valid()) {
        return SqrtRationalSum::zero();
    }
    let key = canonical_6j([j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice()]);
    if let Some(v) = SIX_J_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let value = raw_6j([
        HalfInt::from_twice(key[0]),
        HalfInt::from_twice(key[1]),
        HalfInt::from_twice(key[2]),
        HalfInt::from_twice(key[3]),
        HalfInt::from_twice(key[4]),
        HalfInt::from_twice(key[5]),
    ]);
    SIX_J_CACHE.write().unwrap().insert(key, value.clone());
    value
}

fn triangle_delta(a: HalfInt, b: HalfInt, c: HalfInt) -> BigRational {
    let int = |h: HalfInt| h.as_integer().expect("integral combination");
    fact_rat(int(a + b - c)) * fact_rat(int(a - b + c)) * fact_rat(int(b + c - a))
        / fact_rat(int(a + b + c) + 1)
}

/// Racah's closed single-sum form of the 6-j symbol.
fn raw_6j(j: [HalfInt; 6]) -> SqrtRationalSum {
    let [a, b, c, d, e, f] = j;
    let int = |h: HalfInt| h.as_integer().expect("integral combination");
    let radicand = triangle_delta(a, b, c) * triangle_delta(a, e, f) * triangle_delta(d, b, f) * triangle_delta(d, e, c);
    let t1 = int(a + b + c);
    let t2 = int(a + e + f);
    let t3 = int(d + b + f);
    let t4 = int(d + e + c);
    let q1 = int(a + b + d + e);
    let q2 = int(b + c + e + f);
    let q3 = int(a + c + d + f);
    let lo = t1.max(t2).max(t3).max(t4);
    let hi = q1.min(q2).min(q3);
    let mut series = BigRational::zero();
    for t in lo..=hi {
        let den = fact_rat(t - t1)
            * fact_rat(t - t2)
            * fact_rat(t - t3)
            * fact_rat(t - t4)
            * fact_rat(q1 - t)
            * fact_rat(q2 - t)
            * fact_rat(q3 - t);
        let term = fact_rat(t + 1) / den;
        if t % 2 == 0 {
            series += term;
        } else {
            series -= term;
        }
    }
    SqrtRationalSum::term(series, radicand)
}

/// Wigner 9-j symbol, exact, computed as the standard single sum over triple
/// 6-j products.  Any row or column triangle violation gives zero.
pub fn nine_j(j: [[HalfInt; 3]; 3]) -> SqrtRationalSum {
    let [[a, b, c], [d, e, f], [g, h, i]] = j;
    let rows_cols = [
        Triad::new(a, b, c),
        Triad::new(d, e, f),
        Triad::new(g, h, i),
        Triad::new(a, d, g),
        Triad::new(b, e, h),
        Triad::new(c, f, i),
    ];
    if rows_cols.iter().any(|t| !t.is_valid()) {
        return SqrtRationalSum::zero();
    }
    let key = [
        a.twice(),
        b.twice(),
        c.twice(),
        d.twice(),
        e.twice(),
        f.twice(),
        g.twice(),
        h.twice(),
        i.twice(),
    ];
    if let Some(v) = NINE_J_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let lo = (a - i).abs().max((b - f).abs()).max((d - h).abs());
    let hi = (a + i).min(b + f).min(d + h);
    let mut value = SqrtRationalSum::zero();
    for x in HalfInt::range_inclusive(lo, hi) {
        let prod = six_j(a, b, c, f, i, x) * six_j(d, e, f, b, x, h) * six_j(g, h, i, x, a, d);
        let weight = i64::from((x + x).phase()) * (i64::from(x.twice()) + 1);
        value += prod.scale_int(weight);
    }
    NINE_J_CACHE.write().unwrap().insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn sqrt_of(n: i64, d: i64) -> SqrtRationalSum {
        SqrtRationalSum::sqrt_ratio(n, d).unwrap()
    }

    #[test]
    fn cg_singlet_and_identity_coupling() {
        // ⟨½ ½ ½ −½|0 0⟩ = 1/√2 in the Condon-Shortley convention.
        let v = cg(h(1), h(1), h(1), h(-1), h(0), h(0)).unwrap();
        assert_eq!(v, sqrt_of(1, 2));
        // Coupling with the identity: ⟨j m 0 0|j m⟩ = 1.
        for tj in 0..=6 {
            let j = h(tj);
            for m in j.projections() {
                let v = cg(j, m, h(0), h(0), j, m).unwrap();
                assert_eq!(v, SqrtRationalSum::one());
            }
        }
        // m-selection rule.
        let v = cg(h(2), h(2), h(2), h(2), h(2), h(2)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn cg_rejects_parity_mismatch() {
        assert!(cg(h(1), h(0), h(0), h(0), h(1), h(0)).is_err());
        assert!(cg(h(2), h(4), h(0), h(0), h(2), h(4)).is_err());
    }

    #[test]
    fn one_jm_values() {
        assert_eq!(one_jm(h(1), h(1), h(1)), 0);
        assert_eq!(one_jm(h(1), h(1), h(-1)), -1);
        assert_eq!(one_jm(h(2), h(0), h(0)), -1);
    }

    #[test]
    fn three_jm_closed_form_column() {
        // (j j 0; m −m 0) = (−1)^{j−m}/√(2j+1)
        for tj in 0..=5 {
            let j = h(tj);
            for m in j.projections() {
                let v = three_jm(j, j, h(0), m, -m, h(0));
                let expected = sqrt_of(1, i64::from(tj) + 1).scale_int(i64::from((j - m).phase()));
                assert_eq!(v, expected);
            }
        }
        // Accidental zero forced by an octahedral selection rule.
        assert!(three_jm(h(6), h(6), h(4), h(-4), h(4), h(0)).is_zero());
        // Odd perimeter with all m = 0.
        assert!(three_jm(h(2), h(2), h(2), h(0), h(0), h(0)).is_zero());
    }

    #[test]
    fn six_j_known_values() {
        assert_eq!(six_j(h(2), h(2), h(2), h(2), h(2), h(2)), SqrtRationalSum::from_ratio(1, 6));
        assert!(six_j(h(2), h(2), h(6), h(2), h(2), h(2)).is_zero());
        // {j1 j2 j3; 0 j3 j2} = (−1)^{j1+j2+j3}/√((2j2+1)(2j3+1))
        assert_eq!(
            six_j(h(2), h(2), h(2), h(0), h(2), h(2)),
            SqrtRationalSum::from_ratio(-1, 3)
        );
        // Half-integer arguments.
        assert_eq!(
            six_j(h(1), h(2), h(1), h(1), h(0), h(1)),
            SqrtRationalSum::from_ratio(1, 2)
        );
    }

    #[test]
    fn nine_j_identity_and_triangle() {
        let z = h(0);
        assert_eq!(nine_j([[z; 3]; 3]), SqrtRationalSum::one());
        assert!(nine_j([[h(2), h(2), h(6)], [h(2), h(2), h(2)], [h(2), h(2), h(2)]]).is_zero());
    }

    #[test]
    fn nine_j_with_zero_corner_reduces_to_six_j() {
        // {a b c; d e f; g h 0} with c = f, g = h:
        // = δ (−1)^{b+c+d+g} {a b c; e d g} / √((2c+1)(2g+1))
        let (a, b, c, d, e) = (h(1), h(1), h(2), h(1), h(1));
        let f = c;
        let g = h(2);
        let lhs = nine_j([[a, b, c], [d, e, f], [g, g, h(0)]]);
        let phase = (b + c + d + g).phase();
        let six = six_j(a, b, c, e, d, g);
        let norm = sqrt_of(1, i64::from((c.twice() + 1) * (g.twice() + 1)));
        let rhs = (six * norm).scale_int(i64::from(phase));
        assert_eq!(lhs, rhs);
    }
}
