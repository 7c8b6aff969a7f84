//! Exact Bernoulli and Euler numbers and polynomials.
//!
//! All coefficients are held as reduced big-integer fractions; conversion to
//! `f64` happens only when a polynomial is evaluated at a floating point.
//! Bernoulli numbers use the `B_1 = −1/2` convention, i.e. `B_n = B_n(0)`.
//! Euler polynomials are obtained from
//!
//! ```text
//! E_{n−1}(x) = (2/n) · (B_n(x) − 2ⁿ B_n(x/2))
//! ```

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest Bernoulli index served by this module.
pub const DEGREE_CAP: usize = 64;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (zero is `0/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Self(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Sign as −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Nearest `f64` (NaN never returned for finite rationals; may be ±inf).
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            return v;
        }
        // Fallback through scaled integer division.
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    pub(crate) fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

/// Coefficient list of a polynomial, `coeffs[i]` multiplying `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialCoeffs {
    coeffs: Vec<ExactRational>,
}

impl PolynomialCoeffs {
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &ExactRational {
        &self.coeffs[i]
    }

    pub fn leading(&self) -> &ExactRational {
        &self.coeffs[self.degree()]
    }

    /// Exact Horner evaluation.
    pub fn eval_exact(&self, x: &ExactRational) -> ExactRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.inner() + c.inner();
        }
        ExactRational(acc)
    }

    /// Floating Horner evaluation with coefficients rounded once.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Evaluates at a float by converting it to its exact binary rational.
    /// Falls back to [`eval_f64`](Self::eval_f64) for non-finite input.
    pub fn eval_at_float_exact(&self, x: f64) -> f64 {
        match ExactRational::from_f64(x) {
            Some(q) => self.eval_exact(&q).to_f64(),
            None => self.eval_f64(x),
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DegreeCap { requested: n, cap })
    } else {
        Ok(())
    }
}

/// Binomial coefficient C(n, k) as a big integer.
fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_table() -> &'static [ExactRational] {
    static TABLE: OnceLock<Vec<ExactRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0 for n ≥ 1.
        let mut table: Vec<BigRational> = Vec::with_capacity(DEGREE_CAP + 1);
        table.push(BigRational::one());
        for n in 1..=DEGREE_CAP {
            let mut acc = BigRational::zero();
            for (j, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(binomial(n + 1, j)) * b;
                }
            }
            table.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        table.into_iter().map(ExactRational).collect()
    })
}

/// Bernoulli number `B_n` with `B_1 = −1/2`.
pub fn bernoulli_number(n: usize) -> Result<ExactRational> {
    check_cap(n, DEGREE_CAP)?;
    Ok(bernoulli_table()[n].clone())
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n−k}`.
pub fn bernoulli_poly(n: usize) -> Result<PolynomialCoeffs> {
    check_cap(n, DEGREE_CAP)?;
    let table = bernoulli_table();
    let coeffs = (0..=n)
        .map(|i| {
            // x^i multiplies C(n, n−i) B_{n−i}
            let b = &table[n - i];
            ExactRational(BigRational::from_integer(binomial(n, i)) * b.inner())
        })
        .collect();
    Ok(PolynomialCoeffs::new(coeffs))
}

/// `E_n(x)` through the Bernoulli identity with index `n+1`.
pub fn euler_poly(n: usize) -> Result<PolynomialCoeffs> {
    check_cap(n + 1, DEGREE_CAP)?;
    let m = n + 1;
    let b = bernoulli_poly(m)?;
    let scale = BigRational::new(BigInt::from(2), BigInt::from(m));
    // B_m(x) − 2^m B_m(x/2) has x^i coefficient c_i (1 − 2^{m−i}).
    let coeffs: Vec<ExactRational> = b
        .coeffs()
        .iter()
        .enumerate()
        .take(m)
        .map(|(i, c)| {
            let factor = BigInt::one() - (BigInt::one() << (m - i));
            ExactRational(c.inner() * BigRational::from_integer(factor) * &scale)
        })
        .collect();
    // the x^m coefficient cancels identically
    Ok(PolynomialCoeffs::new(coeffs))
}

/// `E_n(0) = 2(1 − 2^{n+1}) B_{n+1} / (n+1)`.
pub fn euler_at_zero(n: usize) -> Result<ExactRational> {
    check_cap(n + 1, DEGREE_CAP)?;
    let m = n + 1;
    let b = &bernoulli_table()[m];
    let factor = BigInt::from(2) * (BigInt::one() - (BigInt::one() << m));
    Ok(ExactRational(
        b.inner() * BigRational::new(factor, BigInt::from(m)),
    ))
}

/// `ζ(2p) = |B_{2p}| · 2^{2p−1} π^{2p} / (2p)!`.
pub fn zeta_even(p: usize) -> Result<f64> {
    if p == 0 || p > 32 {
        return Err(Error::invalid(format!(
            "zeta_even needs 1 ≤ p ≤ 32, got {p}"
        )));
    }
    let n = 2 * p;
    let b = bernoulli_number(n)?.abs();
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= BigInt::from(i);
    }
    let rational = b.inner() * BigRational::new(BigInt::one() << (n - 1), fact);
    // π^{2p} ≤ π^64 ≈ 6e31, well within range
    Ok(ExactRational(rational).to_f64() * std::f64::consts::PI.powi(n as i32))
}

/// Greatest common divisor of numerator and denominator; `1` for any
/// value produced by this module.
pub fn reduced_gcd(q: &ExactRational) -> BigInt {
    q.numer().abs().gcd(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    /// Independent oracle: Bernoulli numbers via the Akiyama–Tanigawa
    /// algorithm (yields B_1 = +1/2, adjusted below).
    fn akiyama_tanigawa(n: usize) -> ExactRational {
        let mut a: Vec<BigRational> = Vec::new();
        for m in 0..=n {
            a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
            }
        }
        let mut b = ExactRational(a[0].clone());
        if n == 1 {
            b = -b;
        }
        b
    }

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli_number(3).unwrap(), q(0, 1));
        assert_eq!(bernoulli_number(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli_number(10).unwrap(), q(5, 66));
        assert_eq!(bernoulli_number(12).unwrap(), q(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_independent_algorithm() {
        for n in 0..=40 {
            assert_eq!(bernoulli_number(n).unwrap(), akiyama_tanigawa(n), "n = {n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(bernoulli_number(64).is_ok());
        assert!(matches!(
            bernoulli_number(65),
            Err(Error::DegreeCap {
                requested: 65,
                cap: 64
            })
        ));
        assert!(euler_poly(63).is_ok());
        assert!(euler_poly(64).is_err());
        assert!(euler_at_zero(64).is_err());
        assert!(bernoulli_poly(65).is_err());
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(bernoulli_poly(0).unwrap().coeffs(), &[q(1, 1)]);
        assert_eq!(bernoulli_poly(1).unwrap().coeffs(), &[q(-1, 2), q(1, 1)]);
        assert_eq!(
            bernoulli_poly(2).unwrap().coeffs(),
            &[q(1, 6), q(-1, 1), q(1, 1)]
        );
        assert_eq!(euler_poly(0).unwrap().coeffs(), &[q(1, 1)]);
        assert_eq!(euler_poly(1).unwrap().coeffs(), &[q(-1, 2), q(1, 1)]);
        // E_2(x) = x² − x
        assert_eq!(
            euler_poly(2).unwrap().coeffs(),
            &[q(0, 1), q(-1, 1), q(1, 1)]
        );
    }

    #[test]
    fn euler_values_at_zero() {
        assert_eq!(euler_at_zero(0).unwrap(), q(1, 1));
        assert_eq!(euler_at_zero(1).unwrap(), q(-1, 2));
        assert_eq!(euler_at_zero(2).unwrap(), q(0, 1));
        assert_eq!(euler_at_zero(3).unwrap(), q(1, 4));
        assert_eq!(euler_at_zero(9).unwrap(), q(-31, 2));
        assert_eq!(euler_at_zero(11).unwrap(), q(691, 4));
        assert_eq!(euler_poly(9).unwrap().coeff(0), &q(-31, 2));
    }

    #[test]
    fn leading_coefficients_are_one() {
        for n in 0..=30 {
            assert_eq!(bernoulli_poly(n).unwrap().leading(), &q(1, 1));
            assert_eq!(euler_poly(n).unwrap().leading(), &q(1, 1));
            assert_eq!(euler_poly(n).unwrap().degree(), n);
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let p = euler_poly(20).unwrap();
        for c in p.coeffs() {
            assert_eq!(reduced_gcd(c), BigInt::one());
            assert!(c.denom() > &BigInt::zero());
        }
        assert_eq!(ExactRational::new(0, -7).to_string(), "0/1");
        assert_eq!(ExactRational::new(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn zeta_small_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta_even(1).unwrap() - pi * pi / 6.0).abs() < 1e-15);
        assert!((zeta_even(2).unwrap() - pi.powi(4) / 90.0).abs() < 1e-15);
        assert!(zeta_even(0).is_err());
        assert!(zeta_even(33).is_err());
    }

    #[test]
    fn exact_and_float_evaluation_agree() {
        let p = euler_poly(7).unwrap();
        let x = 0.375;
        let exact = p.eval_at_float_exact(x);
        assert!((exact - p.eval_f64(x)).abs() < 1e-13);
    }
}
