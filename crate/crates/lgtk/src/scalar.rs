//! Exact scalar abstraction for the geometric core.
//!
//! Every polytope computation in this crate is exact: coordinates live in an
//! ordered field with total order and explicit numerator/denominator access.
//! [`Rat`](crate::Rat) (arbitrary precision) is the default instantiation;
//! `Ratio<i64>` also implements [`Scalar`] and is handy for small tests.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub trait Scalar:
    Clone + Ord + Hash + Num + Signed + Debug + Display + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// `num/den` with `den != 0`.
    fn from_fraction(num: i64, den: i64) -> Self;

    /// Exact conversion from a big rational. Panics if the value does not fit
    /// the scalar type (never for arbitrary-precision scalars).
    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn numer_big(&self) -> BigInt;

    /// Always positive.
    fn denom_big(&self) -> BigInt;

    fn to_f64(&self) -> f64 {
        let n = self.numer_big().to_f64().unwrap_or(f64::NAN);
        let d = self.denom_big().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn numer_big(&self) -> BigInt {
        self.numer().clone()
    }

    fn denom_big(&self) -> BigInt {
        self.denom().clone()
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn from_big_ratio(num: &BigInt, den: &BigInt) -> Self {
        let n = num.to_i64().expect("numerator out of range for Ratio<i64>");
        let d = den.to_i64().expect("denominator out of range for Ratio<i64>");
        Ratio::new(n, d)
    }

    fn numer_big(&self) -> BigInt {
        BigInt::from(*self.numer())
    }

    fn denom_big(&self) -> BigInt {
        BigInt::from(*self.denom())
    }
}

/// Canonical `num/den` string; the `/den` part is omitted for integers.
pub fn fraction_string<S: Scalar>(x: &S) -> String {
    let d = x.denom_big();
    if d.is_one() {
        format!("{}", x.numer_big())
    } else {
        format!("{}/{}", x.numer_big(), d)
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_fraction<S: Scalar>(s: &str) -> Option<S> {
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(S::from_big_ratio(&n, &BigInt::one()))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().ok()?;
            let d: BigInt = q.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(S::from_big_ratio(&n, &d))
        }
    }
}
