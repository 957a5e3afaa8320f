//! Semifield arithmetic.
//!
//! Every formula in this crate that is written without subtraction is generic
//! over [`Semifield`]. Evaluating it over [`Rational`] gives the birational
//! (geometric) object, evaluating it over [`MaxPlus`] gives its piecewise-linear
//! shadow: `+` becomes `max`, `*` becomes `+` and `/` becomes `-`.
//!
//! No additive identity is part of the abstraction; all sums in the formulas
//! are over nonempty index sets.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Max-plus number with integer carrier.
pub type Trop = MaxPlus<BigInt>;

/// Max-plus number with rational carrier, for generic-position checks.
pub type TropQ = MaxPlus<BigRational>;

pub trait Semifield: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Whether inputs are restricted to a positive domain (true for rationals).
    const POSITIVE_DOMAIN: bool;

    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;

    /// Whether this value is a legal input: strictly positive for rationals,
    /// always true for max-plus values.
    fn is_admissible(&self) -> bool;

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, k: i32) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Sum of a nonempty sequence.
    fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        let mut it = items.into_iter();
        let first = it.next().expect("semifield sum over an empty set").clone();
        it.fold(first, |acc, v| acc.add(v))
    }

    /// Product of a sequence; the empty product is `one`.
    fn product<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        items.into_iter().fold(Self::one(), |acc, v| acc.mul(v))
    }
}

impl Semifield for BigRational {
    const POSITIVE_DOMAIN: bool = true;

    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_admissible(&self) -> bool {
        self.is_positive()
    }
    fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let items: Vec<&BigRational> = items.into_iter().collect();
        assert!(!items.is_empty(), "semifield sum over an empty set");
        let den = items.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num: BigInt = items.iter().map(|v| v.numer() * (&den / v.denom())).sum();
        BigRational::new(num, den)
    }
}

/// Builds the reduced fraction `p/q`.
pub fn rat(p: i64, q: i64) -> Result<Rational> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Integer as a rational.
pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(t).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(BigRational::from_integer(p))
    }
}

/// Element of the max-plus semifield over an ordered additive group `T`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MaxPlus<T>(pub T);

impl<T: fmt::Debug> fmt::Debug for MaxPlus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({:?})", self.0)
    }
}

impl<T: fmt::Display> fmt::Display for MaxPlus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T> MaxPlus<T> {
    pub fn value(&self) -> &T {
        &self.0
    }
    pub fn into_inner(self) -> T {
        self.0
    }
}

impl<T> Semifield for MaxPlus<T>
where
    T: Clone + Ord + Zero + fmt::Debug + Send + Sync + Add<Output = T> + Sub<Output = T>,
{
    const POSITIVE_DOMAIN: bool = false;

    fn one() -> Self {
        MaxPlus(T::zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        match self.0.cmp(&rhs.0) {
            Ordering::Less => rhs.clone(),
            _ => self.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        MaxPlus(self.0.clone() + rhs.0.clone())
    }
    fn div(&self, rhs: &Self) -> Self {
        MaxPlus(self.0.clone() - rhs.0.clone())
    }
    fn is_admissible(&self) -> bool {
        true
    }
}

/// Positive rational that checks every intermediate value of a computation.
///
/// Evaluating a formula over `Audited` panics as soon as an operation
/// produces a non-positive result, so it witnesses that the formula only
/// touched positive quantities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Audited(pub Rational);

impl Audited {
    fn checked(r: Rational, op: &str) -> Self {
        assert!(r.is_positive(), "non-positive intermediate after {op}: {r}");
        Audited(r)
    }
}

impl Semifield for Audited {
    const POSITIVE_DOMAIN: bool = true;

    fn one() -> Self {
        Audited(One::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::checked(&self.0 + &rhs.0, "add")
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::checked(&self.0 * &rhs.0, "mul")
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.0.is_zero(), "division by zero");
        Self::checked(&self.0 / &rhs.0, "div")
    }
    fn is_admissible(&self) -> bool {
        self.0.is_positive()
    }
}

/// Distributivity witness `a(b+c) = ab + ac`.
pub fn sf_eval_check<S: Semifield>(a: &S, b: &S, c: &S) -> bool {
    a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c))
}

/// Serde adapter for rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
