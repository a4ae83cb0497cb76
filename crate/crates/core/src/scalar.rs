//! Exact scalar fields.
//!
//! All structure constants live in [`Rational`] (arbitrary precision). A single
//! adjoined square root is available through [`Quadratic`], which the filiform
//! normalizer needs when the rescaling of the last basis vector is irrational.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A commutative field with exact equality.
///
/// `inverse` returns `None` only for zero.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    /// The value as a plain rational, if it has no irrational part.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Integers `m_k` and a positive `d` with `values[k] = m_k / d`, when the
    /// field allows it. Lets hot loops run in integer arithmetic.
    fn common_denominator(values: &[Self]) -> Option<(Vec<BigInt>, BigInt)> {
        let _ = values;
        None
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn common_denominator(values: &[Self]) -> Option<(Vec<BigInt>, BigInt)> {
        let d = values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        Some((values.iter().map(|q| q.numer() * (&d / q.denom())).collect(), d))
    }
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a rational literal: optional `-`, digits, optional `/` and a positive integer.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            d
        }
    };
    Ok(Rational::new(n, d))
}

/// Canonical text form: `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Write `q = s² · r` with `r` a square-free integer (sign kept in `r`).
///
/// Trial division; fine for the small radicands this crate produces.
pub fn square_free_split(q: &Rational) -> (Rational, BigInt) {
    assert!(!q.is_zero(), "square_free_split of zero");
    // q = n/d = n·d / d²
    let mut m = q.numer() * q.denom();
    let sign = if m.is_negative() { -BigInt::one() } else { BigInt::one() };
    m = m.abs();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut count = 0u32;
        while m.is_multiple_of(&p) {
            m /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        if count % 2 == 1 {
            free *= &p;
        }
        p += 1u32;
    }
    free *= m;
    (Rational::new(square, q.denom().clone()), sign * free)
}

/// Element `a + b·√r` of a quadratic extension `Q(√r)`.
///
/// The radicand is shared implicitly: values with a zero irrational part carry
/// no radicand and combine with anything, but two values with different
/// radicands must never meet in one computation (arithmetic panics if they do).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    rational: Rational,
    surd: Rational,
    radicand: Option<Rational>,
}

impl Quadratic {
    /// `a + b·√r`. The radicand must be a nonzero non-square rational.
    pub fn new(a: Rational, b: Rational, radicand: Rational) -> Result<Self, Error> {
        if radicand.is_zero() || rational_sqrt(&radicand).is_some() {
            return Err(Error::InvalidRadicand(format_rational(&radicand)));
        }
        Ok(Self::canonical(a, b, Some(radicand)))
    }

    /// `√r` itself.
    pub fn sqrt_of(radicand: Rational) -> Result<Self, Error> {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    fn canonical(a: Rational, b: Rational, radicand: Option<Rational>) -> Self {
        if b.is_zero() {
            Quadratic { rational: a, surd: b, radicand: None }
        } else {
            Quadratic { rational: a, surd: b, radicand }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.radicand.as_ref()
    }

    fn join(&self, other: &Self) -> Option<Rational> {
        match (&self.radicand, &other.radicand) {
            (Some(r), Some(s)) => {
                assert_eq!(r, s, "quadratic scalars with different radicands combined");
                Some(r.clone())
            }
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (None, None) => None,
        }
    }
}

impl fmt::Display for Quadratic {
    /// `a`, `b*sqrt(r)`, `a + b*sqrt(r)` or `a - b*sqrt(r)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(r) = &self.radicand else {
            return write!(f, "{}", format_rational(&self.rational));
        };
        let root = format!("sqrt({})", format_rational(r));
        let surd = |b: &Rational| if b.is_one() { root.clone() } else { format!("{}*{root}", format_rational(b)) };
        if self.rational.is_zero() {
            if self.surd == -Rational::one() {
                return write!(f, "-{root}");
            }
            return write!(f, "{}", surd(&self.surd));
        }
        let sign = if self.surd.is_negative() { '-' } else { '+' };
        write!(f, "{} {sign} {}", format_rational(&self.rational), surd(&self.surd.abs()))
    }
}

impl Add for Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: Quadratic) -> Quadratic {
        let r = self.join(&rhs);
        Quadratic::canonical(self.rational + rhs.rational, self.surd + rhs.surd, r)
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: Quadratic) -> Quadratic {
        let r = self.join(&rhs);
        Quadratic::canonical(self.rational - rhs.rational, self.surd - rhs.surd, r)
    }
}

impl Mul for Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: Quadratic) -> Quadratic {
        let r = self.join(&rhs);
        let bd = &self.surd * &rhs.surd;
        let bd_r = match &r {
            Some(r) => bd * r,
            None => Rational::zero(),
        };
        let a = &self.rational * &rhs.rational + bd_r;
        let b = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Quadratic::canonical(a, b, r)
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic::canonical(-self.rational, -self.surd, self.radicand)
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Quadratic::canonical(Rational::zero(), Rational::zero(), None)
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Quadratic::canonical(Rational::one(), Rational::zero(), None)
    }
}

impl Field for Quadratic {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.radicand {
            None => Some(Quadratic::from_rational(self.rational.recip())),
            Some(r) => {
                // (a + b√r)⁻¹ = (a − b√r) / (a² − b²r); the norm is nonzero since r is not a square.
                let norm = &self.rational * &self.rational - &self.surd * &self.surd * r;
                Some(Quadratic::canonical(
                    &self.rational / &norm,
                    -(&self.surd / &norm),
                    Some(r.clone()),
                ))
            }
        }
    }

    fn from_rational(q: Rational) -> Self {
        Quadratic::canonical(q, Rational::zero(), None)
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.surd.is_zero() {
            Some(self.rational.clone())
        } else {
            None
        }
    }
}
