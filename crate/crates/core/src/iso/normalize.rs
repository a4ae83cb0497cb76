//! Explicit reduction of the two-parameter filiform family to `F_n^1`, `F_n^2` or `F_n^3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{verify_isomorphism, Algebra, BasisChange};
use crate::catalog::{make_filiform, CatalogId};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, rational_sqrt, square_free_split, Field, Quadratic, Rational};

/// The basis change found by [`normalize_filiform`], over `Q` when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizingChange {
    Rational(BasisChange<Rational>),
    Quadratic(BasisChange<Quadratic>),
}

impl NormalizingChange {
    pub fn is_rational(&self) -> bool {
        matches!(self, NormalizingChange::Rational(_))
    }

    pub fn as_quadratic(&self) -> BasisChange<Quadratic> {
        match self {
            NormalizingChange::Rational(c) => c.to_quadratic(),
            NormalizingChange::Quadratic(c) => c.clone(),
        }
    }
}

/// Coefficients of the generator change
/// `e'_1 = a_1 e_1 + a_n e_n`, `e'_n = b_{n−2} e_{n−2} + b_n e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCoefficients {
    pub a1: Rational,
    pub an: Rational,
    pub bn: Quadratic,
    pub bn_minus_2: Quadratic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub class: CatalogId,
    pub coefficients: GeneratorCoefficients,
    pub change: NormalizingChange,
}

/// Picks `a_1` and `b_n` with `b_n² = a_1^{n−1} / β`, preferring rational `b_n`.
fn scale_for_beta(n: usize, beta: &Rational) -> Result<(Rational, Quadratic)> {
    if let Some(root) = rational_sqrt(&beta.recip()) {
        return Ok((Rational::one(), Quadratic::from_rational(root)));
    }
    if n % 2 == 0 {
        // a_1 = β gives b_n² = β^{n−2}, a square since n−2 is even
        let bn = (0..(n - 2) / 2).fold(Rational::one(), |acc, _| acc * beta);
        return Ok((beta.clone(), Quadratic::from_rational(bn)));
    }
    // 1/β = s²·r with r square-free: b_n = s·√r
    let (s, r) = square_free_split(&beta.recip());
    let bn = Quadratic::new(Rational::zero(), s, Rational::from_integer(r))?;
    Ok((Rational::one(), bn))
}

/// Reduces `make_filiform(n, α, β)` to one of the three normal forms and
/// returns the class together with a verified basis change.
///
/// The class depends only on whether `α` and `β` vanish: `β ≠ 0` gives
/// `F_n^3`; `β = 0, α ≠ 0` gives `F_n^2`; otherwise `F_n^1`.
pub fn normalize_filiform(n: usize, alpha: &Rational, beta: &Rational) -> Result<Normalization> {
    if n < 5 {
        return Err(Error::DimensionTooSmall { dim: n, min: 5 });
    }
    let (class, a1, an, bn) = if !beta.is_zero() {
        let (a1, bn) = scale_for_beta(n, beta)?;
        let an = alpha * &a1 / (int(n as i64 - 3) * beta);
        (CatalogId::F3(n), a1, an, bn)
    } else if !alpha.is_zero() {
        // b_n = a_1^{n−2} / α with a_1 = 1
        (CatalogId::F2(n), Rational::one(), Rational::zero(), Quadratic::from_rational(alpha.recip()))
    } else {
        (CatalogId::F1(n), Rational::one(), Rational::zero(), Quadratic::one())
    };
    let q = |x: &Rational| Quadratic::from_rational(x.clone());
    let bn_minus_2 = -(q(&an) * bn.clone() * q(&a1).inverse().expect("a_1 ≠ 0")) * q(beta);

    let source = make_filiform(n, alpha, beta)?.to_quadratic();
    let mut rows: Matrix<Quadratic> = Vec::with_capacity(n);
    let mut first = vec![Quadratic::zero(); n];
    first[0] = q(&a1);
    first[n - 1] = q(&an);
    rows.push(first.clone());
    for _ in 2..n {
        let prev = rows.last().expect("nonempty");
        let next = source.multiply(&first, prev)?;
        rows.push(next);
    }
    let mut last = vec![Quadratic::zero(); n];
    last[n - 3] = bn_minus_2.clone();
    last[n - 1] = bn.clone();
    rows.push(last);

    let change = BasisChange::new(rows)?;
    let target = class.build()?.to_quadratic();
    if !verify_isomorphism(&source, &target, &change)? {
        return Err(Error::InvalidParameter(format!(
            "normal form construction failed to verify for n = {n}, alpha = {alpha}, beta = {beta}"
        )));
    }
    let change = match rationalize(change.matrix()) {
        Some(m) => NormalizingChange::Rational(BasisChange::new(m)?),
        None => NormalizingChange::Quadratic(change),
    };
    Ok(Normalization {
        class,
        coefficients: GeneratorCoefficients { a1, an, bn, bn_minus_2 },
        change,
    })
}

fn rationalize(m: &Matrix<Quadratic>) -> Option<Matrix<Rational>> {
    m.iter().map(|r| r.iter().map(Field::to_rational).collect()).collect()
}

/// Radicand of a quadratic change, if it has one.
pub fn radicand(change: &NormalizingChange) -> Option<BigInt> {
    match change {
        NormalizingChange::Rational(_) => None,
        NormalizingChange::Quadratic(c) => c
            .matrix()
            .iter()
            .flatten()
            .find_map(|x| x.radicand().cloned())
            .map(|r| r.numer().clone()),
    }
}

/// Checks a normalization result by transport, over the field it lives in.
pub fn verify_normalization(n: usize, alpha: &Rational, beta: &Rational, result: &Normalization) -> Result<bool> {
    let source = make_filiform(n, alpha, beta)?;
    let target: Algebra = result.class.build()?;
    match &result.change {
        NormalizingChange::Rational(c) => verify_isomorphism(&source, &target, c),
        NormalizingChange::Quadratic(c) => verify_isomorphism(&source.to_quadratic(), &target.to_quadratic(), c),
    }
}
