use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, Rational};

/// Exact binomial coefficient `C(m, k)`; zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(m, i) here, and C(m, i+1) = C(m, i)·(m−i)/(i+1) divides exactly
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

fn binomial_rational(m: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(m as u64, k as u64))
}

/// `e_i ∘ e_j = C(i+j−1, j) e_{i+j}` for `2 ≤ i+j ≤ top`, 1-based, inside dimension `dim`.
fn binomial_table(dim: usize, top: usize) -> Algebra {
    let mut a = Algebra::abelian(dim);
    for i in 1..top {
        for j in 1..=top - i {
            a.set_constant(i - 1, j - 1, i + j - 1, binomial_rational(i + j - 1, j));
        }
    }
    a
}

/// The nul-filiform algebra `NF_n`.
pub fn make_nf(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
    }
    Ok(binomial_table(n, n))
}

fn check_filiform_dim(n: usize) -> Result<()> {
    if n < 5 {
        Err(Error::DimensionTooSmall { dim: n, min: 5 })
    } else {
        Ok(())
    }
}

/// Filiform normal form with parameters: the `NF_{n−1}` table on `e_1..e_{n−1}`
/// plus `e_n ∘ e_1 = α e_{n−1}` and `e_n ∘ e_n = β e_{n−1}`.
pub fn make_filiform(n: usize, alpha: &Rational, beta: &Rational) -> Result<Algebra> {
    check_filiform_dim(n)?;
    let mut a = binomial_table(n, n - 1);
    a.set_constant(n - 1, 0, n - 2, alpha.clone());
    a.set_constant(n - 1, n - 1, n - 2, beta.clone());
    Ok(a)
}

pub fn make_f1(n: usize) -> Result<Algebra> {
    make_filiform(n, &int(0), &int(0))
}

pub fn make_f2(n: usize) -> Result<Algebra> {
    make_filiform(n, &int(1), &int(0))
}

pub fn make_f3(n: usize) -> Result<Algebra> {
    make_filiform(n, &int(0), &int(1))
}

/// The split four-dimensional algebra `e1∘e1 = e3, e1∘e3 = e4, e3∘e1 = 2e4`
/// (with `e2` idle) that is excluded from the dimension-4 list.
pub fn split_dim4() -> Algebra {
    table(4, &[(1, 1, &[(1, 3)]), (1, 3, &[(1, 4)]), (3, 1, &[(2, 4)])])
}

type Line<'a> = (usize, usize, &'a [(i64, usize)]);

fn table(dim: usize, lines: &[Line<'_>]) -> Algebra {
    Algebra::from_products(
        dim,
        lines
            .iter()
            .map(|&(i, j, terms)| (i - 1, j - 1, terms.iter().map(|&(c, k)| (int(c), k - 1)).collect())),
    )
    .expect("catalog tables are in range")
}

/// Names of every algebra this crate can build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogId {
    Nf(usize),
    F1(usize),
    F2(usize),
    F3(usize),
    Fab { n: usize, alpha: Rational, beta: Rational },
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8(Rational),
    A9(Rational),
    A10,
    A11,
    A12,
    A13,
    A14,
    A15(Rational),
    A16,
}

impl CatalogId {
    /// The dimension-4 algebra `A_k`; families take `alpha`, the rest reject it.
    pub fn dim4(k: u8, alpha: Option<Rational>) -> Result<Self> {
        use CatalogId::*;
        let family = matches!(k, 8 | 9 | 15);
        if !family && alpha.is_some() {
            return Err(Error::InvalidParameter(format!("A_{k} takes no parameter")));
        }
        let alpha = || alpha.clone().ok_or_else(|| Error::InvalidParameter(format!("A_{k} needs a parameter alpha")));
        Ok(match k {
            1 => A1,
            2 => A2,
            3 => A3,
            4 => A4,
            5 => A5,
            6 => A6,
            7 => A7,
            8 => A8(alpha()?),
            9 => A9(alpha()?),
            10 => A10,
            11 => A11,
            12 => A12,
            13 => A13,
            14 => A14,
            15 => A15(alpha()?),
            16 => A16,
            _ => return Err(Error::InvalidParameter(format!("no algebra A_{k} in dimension 4"))),
        })
    }

    /// Index `k` of a dimension-4 id `A_k`.
    pub fn dim4_index(&self) -> Option<u8> {
        use CatalogId::*;
        Some(match self {
            A1 => 1,
            A2 => 2,
            A3 => 3,
            A4 => 4,
            A5 => 5,
            A6 => 6,
            A7 => 7,
            A8(_) => 8,
            A9(_) => 9,
            A10 => 10,
            A11 => 11,
            A12 => 12,
            A13 => 13,
            A14 => 14,
            A15(_) => 15,
            A16 => 16,
            _ => return None,
        })
    }

    pub fn build(&self) -> Result<Algebra> {
        match self {
            CatalogId::Nf(n) => make_nf(*n),
            CatalogId::F1(n) => make_f1(*n),
            CatalogId::F2(n) => make_f2(*n),
            CatalogId::F3(n) => make_f3(*n),
            CatalogId::Fab { n, alpha, beta } => make_filiform(*n, alpha, beta),
            _ => make_dim4(self),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Nf(n) => write!(f, "NF_{n}"),
            CatalogId::F1(n) => write!(f, "F_{n}^1"),
            CatalogId::F2(n) => write!(f, "F_{n}^2"),
            CatalogId::F3(n) => write!(f, "F_{n}^3"),
            CatalogId::Fab { n, alpha, beta } => {
                write!(f, "F_{n}({}, {})", format_rational(alpha), format_rational(beta))
            }
            CatalogId::A8(a) | CatalogId::A9(a) | CatalogId::A15(a) => {
                write!(f, "A_{}({})", self.dim4_index().expect("dim-4 id"), format_rational(a))
            }
            other => write!(f, "A_{}", other.dim4_index().expect("dim-4 id")),
        }
    }
}

/// The four-dimensional tables `A_1 … A_16`.
pub fn make_dim4(id: &CatalogId) -> Result<Algebra> {
    use CatalogId::*;
    let a = match id {
        A1 => table(4, &[
            (1, 1, &[(1, 2)]),
            (1, 2, &[(1, 3)]),
            (2, 1, &[(2, 3)]),
            (1, 3, &[(1, 4)]),
            (2, 2, &[(3, 4)]),
            (3, 1, &[(3, 4)]),
        ]),
        A2 => table(4, &[(1, 1, &[(1, 3)]), (1, 2, &[(1, 4)]), (1, 3, &[(1, 4)]), (3, 1, &[(2, 4)])]),
        A3 => table(4, &[(1, 1, &[(1, 3)]), (1, 3, &[(1, 4)]), (2, 2, &[(1, 4)]), (3, 1, &[(2, 4)])]),
        A4 => table(4, &[(1, 2, &[(1, 3)]), (1, 3, &[(1, 4)]), (2, 1, &[(-1, 3)])]),
        A5 => table(4, &[(1, 2, &[(1, 3)]), (1, 3, &[(1, 4)]), (2, 1, &[(-1, 3)]), (2, 2, &[(1, 4)])]),
        A6 => table(4, &[(1, 1, &[(1, 4)]), (1, 2, &[(1, 3)]), (2, 1, &[(-1, 3)]), (2, 2, &[(-2, 3), (1, 4)])]),
        A7 => table(4, &[(1, 2, &[(1, 3)]), (2, 1, &[(1, 4)]), (2, 2, &[(-1, 3)])]),
        A8(alpha) => {
            let mut a = table(4, &[(1, 1, &[(1, 3)]), (1, 2, &[(1, 4)]), (2, 2, &[(-1, 4)])]);
            a.set_constant(1, 0, 2, -alpha.clone());
            a
        }
        A9(alpha) => {
            let mut a = table(4, &[(1, 1, &[(1, 4)]), (2, 2, &[(1, 4)]), (3, 3, &[(1, 4)])]);
            a.set_constant(0, 1, 3, alpha.clone());
            a.set_constant(1, 0, 3, -alpha.clone());
            a
        }
        A10 => table(4, &[
            (1, 2, &[(1, 4)]),
            (1, 3, &[(1, 4)]),
            (2, 1, &[(-1, 4)]),
            (2, 2, &[(1, 4)]),
            (3, 1, &[(1, 4)]),
        ]),
        A11 => table(4, &[(1, 1, &[(1, 4)]), (1, 2, &[(1, 4)]), (2, 1, &[(-1, 4)]), (3, 3, &[(1, 4)])]),
        A12 => table(4, &[(1, 2, &[(1, 3)]), (2, 1, &[(1, 4)])]),
        A13 => table(4, &[(1, 2, &[(1, 3)]), (2, 1, &[(-1, 3)]), (2, 2, &[(1, 4)])]),
        A14 => table(4, &[(2, 1, &[(1, 4)]), (2, 2, &[(1, 3)])]),
        A15(alpha) => {
            if alpha.is_one() {
                return Err(Error::InvalidParameter("A_15 is undefined at alpha = 1".into()));
            }
            let mut a = table(4, &[(1, 2, &[(1, 4)]), (2, 2, &[(1, 3)])]);
            let one = Rational::one();
            a.set_constant(1, 0, 3, (&one + alpha) / (&one - alpha));
            a
        }
        A16 => table(4, &[(1, 2, &[(1, 4)]), (2, 1, &[(-1, 4)]), (3, 3, &[(1, 4)])]),
        other => return Err(Error::InvalidParameter(format!("{other} is not a dimension-4 catalog algebra"))),
    };
    Ok(a)
}

/// Every dimension-4 id, with the families sampled at the given parameter.
pub fn dim4_catalog(alpha: &Rational) -> Vec<CatalogId> {
    (1..=16u8)
        .map(|k| {
            let param = matches!(k, 8 | 9 | 15).then(|| alpha.clone());
            CatalogId::dim4(k, param).expect("valid dimension-4 index")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn nf4_table() {
        let a = make_nf(4).unwrap();
        let expect = table(4, &[
            (1, 1, &[(1, 2)]),
            (1, 2, &[(1, 3)]),
            (2, 1, &[(2, 3)]),
            (1, 3, &[(1, 4)]),
            (2, 2, &[(3, 4)]),
            (3, 1, &[(3, 4)]),
        ]);
        assert_eq!(a, expect);
        assert!(make_nf(1).unwrap().is_abelian());
        assert!(make_nf(0).is_err());
    }

    #[test]
    fn nf7_coefficient() {
        assert_eq!(make_nf(7).unwrap().constant(2, 1, 4), &int(6));
    }

    #[test]
    fn filiform_extras() {
        let f2 = make_f2(5).unwrap();
        assert_eq!(f2.constant(4, 0, 3), &int(1));
        let f3 = make_f3(6).unwrap();
        assert_eq!(f3.constant(5, 5, 4), &int(1));
        for j in 0..5 {
            assert!(f3.basis_product(5, j).iter().all(Zero::is_zero));
            assert!(f3.basis_product(j, 5).iter().all(Zero::is_zero));
        }
        assert_eq!(make_filiform(5, &int(0), &int(0)).unwrap(), make_f1(5).unwrap());
        assert_eq!(make_filiform(5, &int(1), &int(0)).unwrap(), f2);
        assert_eq!(make_f1(4), Err(Error::DimensionTooSmall { dim: 4, min: 5 }));
    }

    #[test]
    fn dim4_parameters() {
        assert_eq!(make_dim4(&CatalogId::A1).unwrap(), make_nf(4).unwrap());
        let a15 = make_dim4(&CatalogId::A15(int(0))).unwrap();
        assert_eq!(a15.constant(1, 0, 3), &int(1));
        let a15 = make_dim4(&CatalogId::A15(rat(1, 2))).unwrap();
        assert_eq!(a15.constant(1, 0, 3), &int(3));
        assert!(matches!(make_dim4(&CatalogId::A15(int(1))), Err(Error::InvalidParameter(_))));
        let a8 = make_dim4(&CatalogId::A8(int(2))).unwrap();
        assert_eq!(a8.constant(1, 0, 2), &int(-2));
        assert!(CatalogId::dim4(3, Some(int(1))).is_err());
        assert!(CatalogId::dim4(9, None).is_err());
        assert!(CatalogId::dim4(17, None).is_err());
        assert!(make_dim4(&CatalogId::Nf(4)).is_err());
    }

    #[test]
    fn display_names() {
        assert_eq!(CatalogId::A8(rat(1, 2)).to_string(), "A_8(1/2)");
        assert_eq!(CatalogId::A12.to_string(), "A_12");
        assert_eq!(CatalogId::F2(6).to_string(), "F_6^2");
    }
}
