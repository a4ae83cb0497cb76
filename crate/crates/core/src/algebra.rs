//! The algebra value type: a dense structure-constant tensor.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{format_rational, Field, Quadratic, Rational};

/// A finite-dimensional algebra given by structure constants
/// `e_i ∘ e_j = Σ_k c[i][j][k] e_k` (indices are 0-based in this API).
///
/// Nothing about the product is assumed; use [`Algebra::zinbiel_check`].
/// Equality compares the tensors only, not the labels.
#[derive(Clone, Debug)]
pub struct Algebra<F = Rational> {
    dim: usize,
    constants: Vec<F>,
    labels: Vec<String>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl<F: Field> Eq for Algebra<F> {}

impl<F: Field> Algebra<F> {
    /// The algebra with all products zero.
    pub fn abelian(dim: usize) -> Self {
        Algebra {
            dim,
            constants: vec![F::zero(); dim * dim * dim],
            labels: default_labels(dim),
        }
    }

    /// Builds an algebra from `(i, j, [(coefficient, k)])` entries, 0-based.
    /// Repeated `(i, j, k)` entries accumulate.
    pub fn from_products<I>(dim: usize, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(F, usize)>)>,
    {
        let mut a = Self::abelian(dim);
        for (i, j, terms) in products {
            for (c, k) in terms {
                let bad = [i, j, k].into_iter().find(|&x| x >= dim);
                if let Some(found) = bad {
                    return Err(Error::DimensionMismatch { expected: dim, found: found + 1 });
                }
                let slot = &mut a.constants[(i * dim + j) * dim + k];
                *slot = slot.clone() + c;
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: F) {
        let n = self.dim;
        self.constants[(i * n + j) * n + k] = value;
    }

    /// Coordinates of `e_i ∘ e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    /// Nonzero products as `(i, j, coordinates)`, in index order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[F])> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.basis_product(i, j)))
            .filter(|(_, _, v)| v.iter().any(|x| !x.is_zero()))
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.clone() * yj.clone();
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o = o.clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Scans `(e_i∘e_j)∘e_k − e_i∘(e_j∘e_k) − e_i∘(e_k∘e_j)` over all basis
    /// triples. By trilinearity a clean scan certifies the identity for all elements.
    pub fn zinbiel_check(&self) -> ZinbielReport<F> {
        let n = self.dim;
        let unit = |i: usize| -> Vec<F> {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        };
        let basis: Vec<Vec<F>> = (0..n).map(unit).collect();
        // Over Q the scan runs on the integer tensor d·c; only the triples it
        // flags get an exact residual in F.
        let suspects: Vec<(usize, usize, usize)> = match F::common_denominator(&self.constants) {
            Some((ints, _)) => integer_violations(n, &ints),
            None => (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect(),
        };
        let mut violations = Vec::new();
        for (i, j, k) in suspects {
            let lhs = self.mul_unchecked(self.basis_product(i, j), &basis[k]);
            let jk = self.basis_product(j, k);
            let kj = self.basis_product(k, j);
            let sym: Vec<F> = jk.iter().zip(kj).map(|(a, b)| a.clone() + b.clone()).collect();
            let rhs = self.mul_unchecked(&basis[i], &sym);
            let residual: Vec<F> = lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect();
            if residual.iter().any(|x| !x.is_zero()) {
                violations.push(Violation { i, j, k, residual });
            }
        }
        ZinbielReport { holds: violations.is_empty(), violations }
    }

    /// The same product written in the basis whose vectors are the rows of `change`.
    pub fn transport(&self, change: &BasisChange<F>) -> Result<Self> {
        let n = self.dim;
        if change.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: change.dim() });
        }
        let p = change.matrix();
        let inv = change.inverse_matrix();
        let mut out = Self::abelian(n);
        out.labels = self.labels.clone();
        for i in 0..n {
            for j in 0..n {
                let old = self.mul_unchecked(&p[i], &p[j]);
                if old.iter().all(Zero::is_zero) {
                    continue;
                }
                let new = linalg::vec_mul(&old, &inv);
                let start = (i * n + j) * n;
                out.constants[start..start + n].clone_from_slice(&new);
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum; `other`'s basis follows `self`'s and cross products vanish.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::abelian(n + m);
        for (i, j, v) in self.nonzero_products() {
            for (k, c) in v.iter().enumerate() {
                out.set_constant(i, j, k, c.clone());
            }
        }
        for (i, j, v) in other.nonzero_products() {
            for (k, c) in v.iter().enumerate() {
                out.set_constant(n + i, n + j, n + k, c.clone());
            }
        }
        out
    }

    /// Relabels basis vectors: new `e_{perm[i]}` is old `e_i`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation of the basis".into()));
        }
        let mut out = Self::abelian(n);
        for (i, j, v) in self.nonzero_products() {
            for (k, c) in v.iter().enumerate() {
                out.set_constant(perm[i], perm[j], perm[k], c.clone());
            }
        }
        Ok(out)
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> Algebra<G> {
        Algebra {
            dim: self.dim,
            constants: self.constants.iter().map(f).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn constants(&self) -> &[F] {
        &self.constants
    }
}

impl Algebra<Rational> {
    pub fn to_quadratic(&self) -> Algebra<Quadratic> {
        self.map_scalars(|q| Quadratic::from_rational(q.clone()))
    }
}

impl Algebra<Quadratic> {
    /// Drops to rational constants, failing on any entry with an irrational part.
    pub fn to_rational(&self) -> Result<Algebra<Rational>> {
        let n = self.dim;
        let mut constants = Vec::with_capacity(self.constants.len());
        for (idx, c) in self.constants.iter().enumerate() {
            match c.to_rational() {
                Some(q) => constants.push(q),
                None => {
                    let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
                    return Err(Error::ExtensionScalarNotSerializable {
                        entry: format!("c[{}][{}][{}] = {}", i + 1, j + 1, k + 1, c),
                    });
                }
            }
        }
        Ok(Algebra { dim: n, constants, labels: self.labels.clone() })
    }
}

impl fmt::Display for Algebra<Rational> {
    /// Multiplication table, one nonzero product per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, j, v) in self.nonzero_products() {
            any = true;
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    if c.is_one() {
                        self.labels[k].clone()
                    } else {
                        format!("{}{}", format_rational(c), self.labels[k])
                    }
                })
                .collect();
            writeln!(f, "{} ∘ {} = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
        }
        if !any {
            writeln!(f, "(all products zero)")?;
        }
        Ok(())
    }
}

/// Triples `(i, j, k)` whose Zinbiel residual is nonzero for the integer
/// tensor `c` (flattened as `c[(i·n + j)·n + k]`). Uses `i128` while it
/// cannot overflow and big integers otherwise.
fn integer_violations(n: usize, c: &[BigInt]) -> Vec<(usize, usize, usize)> {
    let small: Option<Vec<i128>> = c.iter().map(|x| x.to_i128().filter(|v| v.unsigned_abs() < 1 << 40)).collect();
    match small {
        // entries below 2^40 keep each sum of n products below n·2^80, far inside i128
        Some(c) => scan(n, &c),
        None => scan(n, c),
    }
}

fn scan<T>(n: usize, c: &[T]) -> Vec<(usize, usize, usize)>
where
    T: Clone + Zero + PartialEq,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    let at = |i: usize, j: usize| &c[(i * n + j) * n..(i * n + j + 1) * n];
    let mut out = Vec::new();
    let mut lhs = vec![T::zero(); n];
    let mut rhs = vec![T::zero(); n];
    let mut sym = vec![T::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let ij = at(i, j);
            for k in 0..n {
                lhs.iter_mut().for_each(|x| *x = T::zero());
                rhs.iter_mut().for_each(|x| *x = T::zero());
                for (a, cij) in ij.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (o, v) in lhs.iter_mut().zip(at(a, k)) {
                        *o = &*o + &(cij * v);
                    }
                }
                for (s, (x, y)) in sym.iter_mut().zip(at(j, k).iter().zip(at(k, j))) {
                    *s = x + y;
                }
                for (b, sb) in sym.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (o, v) in rhs.iter_mut().zip(at(i, b)) {
                        *o = &*o + &(sb * v);
                    }
                }
                if lhs != rhs {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// One failing basis triple (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<F> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZinbielReport<F> {
    pub holds: bool,
    pub violations: Vec<Violation<F>>,
}

/// An invertible change of basis. Row `i` holds the old-basis coordinates of
/// the new basis vector `e'_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange<F = Rational> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

impl<F: Field> BasisChange<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        let inverse = linalg::inverse(&matrix)?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange { matrix: linalg::identity(n), inverse: linalg::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        BasisChange { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// First apply `self`, then `then` (expressed in `self`'s new basis).
    pub fn compose(&self, then: &Self) -> Self {
        BasisChange {
            matrix: linalg::mat_mul(&then.matrix, &self.matrix),
            inverse: linalg::mat_mul(&self.inverse, &then.inverse),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity::<F>(self.dim())
    }
}

impl BasisChange<Rational> {
    pub fn to_quadratic(&self) -> BasisChange<Quadratic> {
        let lift = |m: &Matrix<Rational>| -> Matrix<Quadratic> {
            m.iter().map(|r| r.iter().map(|q| Quadratic::from_rational(q.clone())).collect()).collect()
        };
        BasisChange { matrix: lift(&self.matrix), inverse: lift(&self.inverse) }
    }
}

/// `transport(a, change) == b`, entrywise.
pub fn verify_isomorphism<F: Field>(a: &Algebra<F>, b: &Algebra<F>, change: &BasisChange<F>) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(&a.transport(change)? == b)
}
