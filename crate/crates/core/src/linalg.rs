//! Dense exact linear algebra: reduced row echelon form, subspaces, inverses.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row-major dense matrix.
pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

/// Canonical reduced row echelon form. Zero rows are dropped, so the rank is
/// the number of rows returned.
pub fn row_reduce<F: Field>(m: &[Vec<F>]) -> (usize, Matrix<F>) {
    let mut rows: Matrix<F> = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    (rank, rows)
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    row_reduce(m).0
}

/// Pivot column of each row of a matrix already in reduced row echelon form.
pub fn pivots<F: Field>(rref: &[Vec<F>]) -> Vec<usize> {
    rref.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![F::zero(); cols];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o = o.clone() + x.clone() * y.clone();
                    }
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(v: &[F], m: &[Vec<F>]) -> Vec<F> {
    mat_mul(&[v.to_vec()], m).pop().unwrap_or_default()
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Matrix<F>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
    }
    let augmented: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (rank, rref) = row_reduce(&augmented);
    if rank < n || pivots(&rref).iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return Err(Error::SingularMatrix);
    }
    Ok(rref.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det = det * a[col][col].clone();
        let inv = a[col][col].inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
        }
    }
    det
}

/// Basis of `{x : x · M = 0}` for an `r × c` matrix `M`, as rows of length `r`.
pub fn left_kernel<F: Field>(m: &[Vec<F>], rows: usize) -> Matrix<F> {
    // x·M = 0  ⇔  Mᵀ xᵀ = 0
    let cols = m.first().map_or(0, Vec::len);
    let transposed: Matrix<F> = (0..cols).map(|c| (0..rows).map(|r| m[r][c].clone()).collect()).collect();
    right_kernel(&transposed, rows)
}

/// Basis of `{x : M xᵀ = 0}` where `M` has `width` columns.
pub fn right_kernel<F: Field>(m: &[Vec<F>], width: usize) -> Matrix<F> {
    let (_, rref) = row_reduce(m);
    let piv = pivots(&rref);
    let free: Vec<usize> = (0..width).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); width];
            v[f] = F::one();
            for (row, &p) in rref.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A linear subspace of `F^n`, stored as its canonical reduced row echelon basis.
///
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient_dim: usize,
    rows: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        let (_, rows) = row_reduce(vectors);
        Subspace { ambient_dim, rows }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: identity(ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        rank(&m) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut m = self.rows.clone();
        m.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient_dim, &m)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        // Solve a·U = b·W; the intersection is spanned by the a·U parts.
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().map(|r| r.iter().map(|x| -x.clone()).collect()));
        let kernel = left_kernel(&stacked, stacked.len());
        let vectors: Matrix<F> = kernel
            .iter()
            .map(|k| vec_mul(&k[..self.dim()], &self.rows))
            .collect();
        Subspace::span(self.ambient_dim, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id: Matrix<Rational> = identity(4);
        assert_eq!(row_reduce(&id), (4, id.clone()));
        let z: Matrix<Rational> = zeros(3, 4);
        assert_eq!(row_reduce(&z).0, 0);
    }

    #[test]
    fn forced_elimination() {
        let (r, rref) = row_reduce(&m(&[&[0, 0, 1, 1], &[0, 0, 0, 1]]));
        assert_eq!(r, 2);
        assert_eq!(rref, m(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(determinant(&a), int(1));
        assert_eq!(inverse(&m(&[&[1, 2], &[2, 4]])), Err(Error::SingularMatrix));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        let b = vec![vec![rat(1, 2), int(3)], vec![int(0), rat(-2, 3)]];
        assert_eq!(determinant(&b), rat(-1, 3));
    }

    #[test]
    fn kernels() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = right_kernel(&a, 3);
        assert_eq!(k, m(&[&[-1, 1, 0]]));
        let lk = left_kernel(&m(&[&[1, 0], &[1, 0], &[0, 1]]), 3);
        assert_eq!(lk.len(), 1);
        assert_eq!(vec_mul(&lk[0], &m(&[&[1, 0], &[1, 0], &[0, 1]])), vec![int(0), int(0)]);
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::span(3, &m(&[&[1, 0, 0], &[0, 1, 0]]));
        let w = Subspace::span(3, &m(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(u.intersection(&w), Subspace::span(3, &m(&[&[0, 1, 0]])));
        assert_eq!(u.sum(&w), Subspace::full(3));
        assert!(u.contains(&[int(2), int(-1), int(0)]));
        assert!(!u.contains(&[int(0), int(0), int(1)]));
        assert!(Subspace::<Rational>::full(3).contains_subspace(&u));
        assert!(u.intersection(&Subspace::zero(3)).is_zero());
    }
}
