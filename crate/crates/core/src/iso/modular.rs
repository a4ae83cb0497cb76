//! Algebras and linear algebra over a prime field `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

pub type ModMatrix = Vec<Vec<u64>>;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(x % p != 0);
    pow_mod(x, p - 2, p)
}

/// Residue of a rational whose denominator is a unit mod `p`.
pub fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    Some(num * inv_mod(den, p) % p)
}

/// Structure constants reduced mod a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModularAlgebra {
    p: u64,
    dim: usize,
    constants: Vec<u64>,
}

/// Entrywise reduction. Fails if some denominator is divisible by `p`.
pub fn reduce_mod_p(a: &Algebra, p: u64) -> Result<ModularAlgebra> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = a.dim();
    let mut constants = Vec::with_capacity(n * n * n);
    for (idx, c) in a.constants().iter().enumerate() {
        let r = reduce_rational(c, p).ok_or_else(|| Error::DenominatorDivisibleByP {
            p,
            entry: format!("c[{}][{}][{}] = {}", idx / (n * n) + 1, (idx / n) % n + 1, idx % n + 1, format_rational(c)),
        })?;
        constants.push(r);
    }
    Ok(ModularAlgebra { p, dim: n, constants })
}

impl ModularAlgebra {
    pub fn from_constants(p: u64, dim: usize, constants: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        Ok(ModularAlgebra { p, dim, constants: constants.into_iter().map(|c| c % p).collect() })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        let s = (i * self.dim + j) * self.dim;
        &self.constants[s..s + self.dim]
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (n, p) = (self.dim, self.p);
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = xi * yj % p;
                for (o, &c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if c != 0 {
                        *o = (*o + s * c) % p;
                    }
                }
            }
        }
        out
    }

    /// The same product in the basis given by the rows of `m` (which must be invertible).
    pub fn transport(&self, m: &ModMatrix) -> Result<ModularAlgebra> {
        let n = self.dim;
        let inv = inverse_mod(m, self.p).ok_or(Error::SingularMatrix)?;
        let mut constants = vec![0u64; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = self.mul(&m[i], &m[j]);
                let w = vec_mul_mod(&v, &inv, self.p);
                constants[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&w);
            }
        }
        Ok(ModularAlgebra { p: self.p, dim: n, constants })
    }

    /// Dimensions of the power sequence `A^{k+1} = A ∘ A^k` over `F_p`.
    pub fn power_dims(&self) -> Vec<usize> {
        self.power_subspaces().iter().map(Vec::len).collect()
    }

    pub(crate) fn power_subspaces(&self) -> Vec<ModMatrix> {
        let n = self.dim;
        let mut current = identity_mod(n);
        let mut out = vec![current.clone()];
        while !current.is_empty() && out.len() <= n {
            let mut rows = Vec::new();
            for i in 0..n {
                let e = unit(n, i);
                for v in &current {
                    rows.push(self.mul(&e, v));
                }
            }
            current = rref_mod(&rows, self.p).1;
            out.push(current.clone());
        }
        out
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn identity_mod(n: usize) -> ModMatrix {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Reduced row echelon form mod `p`, zero rows dropped.
pub fn rref_mod(m: &[Vec<u64>], p: u64) -> (usize, ModMatrix) {
    let mut rows: ModMatrix = m.iter().filter(|r| r.iter().any(|&x| x % p != 0)).map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = p - row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + f * y) % p;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    (rank, rows)
}

pub fn rank_mod(m: &[Vec<u64>], p: u64) -> usize {
    rref_mod(m, p).0
}

pub fn vec_mul_mod(v: &[u64], m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0u64; cols];
    for (&x, row) in v.iter().zip(m) {
        if x == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(row) {
            *o = (*o + x * y) % p;
        }
    }
    out
}

pub fn inverse_mod(m: &[Vec<u64>], p: u64) -> Option<ModMatrix> {
    let n = m.len();
    let aug: ModMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit(n, i));
            row
        })
        .collect();
    let (rank, rref) = rref_mod(&aug, p);
    if rank < n || (0..n).any(|i| rref[i][i] != 1) {
        return None;
    }
    Some(rref.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : x · M = 0}` for an `rows × c` matrix.
pub fn left_kernel_mod(m: &[Vec<u64>], rows: usize, p: u64) -> ModMatrix {
    let cols = m.first().map_or(0, Vec::len);
    let t: ModMatrix = (0..cols).map(|c| (0..rows).map(|r| m[r][c]).collect()).collect();
    let (_, rref) = rref_mod(&t, p);
    let piv: Vec<usize> = rref.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero")).collect();
    (0..rows)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![0u64; rows];
            v[f] = 1;
            for (row, &pc) in rref.iter().zip(&piv) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// A subspace of `F_p^n` in canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModSubspace {
    pub p: u64,
    pub ambient_dim: usize,
    pub rows: ModMatrix,
}

impl ModSubspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Calls `f` on every `k`-dimensional subspace of `F_p^m` (as rref rows),
/// in a fixed order, stopping early if `f` returns `true`.
pub fn for_each_subspace(m: usize, k: usize, p: u64, f: &mut dyn FnMut(&ModMatrix) -> bool) -> bool {
    if k > m {
        return false;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: row r, column c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| (pivots[r] + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; m]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = d;
            }
            if f(&rows) {
                return true;
            }
            // odometer, last slot fastest
            let mut exhausted = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    exhausted = false;
                    break;
                }
                *d = 0;
            }
            if exhausted {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pivots[i] < m - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of `k`-dimensional subspaces of `F_p^m` (Gaussian binomial), as a float.
pub fn gaussian_binomial(m: usize, k: usize, p: u64) -> f64 {
    if k > m {
        return 0.0;
    }
    let q = p as f64;
    (0..k).map(|i| (q.powi((m - i) as i32) - 1.0) / (q.powi((i + 1) as i32) - 1.0)).product()
}

/// `true` if every residue is zero.
pub fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(Zero::is_zero)
}
