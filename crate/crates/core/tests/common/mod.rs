//! Helpers shared by the integration tests: independent oracles and seeded
//! random inputs. Nothing here calls into the library's own linear algebra.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use zinbiel::catalog::{dim4_catalog, family_samples, CatalogId};
use zinbiel::scalar::{int, rat, Rational};
use zinbiel::BasisChange;

/// Pascal's triangle by repeated addition, rows `0..=rows`.
pub fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=rows {
        let prev = &t[m - 1];
        let mut row = vec![BigInt::one(); m + 1];
        for k in 1..m {
            row[k] = &prev[k - 1] + &prev[k];
        }
        t.push(row);
    }
    t
}

/// Rank by Bareiss fraction-free elimination on an integer scaling of the rows.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for c in col + 1..width {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}

/// Every dimension-4 algebra at the shipped parameter samples, plus the
/// nul-filiform and filiform constructors of dimension 4 to 6.
pub fn catalog_ids() -> Vec<CatalogId> {
    let mut ids = Vec::new();
    for (_, alpha) in family_samples() {
        for id in dim4_catalog(&alpha) {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    for n in 4..=6 {
        ids.push(CatalogId::Nf(n));
    }
    for n in 5..=6 {
        ids.extend([CatalogId::F1(n), CatalogId::F2(n), CatalogId::F3(n)]);
    }
    ids
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = if rng.gen_bool(0.25) { rng.gen_range(2i64..=3) } else { 1 };
    rat(num, den)
}

/// A random invertible `n × n` rational matrix with small entries.
pub fn random_change(rng: &mut ChaCha8Rng, n: usize) -> BasisChange {
    loop {
        let m: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect();
        if oracle_rank(&m) == n {
            return BasisChange::new(m).expect("full rank checked by the oracle");
        }
    }
}

/// A random nonzero rational with numerator and denominator below `bound`.
pub fn random_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(sign * rng.gen_range(1..bound), rng.gen_range(1..bound))
}

pub fn zero() -> Rational {
    int(0)
}
