//! Exhaustive search for a direct-sum splitting over `F_p`.

use super::modular::{
    for_each_subspace, gaussian_binomial, is_zero_vec, left_kernel_mod, rank_mod, reduce_mod_p, rref_mod, vec_mul_mod,
    ModMatrix, ModSubspace, ModularAlgebra,
};
use super::search::SearchConfig;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

fn closed(a: &ModularAlgebra, rows: &ModMatrix) -> bool {
    let p = a.prime();
    for x in rows {
        for y in rows {
            let v = a.mul(x, y);
            if is_zero_vec(&v) {
                continue;
            }
            let mut trial = rows.clone();
            trial.push(v);
            if rank_mod(&trial, p) > rows.len() {
                return false;
            }
        }
    }
    true
}

/// `{x : I ∘ x = 0 and x ∘ I = 0}` for `I` spanned by `rows`.
fn centralizer(a: &ModularAlgebra, rows: &ModMatrix) -> ModMatrix {
    let n = a.dim();
    let unit = |k: usize| {
        let mut v = vec![0u64; n];
        v[k] = 1;
        v
    };
    // row k: image of e_k under x ↦ (u∘x, x∘u) over u in rows, flattened
    let map: ModMatrix = (0..n)
        .map(|k| {
            let e = unit(k);
            rows.iter().flat_map(|u| a.mul(u, &e).into_iter().chain(a.mul(&e, u))).collect()
        })
        .collect();
    if rows.is_empty() {
        return (0..n).map(unit).collect();
    }
    rref_mod(&left_kernel_mod(&map, n, a.prime()), a.prime()).1
}

/// Checks that `(i, j)` is a splitting of `a` over their prime field.
pub fn is_splitting(a: &Algebra, i: &ModSubspace, j: &ModSubspace) -> Result<bool> {
    let m = reduce_mod_p(a, i.p)?;
    let n = m.dim();
    let mut both = i.rows.clone();
    both.extend(j.rows.iter().cloned());
    let cross_zero = i.rows.iter().all(|x| j.rows.iter().all(|y| is_zero_vec(&m.mul(x, y)) && is_zero_vec(&m.mul(y, x))));
    Ok(i.dim() > 0
        && j.dim() > 0
        && i.p == j.p
        && rank_mod(&both, i.p) == n
        && cross_zero
        && closed(&m, &i.rows)
        && closed(&m, &j.rows))
}

/// Scans pairs of complementary nonzero subspaces `I ⊕ J = F_p^n` that are
/// both subalgebras with `I ∘ J = J ∘ I = 0`. Returns the first pair found
/// (with `dim I ≤ dim J`), or `None` if the algebra does not split over `F_p`.
pub fn split_scan_fp(a: &Algebra, p: u64) -> Result<Option<(ModSubspace, ModSubspace)>> {
    split_scan_fp_with(a, p, &SearchConfig::default())
}

pub fn split_scan_fp_with(a: &Algebra, p: u64, config: &SearchConfig) -> Result<Option<(ModSubspace, ModSubspace)>> {
    let m = reduce_mod_p(a, p)?;
    let n = m.dim();
    let estimate: f64 = (1..n)
        .map(|k| gaussian_binomial(n, k, p) * (p as f64).powi((k * (n - k)) as i32))
        .sum();
    if estimate > config.node_cap {
        return Err(Error::SearchSpaceTooLarge { estimate, cap: config.node_cap });
    }
    let mut found = None;
    for k in 1..=n / 2 {
        let done = for_each_subspace(n, k, p, &mut |i_rows| {
            if !closed(&m, i_rows) {
                return false;
            }
            let cent = centralizer(&m, i_rows);
            if cent.len() < n - k {
                return false;
            }
            for_each_subspace(cent.len(), n - k, p, &mut |coords| {
                let j_rows: ModMatrix = coords.iter().map(|c| vec_mul_mod(c, &cent, p)).collect();
                let mut both = i_rows.clone();
                both.extend(j_rows.iter().cloned());
                if rank_mod(&both, p) < n || !closed(&m, &j_rows) {
                    return false;
                }
                let canon = |rows: &ModMatrix| ModSubspace { p, ambient_dim: n, rows: rref_mod(rows, p).1 };
                found = Some((canon(i_rows), canon(&j_rows)));
                true
            })
        });
        if done {
            break;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_f1, make_nf};

    #[test]
    fn one_dimensional_never_splits() {
        assert_eq!(split_scan_fp(&Algebra::abelian(1), 2).unwrap(), None);
        assert_eq!(split_scan_fp(&make_nf(1).unwrap(), 3).unwrap(), None);
    }

    #[test]
    fn filiform_one_splits() {
        let f1 = make_f1(5).unwrap();
        let (i, j) = split_scan_fp(&f1, 2).unwrap().unwrap();
        assert!(is_splitting(&f1, &i, &j).unwrap());
        assert_eq!((i.dim(), j.dim()), (1, 4));
        // the obvious splitting is recognised too
        let e5 = ModSubspace { p: 2, ambient_dim: 5, rows: vec![vec![0, 0, 0, 0, 1]] };
        let rest = ModSubspace { p: 2, ambient_dim: 5, rows: (0..4).map(|k| (0..5).map(|c| u64::from(c == k)).collect()).collect() };
        assert!(is_splitting(&f1, &e5, &rest).unwrap());
        assert!(!is_splitting(&f1, &rest, &rest).unwrap());
    }

    #[test]
    fn abelian_plane_splits() {
        let (i, j) = split_scan_fp(&Algebra::abelian(2), 3).unwrap().unwrap();
        assert_eq!((i.dim(), j.dim()), (1, 1));
    }
}
