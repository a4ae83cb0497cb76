//! Exhaustive isomorphism search over `F_p`.
//!
//! A nilpotent algebra is generated by any complement of `A²`, so an
//! isomorphism is fixed by the images of those generators. We build a basis
//! of `A` out of products of generators ("words"), then backtrack over
//! generator images, evaluating words in `B` and checking every structure
//! relation between words as soon as the generators it involves are placed.

use rayon::prelude::*;

use super::modular::{inverse_mod, rank_mod, rref_mod, unit, vec_mul_mod, ModMatrix, ModularAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest allowed estimate of visited nodes.
    pub node_cap: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_cap: 1e8 }
    }
}

#[derive(Clone, Copy, Debug)]
enum Word {
    Generator,
    Product(usize, usize),
}

/// `left ∘ right = Σ coeffs[w] · word_w`, checkable once `level` generators are placed.
struct Relation {
    left: usize,
    right: usize,
    coeffs: Vec<u64>,
    level: usize,
}

struct WordBasis {
    words: Vec<Word>,
    /// Highest generator index a word involves.
    level: Vec<usize>,
    values: ModMatrix,
    relations_by_level: Vec<Vec<Relation>>,
    generators: usize,
}

fn word_basis(a: &ModularAlgebra) -> Result<WordBasis> {
    let (n, p) = (a.dim(), a.prime());
    let powers = a.power_subspaces();
    let square = powers.get(1).cloned().unwrap_or_default();
    if powers.last().is_some_and(|s| !s.is_empty()) {
        return Err(Error::NotNilpotent { stable_dim: powers.last().map_or(0, Vec::len) });
    }
    let mut span = square.clone();
    let mut words = Vec::new();
    let mut values: ModMatrix = Vec::new();
    let mut level = Vec::new();
    for k in 0..n {
        let mut trial = span.clone();
        trial.push(unit(n, k));
        if rank_mod(&trial, p) > span.len() {
            span = trial;
            level.push(words.len());
            words.push(Word::Generator);
            values.push(unit(n, k));
        }
    }
    let generators = words.len();
    let mut grew = true;
    while grew && values.len() < n {
        grew = false;
        let count = values.len();
        'outer: for l in 0..count {
            for r in 0..count {
                let v = a.mul(&values[l], &values[r]);
                let mut trial = values.clone();
                trial.push(v.clone());
                if rank_mod(&trial, p) > values.len() {
                    level.push(level[l].max(level[r]));
                    words.push(Word::Product(l, r));
                    values.push(v);
                    grew = true;
                    if values.len() == n {
                        break 'outer;
                    }
                }
            }
        }
    }
    if values.len() < n {
        return Err(Error::NotNilpotent { stable_dim: n - values.len() });
    }
    let inv = inverse_mod(&values, p).expect("word values form a basis");
    let mut relations_by_level: Vec<Vec<Relation>> = (0..generators.max(1)).map(|_| Vec::new()).collect();
    for l in 0..n {
        for r in 0..n {
            let coeffs = vec_mul_mod(&a.mul(&values[l], &values[r]), &inv, p);
            let lvl = coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(w, _)| level[w])
                .chain([level[l], level[r]])
                .max()
                .expect("nonempty");
            relations_by_level[lvl].push(Relation { left: l, right: r, coeffs, level: lvl });
        }
    }
    Ok(WordBasis { words, level, values, relations_by_level, generators })
}

struct Searcher<'a> {
    basis: &'a WordBasis,
    target: &'a ModularAlgebra,
    candidates: &'a [Vec<u64>],
}

impl Searcher<'_> {
    /// Places the image of generator `g` and evaluates the words it completes.
    /// Returns false if injectivity or a relation fails.
    fn place(&self, g: usize, image: &[u64], images: &mut ModMatrix) -> bool {
        let p = self.target.prime();
        for (w, word) in self.basis.words.iter().enumerate() {
            if self.basis.level[w] != g {
                continue;
            }
            let v = match *word {
                Word::Generator => image.to_vec(),
                Word::Product(l, r) => self.target.mul(&images[l], &images[r]),
            };
            images[w] = v;
        }
        let placed: ModMatrix = (0..images.len()).filter(|&w| self.basis.level[w] <= g).map(|w| images[w].clone()).collect();
        if rank_mod(&placed, p) < placed.len() {
            return false;
        }
        self.basis.relations_by_level[g].iter().all(|rel| {
            debug_assert_eq!(rel.level, g);
            let lhs = self.target.mul(&images[rel.left], &images[rel.right]);
            let mut rhs = vec![0u64; lhs.len()];
            for (w, &c) in rel.coeffs.iter().enumerate() {
                if c != 0 {
                    for (o, &x) in rhs.iter_mut().zip(&images[w]) {
                        *o = (*o + c * x) % p;
                    }
                }
            }
            lhs == rhs
        })
    }

    fn descend(&self, g: usize, images: &mut ModMatrix) -> bool {
        if g == self.basis.generators {
            return true;
        }
        for c in self.candidates {
            if self.place(g, c, images) && self.descend(g + 1, images) {
                return true;
            }
        }
        false
    }
}

/// Nonzero vectors of `F_p^n` in lexicographic coordinate order.
fn nonzero_vectors(n: usize, p: u64) -> Vec<Vec<u64>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut m| {
            let mut v = vec![0u64; n];
            for slot in v.iter_mut().rev() {
                *slot = (m % p as usize) as u64;
                m /= p as usize;
            }
            v
        })
        .collect()
}

/// Complete search for an `F_p`-isomorphism. Returns `M` with
/// `a.transport(M) == b` (rows of `M` are coordinates in `a`), or `None` if
/// no isomorphism exists over `F_p`.
pub fn iso_search_fp(a: &ModularAlgebra, b: &ModularAlgebra) -> Result<Option<ModMatrix>> {
    iso_search_fp_with(a, b, &SearchConfig::default())
}

pub fn iso_search_fp_with(a: &ModularAlgebra, b: &ModularAlgebra, config: &SearchConfig) -> Result<Option<ModMatrix>> {
    if a.prime() != b.prime() {
        return Err(Error::InvalidParameter(format!("primes differ: {} vs {}", a.prime(), b.prime())));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let (n, p) = (a.dim(), a.prime());
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if a.power_dims() != b.power_dims() {
        return Ok(None);
    }
    let basis = word_basis(a)?;
    let estimate = ((p as f64).powi(n as i32) - 1.0).powi(basis.generators as i32);
    if estimate > config.node_cap {
        return Err(Error::SearchSpaceTooLarge { estimate, cap: config.node_cap });
    }
    let candidates = nonzero_vectors(n, p);
    let searcher = Searcher { basis: &basis, target: b, candidates: &candidates };
    let found = candidates.par_iter().find_map_first(|first| {
        let mut images = vec![Vec::new(); n];
        (searcher.place(0, first, &mut images) && searcher.descend(1, &mut images)).then_some(images)
    });
    let Some(images) = found else {
        return Ok(None);
    };
    // φ(word_w) = images[w]; rows of φ on the standard basis are W⁻¹·images
    let w_inv = inverse_mod(&basis.values, p).expect("basis");
    let phi: ModMatrix = w_inv.iter().map(|row| vec_mul_mod(row, &images, p)).collect();
    let m = inverse_mod(&phi, p).expect("search only accepts bijections");
    debug_assert_eq!(a.transport(&m).ok().as_ref(), Some(b));
    debug_assert_eq!(rref_mod(&m, p).0, n);
    Ok(Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog::{make_f1, make_f2, make_nf};
    use crate::iso::modular::reduce_mod_p;
    use crate::scalar::int;

    #[test]
    fn finds_identity_on_equal_inputs() {
        let a = reduce_mod_p(&make_nf(4).unwrap(), 2).unwrap();
        let m = iso_search_fp(&a, &a).unwrap().unwrap();
        assert_eq!(a.transport(&m).unwrap(), a);
    }

    #[test]
    fn filiform_one_and_two_differ_mod_two() {
        let f1 = reduce_mod_p(&make_f1(5).unwrap(), 2).unwrap();
        let f2 = reduce_mod_p(&make_f2(5).unwrap(), 2).unwrap();
        assert_eq!(iso_search_fp(&f1, &f2).unwrap(), None);
        assert_eq!(iso_search_fp(&f2, &f1).unwrap(), None);
    }

    #[test]
    fn finds_a_nontrivial_change() {
        let a = Algebra::from_products(2, [(0, 0, vec![(int(1), 1)])]).unwrap();
        // swap the basis
        let b = a.permute(&[1, 0]).unwrap();
        let (ma, mb) = (reduce_mod_p(&a, 3).unwrap(), reduce_mod_p(&b, 3).unwrap());
        let m = iso_search_fp(&ma, &mb).unwrap().unwrap();
        assert_eq!(ma.transport(&m).unwrap(), mb);
    }

    #[test]
    fn refuses_huge_spaces() {
        let a = reduce_mod_p(&Algebra::abelian(6), 3).unwrap();
        assert!(matches!(iso_search_fp(&a, &a), Err(Error::SearchSpaceTooLarge { .. })));
    }

    #[test]
    fn rejects_non_nilpotent() {
        let a = reduce_mod_p(&Algebra::from_products(1, [(0, 0, vec![(int(1), 0)])]).unwrap(), 2).unwrap();
        assert!(matches!(iso_search_fp(&a, &a), Err(Error::NotNilpotent { .. })));
    }
}
