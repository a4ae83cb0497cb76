//! Nilpotency analysis: the power sequence `A¹ = A, A^{k+1} = A ∘ A^k`,
//! nilindex, shape, annihilators, fingerprints and the associated graded algebra.

use serde::Serialize;

use crate::algebra::{Algebra, BasisChange};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace};
use crate::scalar::Field;

/// `[A¹, A², …]`, ending at the first zero power or after `dim + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<F> {
    pub subspaces: Vec<Subspace<F>>,
    pub dims: Vec<usize>,
}

impl<F: Field> PowerSeries<F> {
    /// `dim A^i` for `i ≥ 1`. Past the end of the list the sequence is constant.
    pub fn dim_at(&self, i: usize) -> usize {
        assert!(i >= 1, "powers are indexed from 1");
        *self.dims.get(i - 1).unwrap_or_else(|| self.dims.last().expect("series is never empty"))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.dims.last() == Some(&0)
    }
}

pub fn power_series<F: Field>(a: &Algebra<F>) -> PowerSeries<F> {
    let n = a.dim();
    let mut current = Subspace::<F>::full(n);
    let mut subspaces = vec![current.clone()];
    while !current.is_zero() && subspaces.len() <= n {
        let mut products = Vec::new();
        for i in 0..n {
            for v in current.basis() {
                let mut row = vec![F::zero(); n];
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    for (r, c) in row.iter_mut().zip(a.basis_product(i, j)) {
                        if !c.is_zero() {
                            *r = r.clone() + vj.clone() * c.clone();
                        }
                    }
                }
                products.push(row);
            }
        }
        current = Subspace::span(n, &products);
        subspaces.push(current.clone());
    }
    let dims = subspaces.iter().map(Subspace::dim).collect();
    PowerSeries { subspaces, dims }
}

/// Least `s` with `A^s = 0`.
pub fn nilindex<F: Field>(a: &Algebra<F>) -> Result<usize> {
    let series = power_series(a);
    if series.is_nilpotent() {
        Ok(series.dims.len())
    } else {
        Err(Error::NotNilpotent { stable_dim: *series.dims.last().expect("nonempty") })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    NulFiliform,
    Filiform,
    Other,
}

pub fn classify_shape<F: Field>(a: &Algebra<F>) -> Shape {
    let n = a.dim();
    let series = power_series(a);
    if (1..=n + 1).all(|i| series.dim_at(i) == n + 1 - i) {
        Shape::NulFiliform
    } else if (2..=n).all(|i| series.dim_at(i) == n - i) {
        Shape::Filiform
    } else {
        Shape::Other
    }
}

/// `(dim A², dim A³, dim A⁴)`.
pub fn signature<F: Field>(a: &Algebra<F>) -> (usize, usize, usize) {
    let s = power_series(a);
    (s.dim_at(2), s.dim_at(3), s.dim_at(4))
}

/// `dim A − dim A²`, the size of a minimal generating set of a nilpotent algebra.
pub fn generator_count<F: Field>(a: &Algebra<F>) -> Result<usize> {
    let s = power_series(a);
    if !s.is_nilpotent() {
        return Err(Error::NotNilpotent { stable_dim: *s.dims.last().expect("nonempty") });
    }
    Ok(a.dim() - s.dim_at(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `{x : x ∘ A = 0}`
    Left,
    /// `{x : A ∘ x = 0}`
    Right,
    TwoSided,
}

pub fn annihilator<F: Field>(a: &Algebra<F>, side: Side) -> Subspace<F> {
    let n = a.dim();
    // Row i of the map's matrix is the image of e_i, flattened over the other factor.
    let map = |left: bool| -> Matrix<F> {
        (0..n)
            .map(|i| {
                (0..n)
                    .flat_map(|j| if left { a.basis_product(i, j) } else { a.basis_product(j, i) }.to_vec())
                    .collect()
            })
            .collect()
    };
    let kernel = |left: bool| {
        let m = map(left);
        if n == 0 {
            return Subspace::zero(0);
        }
        Subspace::span(n, &linalg::left_kernel(&m, n))
    };
    match side {
        Side::Left => kernel(true),
        Side::Right => kernel(false),
        Side::TwoSided => kernel(true).intersection(&kernel(false)),
    }
}

/// Rank-based invariants of an algebra. Each entry is the rank of a matrix
/// defined from the structure constants alone, so the whole record is
/// unchanged by base change and by extending the scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub left_ann: usize,
    pub right_ann: usize,
    pub two_sided_ann: usize,
    pub sym_rank: usize,
    pub antisym_rank: usize,
    pub generators: usize,
}

impl Fingerprint {
    /// Name of the first component that differs, if any.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        let pairs: [(&'static str, bool); 8] = [
            ("dim", self.dim == other.dim),
            ("power_dims", self.power_dims == other.power_dims),
            ("left_ann", self.left_ann == other.left_ann),
            ("right_ann", self.right_ann == other.right_ann),
            ("two_sided_ann", self.two_sided_ann == other.two_sided_ann),
            ("sym_rank", self.sym_rank == other.sym_rank),
            ("antisym_rank", self.antisym_rank == other.antisym_rank),
            ("generators", self.generators == other.generators),
        ];
        pairs.into_iter().find(|(_, same)| !same).map(|(name, _)| name)
    }

    /// Whether the named component differs between the two records.
    pub fn component_differs(&self, other: &Fingerprint, component: &str) -> bool {
        match component {
            "dim" => self.dim != other.dim,
            "power_dims" => self.power_dims != other.power_dims,
            "left_ann" => self.left_ann != other.left_ann,
            "right_ann" => self.right_ann != other.right_ann,
            "two_sided_ann" => self.two_sided_ann != other.two_sided_ann,
            "sym_rank" => self.sym_rank != other.sym_rank,
            "antisym_rank" => self.antisym_rank != other.antisym_rank,
            "generators" => self.generators != other.generators,
            _ => false,
        }
    }
}

pub fn fingerprint<F: Field>(a: &Algebra<F>) -> Fingerprint {
    let n = a.dim();
    let series = power_series(a);
    let combine = |sign: F| -> usize {
        let rows: Matrix<F> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                a.basis_product(i, j)
                    .iter()
                    .zip(a.basis_product(j, i))
                    .map(|(x, y)| x.clone() + sign.clone() * y.clone())
                    .collect()
            })
            .collect();
        linalg::rank(&rows)
    };
    Fingerprint {
        dim: n,
        power_dims: series.dims.clone(),
        left_ann: annihilator(a, Side::Left).dim(),
        right_ann: annihilator(a, Side::Right).dim(),
        two_sided_ann: annihilator(a, Side::TwoSided).dim(),
        sym_rank: combine(F::one()),
        antisym_rank: combine(-F::one()),
        generators: n - series.dim_at(2),
    }
}

/// The associated graded algebra of the power filtration, in an adapted basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    /// Degree of each basis vector (1-based degrees).
    pub degrees: Vec<usize>,
    /// Rows are the chosen representatives, in the original basis.
    pub basis: BasisChange<F>,
}

impl<F: Field> GradedAlgebra<F> {
    /// `c[i][j][k] ≠ 0 ⇒ deg k = deg i + deg j`.
    pub fn is_graded(&self) -> bool {
        self.algebra.nonzero_products().all(|(i, j, v)| {
            v.iter()
                .enumerate()
                .all(|(k, c)| c.is_zero() || self.degrees[k] == self.degrees[i] + self.degrees[j])
        })
    }
}

/// Builds `⊕ A^i / A^{i+1}` with the induced product.
///
/// Representatives for degree `i` extend a basis of `A^{i+1}` to `A^i`,
/// taking standard basis vectors in index order first and rref rows of `A^i`
/// after that. The output basis is sorted by the leading index of each
/// representative, so an algebra that is already graded in its own basis
/// comes back unchanged.
pub fn natural_grading<F: Field>(a: &Algebra<F>) -> Result<GradedAlgebra<F>> {
    let n = a.dim();
    let series = power_series(a);
    if !series.is_nilpotent() {
        return Err(Error::NotNilpotent { stable_dim: *series.dims.last().expect("nonempty") });
    }
    let unit = |k: usize| -> Vec<F> {
        let mut v = vec![F::zero(); n];
        v[k] = F::one();
        v
    };
    let mut reps: Vec<(Vec<F>, usize)> = Vec::new();
    // deepest nonzero power first, so each step extends a basis of A^{i+1}
    for degree in (1..series.dims.len()).rev() {
        let power = &series.subspaces[degree - 1];
        let mut span: Matrix<F> = reps.iter().map(|(v, _)| v.clone()).collect();
        let candidates = (0..n).map(unit).chain(power.basis().iter().cloned());
        for v in candidates {
            if span.len() == power.dim() {
                break;
            }
            if !power.contains(&v) {
                continue;
            }
            let mut trial = span.clone();
            trial.push(v.clone());
            if linalg::rank(&trial) > span.len() {
                span = trial;
                reps.push((v, degree));
            }
        }
    }
    let lead = |v: &[F]| v.iter().position(|x| !x.is_zero()).expect("nonzero representative");
    reps.sort_by_key(|(v, d)| (lead(v), *d));
    let degrees: Vec<usize> = reps.iter().map(|(_, d)| *d).collect();
    let basis = BasisChange::new(reps.into_iter().map(|(v, _)| v).collect())?;
    let adapted = a.transport(&basis)?;
    let mut graded = Algebra::abelian(n);
    for (i, j, v) in adapted.nonzero_products() {
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() && degrees[k] == degrees[i] + degrees[j] {
                graded.set_constant(i, j, k, c.clone());
            }
        }
    }
    Ok(GradedAlgebra { algebra: graded, degrees, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn e(n: usize, products: &[(usize, usize, i64, usize)]) -> Algebra {
        Algebra::from_products(n, products.iter().map(|&(i, j, c, k)| (i - 1, j - 1, vec![(int(c), k - 1)]))).unwrap()
    }

    #[test]
    fn abelian_powers_and_shape() {
        let a: Algebra<Rational> = Algebra::abelian(3);
        assert_eq!(power_series(&a).dims, vec![3, 0]);
        assert_eq!(nilindex(&a).unwrap(), 2);
        assert_eq!(signature(&Algebra::<Rational>::abelian(4)), (0, 0, 0));
        assert_eq!(generator_count(&Algebra::<Rational>::abelian(4)).unwrap(), 4);
        assert_eq!(annihilator(&a, Side::TwoSided), Subspace::full(3));
    }

    #[test]
    fn idempotent_is_not_nilpotent() {
        let a = e(1, &[(1, 1, 1, 1)]);
        assert_eq!(nilindex(&a), Err(Error::NotNilpotent { stable_dim: 1 }));
        assert!(generator_count(&a).is_err());
        assert!(natural_grading(&a).is_err());
        assert_eq!(power_series(&a).dims, vec![1, 1]);
    }

    #[test]
    fn power_series_uses_left_multiplication_only() {
        // e1∘e2 = e3 but e2∘e1 = 0 and nothing multiplies into e3 from the left
        let a = e(3, &[(1, 2, 1, 3)]);
        assert_eq!(power_series(&a).dims, vec![3, 1, 0]);
        // here A∘A² ≠ 0 only through the left factor
        let b = e(3, &[(1, 1, 1, 2), (1, 2, 1, 3)]);
        assert_eq!(power_series(&b).dims, vec![3, 2, 1, 0]);
        let c = e(3, &[(1, 1, 1, 2), (2, 1, 1, 3)]);
        assert_eq!(power_series(&c).dims, vec![3, 2, 0]);
    }

    #[test]
    fn annihilators_of_a_small_table() {
        let a = e(3, &[(1, 2, 1, 3)]);
        assert_eq!(annihilator(&a, Side::Left).dim(), 2);
        assert_eq!(annihilator(&a, Side::Right).dim(), 2);
        assert_eq!(annihilator(&a, Side::TwoSided).dim(), 1);
        let fp = fingerprint(&a);
        assert_eq!((fp.sym_rank, fp.antisym_rank, fp.generators), (1, 1, 2));
    }

    #[test]
    fn grading_kills_lower_degree_terms() {
        // e1∘e1 = e2, e3∘e1 = e2: e3 has degree 1, so e3∘e1 survives (1+1 = 2)
        let a = e(3, &[(1, 1, 1, 2), (3, 1, 1, 2)]);
        let g = natural_grading(&a).unwrap();
        assert_eq!(g.degrees, vec![1, 2, 1]);
        assert_eq!(g.algebra, a);
        assert!(g.is_graded());
    }

    #[test]
    fn fingerprint_difference_names_component() {
        let a = fingerprint(&e(2, &[(1, 1, 1, 2)]));
        let b = fingerprint(&Algebra::<Rational>::abelian(2));
        assert_eq!(a.first_difference(&b), Some("power_dims"));
        assert!(a.component_differs(&b, "generators"));
        assert_eq!(a.first_difference(&a), None);
    }
}
