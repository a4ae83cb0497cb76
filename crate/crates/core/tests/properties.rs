mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use zinbiel::analysis::fingerprint;
use zinbiel::catalog::{
    binomial, dim4_catalog, make_nf, parse_dsl, serialize_doc, AlgebraDoc, Coefficient, ProductLine, Term,
};
use zinbiel::iso::{iso_search_fp, reduce_mod_p, ModularAlgebra};
use zinbiel::linalg::{mat_mul, row_reduce};
use zinbiel::scalar::{int, rat, Rational};
use zinbiel::{Algebra, BasisChange};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn tensor(n: usize) -> impl Strategy<Value = Algebra> {
    prop::collection::vec(-3i64..=3, n * n * n).prop_map(move |cs| {
        let mut a = Algebra::abelian(n);
        for (idx, c) in cs.into_iter().enumerate() {
            a.set_constant(idx / (n * n), (idx / n) % n, idx % n, int(c));
        }
        a
    })
}

fn invertible(n: usize) -> impl Strategy<Value = BasisChange> {
    prop::collection::vec(rational(), n * n)
        .prop_filter_map("singular", move |v| BasisChange::new(v.chunks(n).map(<[_]>::to_vec).collect()).ok())
}

#[test]
fn binomial_matches_pascal_oracle() {
    let t = common::pascal(60);
    for m in 0..=60u64 {
        for k in 0..=m {
            assert_eq!(binomial(m, k), t[m as usize][k as usize]);
        }
    }
    assert_eq!(binomial(29, 14), BigInt::from(77_558_760u64));
}

#[test]
fn nul_filiform_constants_are_pascal_entries() {
    let t = common::pascal(30);
    let nf = make_nf(30).unwrap();
    for i in 1..30usize {
        for j in 1..=30 - i {
            let c = nf.constant(i - 1, j - 1, i + j - 1);
            assert_eq!(c, &Rational::from_integer(t[i + j - 1][j].clone()), "c[{i}][{j}]");
        }
    }
}

proptest! {
    // (e_i∘e_j)∘e_k = e_i∘(e_j∘e_k) + e_i∘(e_k∘e_j) on the binomial table reads
    // C(i+j−1, j)·C(i+j+k−1, k) = (C(j+k−1, k) + C(j+k−1, j))·C(i+j+k−1, j+k).
    #[test]
    fn binomial_form_of_the_identity(i in 1usize..28, j in 1usize..28, k in 1usize..28) {
        prop_assume!(i + j + k <= 30);
        let t = common::pascal(30);
        let lhs = &t[i + j - 1][j] * &t[i + j + k - 1][k];
        let rhs = (&t[j + k - 1][k] + &t[j + k - 1][j]) * &t[i + j + k - 1][j + k];
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_bilinear(a in tensor(3), x in vector(3), y in vector(3), z in vector(3), s in rational(), t in rational()) {
        let comb = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
            u.iter().zip(v).map(|(p, q)| &s * p + &t * q).collect()
        };
        let left = a.multiply(&comb(&x, &y), &z).unwrap();
        let expected_left = comb(&a.multiply(&x, &z).unwrap(), &a.multiply(&y, &z).unwrap());
        prop_assert_eq!(left, expected_left);
        let right = a.multiply(&z, &comb(&x, &y)).unwrap();
        let expected_right = comb(&a.multiply(&z, &x).unwrap(), &a.multiply(&z, &y).unwrap());
        prop_assert_eq!(right, expected_right);
    }

    #[test]
    fn transport_preserves_invariants(idx in 0usize..16, p in invertible(4), q in invertible(4)) {
        let a = dim4_catalog(&rat(1, 2))[idx].build().unwrap();
        let b = a.transport(&p).unwrap();
        prop_assert_eq!(fingerprint(&a), fingerprint(&b));
        prop_assert!(b.zinbiel_check().holds);
        prop_assert_eq!(b.transport(&p.inverse()).unwrap(), a.clone());
        // two changes in a row equal the single change with matrix Q·P
        let composite = BasisChange::new(mat_mul(q.matrix(), p.matrix())).unwrap();
        prop_assert_eq!(b.transport(&q).unwrap(), a.transport(&composite).unwrap());
    }

    #[test]
    fn zinbiel_verdict_survives_transport(a in tensor(3), p in invertible(3)) {
        let b = a.transport(&p).unwrap();
        prop_assert_eq!(a.zinbiel_check().holds, b.zinbiel_check().holds);
        prop_assert_eq!(fingerprint(&a), fingerprint(&b));
    }

    #[test]
    fn rref_is_idempotent_and_row_order_free(rows in prop::collection::vec(vector(5), 1..6), seed in any::<u64>()) {
        let (rank, rref) = row_reduce(&rows);
        prop_assert_eq!(rank, common::oracle_rank(&rows));
        prop_assert_eq!(row_reduce(&rref), (rank, rref.clone()));
        let mut shuffled = rows.clone();
        let len = shuffled.len();
        for i in 0..len {
            shuffled.swap(i, (seed as usize).wrapping_add(i * 7) % len);
        }
        prop_assert_eq!(row_reduce(&shuffled).1, rref);
    }
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    prop_oneof![
        3 => rational().prop_map(Coefficient::Literal),
        1 => ("[a-d][a-z_0-9]{0,4}", any::<bool>())
            .prop_map(|(name, negated)| Coefficient::Param { name, negated }),
    ]
}

/// Random documents; parameter names never collide with `e<k>`.
pub fn doc() -> impl Strategy<Value = AlgebraDoc> {
    (1usize..=5)
        .prop_flat_map(|dim| {
            let line = (1..=dim, 1..=dim, prop::collection::vec((coefficient(), 1..=dim), 1..4));
            (
                Just(dim),
                "[A-Za-z][A-Za-z0-9_]{0,8}",
                prop::collection::btree_map("[a-d][a-z_0-9]{0,4}", rational(), 0..3),
                prop::collection::vec(line, 0..8),
            )
        })
        .prop_map(|(dim, name, params, lines)| {
            let mut seen = std::collections::HashSet::new();
            let products = lines
                .into_iter()
                .filter(|(l, r, _)| seen.insert((*l, *r)))
                .map(|(left, right, terms)| ProductLine {
                    left,
                    right,
                    terms: terms.into_iter().map(|(coefficient, target)| Term { coefficient, target }).collect(),
                })
                .collect();
            AlgebraDoc { name, dim, params: params.into_iter().collect(), products }
        })
}

proptest! {
    #[test]
    fn dsl_round_trip(d in doc()) {
        let first = serialize_doc(&d);
        let parsed = parse_dsl(&first).unwrap();
        prop_assert_eq!(serialize_doc(&parsed), first);
    }

    #[test]
    fn modular_search_is_symmetric(x in 0usize..16, y in 0usize..16) {
        let catalog = dim4_catalog(&int(2));
        let a = reduce_mod_p(&catalog[x].build().unwrap(), 2).unwrap();
        let b = reduce_mod_p(&catalog[y].build().unwrap(), 2).unwrap();
        let ab = iso_search_fp(&a, &b).unwrap();
        let ba = iso_search_fp(&b, &a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(m) = ab {
            prop_assert_eq!(a.transport(&m).unwrap(), b.clone());
        }
        if let Some(m) = ba {
            prop_assert_eq!(b.transport(&m).unwrap(), a);
        }
    }

    #[test]
    fn modular_search_finds_random_transports(x in 0usize..16, entries in prop::collection::vec(0u64..2, 16)) {
        let rows: Vec<Vec<u64>> = entries.chunks(4).map(<[_]>::to_vec).collect();
        prop_assume!(zinbiel::iso::modular::inverse_mod(&rows, 2).is_some());
        let a: ModularAlgebra = reduce_mod_p(&dim4_catalog(&int(2))[x].build().unwrap(), 2).unwrap();
        let b = a.transport(&rows).unwrap();
        let found = iso_search_fp(&a, &b).unwrap().expect("a transport is isomorphic");
        prop_assert_eq!(a.transport(&found).unwrap(), b);
    }
}
