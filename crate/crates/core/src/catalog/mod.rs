//! Named algebras, the `.zb` text format, and the shipped fixture manifest.

mod constructors;
pub mod dsl;

pub use constructors::{
    binomial, dim4_catalog, make_dim4, make_f1, make_f2, make_f3, make_filiform, make_nf, split_dim4, CatalogId,
};
pub use dsl::{parse_dsl, serialize_algebra, serialize_doc, AlgebraDoc, Coefficient, ProductLine, Term};

use crate::scalar::{int, rat, Rational};

/// Parameter values at which the one-parameter families are shipped.
pub fn family_samples() -> Vec<(&'static str, Rational)> {
    vec![("0", int(0)), ("1-2", rat(1, 2)), ("2", int(2))]
}

/// File name and id of every fixture shipped in `data/catalog`.
pub fn fixture_manifest() -> Vec<(String, CatalogId)> {
    let mut out = vec![("nf4.zb".to_string(), CatalogId::Nf(4))];
    for k in 1..=16u8 {
        if matches!(k, 8 | 9 | 15) {
            for (tag, alpha) in family_samples() {
                let id = CatalogId::dim4(k, Some(alpha)).expect("legal sample");
                out.push((format!("a{k}_{tag}.zb"), id));
            }
        } else {
            out.push((format!("a{k}.zb"), CatalogId::dim4(k, None).expect("valid index")));
        }
    }
    for (name, id) in [("f1_5.zb", CatalogId::F1(5)), ("f2_5.zb", CatalogId::F2(5)), ("f3_5.zb", CatalogId::F3(5))] {
        out.push((name.to_string(), id));
    }
    out
}

/// Pairs of manifest ids that name the same table. Their agreement in a
/// distinction matrix is expected, not a defect.
pub fn known_aliases() -> Vec<(CatalogId, CatalogId)> {
    vec![(CatalogId::Nf(4), CatalogId::A1)]
}
