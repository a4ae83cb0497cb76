//! Isomorphism tooling: explicit verification, the filiform normalizer,
//! finite-field search and splitting, and the combined [`distinguish`] pipeline.
//!
//! Only two outcomes are certificates over `C`: [`Verdict::NonIsomorphic`]
//! (a rank invariant differs, and ranks do not change under field extension)
//! and [`Verdict::IsomorphicOverQ`] (an explicit rational change verified by
//! transport). Anything learned modulo a prime is evidence only.

pub mod modular;
mod normalize;
mod search;
mod split;

pub use modular::{reduce_mod_p, ModMatrix, ModSubspace, ModularAlgebra};
pub use normalize::{
    normalize_filiform, radicand, verify_normalization, GeneratorCoefficients, Normalization, NormalizingChange,
};
pub use search::{iso_search_fp, iso_search_fp_with, SearchConfig};
pub use split::{is_splitting, split_scan_fp, split_scan_fp_with};

pub use crate::algebra::verify_isomorphism;

use crate::algebra::{Algebra, BasisChange};
use crate::analysis::fingerprint;
use crate::error::{Error, Result};

/// Primes tried by [`distinguish`].
pub const SEARCH_PRIMES: [u64; 2] = [2, 3];

/// What happened at one prime during [`distinguish`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeOutcome {
    /// Exhaustive search found no isomorphism over `F_p`.
    NoIsomorphism,
    Isomorphic(ModMatrix),
    /// Some constant has a denominator divisible by `p`.
    ReductionIllegal(String),
    TooLarge,
    /// The search could not run (e.g. the algebra is not nilpotent mod `p`).
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeNote {
    pub p: u64,
    pub outcome: PrimeOutcome,
}

impl std::fmt::Display for PrimeNote {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = self.p;
        match &self.outcome {
            PrimeOutcome::NoIsomorphism => write!(f, "p={p}: exhaustive search, no isomorphism over F_{p}"),
            PrimeOutcome::Isomorphic(_) => write!(f, "p={p}: isomorphic over F_{p}"),
            PrimeOutcome::ReductionIllegal(e) => write!(f, "p={p}: reduction not possible ({e})"),
            PrimeOutcome::TooLarge => write!(f, "p={p}: search space over the cap, skipped"),
            PrimeOutcome::Failed(e) => write!(f, "p={p}: search failed ({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A fingerprint component differs; valid over any extension field.
    NonIsomorphic { witness: &'static str },
    /// Found only modulo `p`; not a statement about `C`.
    IsomorphicOverFp { p: u64, matrix: ModMatrix, notes: Vec<PrimeNote> },
    IsomorphicOverQ(BasisChange),
    Inconclusive { notes: Vec<PrimeNote> },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::NonIsomorphic { .. } => "NonIsomorphic",
            Verdict::IsomorphicOverFp { .. } => "IsomorphicOverFp",
            Verdict::IsomorphicOverQ(_) => "IsomorphicOverQ",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// Re-checks whatever the verdict claims against the two inputs.
    pub fn revalidate(&self, a: &Algebra, b: &Algebra) -> Result<bool> {
        Ok(match self {
            Verdict::NonIsomorphic { witness } => fingerprint(a).component_differs(&fingerprint(b), witness),
            Verdict::IsomorphicOverQ(change) => verify_isomorphism(a, b, change)?,
            Verdict::IsomorphicOverFp { p, matrix, .. } => {
                reduce_mod_p(a, *p)?.transport(matrix)? == reduce_mod_p(b, *p)?
            }
            Verdict::Inconclusive { .. } => true,
        })
    }
}

/// Decides what can be decided about `a ≅ b`.
///
/// 1. A differing fingerprint component gives [`Verdict::NonIsomorphic`].
/// 2. The identity and each of `hints` are tried as rational changes.
/// 3. Otherwise an exhaustive search runs at each prime in [`SEARCH_PRIMES`]
///    where reduction is legal. If any prime rules an isomorphism out the
///    verdict is `Inconclusive` (with that note); if some prime finds one and
///    none rules it out, the first matrix found is reported as `IsomorphicOverFp`.
pub fn distinguish(a: &Algebra, b: &Algebra, hints: &[BasisChange]) -> Result<Verdict> {
    distinguish_with(a, b, hints, &SearchConfig::default())
}

pub fn distinguish_with(a: &Algebra, b: &Algebra, hints: &[BasisChange], config: &SearchConfig) -> Result<Verdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    if let Some(witness) = fa.first_difference(&fb) {
        debug_assert!(fa.component_differs(&fb, witness));
        return Ok(Verdict::NonIsomorphic { witness });
    }
    let identity = BasisChange::identity(a.dim());
    for change in std::iter::once(&identity).chain(hints.iter()) {
        if change.dim() == a.dim() && verify_isomorphism(a, b, change)? {
            return Ok(Verdict::IsomorphicOverQ(change.clone()));
        }
    }
    let mut notes = Vec::new();
    for p in SEARCH_PRIMES {
        let outcome = match (reduce_mod_p(a, p), reduce_mod_p(b, p)) {
            (Err(e), _) | (_, Err(e)) => PrimeOutcome::ReductionIllegal(e.to_string()),
            (Ok(ma), Ok(mb)) => match iso_search_fp_with(&ma, &mb, config) {
                Ok(Some(m)) => PrimeOutcome::Isomorphic(m),
                Ok(None) => PrimeOutcome::NoIsomorphism,
                Err(Error::SearchSpaceTooLarge { .. }) => PrimeOutcome::TooLarge,
                Err(e) => PrimeOutcome::Failed(e.to_string()),
            },
        };
        notes.push(PrimeNote { p, outcome });
    }
    let ruled_out = notes.iter().any(|n| n.outcome == PrimeOutcome::NoIsomorphism);
    let found = notes.iter().find_map(|n| match &n.outcome {
        PrimeOutcome::Isomorphic(m) => Some((n.p, m.clone())),
        _ => None,
    });
    Ok(match found {
        Some((p, matrix)) if !ruled_out => Verdict::IsomorphicOverFp { p, matrix, notes },
        _ => Verdict::Inconclusive { notes },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_dim4, make_f1, make_f2, make_filiform, CatalogId};
    use crate::scalar::{int, rat};

    #[test]
    fn distinct_power_dims() {
        let v = distinguish(&make_dim4(&CatalogId::A1).unwrap(), &make_dim4(&CatalogId::A2).unwrap(), &[]).unwrap();
        assert_eq!(v, Verdict::NonIsomorphic { witness: "power_dims" });
    }

    #[test]
    fn transported_copy_is_found_with_a_hint() {
        let a = make_dim4(&CatalogId::A5).unwrap();
        let p = BasisChange::new(vec![
            vec![int(1), int(1), int(0), int(0)],
            vec![int(0), int(2), int(0), int(1)],
            vec![int(0), int(0), rat(1, 3), int(0)],
            vec![int(1), int(0), int(0), int(1)],
        ])
        .unwrap();
        let b = a.transport(&p).unwrap();
        let v = distinguish(&a, &b, std::slice::from_ref(&p)).unwrap();
        assert!(matches!(v, Verdict::IsomorphicOverQ(_)));
        assert!(v.revalidate(&a, &b).unwrap());
        // without the hint the search over F_3 still finds a match (the change has a 1/3, so F_2 and F_3 differ)
        let v = distinguish(&a, &b, &[]).unwrap();
        assert!(v.revalidate(&a, &b).unwrap());
        assert_ne!(v.kind(), "NonIsomorphic");
    }

    #[test]
    fn family_member_equal_to_named_algebra() {
        let v = distinguish(&make_filiform(5, &int(1), &int(0)).unwrap(), &make_f2(5).unwrap(), &[]).unwrap();
        assert!(matches!(v, Verdict::IsomorphicOverQ(ref c) if c.is_identity()));
        assert_eq!(
            distinguish(&make_f1(5).unwrap(), &make_f1(6).unwrap(), &[]),
            Err(Error::DimensionMismatch { expected: 5, found: 6 })
        );
    }
}
