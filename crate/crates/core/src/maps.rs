//! The insert-`n`-before-`1` bijection `{D_{n-1}} -> {d_n1}` and the
//! arrangement/permutation correspondence given by inversion.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, Family};
use crate::enumeration::{self, EnumConfig, EnumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{word} is not in the domain: {reason}")]
    NotInDomain { word: String, reason: String },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

fn not_in_domain(w: &Arrangement, reason: impl Into<String>) -> MapError {
    MapError::NotInDomain { word: w.to_string(), reason: reason.into() }
}

/// Inserts the digit `len + 1` immediately before the digit `1`.
///
/// Defined on every non-empty arrangement; [`phi`] restricts it to `{D_{n-1}}`.
pub fn insert_before_one(w: &Arrangement) -> Arrangement {
    let n = w.len() as u8 + 1;
    let mut digits = Vec::with_capacity(w.len() + 1);
    for &d in w.digits() {
        if d == 1 {
            digits.push(n);
        }
        digits.push(d);
    }
    Arrangement::from_trusted(digits)
}

/// Deletes the largest digit.
pub fn remove_largest(w: &Arrangement) -> Arrangement {
    let n = w.len() as u8;
    Arrangement::from_trusted(w.digits().iter().copied().filter(|&d| d != n).collect())
}

/// `phi: {D_{n-1}} -> {d_n1}`.
pub fn phi(w: &Arrangement) -> Result<Arrangement, MapError> {
    if w.is_empty() {
        return Err(not_in_domain(w, "the empty arrangement has no digit 1"));
    }
    if !w.is_succession_avoiding() {
        return Err(not_in_domain(w, "contains a succession (v, v+1)"));
    }
    if w.contains_wrap() {
        return Err(not_in_domain(w, format!("contains the wrap pair {}1", w.len())));
    }
    Ok(insert_before_one(w))
}

/// `phi^{-1}: {d_n1} -> {D_{n-1}}`.
pub fn phi_inverse(w: &Arrangement) -> Result<Arrangement, MapError> {
    if !w.is_succession_avoiding() {
        return Err(not_in_domain(w, "contains a succession (v, v+1)"));
    }
    if !w.contains_wrap() {
        return Err(not_in_domain(w, format!("does not contain the wrap pair {}1", w.len())));
    }
    Ok(remove_largest(w))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAt {
    pub family: Family,
    pub n: usize,
}

/// Every source paired with its image, plus the two bijectivity verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingCertificate {
    pub source: FamilyAt,
    pub target: FamilyAt,
    pub pairs: Vec<(Arrangement, Arrangement)>,
    pub injective: bool,
    pub surjective: bool,
}

impl MappingCertificate {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    /// Builds a certificate by mapping every member of `source` and comparing
    /// the images against an independent enumeration of `target`.
    pub fn build<F>(
        source: FamilyAt,
        target: FamilyAt,
        cfg: &EnumConfig,
        map: F,
    ) -> Result<Self, MapError>
    where
        F: Fn(&Arrangement) -> Result<Arrangement, MapError>,
    {
        let domain = enumeration::enumerate(source.n, source.family, cfg)?;
        let codomain = enumeration::enumerate(target.n, target.family, cfg)?;
        let pairs = domain
            .into_iter()
            .map(|w| map(&w).map(|img| (w, img)))
            .collect::<Result<Vec<_>, _>>()?;
        let images: HashSet<&Arrangement> = pairs.iter().map(|(_, img)| img).collect();
        let injective = images.len() == pairs.len();
        let codomain: HashSet<&Arrangement> = codomain.iter().collect();
        let surjective = images == codomain;
        Ok(MappingCertificate { source, target, pairs, injective, surjective })
    }
}

/// Certifies `phi: {D_{n-1}} -> {d_n1}` by exhaustive enumeration of both sides.
pub fn certify_phi(n: usize, cfg: &EnumConfig) -> Result<MappingCertificate, MapError> {
    if n < 2 {
        return Err(MapError::NotInDomain {
            word: format!("n = {n}"),
            reason: "phi needs n >= 2".into(),
        });
    }
    MappingCertificate::build(
        FamilyAt { family: Family::BigD, n: n - 1 },
        FamilyAt { family: Family::Dn1, n },
        cfg,
        phi,
    )
}

/// `{ inverse(w) : w in family }` at size `n`, sorted.
pub fn inverse_image_family(
    n: usize,
    family: Family,
    cfg: &EnumConfig,
) -> Result<Vec<Arrangement>, EnumError> {
    let mut v: Vec<Arrangement> = enumeration::enumerate(n, family, cfg)?
        .iter()
        .map(Arrangement::inverse)
        .collect();
    v.sort_unstable();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Arrangement {
        s.parse().unwrap()
    }

    fn words(v: &[Arrangement]) -> Vec<String> {
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&a("132")).unwrap(), a("4132"));
        assert_eq!(phi(&a("213")).unwrap(), a("2413"));
        assert_eq!(phi(&a("1324")).unwrap(), a("51324"));
        assert_eq!(phi(&a("1")).unwrap(), a("21"));
    }

    #[test]
    fn phi_rejects_outside_domain() {
        assert!(matches!(phi(&a("123")), Err(MapError::NotInDomain { .. })));
        // in {d_4} but contains 41
        assert!(matches!(phi(&a("4132")), Err(MapError::NotInDomain { .. })));
        assert!(phi(&a("")).is_err());
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(phi_inverse(&a("4132")).unwrap(), a("132"));
        assert_eq!(phi_inverse(&a("51432")).unwrap(), a("1432"));
        assert_eq!(phi_inverse(&a("2413")).unwrap(), a("213"));
        assert!(phi_inverse(&a("1324")).is_err());
        assert!(phi_inverse(&a("4123")).is_err());
    }

    #[test]
    fn certificates() {
        let cfg = EnumConfig::default();
        for (n, pairs) in [(3, 0), (4, 3), (5, 8)] {
            let c = certify_phi(n, &cfg).unwrap();
            assert_eq!(c.pairs.len(), pairs);
            assert!(c.is_bijective(), "n={n}");
        }
        assert!(certify_phi(1, &cfg).is_err());
    }

    #[test]
    fn round_trips_are_identities() {
        let cfg = EnumConfig::default();
        for n in 2..=9 {
            for w in enumeration::enumerate(n - 1, Family::BigD, &cfg).unwrap() {
                assert_eq!(phi_inverse(&phi(&w).unwrap()).unwrap(), w);
            }
            for w in enumeration::enumerate(n, Family::Dn1, &cfg).unwrap() {
                assert_eq!(phi(&phi_inverse(&w).unwrap()).unwrap(), w);
            }
        }
    }

    #[test]
    fn inverse_image_examples() {
        let cfg = EnumConfig::default();
        let der4 = inverse_image_family(4, Family::Derangement, &cfg).unwrap();
        assert_eq!(der4.len(), 9);
        assert!(der4.contains(&a("2413")));
        assert_eq!(der4, enumeration::enumerate(4, Family::Derangement, &cfg).unwrap());

        assert_eq!(
            words(&inverse_image_family(3, Family::BigD, &cfg).unwrap()),
            ["132", "213", "321"]
        );
        let d4 = inverse_image_family(4, Family::BigD, &cfg).unwrap();
        assert_eq!(d4.len(), 8);
        assert!(d4.contains(&a("4132")));
        assert!(d4.iter().all(|w| w.in_family(Family::SmallD)));
    }

    #[test]
    fn certificate_serializes() {
        let c = certify_phi(4, &EnumConfig::default()).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains(r#"["132","4132"]"#));
        let back: MappingCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
