//! Complexity classification of constraint languages for counting locally
//! maximal satisfying assignments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{ConstraintLanguage, Property};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExactComplexity {
    Polynomial,
    SharpPComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ApproxComplexity {
    FpMonotone,
    FpAffine,
    BisEquivalent,
    SatEquivalent,
}

impl fmt::Display for ExactComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactComplexity::Polynomial => "POLYNOMIAL",
            ExactComplexity::SharpPComplete => "SHARP_P_COMPLETE",
        })
    }
}

impl fmt::Display for ApproxComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApproxComplexity::FpMonotone => "FP_MONOTONE",
            ApproxComplexity::FpAffine => "FP_AFFINE",
            ApproxComplexity::BisEquivalent => "BIS_EQUIVALENT",
            ApproxComplexity::SatEquivalent => "SAT_EQUIVALENT",
        })
    }
}

/// First relation, in language order, failing each property.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub non_affine: Option<String>,
    pub non_essentially_monotone: Option<String>,
    pub non_im2: Option<String>,
}

impl Witnesses {
    pub fn get(&self, property: Property) -> Option<&str> {
        match property {
            Property::EssentiallyMonotone => self.non_essentially_monotone.as_deref(),
            Property::Affine => self.non_affine.as_deref(),
            Property::Im2 => self.non_im2.as_deref(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub exact: ExactComplexity,
    pub approx: ApproxComplexity,
    pub witnesses: Witnesses,
}

pub fn find_witnesses(language: &ConstraintLanguage) -> Result<Witnesses> {
    if language.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let first_failing = |property: Property| {
        language
            .iter()
            .find(|(_, r)| !r.has_property(property))
            .map(|(name, _)| name.to_string())
    };
    Ok(Witnesses {
        non_affine: first_failing(Property::Affine),
        non_essentially_monotone: first_failing(Property::EssentiallyMonotone),
        non_im2: first_failing(Property::Im2),
    })
}

pub fn classify_language(language: &ConstraintLanguage) -> Result<Classification> {
    let witnesses = find_witnesses(language)?;
    let approx = if witnesses.non_essentially_monotone.is_none() {
        ApproxComplexity::FpMonotone
    } else if witnesses.non_affine.is_none() {
        ApproxComplexity::FpAffine
    } else if witnesses.non_im2.is_none() {
        ApproxComplexity::BisEquivalent
    } else {
        ApproxComplexity::SatEquivalent
    };
    let exact = match approx {
        ApproxComplexity::FpMonotone | ApproxComplexity::FpAffine => ExactComplexity::Polynomial,
        _ => ExactComplexity::SharpPComplete,
    };
    Ok(Classification {
        exact,
        approx,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;

    fn lang(relations: &[(&str, Relation)]) -> ConstraintLanguage {
        ConstraintLanguage::from_relations(relations.iter().cloned()).unwrap()
    }

    fn parity3() -> Relation {
        Relation::from_strs(&["100", "010", "001", "111"])
    }

    #[test]
    fn witnesses_for_implies() {
        let w = find_witnesses(&lang(&[("Implies", Relation::implies())])).unwrap();
        assert_eq!(w.non_affine.as_deref(), Some("Implies"));
        assert_eq!(w.non_essentially_monotone.as_deref(), Some("Implies"));
        assert_eq!(w.non_im2, None);
    }

    #[test]
    fn witnesses_for_or() {
        let w = find_witnesses(&lang(&[("OR", Relation::or())])).unwrap();
        assert_eq!(w.non_affine.as_deref(), Some("OR"));
        assert_eq!(w.non_essentially_monotone, None);
        assert_eq!(w.non_im2.as_deref(), Some("OR"));
    }

    #[test]
    fn witnesses_for_parity() {
        let w = find_witnesses(&lang(&[("P", parity3())])).unwrap();
        assert_eq!(w.non_affine, None);
        assert_eq!(w.non_essentially_monotone.as_deref(), Some("P"));
        assert_eq!(w.non_im2.as_deref(), Some("P"));
    }

    #[test]
    fn fixtures() {
        let c = classify_language(&lang(&[("Implies", Relation::implies())])).unwrap();
        assert_eq!(
            (c.exact, c.approx),
            (
                ExactComplexity::SharpPComplete,
                ApproxComplexity::BisEquivalent
            )
        );
        let c = classify_language(&lang(&[("OR", Relation::or())])).unwrap();
        assert_eq!(
            (c.exact, c.approx),
            (ExactComplexity::Polynomial, ApproxComplexity::FpMonotone)
        );
        let c = classify_language(&lang(&[("P", parity3())])).unwrap();
        assert_eq!(
            (c.exact, c.approx),
            (ExactComplexity::Polynomial, ApproxComplexity::FpAffine)
        );
        let c = classify_language(&lang(&[("NAND", Relation::nand())])).unwrap();
        assert_eq!(
            (c.exact, c.approx),
            (
                ExactComplexity::SharpPComplete,
                ApproxComplexity::SatEquivalent
            )
        );
    }

    #[test]
    fn first_witness_in_language_order() {
        let l = lang(&[("A", Relation::or()), ("B", Relation::nand())]);
        let w = find_witnesses(&l).unwrap();
        assert_eq!(w.non_affine.as_deref(), Some("A"));
        assert_eq!(w.non_essentially_monotone.as_deref(), Some("B"));
    }

    #[test]
    fn empty_language_is_an_error() {
        assert_eq!(
            classify_language(&ConstraintLanguage::new()),
            Err(Error::EmptyLanguage)
        );
    }
}
