//! Count-preserving constructions: maximality gadgets, gadget attachment,
//! the bipartite independent set encoding, and hardness witness products.

mod bis;
mod gadget;

pub use bis::{bis_encode, count_independent_sets, count_maximal_independent_sets, BipartiteGraph};
pub use gadget::{
    synthesize_gadget, synthesize_gadget_with, GadgetCase, GadgetResult, LIFT_VARIABLE,
};

use serde::{Deserialize, Serialize};

use crate::classify::find_witnesses;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relation::{ConstraintLanguage, Property, Relation};

/// Infix reserved for variables created by [`attach_gadgets`].
pub const GADGET_INFIX: &str = "__g";

/// Attaches a copy of `gadget` to every variable of `instance`, identifying
/// the copy's distinguished variable with it.
///
/// Satisfying assignments of `instance` are in bijection with locally
/// maximal satisfying assignments of the result. Gadget-internal variables
/// of the copy for variable number `i` are named `NAME__g<i>`.
pub fn attach_gadgets(instance: &Instance, gadget: &GadgetResult) -> Result<Instance> {
    let target = gadget.relation();
    for index in instance.used_relations() {
        let (name, relation) = instance.language().by_index(index);
        if relation != target {
            return Err(Error::RelationMismatch {
                expected: gadget.relation_name().to_string(),
                found: name.to_string(),
            });
        }
    }
    if let Some(v) = instance
        .variables()
        .iter()
        .find(|v| v.name.contains(GADGET_INFIX))
    {
        return Err(Error::ReservedName(v.name.clone()));
    }

    let mut language = instance.language().clone();
    let existing = language
        .iter()
        .find(|(_, r)| *r == target)
        .map(|(name, _)| name.to_string());
    let relation_name = match existing {
        Some(name) => name,
        None => {
            let name = gadget.relation_name();
            if language.get(name).is_some() {
                return Err(Error::RelationMismatch {
                    expected: name.to_string(),
                    found: name.to_string(),
                });
            }
            language.insert(name, target.clone())?;
            name.to_string()
        }
    };

    let mut out = Instance::new(language);
    for v in instance.variables() {
        out.add_variable(v.name.clone())?;
    }
    for c in instance.constraints() {
        out.add_constraint(instance.relation_name(c), &c.scope)?;
    }
    let g = &gadget.instance;
    for u in 0..instance.variable_count() {
        let mut map = vec![usize::MAX; g.variable_count()];
        for gv in g.variables() {
            map[gv.id] = if gv.id == gadget.distinguished {
                u
            } else {
                out.add_variable(format!("{}{GADGET_INFIX}{u}", gv.name))?
            };
        }
        for c in g.constraints() {
            let scope: Vec<usize> = c.scope.iter().map(|&v| map[v]).collect();
            out.add_constraint(&relation_name, &scope)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HardnessTarget {
    /// Non-affine × not essentially monotone.
    Bis,
    /// Non-affine × not essentially monotone × not in IM2.
    Sat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessProduct {
    /// Factor names, in language order.
    pub factors: Vec<String>,
    pub relation: Relation,
}

/// Cartesian product of the witness relations needed for `target`.
/// A relation serving as several witnesses appears once per role.
pub fn hardness_witness_product(
    language: &ConstraintLanguage,
    target: HardnessTarget,
) -> Result<WitnessProduct> {
    let witnesses = find_witnesses(language)?;
    let mut needed = vec![Property::Affine, Property::EssentiallyMonotone];
    if target == HardnessTarget::Sat {
        needed.push(Property::Im2);
    }
    let mut indices = Vec::new();
    for property in needed {
        let name = witnesses
            .get(property)
            .ok_or(Error::WitnessMissing(property))?;
        indices.push(language.index_of(name).expect("witness is in the language"));
    }
    indices.sort_unstable();
    let mut factors = indices.iter().map(|&i| language.by_index(i));
    let (first_name, first) = factors.next().expect("at least two factors");
    let mut names = vec![first_name.to_string()];
    let mut relation = first.clone();
    for (name, r) in factors {
        names.push(name.to_string());
        relation = relation.product(r)?;
    }
    Ok(WitnessProduct {
        factors: names,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_max_sat, count_sat};

    fn lang(relations: &[(&str, Relation)]) -> ConstraintLanguage {
        ConstraintLanguage::from_relations(relations.iter().cloned()).unwrap()
    }

    fn parity3() -> Relation {
        Relation::from_strs(&["100", "010", "001", "111"])
    }

    #[test]
    fn nand_edge_reduction() {
        let g = synthesize_gadget("NAND", &Relation::nand()).unwrap();
        let mut j =
            Instance::with_variables(lang(&[("NAND", Relation::nand())]), ["u1", "u2"]).unwrap();
        j.add_constraint("NAND", &[0, 1]).unwrap();
        let jp = attach_gadgets(&j, &g).unwrap();
        assert_eq!(jp.variable_count(), 6);
        assert_eq!(jp.variable_name(2), "x__g0");
        assert_eq!(count_sat(&j).unwrap().value, 3u32.into());
        assert_eq!(count_max_sat(&jp).unwrap().value, 3u32.into());
    }

    #[test]
    fn free_variable_reduction() {
        let g = synthesize_gadget("NAND", &Relation::nand()).unwrap();
        let j = Instance::with_variables(lang(&[("NAND", Relation::nand())]), ["u"]).unwrap();
        let jp = attach_gadgets(&j, &g).unwrap();
        assert_eq!(jp.variable_count(), 3);
        assert_eq!(count_max_sat(&jp).unwrap().value, 2u32.into());
    }

    #[test]
    fn unsatisfiable_odd_cycle() {
        let neq = Relation::from_strs(&["01", "10"]);
        let g = synthesize_gadget("NEQ", &neq).unwrap();
        let mut j = Instance::with_variables(lang(&[("NEQ", neq)]), ["u", "v", "w"]).unwrap();
        j.add_constraint("NEQ", &[0, 1]).unwrap();
        j.add_constraint("NEQ", &[1, 2]).unwrap();
        j.add_constraint("NEQ", &[0, 2]).unwrap();
        let jp = attach_gadgets(&j, &g).unwrap();
        assert_eq!(count_sat(&j).unwrap().value, 0u32.into());
        assert_eq!(count_max_sat(&jp).unwrap().value, 0u32.into());
    }

    #[test]
    fn mismatched_relation_and_reserved_names() {
        let g = synthesize_gadget("NAND", &Relation::nand()).unwrap();
        let mut j = Instance::with_variables(lang(&[("Implies", Relation::implies())]), ["a", "b"])
            .unwrap();
        j.add_constraint("Implies", &[0, 1]).unwrap();
        assert!(matches!(
            attach_gadgets(&j, &g),
            Err(Error::RelationMismatch { .. })
        ));
        let k = Instance::with_variables(lang(&[("NAND", Relation::nand())]), ["x__g0"]).unwrap();
        assert_eq!(
            attach_gadgets(&k, &g),
            Err(Error::ReservedName("x__g0".into()))
        );
    }

    #[test]
    fn gadget_relation_added_when_absent() {
        let g = synthesize_gadget("NAND", &Relation::nand()).unwrap();
        let j = Instance::with_variables(ConstraintLanguage::new(), ["u"]).unwrap();
        let jp = attach_gadgets(&j, &g).unwrap();
        assert_eq!(jp.language().get("NAND"), Some(&Relation::nand()));
    }

    #[test]
    fn witness_products() {
        let p = hardness_witness_product(&lang(&[("NAND", Relation::nand())]), HardnessTarget::Bis)
            .unwrap();
        assert_eq!(p.factors, ["NAND", "NAND"]);
        assert_eq!(
            p.relation,
            Relation::nand().product(&Relation::nand()).unwrap()
        );

        assert_eq!(
            hardness_witness_product(
                &lang(&[("Implies", Relation::implies())]),
                HardnessTarget::Sat
            ),
            Err(Error::WitnessMissing(Property::Im2))
        );

        let p = hardness_witness_product(
            &lang(&[("P", parity3()), ("NAND", Relation::nand())]),
            HardnessTarget::Bis,
        )
        .unwrap();
        assert_eq!(p.factors, ["P", "NAND"]);
        assert_eq!(p.relation.len(), 12);
        assert!(!p.relation.is_affine());
        assert!(!p.relation.is_essentially_monotone());

        let s = hardness_witness_product(&lang(&[("NAND", Relation::nand())]), HardnessTarget::Sat)
            .unwrap();
        assert_eq!(s.relation.arity(), 6);
        assert!(!s.relation.is_im2());
    }
}
