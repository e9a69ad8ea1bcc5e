//! Polynomial-time counters for the tractable language classes, plus the
//! exact pipeline for IM2 languages.
//!
//! Every counter checks its language precondition on the relations an
//! instance actually uses and fails with [`Error::LanguageMismatch`]
//! otherwise.

mod implication;
mod scc;
mod upsets;

pub use implication::{
    eliminate_one, eliminate_singletons, eliminate_variable, least_singleton, prune,
    to_implication_instance, ImplicationInstance, PruneOutcome,
};
pub use scc::{strongly_connected_components, CondensationDag};
pub use upsets::{count_up_sets, DEFAULT_COMPONENT_CAP};

use num_bigint::BigUint;
use num_traits::One;

use crate::affine::{affine_decompose, LinearSystemF2};
use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::oracle::{CountReport, Method};
use crate::relation::Property;

pub(crate) fn require_property(instance: &Instance, property: Property) -> Result<()> {
    for index in instance.used_relations() {
        let (name, relation) = instance.language().by_index(index);
        if !relation.has_property(property) {
            return Err(Error::LanguageMismatch {
                relation: name.to_string(),
                property,
            });
        }
    }
    Ok(())
}

/// Counts locally maximal satisfying assignments when every relation used
/// is essentially monotone. There is at most one: variables sitting at a
/// zero position of some constraint are 0, all others are 1.
pub fn count_max_monotone(instance: &Instance) -> Result<CountReport> {
    require_property(instance, Property::EssentiallyMonotone)?;
    let language = instance.language();
    let zero_positions: Vec<Vec<usize>> =
        language.iter().map(|(_, r)| r.zero_positions()).collect();
    let mut bits = vec![true; instance.variable_count()];
    for c in instance.constraints() {
        for &p in &zero_positions[c.relation] {
            bits[c.scope[p]] = false;
        }
    }
    let pinned = bits.iter().filter(|b| !**b).count();
    let candidate = Assignment::new(bits);
    let satisfying = instance.evaluate(&candidate)?;
    Ok(
        CountReport::new(u32::from(satisfying), Method::Monotone).note(format!(
            "candidate: {pinned} variables at zero positions set to 0, {} set to 1; {}",
            instance.variable_count() - pinned,
            if satisfying {
                "satisfying"
            } else {
                "not satisfying"
            }
        )),
    )
}

fn affine_system(instance: &Instance) -> Result<LinearSystemF2> {
    require_property(instance, Property::Affine)?;
    let decompositions: Vec<Option<LinearSystemF2>> = instance
        .language()
        .iter()
        .map(|(_, r)| affine_decompose(r))
        .collect();
    let mut system = LinearSystemF2::new(0..instance.variable_count());
    for c in instance.constraints() {
        let local = decompositions[c.relation]
            .as_ref()
            .expect("used relations are affine");
        for eq in local.equations() {
            system.push(eq.support.iter().map(|&p| c.scope[p]), eq.rhs);
        }
    }
    Ok(system)
}

/// Counts locally maximal satisfying assignments when every relation used
/// is affine: `2^(m - rank)` over the `m` variables occurring in some
/// nontrivial equation, or 0 if the system is inconsistent. Variables in no
/// equation are forced to 1.
pub fn count_max_affine(instance: &Instance) -> Result<CountReport> {
    let system = affine_system(instance)?;
    let elimination = system.eliminate();
    let m = system.constrained_variables().len();
    let value = if elimination.consistent {
        BigUint::one() << (m - elimination.rank)
    } else {
        BigUint::default()
    };
    Ok(CountReport::new(value, Method::Affine)
        .note(format!(
            "{} equations over {m} constrained variables, rank {}, {}",
            system.equations().len(),
            elimination.rank,
            if elimination.consistent {
                "consistent"
            } else {
                "inconsistent"
            }
        ))
        .note(format!(
            "{} unconstrained variables forced to 1",
            instance.variable_count() - m
        )))
}

/// All satisfying assignments of an affine instance: `2^(n - rank)`.
pub fn count_sat_affine(instance: &Instance) -> Result<CountReport> {
    let system = affine_system(instance)?;
    let elimination = system.eliminate();
    Ok(
        CountReport::new(system.count_solutions(), Method::Affine).note(format!(
            "{} equations over {} variables, rank {}, {}",
            system.equations().len(),
            instance.variable_count(),
            elimination.rank,
            if elimination.consistent {
                "consistent"
            } else {
                "inconsistent"
            }
        )),
    )
}

/// Exact count of locally maximal satisfying assignments for IM2
/// languages: decompose, prune forced variables, eliminate singleton
/// components, then count up-sets of the condensation.
pub fn count_max_im2(instance: &Instance, component_cap: usize) -> Result<CountReport> {
    let graph = to_implication_instance(instance)?;
    let mut notes = vec![format!(
        "implication graph: {} variables, {} edges, {} pinned to 0, {} pinned to 1",
        graph.variable_count(),
        graph.edges().len(),
        graph.pinned0().len(),
        graph.pinned1().len()
    )];
    let finish = |value: u32, notes: Vec<String>| CountReport {
        value: BigUint::from(value),
        method: Method::Im2Pipeline,
        notes,
    };
    let reduced = match prune(&graph) {
        PruneOutcome::Unsatisfiable { conflict } => {
            notes.push(format!(
                "unsatisfiable: `{}` is forced to both 0 and 1",
                graph.names()[conflict]
            ));
            return Ok(finish(0, notes));
        }
        PruneOutcome::Reduced {
            instance,
            forced0,
            forced1,
            ..
        } => {
            notes.push(format!(
                "pruned {} variables forced to 0 and {} forced to 1; {} remain",
                forced0.len(),
                forced1.len(),
                instance.variable_count()
            ));
            instance
        }
    };
    if reduced.variable_count() == 0 {
        notes.push("no unforced variables: exactly one assignment".into());
        return Ok(finish(1, notes));
    }
    let (core, removed) = eliminate_singletons(&reduced);
    notes.push(format!(
        "eliminated {} singleton components; {} variables remain",
        removed.len(),
        core.variable_count()
    ));
    if core.variable_count() == 1 {
        return Ok(finish(1, notes));
    }
    let dag = core.condensation();
    let value = count_up_sets(&dag, component_cap)?;
    notes.push(format!(
        "counted up-sets of a condensation with {} components",
        dag.len()
    ));
    Ok(CountReport {
        value,
        method: Method::Im2Pipeline,
        notes,
    })
}

/// All satisfying assignments of an IM2 instance: prune, then count up-sets
/// of the condensation on the unforced variables.
pub fn count_sat_im2(instance: &Instance, component_cap: usize) -> Result<CountReport> {
    let graph = to_implication_instance(instance)?;
    match prune(&graph) {
        PruneOutcome::Unsatisfiable { .. } => {
            Ok(CountReport::new(0u32, Method::Im2Pipeline).note("unsatisfiable"))
        }
        PruneOutcome::Reduced { instance, .. } => {
            let dag = instance.condensation();
            let value = count_up_sets(&dag, component_cap)?;
            Ok(CountReport {
                value,
                method: Method::Im2Pipeline,
                notes: vec![format!(
                    "{} unforced variables in {} components",
                    instance.variable_count(),
                    dag.len()
                )],
            })
        }
    }
}
