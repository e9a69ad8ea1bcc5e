//! Instance families shared by the benchmarks.

use maxcsp_core::random::{random_instance, random_language, seeded};
use maxcsp_core::{ConstraintLanguage, Instance, Property, Relation};

/// `n` variables over a random language with `property`, with `2n`
/// constraints.
pub fn random_class_instance(property: Property, n: usize, seed: u64) -> Instance {
    let mut rng = seeded(seed);
    let language = random_language(&mut rng, property, 3, 3);
    random_instance(&mut rng, &language, n, 2 * n)
}

/// Independent sets of a path on `n` vertices, as NAND constraints. Not in
/// any tractable class, so only enumeration applies.
pub fn nand_path(n: usize) -> Instance {
    let language = ConstraintLanguage::from_relations([("NAND", Relation::nand())]).unwrap();
    let mut instance = Instance::with_variables(language, (0..n).map(|i| format!("v{i}"))).unwrap();
    for i in 1..n {
        instance.add_constraint("NAND", &[i - 1, i]).unwrap();
    }
    instance
}

/// Disjoint implication 2-cycles: `k` components whose up-sets multiply,
/// so the memoised counter sees `2^k` down-closed choices.
pub fn implication_antichain(k: usize) -> Instance {
    let language = ConstraintLanguage::from_relations([("Implies", Relation::implies())]).unwrap();
    let names = (0..2 * k).map(|i| format!("v{i}"));
    let mut instance = Instance::with_variables(language, names).unwrap();
    for c in 0..k {
        instance
            .add_constraint("Implies", &[2 * c, 2 * c + 1])
            .unwrap();
        instance
            .add_constraint("Implies", &[2 * c + 1, 2 * c])
            .unwrap();
    }
    instance
}
