//! Seeded generators for relations, languages, instances and bipartite
//! graphs. Used by the self-test suites, property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::LinearSystemF2;
use crate::im2::Im2Decomposition;
use crate::instance::Instance;
use crate::reductions::BipartiteGraph;
use crate::relation::{mask, ConstraintLanguage, Property, Relation};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every nonempty relation of the given arity, in order of membership
/// bitmap. Arity must be at most 4.
pub fn all_relations(arity: usize) -> impl Iterator<Item = Relation> {
    assert!(
        (1..=4).contains(&arity),
        "arity {arity} is too large to enumerate"
    );
    let tuples = 1u64 << arity;
    (1u64..1 << tuples).map(move |bitmap| {
        Relation::new(arity, (0..tuples).filter(|t| bitmap >> t & 1 == 1)).expect("nonempty")
    })
}

/// Each tuple kept with probability `density`; never empty.
pub fn random_relation<R: Rng>(rng: &mut R, arity: usize, density: f64) -> Relation {
    let mut codes: Vec<u64> = (0..1u64 << arity)
        .filter(|_| rng.gen_bool(density))
        .collect();
    if codes.is_empty() {
        codes.push(rng.gen_range(0..1u64 << arity));
    }
    Relation::new(arity, codes).expect("nonempty")
}

/// A zero-padded up-closed relation, occasionally the all-zero relation.
pub fn random_essentially_monotone<R: Rng>(rng: &mut R, max_arity: usize) -> Relation {
    let arity = rng.gen_range(1..=max_arity);
    if rng.gen_ratio(1, 12) {
        return Relation::new(arity, [0]).expect("nonempty");
    }
    let zeros: Vec<usize> = loop {
        let z: Vec<usize> = (0..arity).filter(|_| rng.gen_ratio(1, 4)).collect();
        if z.len() < arity {
            break z;
        }
    };
    let free: u64 = (0..arity)
        .filter(|p| !zeros.contains(p))
        .map(|p| 1u64 << (arity - 1 - p))
        .sum();
    let generators: Vec<u64> = (0..rng.gen_range(1..=3))
        .map(|_| rng.gen_range(0..=mask(arity)) & free)
        .collect();
    let codes =
        (0..=mask(arity)).filter(|&t| t & !free == 0 && generators.iter().any(|&g| g & !t == 0));
    Relation::new(arity, codes).expect("contains the generators")
}

/// Solution set of a random consistent linear system over GF(2).
pub fn random_affine<R: Rng>(rng: &mut R, max_arity: usize) -> Relation {
    loop {
        let arity = rng.gen_range(1..=max_arity);
        let mut system = LinearSystemF2::new(0..arity);
        for _ in 0..rng.gen_range(0..=arity) {
            let support: Vec<usize> = (0..arity).filter(|_| rng.gen_bool(0.5)).collect();
            system.push(support, rng.gen_bool(0.5));
        }
        let codes: Vec<u64> = (0..=mask(arity))
            .filter(|&t| system.is_satisfied_by(|p| t >> (arity - 1 - p) & 1 == 1))
            .collect();
        if let Ok(r) = Relation::new(arity, codes) {
            return r;
        }
    }
}

/// Solution set of a random satisfiable conjunction of pins and
/// implications.
pub fn random_im2<R: Rng>(rng: &mut R, max_arity: usize) -> Relation {
    loop {
        let arity = rng.gen_range(1..=max_arity);
        let mut d = Im2Decomposition {
            arity,
            ..Default::default()
        };
        for p in 0..arity {
            match rng.gen_range(0..8) {
                0 => {
                    d.pins0.insert(p);
                }
                1 => {
                    d.pins1.insert(p);
                }
                _ => {}
            }
        }
        for _ in 0..rng.gen_range(0..=arity) {
            let (a, b) = (rng.gen_range(0..arity), rng.gen_range(0..arity));
            if a != b {
                d.implications.insert((a, b));
            }
        }
        if let Ok(r) = Relation::new(arity, d.solutions()) {
            return r;
        }
    }
}

pub fn random_with_property<R: Rng>(rng: &mut R, property: Property, max_arity: usize) -> Relation {
    match property {
        Property::EssentiallyMonotone => random_essentially_monotone(rng, max_arity),
        Property::Affine => random_affine(rng, max_arity),
        Property::Im2 => random_im2(rng, max_arity),
    }
}

/// Relations named `R0`, `R1`, ..., all with `property`.
pub fn random_language<R: Rng>(
    rng: &mut R,
    property: Property,
    size: usize,
    max_arity: usize,
) -> ConstraintLanguage {
    ConstraintLanguage::from_relations((0..size).map(|i| {
        (
            format!("R{i}"),
            random_with_property(rng, property, max_arity),
        )
    }))
    .expect("valid language")
}

/// Variables `v0..v{n-1}` and `m` constraints with uniformly random
/// relations and scopes. Scopes may repeat variables.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    language: &ConstraintLanguage,
    n: usize,
    m: usize,
) -> Instance {
    let names = (0..n).map(|i| format!("v{i}"));
    let mut instance = Instance::with_variables(language.clone(), names).expect("valid names");
    if n == 0 || language.is_empty() {
        return instance;
    }
    for _ in 0..m {
        let index = rng.gen_range(0..language.len());
        let (name, relation) = language.by_index(index);
        let scope: Vec<usize> = (0..relation.arity()).map(|_| rng.gen_range(0..n)).collect();
        let name = name.to_string();
        instance.add_constraint(&name, &scope).expect("valid scope");
    }
    instance
}

/// Same variables and constraints with variable ids relabelled by a random
/// permutation and the constraint list shuffled.
pub fn shuffle_instance<R: Rng>(rng: &mut R, instance: &Instance) -> (Instance, Vec<usize>) {
    let n = instance.variable_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut names = vec![String::new(); n];
    for v in instance.variables() {
        names[perm[v.id]] = v.name.clone();
    }
    let mut out = Instance::with_variables(instance.language().clone(), names).expect("same names");
    let mut constraints = instance.constraints().to_vec();
    constraints.shuffle(rng);
    for c in constraints {
        let scope: Vec<usize> = c.scope.iter().map(|&v| perm[v]).collect();
        let name = instance.relation_name(&c).to_string();
        out.add_constraint(&name, &scope).expect("same scope shape");
    }
    (out, perm)
}

/// Each edge present with probability `density`.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    left: usize,
    right: usize,
    density: f64,
) -> BipartiteGraph {
    let mut graph = BipartiteGraph::new(
        (0..left).map(|i| format!("l{i}")),
        (0..right).map(|i| format!("r{i}")),
    )
    .expect("distinct names");
    for u in 0..left {
        for v in 0..right {
            if rng.gen_bool(density) {
                graph.add_edge(u, v).expect("in range");
            }
        }
    }
    graph
}
