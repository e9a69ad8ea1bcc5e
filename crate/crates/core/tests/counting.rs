use maxcsp_core::random::{
    random_instance, random_language, random_relation, seeded, shuffle_instance,
};
use maxcsp_core::tractable::DEFAULT_COMPONENT_CAP;
use maxcsp_core::{
    classify_language, count_max_sat, count_sat, count_sat_affine, count_sat_im2, parse,
    print_instance, Assignment, ConstraintLanguage, Instance, Oracle, Property,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

fn any_language(seed: u64) -> ConstraintLanguage {
    let mut rng = seeded(seed);
    let size = rng.gen_range(1..=3);
    ConstraintLanguage::from_relations((0..size).map(|i| {
        let arity = rng.gen_range(1..=3);
        let density = rng.gen_range(0.2..0.9);
        (format!("R{i}"), random_relation(&mut rng, arity, density))
    }))
    .unwrap()
}

fn instance(seed: u64, max_vars: usize) -> Instance {
    let language = any_language(seed);
    let mut rng = seeded(seed ^ 0x9e37);
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=2 * n);
    random_instance(&mut rng, &language, n, m)
}

fn value(i: &Instance) -> (BigUint, BigUint) {
    (count_sat(i).unwrap().value, count_max_sat(i).unwrap().value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_matches_per_assignment_predicates(seed in any::<u64>()) {
        let i = instance(seed, 9);
        let n = i.variable_count();
        let mut sat = 0u32;
        let mut max = 0u32;
        for mask in 0..1u64 << n {
            let sigma = Assignment::from_mask(mask, n);
            if i.evaluate(&sigma).unwrap() {
                sat += 1;
                if i.is_locally_maximal(&sigma).unwrap() {
                    max += 1;
                }
            }
        }
        prop_assert_eq!(value(&i), (sat.into(), max.into()));
    }

    #[test]
    fn locally_maximal_never_exceeds_satisfying(seed in any::<u64>()) {
        let (sat, max) = value(&instance(seed, 12));
        prop_assert!(max <= sat);
        prop_assert!(sat == BigUint::from(0u32) || max >= BigUint::from(1u32));
    }

    #[test]
    fn counts_ignore_variable_and_constraint_order(seed in any::<u64>()) {
        let i = instance(seed, 12);
        let (j, _) = shuffle_instance(&mut seeded(seed), &i);
        prop_assert_eq!(value(&i), value(&j));
    }

    #[test]
    fn duplicate_constraints_change_nothing(seed in any::<u64>()) {
        let i = instance(seed, 12);
        let mut j = i.clone();
        for c in i.constraints() {
            j.push_constraint(c.clone()).unwrap();
        }
        prop_assert_eq!(value(&i), value(&j));
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let i = instance(seed, 20);
        let back = parse(&print_instance(&i)).unwrap().instance.unwrap();
        prop_assert_eq!(back, i);
    }

    #[test]
    fn classification_ignores_names_and_order(seed in any::<u64>()) {
        let language = any_language(seed);
        let renamed = ConstraintLanguage::from_relations(
            language
                .iter()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .map(|(name, r)| (format!("{name}_renamed"), r.clone())),
        )
        .unwrap();
        let a = classify_language(&language).unwrap();
        let b = classify_language(&renamed).unwrap();
        prop_assert_eq!((a.exact, a.approx), (b.exact, b.approx));
    }

    #[test]
    fn affine_satisfying_counts(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let language = random_language(&mut rng, Property::Affine, 3, 4);
        let n = rng.gen_range(1..=14);
        let m = rng.gen_range(0..=n);
        let i = random_instance(&mut rng, &language, n, m);
        prop_assert_eq!(count_sat_affine(&i).unwrap().value, count_sat(&i).unwrap().value);
    }

    #[test]
    fn im2_satisfying_counts(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let language = random_language(&mut rng, Property::Im2, 3, 3);
        let n = rng.gen_range(1..=14);
        let m = rng.gen_range(0..=2 * n);
        let i = random_instance(&mut rng, &language, n, m);
        prop_assert_eq!(
            count_sat_im2(&i, DEFAULT_COMPONENT_CAP).unwrap().value,
            count_sat(&i).unwrap().value
        );
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    // 18 variables crosses the parallel threshold.
    let doc = parse(
        "relation NAND 2 00 01 10\nrelation OR 2 01 10 11\n\
         var a b c d e f g h i j k l m n o p q r\n\
         constraint NAND a b\nconstraint NAND b c\nconstraint OR c d\nconstraint NAND e f\n\
         constraint OR f g\nconstraint NAND g h\nconstraint NAND i j\nconstraint OR k l\n\
         constraint NAND m n\nconstraint NAND o p\nconstraint OR q r\nconstraint NAND r a\n",
    )
    .unwrap();
    let i = doc.instance.unwrap();
    let oracle = Oracle::default();
    let maximal = oracle.max_sat_assignments(&i).unwrap();
    assert_eq!(
        BigUint::from(maximal.len()),
        oracle.count_max_sat(&i).unwrap().value
    );
    let sat = oracle.sat_assignments(&i).unwrap();
    assert_eq!(
        BigUint::from(sat.len()),
        oracle.count_sat(&i).unwrap().value
    );
    for &m in maximal.iter().step_by(97) {
        assert!(i.is_locally_maximal(&Assignment::from_mask(m, 18)).unwrap());
    }
}
