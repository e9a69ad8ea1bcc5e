use std::collections::HashMap;

use num_bigint::BigUint;

use super::scc::CondensationDag;
use crate::error::{Error, Result};

pub const DEFAULT_COMPONENT_CAP: usize = 30;
const MAX_COMPONENT_CAP: usize = 64;

/// Number of successor-closed sets of components, which is the number of
/// satisfying assignments of a pin-free implication instance.
///
/// Exponential in the worst case. Uses
/// `Count(P) = Count(P \ ↑v) + Count(P \ ↓v)` memoized on the remaining
/// component set `P`, with `↑v`/`↓v` taken inside `P`.
pub fn count_up_sets(dag: &CondensationDag, cap: usize) -> Result<BigUint> {
    let cap = cap.min(MAX_COMPONENT_CAP);
    let n = dag.len();
    if n > cap {
        return Err(Error::TooLarge {
            what: "component count",
            size: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    // Component ids are reverse topological, so successors have smaller ids.
    let mut succ = vec![0u64; n];
    for &(a, b) in &dag.edges {
        succ[a] |= 1 << b;
    }
    let mut up = vec![0u64; n];
    for c in 0..n {
        let mut set = 1u64 << c;
        let mut rest = succ[c];
        while rest != 0 {
            let d = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            set |= up[d];
        }
        up[c] = set;
    }
    let mut down = vec![0u64; n];
    for (c, &set) in up.iter().enumerate() {
        let mut rest = set;
        while rest != 0 {
            let d = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            down[d] |= 1 << c;
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(BigUint::from(count(all, &up, &down, &mut memo)))
}

fn count(p: u64, up: &[u64], down: &[u64], memo: &mut HashMap<u64, u128>) -> u128 {
    if p == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&p) {
        return c;
    }
    let v = p.trailing_zeros() as usize;
    let total = count(p & !up[v], up, down, memo) + count(p & !down[v], up, down, memo);
    memo.insert(p, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upsets(n: usize, edges: &[(usize, usize)]) -> u64 {
        let dag = CondensationDag::new(n, edges.iter().copied());
        count_up_sets(&dag, DEFAULT_COMPONENT_CAP)
            .unwrap()
            .try_into()
            .unwrap()
    }

    /// Successor-closed subsets by direct enumeration.
    fn brute(n: usize, edges: &[(usize, usize)]) -> u64 {
        (0..1u64 << n)
            .filter(|&s| {
                edges
                    .iter()
                    .all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 1)
            })
            .count() as u64
    }

    #[test]
    fn small_posets() {
        assert_eq!(upsets(1, &[]), 2);
        assert_eq!(upsets(2, &[(0, 1)]), 3);
        assert_eq!(upsets(5, &[]), 32);
        assert_eq!(upsets(2, &[(0, 1), (1, 0)]), 2);
    }

    #[test]
    fn matches_enumeration_on_fixed_graphs() {
        let cases: &[(usize, &[(usize, usize)])] = &[
            (4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
            (5, &[(0, 2), (1, 2), (2, 3), (2, 4)]),
            (6, &[(0, 1), (1, 2), (2, 0), (3, 4), (5, 4), (2, 5)]),
        ];
        for &(n, edges) in cases {
            assert_eq!(upsets(n, edges), brute(n, edges));
        }
    }

    #[test]
    fn cap_and_wide_antichains() {
        let dag = CondensationDag::new(31, []);
        assert!(count_up_sets(&dag, DEFAULT_COMPONENT_CAP).is_err());
        let wide = CondensationDag::new(64, []);
        assert_eq!(
            count_up_sets(&wide, 64).unwrap(),
            BigUint::from(1u32) << 64u32
        );
    }
}
