//! Decomposition of relations into conjunctions of `Implies`, `U0` and `U1`
//! on their own positions.

use std::collections::BTreeSet;
use std::fmt;

use crate::relation::Relation;

/// A conjunction of pins and implications over positions `0..arity`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Im2Decomposition {
    pub arity: usize,
    pub pins0: BTreeSet<usize>,
    pub pins1: BTreeSet<usize>,
    /// `(i, j)` stands for `Implies(x_i, x_j)`; never `i == j`.
    pub implications: BTreeSet<(usize, usize)>,
}

impl Im2Decomposition {
    fn bit(&self, i: usize) -> u64 {
        1 << (self.arity - 1 - i)
    }

    /// Whether the tuple with the given code satisfies every conjunct.
    pub fn is_satisfied_by(&self, code: u64) -> bool {
        self.pins0.iter().all(|&i| code & self.bit(i) == 0)
            && self.pins1.iter().all(|&i| code & self.bit(i) != 0)
            && self
                .implications
                .iter()
                .all(|&(i, j)| code & self.bit(i) == 0 || code & self.bit(j) != 0)
    }

    /// Every code in `0..2^arity` satisfying the conjunction.
    pub fn solutions(&self) -> Vec<u64> {
        let zero_mask = self.pins0.iter().fold(0, |m, &i| m | self.bit(i));
        let one_mask = self.pins1.iter().fold(0, |m, &i| m | self.bit(i));
        let mut successors = vec![0u64; self.arity];
        for &(i, j) in &self.implications {
            successors[i] |= self.bit(j);
        }
        (0..1u64 << self.arity)
            .filter(|&a| {
                a & zero_mask == 0
                    && a & one_mask == one_mask
                    && (0..self.arity)
                        .all(|i| a & self.bit(i) == 0 || a & successors[i] == successors[i])
            })
            .collect()
    }

    /// An equivalent, smaller conjunction for display: implications absorbed
    /// by pins are dropped, then implications implied by the remaining ones.
    pub fn minimized(&self) -> Im2Decomposition {
        let mut kept: Vec<(usize, usize)> = self
            .implications
            .iter()
            .copied()
            .filter(|(i, j)| {
                !(self.pins0.contains(i)
                    || self.pins0.contains(j)
                    || self.pins1.contains(i)
                    || self.pins1.contains(j))
            })
            .collect();
        let mut idx = 0;
        while idx < kept.len() {
            let (from, to) = kept[idx];
            let others: Vec<(usize, usize)> = kept
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, &e)| e)
                .collect();
            if reaches(&others, from, to) {
                kept.remove(idx);
            } else {
                idx += 1;
            }
        }
        Im2Decomposition {
            arity: self.arity,
            pins0: self.pins0.clone(),
            pins1: self.pins1.clone(),
            implications: kept.into_iter().collect(),
        }
    }
}

fn reaches(edges: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            if a == u && seen.insert(b) {
                if b == to {
                    return true;
                }
                stack.push(b);
            }
        }
    }
    false
}

impl fmt::Display for Im2Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        parts.extend(self.pins0.iter().map(|i| format!("U0(x{})", i + 1)));
        parts.extend(
            self.implications
                .iter()
                .map(|(i, j)| format!("Implies(x{}, x{})", i + 1, j + 1)),
        );
        parts.extend(self.pins1.iter().map(|i| format!("U1(x{})", i + 1)));
        if parts.is_empty() {
            f.write_str("true")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Returns the largest conjunction of pins and implications that every
/// tuple of `relation` satisfies, provided its solution set is exactly the
/// relation. Any valid decomposition is a sub-conjunction of this one, so
/// `None` means the relation is not in IM2.
pub fn im2_decompose(relation: &Relation) -> Option<Im2Decomposition> {
    let k = relation.arity();
    let codes = relation.codes();
    let bit = |i: usize| 1u64 << (k - 1 - i);
    let mut implications = BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && codes.iter().all(|&t| t & bit(i) == 0 || t & bit(j) != 0) {
                implications.insert((i, j));
            }
        }
    }
    let decomposition = Im2Decomposition {
        arity: k,
        pins0: relation.zero_positions().into_iter().collect(),
        pins1: relation.one_positions().into_iter().collect(),
        implications,
    };
    (decomposition.solutions().len() == relation.len()).then_some(decomposition)
}
