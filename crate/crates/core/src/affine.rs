//! Linear systems over F2 and the decomposition of affine relations into
//! linear equations on their own positions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf2::{null_space, rref, BitRow};
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub support: BTreeSet<usize>,
    pub rhs: bool,
}

impl Equation {
    pub fn holds(&self, value: impl Fn(usize) -> bool) -> bool {
        self.support.iter().filter(|&&v| value(v)).count() % 2 == usize::from(self.rhs)
    }
}

/// A system of XOR equations over a fixed list of variables.
///
/// Equations whose support cancels to nothing are not stored: with rhs 0
/// they are dropped, with rhs 1 they set the `inconsistent` flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystemF2 {
    variables: Vec<usize>,
    equations: Vec<Equation>,
    inconsistent: bool,
}

/// Result of eliminating a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    pub consistent: bool,
}

impl LinearSystemF2 {
    pub fn new(variables: impl IntoIterator<Item = usize>) -> Self {
        let mut variables: Vec<usize> = variables.into_iter().collect();
        variables.sort_unstable();
        variables.dedup();
        LinearSystemF2 {
            variables,
            equations: Vec::new(),
            inconsistent: false,
        }
    }

    /// Adds `⊕ support = rhs`. Repeated variables cancel in pairs.
    ///
    /// Panics if a variable is not part of the system.
    pub fn push(&mut self, support: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut set = BTreeSet::new();
        for v in support {
            assert!(
                self.variables.binary_search(&v).is_ok(),
                "variable {v} is not part of the system"
            );
            if !set.insert(v) {
                set.remove(&v);
            }
        }
        if set.is_empty() {
            self.inconsistent |= rhs;
        } else {
            self.equations.push(Equation { support: set, rhs });
        }
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn is_flagged_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Variables occurring in at least one stored equation.
    pub fn constrained_variables(&self) -> BTreeSet<usize> {
        self.equations
            .iter()
            .flat_map(|e| e.support.iter().copied())
            .collect()
    }

    pub fn is_satisfied_by(&self, value: impl Fn(usize) -> bool) -> bool {
        !self.inconsistent && self.equations.iter().all(|e| e.holds(&value))
    }

    pub fn eliminate(&self) -> Elimination {
        if self.inconsistent {
            return Elimination {
                rank: 0,
                consistent: false,
            };
        }
        let ncols = self.variables.len();
        let mut rows: Vec<BitRow> = self
            .equations
            .iter()
            .map(|e| {
                let mut row = BitRow::zeros(ncols + 1);
                for v in &e.support {
                    let col = self.variables.binary_search(v).expect("known variable");
                    row.set(col, true);
                }
                row.set(ncols, e.rhs);
                row
            })
            .collect();
        let pivots = rref(&mut rows, ncols + 1);
        let consistent = pivots.last() != Some(&ncols);
        let rank = pivots.iter().filter(|&&p| p < ncols).count();
        Elimination { rank, consistent }
    }

    /// Number of solutions over all of `variables`.
    pub fn count_solutions(&self) -> BigUint {
        let e = self.eliminate();
        if e.consistent {
            BigUint::one() << (self.variables.len() - e.rank)
        } else {
            BigUint::zero()
        }
    }
}

impl fmt::Display for LinearSystemF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inconsistent {
            return f.write_str("0 = 1");
        }
        let parts: Vec<String> = self.equations.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "{} = {}", terms.join(" + "), u8::from(self.rhs))
    }
}

fn code_row(code: u64, arity: usize) -> BitRow {
    let mut row = BitRow::zeros(arity);
    for i in 0..arity {
        row.set(i, code >> (arity - 1 - i) & 1 == 1);
    }
    row
}

/// Expresses `relation` as a linear system over its positions `0..arity`,
/// or returns `None` if it is not affine.
///
/// The differences `t ⊕ t0` against the least tuple `t0` span a space of
/// dimension `d`; the relation is affine exactly when it has `2^d` tuples.
/// The equations are a basis of the orthogonal complement, with right-hand
/// sides read off `t0`.
pub fn affine_decompose(relation: &Relation) -> Option<LinearSystemF2> {
    let k = relation.arity();
    let codes = relation.codes();
    let base = codes[0];
    let mut rows: Vec<BitRow> = codes[1..].iter().map(|&t| code_row(t ^ base, k)).collect();
    let pivots = rref(&mut rows, k);
    if relation.len() != 1usize << pivots.len() {
        return None;
    }
    let base_row = code_row(base, k);
    let mut system = LinearSystemF2::new(0..k);
    for c in null_space(&rows, &pivots, k) {
        let rhs = c.ones().filter(|&i| base_row.get(i)).count() % 2 == 1;
        system.push(c.ones(), rhs);
    }
    Some(system)
}
