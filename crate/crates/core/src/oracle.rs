//! Exhaustive counters over all `2^n` assignments.
//!
//! These are the ground truth every other counter and construction in the
//! crate is checked against, so they stay deliberately simple: assignments
//! are bitmasks (bit `v` is variable `v`) and each constraint is evaluated
//! by packing its scope bits into a relation code.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relation::Relation;

pub const DEFAULT_CAP: usize = 24;

/// Below this many variables enumeration runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 16;
const CHUNK_BITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Monotone,
    Affine,
    Im2Pipeline,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Monotone => "monotone",
            Method::Affine => "affine",
            Method::Im2Pipeline => "im2-pipeline",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub value: BigUint,
    pub method: Method,
    pub notes: Vec<String>,
}

impl CountReport {
    pub fn new(value: impl Into<BigUint>, method: Method) -> Self {
        CountReport {
            value: value.into(),
            method,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }
}

/// Outcome counts for an instance with a distinguished variable `r`, over
/// satisfying assignments maximal for every variable other than `r`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetProfile {
    /// `r = 0` and maximal for `r`.
    pub n_max0: u64,
    /// `r = 1`.
    pub n_max1: u64,
    /// `r = 0` and raising `r` keeps the assignment satisfying.
    pub n_bad: u64,
}

impl GadgetProfile {
    pub fn is_gadget(&self) -> bool {
        (self.n_max0, self.n_max1, self.n_bad) == (1, 1, 0)
    }

    pub fn total(&self) -> u64 {
        self.n_max0 + self.n_max1 + self.n_bad
    }
}

impl fmt::Display for GadgetProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_max0, self.n_max1, self.n_bad)
    }
}

/// An instance flattened for fast repeated evaluation on bitmask assignments.
pub(crate) struct Packed<'a> {
    n: usize,
    constraints: Vec<(&'a Relation, Vec<u32>)>,
    occurs: Vec<Vec<usize>>,
}

impl<'a> Packed<'a> {
    pub(crate) fn new(instance: &'a Instance) -> Self {
        let n = instance.variable_count();
        let mut occurs = vec![Vec::new(); n];
        let constraints = instance
            .constraints()
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                for &v in &c.scope {
                    if occurs[v].last() != Some(&ci) {
                        occurs[v].push(ci);
                    }
                }
                let scope = c.scope.iter().map(|&v| v as u32).collect();
                (instance.relation(c), scope)
            })
            .collect();
        Packed {
            n,
            constraints,
            occurs,
        }
    }

    #[inline]
    fn holds(&self, ci: usize, mask: u64) -> bool {
        let (relation, scope) = &self.constraints[ci];
        let code = scope
            .iter()
            .fold(0u64, |acc, &v| (acc << 1) | (mask >> v & 1));
        relation.contains_code(code)
    }

    #[inline]
    pub(crate) fn satisfies(&self, mask: u64) -> bool {
        (0..self.constraints.len()).all(|ci| self.holds(ci, mask))
    }

    /// Assumes `mask` is satisfying.
    #[inline]
    pub(crate) fn maximal_for(&self, mask: u64, v: usize) -> bool {
        if mask >> v & 1 == 1 {
            return true;
        }
        let raised = mask | 1 << v;
        !self.occurs[v].iter().all(|&ci| self.holds(ci, raised))
    }

    /// Assumes `mask` is satisfying.
    #[inline]
    pub(crate) fn locally_maximal(&self, mask: u64) -> bool {
        (0..self.n).all(|v| self.maximal_for(mask, v))
    }
}

/// Brute-force counter with a cap on the number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    /// Caps above 62 are clamped; masks must fit a `u64`.
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap: cap.min(62) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, instance: &Instance) -> Result<()> {
        let n = instance.variable_count();
        if n > self.cap {
            return Err(Error::TooLarge {
                what: "variable count",
                size: n,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Folds `visit` over every mask in `0..2^n`, in parallel chunks for
    /// large `n`. Partial results are combined with `combine`, which must be
    /// associative and commutative so the result is order independent.
    fn fold<T, F, C>(&self, n: usize, visit: F, combine: C) -> T
    where
        T: Default + Send,
        F: Fn(&mut T, u64) + Sync,
        C: Fn(T, T) -> T + Sync + Send,
    {
        let total = 1u64 << n;
        let run = |lo: u64, hi: u64| {
            let mut acc = T::default();
            for mask in lo..hi {
                visit(&mut acc, mask);
            }
            acc
        };
        if n < PARALLEL_THRESHOLD {
            return run(0, total);
        }
        let chunk = 1u64 << CHUNK_BITS;
        (0..total / chunk)
            .into_par_iter()
            .map(|c| run(c * chunk, (c + 1) * chunk))
            .reduce(T::default, &combine)
    }

    pub fn count_sat(&self, instance: &Instance) -> Result<CountReport> {
        self.check(instance)?;
        let packed = Packed::new(instance);
        let n = instance.variable_count();
        let count: u64 = self.fold(
            n,
            |acc, mask| *acc += packed.satisfies(mask) as u64,
            |a, b| a + b,
        );
        Ok(CountReport::new(count, Method::Brute).note(format!("enumerated 2^{n} assignments")))
    }

    pub fn count_max_sat(&self, instance: &Instance) -> Result<CountReport> {
        self.check(instance)?;
        let packed = Packed::new(instance);
        let n = instance.variable_count();
        let count: u64 = self.fold(
            n,
            |acc, mask| *acc += (packed.satisfies(mask) && packed.locally_maximal(mask)) as u64,
            |a, b| a + b,
        );
        Ok(CountReport::new(count, Method::Brute).note(format!("enumerated 2^{n} assignments")))
    }

    /// Locally maximal satisfying assignments as masks, in increasing order.
    pub fn max_sat_assignments(&self, instance: &Instance) -> Result<Vec<u64>> {
        self.check(instance)?;
        let packed = Packed::new(instance);
        Ok((0..1u64 << instance.variable_count())
            .filter(|&m| packed.satisfies(m) && packed.locally_maximal(m))
            .collect())
    }

    /// Satisfying assignments as masks, in increasing order.
    pub fn sat_assignments(&self, instance: &Instance) -> Result<Vec<u64>> {
        self.check(instance)?;
        let packed = Packed::new(instance);
        Ok((0..1u64 << instance.variable_count())
            .filter(|&m| packed.satisfies(m))
            .collect())
    }

    pub fn gadget_profile(&self, instance: &Instance, r: usize) -> Result<GadgetProfile> {
        self.check(instance)?;
        let n = instance.variable_count();
        if r >= n {
            return Err(Error::VariableOutOfRange { index: r, len: n });
        }
        let packed = Packed::new(instance);
        Ok(self.fold(
            n,
            |p: &mut GadgetProfile, mask| {
                if !packed.satisfies(mask) || !(0..n).all(|v| v == r || packed.maximal_for(mask, v))
                {
                    return;
                }
                if mask >> r & 1 == 1 {
                    p.n_max1 += 1;
                } else if packed.maximal_for(mask, r) {
                    p.n_max0 += 1;
                } else {
                    p.n_bad += 1;
                }
            },
            |a, b| GadgetProfile {
                n_max0: a.n_max0 + b.n_max0,
                n_max1: a.n_max1 + b.n_max1,
                n_bad: a.n_bad + b.n_bad,
            },
        ))
    }
}

pub fn count_sat(instance: &Instance) -> Result<CountReport> {
    Oracle::default().count_sat(instance)
}

pub fn count_max_sat(instance: &Instance) -> Result<CountReport> {
    Oracle::default().count_max_sat(instance)
}

pub fn gadget_profile(instance: &Instance, r: usize) -> Result<GadgetProfile> {
    Oracle::default().gadget_profile(instance, r)
}
