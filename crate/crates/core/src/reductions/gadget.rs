//! Synthesis of maximality gadgets for relations that are not essentially
//! monotone.
//!
//! A gadget is an instance over `{R}` with a distinguished variable `r`
//! such that, among satisfying assignments maximal for every variable
//! except possibly `r`, exactly one has `r = 0`, exactly one has `r = 1`,
//! and none fails to be maximal for `r`.
//!
//! The construction first builds a gadget for `R*` (the projection onto
//! non-zero positions), choosing among four cases by whether `R*` is
//! 0-valid and 1-valid, then lifts it to `R` by filling every zero
//! position with one extra variable, which is forced to 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{GadgetProfile, Oracle};
use crate::relation::{BitTuple, ConstraintLanguage, Relation};

/// Name of the variable added when lifting an `R*` gadget to `R`.
pub const LIFT_VARIABLE: &str = "z";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetCase {
    /// `R*` is 0-valid and 1-valid.
    #[serde(rename = "1")]
    Case1,
    /// 0-valid, not 1-valid, and `s ∧ ¬s'` is in `R*`.
    #[serde(rename = "2a")]
    Case2a,
    /// 0-valid, not 1-valid, and `s ∧ ¬s'` is not in `R*`.
    #[serde(rename = "2b")]
    Case2b,
    /// 1-valid, not 0-valid.
    #[serde(rename = "3")]
    Case3,
    /// Neither, and some `s` has `¬s` in `R*` too.
    #[serde(rename = "4a")]
    Case4a,
    /// Neither, and no tuple's complement is in `R*`.
    #[serde(rename = "4b")]
    Case4b,
}

impl fmt::Display for GadgetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetCase::Case1 => "1",
            GadgetCase::Case2a => "2a",
            GadgetCase::Case2b => "2b",
            GadgetCase::Case3 => "3",
            GadgetCase::Case4a => "4a",
            GadgetCase::Case4b => "4b",
        })
    }
}

/// A maximality gadget whose profile has been checked by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetResult {
    pub instance: Instance,
    pub distinguished: usize,
    pub case: GadgetCase,
    /// Whether a variable was added for the zero positions of `R`.
    pub lifted: bool,
    pub profile: GadgetProfile,
    pub transcript: Vec<String>,
}

impl GadgetResult {
    pub fn relation(&self) -> &Relation {
        self.instance.language().by_index(0).1
    }

    pub fn relation_name(&self) -> &str {
        self.instance.language().by_index(0).0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    R,
    X,
    Y,
    W,
}

impl Role {
    fn name(self) -> &'static str {
        match self {
            Role::R => "r",
            Role::X => "x",
            Role::Y => "y",
            Role::W => "w",
        }
    }
}

/// A gadget for `R*` before lifting: variable roles and `R*` scopes.
struct StarGadget {
    case: GadgetCase,
    roles: Vec<Role>,
    scopes: Vec<Vec<Role>>,
    transcript: Vec<String>,
}

struct Star<'a> {
    relation: &'a Relation,
    k: usize,
}

impl Star<'_> {
    fn bit(&self, code: u64, j: usize) -> bool {
        code >> (self.k - 1 - j) & 1 == 1
    }

    fn show(&self, code: u64) -> String {
        BitTuple::new(self.k, code).expect("code fits").to_string()
    }

    fn all(&self, role: Role) -> Vec<Role> {
        vec![role; self.k]
    }

    /// The least tuple with the maximum number of ones, then the least
    /// position `i` with `s_i = 0` that some tuple has set, then the least
    /// such tuple `s'`.
    fn max_ones_pair(&self) -> (u64, usize, u64) {
        let codes = self.relation.codes();
        let m = codes
            .iter()
            .map(|c| c.count_ones())
            .max()
            .expect("nonempty");
        let s = *codes.iter().find(|c| c.count_ones() == m).expect("exists");
        for i in (0..self.k).filter(|&i| !self.bit(s, i)) {
            if let Some(&s2) = codes.iter().find(|&&c| self.bit(c, i)) {
                return (s, i, s2);
            }
        }
        unreachable!("every position of R* is set by some tuple")
    }

    fn build(&self) -> StarGadget {
        let zero_valid = self.relation.is_zero_valid();
        let one_valid = self.relation.is_one_valid();
        let mut transcript = vec![format!(
            "R* has arity {}, {}0-valid, {}1-valid",
            self.k,
            if zero_valid { "" } else { "not " },
            if one_valid { "" } else { "not " }
        )];
        let k = self.k;
        let (case, roles, scopes) = match (zero_valid, one_valid) {
            (true, true) => {
                let s = (0..1u64 << k)
                    .find(|&c| !self.relation.contains_code(c))
                    .expect("a non-monotone relation is not complete");
                transcript.push(format!("s = {} is not in R*", self.show(s)));
                let a = (0..k)
                    .map(|j| if self.bit(s, j) { Role::X } else { Role::R })
                    .collect();
                let b = (0..k)
                    .map(|j| if self.bit(s, j) { Role::R } else { Role::X })
                    .collect();
                (GadgetCase::Case1, vec![Role::R, Role::X], vec![a, b])
            }
            (true, false) => {
                let (s, i, s2) = self.max_ones_pair();
                let t = s & !s2;
                transcript.push(format!(
                    "m = {}, s = {}, i = {}, s' = {}, t = s & !s' = {}",
                    s.count_ones(),
                    self.show(s),
                    i + 1,
                    self.show(s2),
                    self.show(t)
                ));
                let roles = vec![Role::R, Role::X, Role::W];
                if self.relation.contains_code(t) {
                    transcript.push("t is in R*".into());
                    let a = (0..k)
                        .map(|j| match (self.bit(s2, j), self.bit(s, j)) {
                            (true, _) => Role::X,
                            (false, false) => Role::W,
                            (false, true) => Role::R,
                        })
                        .collect();
                    (GadgetCase::Case2a, roles, vec![self.all(Role::W), a])
                } else {
                    transcript.push("t is not in R*".into());
                    let (a, b) = (0..k)
                        .map(|j| match (self.bit(s, j), self.bit(s2, j)) {
                            (false, _) => (Role::W, Role::W),
                            (true, false) => (Role::X, Role::R),
                            (true, true) => (Role::R, Role::X),
                        })
                        .unzip();
                    (GadgetCase::Case2b, roles, vec![self.all(Role::W), a, b])
                }
            }
            (false, true) => {
                let (s, i) = self
                    .relation
                    .codes()
                    .iter()
                    .flat_map(|&s| (0..k).map(move |i| (s, i)))
                    .find(|&(s, i)| {
                        !self.bit(s, i) && !self.relation.contains_code(s | 1 << (k - 1 - i))
                    })
                    .expect("R* is not monotone");
                let s2 = s | 1 << (k - 1 - i);
                transcript.push(format!(
                    "s = {}, i = {}, s' = s | e_i = {} is not in R*",
                    self.show(s),
                    i + 1,
                    self.show(s2)
                ));
                let (a, b) = (0..k)
                    .map(|j| {
                        if j == i {
                            (Role::X, Role::R)
                        } else if self.bit(s2, j) {
                            (Role::Y, Role::Y)
                        } else {
                            (Role::R, Role::X)
                        }
                    })
                    .unzip();
                (
                    GadgetCase::Case3,
                    vec![Role::R, Role::X, Role::Y],
                    vec![self.all(Role::Y), a, b],
                )
            }
            (false, false) => {
                let full = (1u64 << k) - 1;
                let complemented = self
                    .relation
                    .codes()
                    .iter()
                    .copied()
                    .find(|&s| self.relation.contains_code(!s & full));
                if let Some(s) = complemented {
                    transcript.push(format!(
                        "s = {} and its complement {} are both in R*",
                        self.show(s),
                        self.show(!s & full)
                    ));
                    let a = (0..k)
                        .map(|j| if self.bit(s, j) { Role::X } else { Role::R })
                        .collect();
                    (GadgetCase::Case4a, vec![Role::R, Role::X], vec![a])
                } else {
                    let (s, i, s2) = self.max_ones_pair();
                    transcript.push(format!(
                        "no tuple has its complement in R*; m = {}, s = {}, i = {}, s' = {}",
                        s.count_ones(),
                        self.show(s),
                        i + 1,
                        self.show(s2)
                    ));
                    let (a, b) = (0..k)
                        .map(|j| match (self.bit(s, j), self.bit(s2, j)) {
                            (false, false) => (Role::W, Role::W),
                            (false, true) => (Role::W, Role::X),
                            (true, false) => (Role::Y, Role::R),
                            (true, true) => (Role::Y, Role::Y),
                        })
                        .unzip();
                    (
                        GadgetCase::Case4b,
                        vec![Role::R, Role::X, Role::Y, Role::W],
                        vec![a, b],
                    )
                }
            }
        };
        transcript.push(format!("case {case}"));
        StarGadget {
            case,
            roles,
            scopes,
            transcript,
        }
    }
}

/// Builds and verifies a maximality gadget for `relation`, named `name`
/// in the gadget's language.
pub fn synthesize_gadget(name: &str, relation: &Relation) -> Result<GadgetResult> {
    synthesize_gadget_with(name, relation, &Oracle::default())
}

pub fn synthesize_gadget_with(
    name: &str,
    relation: &Relation,
    oracle: &Oracle,
) -> Result<GadgetResult> {
    if relation.is_essentially_monotone() {
        return Err(Error::EssentiallyMonotone);
    }
    let (star, kept) = relation.project_nonzero()?;
    let star_gadget = Star {
        relation: &star,
        k: star.arity(),
    }
    .build();
    let mut transcript = star_gadget.transcript;

    let lifted = kept.len() < relation.arity();
    let language = ConstraintLanguage::from_relations([(name, relation.clone())])?;
    let mut names: Vec<&str> = star_gadget.roles.iter().map(|r| r.name()).collect();
    if lifted {
        names.push(LIFT_VARIABLE);
        let zeros: Vec<String> = relation
            .zero_positions()
            .iter()
            .map(|p| (p + 1).to_string())
            .collect();
        transcript.push(format!(
            "lifted to R: `{LIFT_VARIABLE}` fills zero positions {{{}}}",
            zeros.join(", ")
        ));
    }
    let mut instance = Instance::with_variables(language, names)?;
    let id = |role: Role| {
        star_gadget
            .roles
            .iter()
            .position(|&r| r == role)
            .expect("role declared")
    };
    let lift_id = star_gadget.roles.len();
    for scope in &star_gadget.scopes {
        let mut full = vec![lift_id; relation.arity()];
        for (j, &role) in scope.iter().enumerate() {
            full[kept[j]] = id(role);
        }
        instance.add_constraint(name, &full)?;
    }

    let profile = oracle.gadget_profile(&instance, 0)?;
    if !profile.is_gadget() {
        return Err(Error::VerificationFailed {
            n_max0: profile.n_max0.to_string(),
            n_max1: profile.n_max1.to_string(),
            n_bad: profile.n_bad.to_string(),
        });
    }
    transcript.push(format!("verified profile {profile}"));
    Ok(GadgetResult {
        instance,
        distinguished: 0,
        case: star_gadget.case,
        lifted,
        profile,
        transcript,
    })
}
