//! Counting locally maximal satisfying assignments of Boolean constraint
//! satisfaction problems.
//!
//! A satisfying assignment is locally maximal when flipping any single 0 to
//! a 1 breaks some constraint. This crate classifies constraint languages
//! by the complexity of counting such assignments, counts them exactly
//! (by enumeration, or in polynomial time for the tractable classes), and
//! builds the gadgets and encodings that transfer hardness between
//! counting problems.
//!
//! ```
//! use maxcsp_core::{count_max_sat, parse};
//!
//! let doc = parse("relation NAND 2 00 01 10\nvar a b\nconstraint NAND a b\n").unwrap();
//! let count = count_max_sat(&doc.instance.unwrap()).unwrap();
//! assert_eq!(count.value, 2u32.into());
//! ```

pub mod affine;
pub mod classify;
mod error;
pub mod format;
pub mod gf2;
pub mod im2;
pub mod instance;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod relation;
pub mod selftest;
pub mod tractable;

pub use affine::{affine_decompose, Equation, LinearSystemF2};
pub use classify::{
    classify_language, find_witnesses, ApproxComplexity, Classification, ExactComplexity, Witnesses,
};
pub use error::{Error, Result};
pub use format::{
    parse, parse_with, print_graph, print_instance, print_language, ParseOptions, ParsedDocument,
};
pub use im2::{im2_decompose, Im2Decomposition};
pub use instance::{Assignment, Constraint, Instance, Variable};
pub use oracle::{
    count_max_sat, count_sat, gadget_profile, CountReport, GadgetProfile, Method, Oracle,
    DEFAULT_CAP,
};
pub use reductions::{
    attach_gadgets, bis_encode, hardness_witness_product, synthesize_gadget, BipartiteGraph,
    GadgetCase, GadgetResult, HardnessTarget, WitnessProduct,
};
pub use relation::{BitTuple, ConstraintLanguage, Property, Relation, MAX_ARITY, MAX_RELATIONS};
pub use tractable::{
    count_max_affine, count_max_im2, count_max_monotone, count_sat_affine, count_sat_im2,
};
