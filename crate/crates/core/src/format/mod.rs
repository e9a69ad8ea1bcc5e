//! Line-oriented text formats for languages, instances and bipartite
//! graphs.
//!
//! ```text
//! # comment
//! relation R 3 000 001 100 011 111
//! var v1 v2 v3 v4 v5
//! constraint R v1 v2 v3
//! left u1 u2
//! right w1
//! edge u1 w1
//! ```

mod parse;

pub use parse::{parse, parse_with, Declaration, DeclarationKind, ParseOptions, ParsedDocument};

use std::fmt::Write;

use crate::instance::Instance;
use crate::reductions::BipartiteGraph;
use crate::relation::ConstraintLanguage;

const NAMES_PER_LINE: usize = 16;

pub fn print_language(language: &ConstraintLanguage) -> String {
    let mut out = String::new();
    for (name, relation) in language.iter() {
        writeln!(out, "relation {name} {} {relation}", relation.arity()).unwrap();
    }
    out
}

/// The instance's language followed by its variables and constraints.
pub fn print_instance(instance: &Instance) -> String {
    let mut out = print_language(instance.language());
    let names: Vec<&str> = instance
        .variables()
        .iter()
        .map(|v| v.name.as_str())
        .collect();
    for chunk in names.chunks(NAMES_PER_LINE) {
        writeln!(out, "var {}", chunk.join(" ")).unwrap();
    }
    for c in instance.constraints() {
        let scope: Vec<&str> = c.scope.iter().map(|&v| instance.variable_name(v)).collect();
        writeln!(
            out,
            "constraint {} {}",
            instance.relation_name(c),
            scope.join(" ")
        )
        .unwrap();
    }
    out
}

pub fn print_graph(graph: &BipartiteGraph) -> String {
    let mut out = String::new();
    for chunk in graph.left().chunks(NAMES_PER_LINE) {
        writeln!(out, "left {}", chunk.join(" ")).unwrap();
    }
    for chunk in graph.right().chunks(NAMES_PER_LINE) {
        writeln!(out, "right {}", chunk.join(" ")).unwrap();
    }
    for &(u, v) in graph.edges() {
        writeln!(out, "edge {} {}", graph.left()[u], graph.right()[v]).unwrap();
    }
    out
}
