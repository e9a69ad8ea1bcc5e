use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::relation::{is_valid_name, ConstraintLanguage, Relation};

/// A bipartite graph with named left and right vertices. Edges are
/// `(left index, right index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new<S: Into<String>>(
        left: impl IntoIterator<Item = S>,
        right: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let left: Vec<String> = left.into_iter().map(Into::into).collect();
        let right: Vec<String> = right.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in left.iter().chain(&right) {
            if !is_valid_name(name) {
                return Err(Error::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges: BTreeSet::new(),
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.left.len() {
            return Err(Error::VariableOutOfRange {
                index: u,
                len: self.left.len(),
            });
        }
        if v >= self.right.len() {
            return Err(Error::VariableOutOfRange {
                index: v,
                len: self.right.len(),
            });
        }
        self.edges.insert((u, v));
        Ok(())
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Vertex sets as masks over `left ++ right`, bit `i` for vertex `i`.
    fn independent(&self, set: u64) -> bool {
        let l = self.left.len();
        self.edges
            .iter()
            .all(|&(u, v)| set >> u & 1 == 0 || set >> (l + v) & 1 == 0)
    }
}

/// One `Implies(u, v)` per edge `(u, v)`, over the variables `left ++ right`.
///
/// Satisfying assignments correspond to independent sets: on the left, 1
/// means "in the set"; on the right, 1 means "not in the set".
pub fn bis_encode(graph: &BipartiteGraph) -> Instance {
    let language = ConstraintLanguage::from_relations([("Implies", Relation::implies())])
        .expect("one relation");
    let names = graph.left.iter().chain(&graph.right).cloned();
    let mut instance = Instance::with_variables(language, names).expect("names validated");
    let l = graph.left.len();
    for &(u, v) in &graph.edges {
        instance
            .add_constraint("Implies", &[u, l + v])
            .expect("valid scope");
    }
    instance
}

fn check_size(graph: &BipartiteGraph, cap: usize) -> Result<()> {
    if graph.vertex_count() > cap {
        return Err(Error::TooLarge {
            what: "vertex count",
            size: graph.vertex_count(),
            cap,
        });
    }
    Ok(())
}

/// Independent sets by enumeration of all vertex subsets.
pub fn count_independent_sets(graph: &BipartiteGraph, cap: usize) -> Result<u64> {
    check_size(graph, cap.min(62))?;
    Ok((0..1u64 << graph.vertex_count())
        .filter(|&s| graph.independent(s))
        .count() as u64)
}

/// Inclusion-maximal independent sets by enumeration.
pub fn count_maximal_independent_sets(graph: &BipartiteGraph, cap: usize) -> Result<u64> {
    check_size(graph, cap.min(62))?;
    let n = graph.vertex_count();
    Ok((0..1u64 << n)
        .filter(|&s| {
            graph.independent(s)
                && (0..n).all(|v| s >> v & 1 == 1 || !graph.independent(s | 1 << v))
        })
        .count() as u64)
}
