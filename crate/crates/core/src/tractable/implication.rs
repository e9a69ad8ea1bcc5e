//! Instances over `{Implies, U0, U1}` viewed as a digraph with pinned
//! vertices, and the two count-preserving simplifications used by the IM2
//! counter: pruning forced variables and eliminating singleton components.

use std::collections::BTreeSet;

use super::require_property;
use super::scc::{strongly_connected_components, CondensationDag};
use crate::error::Result;
use crate::im2::im2_decompose;
use crate::instance::Instance;
use crate::relation::{ConstraintLanguage, Property, Relation};

/// Edge `(u, v)` stands for `Implies(u, v)`. Self-loops are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationInstance {
    names: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    pinned0: BTreeSet<usize>,
    pinned1: BTreeSet<usize>,
}

impl ImplicationInstance {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        ImplicationInstance {
            names: names.into_iter().map(Into::into).collect(),
            edges: BTreeSet::new(),
            pinned0: BTreeSet::new(),
            pinned1: BTreeSet::new(),
        }
    }

    /// Unnamed variables `x0, x1, ...`.
    pub fn with_len(n: usize) -> Self {
        ImplicationInstance::new((0..n).map(|i| format!("x{i}")))
    }

    fn check(&self, v: usize) {
        assert!(v < self.names.len(), "variable {v} out of range");
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.check(u);
        self.check(v);
        if u != v {
            self.edges.insert((u, v));
        }
    }

    pub fn pin0(&mut self, v: usize) {
        self.check(v);
        self.pinned0.insert(v);
    }

    pub fn pin1(&mut self, v: usize) {
        self.check(v);
        self.pinned1.insert(v);
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn pinned0(&self) -> &BTreeSet<usize> {
        &self.pinned0
    }

    pub fn pinned1(&self) -> &BTreeSet<usize> {
        &self.pinned1
    }

    pub fn has_pins(&self) -> bool {
        !self.pinned0.is_empty() || !self.pinned1.is_empty()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        adj
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            adj[v].push(u);
        }
        adj
    }

    pub fn condensation(&self) -> CondensationDag {
        CondensationDag::new(self.names.len(), self.edges.iter().copied())
    }

    /// The same constraints as an [`Instance`] over the language
    /// `{Implies, U0, U1}`.
    pub fn to_instance(&self) -> Instance {
        let language = ConstraintLanguage::from_relations([
            ("Implies", Relation::implies()),
            ("U0", Relation::pin_zero()),
            ("U1", Relation::pin_one()),
        ])
        .expect("basis language");
        let mut instance =
            Instance::with_variables(language, self.names.iter().cloned()).expect("unique names");
        for &v in &self.pinned0 {
            instance.add_constraint("U0", &[v]).expect("valid");
        }
        for &(u, v) in &self.edges {
            instance.add_constraint("Implies", &[u, v]).expect("valid");
        }
        for &v in &self.pinned1 {
            instance.add_constraint("U1", &[v]).expect("valid");
        }
        instance
    }

    /// Sub-instance induced on `keep` (sorted), without pins.
    fn induced(&self, keep: &[usize]) -> ImplicationInstance {
        let mut new_index = vec![usize::MAX; self.names.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let mut out = ImplicationInstance::new(keep.iter().map(|&v| self.names[v].clone()));
        for &(u, v) in &self.edges {
            if new_index[u] != usize::MAX && new_index[v] != usize::MAX {
                out.add_edge(new_index[u], new_index[v]);
            }
        }
        out
    }
}

/// Rewrites every constraint through its IM2 decomposition.
pub fn to_implication_instance(instance: &Instance) -> Result<ImplicationInstance> {
    require_property(instance, Property::Im2)?;
    let decompositions: Vec<_> = instance
        .language()
        .iter()
        .map(|(_, r)| im2_decompose(r))
        .collect();
    let mut out = ImplicationInstance::new(instance.variables().iter().map(|v| v.name.clone()));
    for c in instance.constraints() {
        let d = decompositions[c.relation]
            .as_ref()
            .expect("used relations are in IM2");
        for &p in &d.pins0 {
            out.pin0(c.scope[p]);
        }
        for &p in &d.pins1 {
            out.pin1(c.scope[p]);
        }
        for &(i, j) in &d.implications {
            out.add_edge(c.scope[i], c.scope[j]);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PruneOutcome {
    /// Some variable is forced to both 0 and 1.
    Unsatisfiable { conflict: usize },
    /// Pin-free instance on the unforced variables `kept` (indices into the
    /// input); its locally maximal count equals the input's.
    Reduced {
        instance: ImplicationInstance,
        kept: Vec<usize>,
        forced0: Vec<usize>,
        forced1: Vec<usize>,
    },
}

fn reach(start: &BTreeSet<usize>, adjacency: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; adjacency.len()];
    let mut stack: Vec<usize> = start.iter().copied().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(u) = stack.pop() {
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Removes every variable whose value is forced by the pins.
///
/// `V1` is everything reachable from a 1-pinned variable, `V0` everything
/// that reaches a 0-pinned one (paths of length zero included). The
/// instance is satisfiable exactly when the two sets are disjoint.
pub fn prune(graph: &ImplicationInstance) -> PruneOutcome {
    let ones = reach(&graph.pinned1, &graph.successors());
    let zeros = reach(&graph.pinned0, &graph.predecessors());
    if let Some(conflict) = (0..graph.variable_count()).find(|&v| ones[v] && zeros[v]) {
        return PruneOutcome::Unsatisfiable { conflict };
    }
    let n = graph.variable_count();
    let kept: Vec<usize> = (0..n).filter(|&v| !ones[v] && !zeros[v]).collect();
    PruneOutcome::Reduced {
        instance: graph.induced(&kept),
        kept,
        forced0: (0..n).filter(|&v| zeros[v]).collect(),
        forced1: (0..n).filter(|&v| ones[v]).collect(),
    }
}

/// Least-indexed variable forming a one-vertex strongly connected
/// component, if the instance has more than one variable.
pub fn least_singleton(graph: &ImplicationInstance) -> Option<usize> {
    if graph.variable_count() <= 1 {
        return None;
    }
    let (_, components) = strongly_connected_components(&graph.successors());
    components
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .min()
}

/// Deletes `v` and joins each in-neighbour of `v` to each out-neighbour.
///
/// Preserves the number of locally maximal satisfying assignments when `v`
/// is a singleton component of a pin-free instance with more than one
/// variable.
pub fn eliminate_variable(graph: &ImplicationInstance, v: usize) -> ImplicationInstance {
    assert!(
        !graph.has_pins(),
        "singleton elimination needs a pin-free instance"
    );
    let preds: Vec<usize> = graph.predecessors()[v].clone();
    let succs: Vec<usize> = graph.successors()[v].clone();
    let keep: Vec<usize> = (0..graph.variable_count()).filter(|&u| u != v).collect();
    let mut out = graph.induced(&keep);
    let shift = |u: usize| if u > v { u - 1 } else { u };
    for &p in &preds {
        for &s in &succs {
            out.add_edge(shift(p), shift(s));
        }
    }
    out
}

/// One elimination step on the least singleton component, if any.
pub fn eliminate_one(graph: &ImplicationInstance) -> Option<(ImplicationInstance, String)> {
    let v = least_singleton(graph)?;
    Some((eliminate_variable(graph, v), graph.names[v].clone()))
}

/// Repeats [`eliminate_one`] until one variable remains or no component is
/// a singleton. Returns the result and the eliminated names in order.
pub fn eliminate_singletons(graph: &ImplicationInstance) -> (ImplicationInstance, Vec<String>) {
    let mut current = graph.clone();
    let mut removed = Vec::new();
    while let Some((next, name)) = eliminate_one(&current) {
        current = next;
        removed.push(name);
    }
    (current, removed)
}
