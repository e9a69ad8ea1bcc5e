use std::collections::BTreeSet;

/// Strongly connected components of a digraph on `0..n` given by
/// adjacency lists. Returns the component id of every vertex and the
/// components themselves, each sorted, with ids in reverse topological
/// order (a component only reaches components with smaller ids).
pub fn strongly_connected_components(adjacency: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    const UNSEEN: usize = usize::MAX;
    let n = adjacency.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next edge to explore)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adjacency[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = components.len();
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = id;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                components.push(members);
            }
        }
    }
    (comp, components)
}

/// The acyclic graph of strongly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationDag {
    pub components: Vec<Vec<usize>>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl CondensationDag {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            adjacency[u].push(v);
        }
        let (comp, components) = strongly_connected_components(&adjacency);
        let dag_edges = edges
            .iter()
            .filter(|(u, v)| comp[*u] != comp[*v])
            .map(|(u, v)| (comp[*u], comp[*v]))
            .collect();
        CondensationDag {
            components,
            edges: dag_edges,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
        }
        a
    }

    #[test]
    fn cycle_and_tail() {
        let (comp, comps) =
            strongly_connected_components(&adj(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]));
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[2], comp[3]);
        assert_eq!(comps.len(), 2);
        // reverse topological: the sink {3} is emitted first
        assert_eq!(comps[0], vec![3]);
    }

    #[test]
    fn condensation_is_acyclic_partition() {
        let dag = CondensationDag::new(5, [(0, 1), (1, 0), (1, 2), (3, 4), (4, 3), (2, 3)]);
        assert_eq!(dag.len(), 3);
        let mut all: Vec<usize> = dag.components.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
        assert!(dag.edges.iter().all(|(a, b)| a > b));
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 100_000;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let (_, comps) = strongly_connected_components(&adj(n, &edges));
        assert_eq!(comps.len(), n);
    }
}
