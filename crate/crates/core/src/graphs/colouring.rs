//! Colouring-number orderings and the downward orientation.

use crate::graphs::{FiniteDigraph, FiniteGraph, GraphError};

/// A vertex ordering witnessing a colouring-number bound: every vertex
/// has strictly fewer than `bound` neighbours earlier in the ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColOrdering {
    order: Vec<usize>,
    bound: usize,
}

impl ColOrdering {
    pub fn new(g: &FiniteGraph, order: Vec<usize>, bound: usize) -> Result<Self, GraphError> {
        if order.len() != g.n() {
            return Err(GraphError::IncompleteOrdering);
        }
        let mut seen = vec![false; g.n()];
        for &v in &order {
            if v >= g.n() || seen[v] {
                return Err(GraphError::IncompleteOrdering);
            }
            seen[v] = true;
        }
        let positions = positions_of(&order);
        for &v in &order {
            let back = g
                .neighbours(v)
                .iter()
                .filter(|&&u| positions[u] < positions[v])
                .count();
            if back >= bound {
                return Err(GraphError::InvalidOrdering(format!(
                    "vertex {v} has {back} earlier neighbours, bound {bound}"
                )));
            }
        }
        Ok(ColOrdering { order, bound })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Position of each vertex within the ordering.
    pub fn positions(&self) -> Vec<usize> {
        positions_of(&self.order)
    }
}

fn positions_of(order: &[usize]) -> Vec<usize> {
    let mut positions = vec![0usize; order.len()];
    for (i, &v) in order.iter().enumerate() {
        positions[v] = i;
    }
    positions
}

/// Least `k` admitting an ordering with back-degrees below `k`,
/// together with a witnessing ordering.
///
/// Computed by iterated minimum-degree removal: repeatedly delete a
/// vertex of least remaining degree (ties to the least id); the
/// reversed removal sequence keeps every back-degree at most the
/// degeneracy, so `k` is degeneracy + 1.
pub fn colouring_number(g: &FiniteGraph) -> (usize, ColOrdering) {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        removal.push(v);
        for u in g.neighbours(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    removal.reverse();
    let bound = degeneracy + 1;
    let ordering = ColOrdering::new(g, removal, bound).expect("peeling yields a witness");
    (bound, ordering)
}

/// Brute-force minimum of `1 + max back-degree` over all vertex
/// orderings, by depth-first search over prefixes with pruning.
/// Reference route for cross-validating `colouring_number`.
pub fn colouring_number_brute(g: &FiniteGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 1;
    }
    let mut best = n; // complete graph worst case: back-degree n-1
    let mut chosen = vec![false; n];
    fn go(
        g: &FiniteGraph,
        chosen: &mut Vec<bool>,
        placed: usize,
        max_back: usize,
        best: &mut usize,
    ) {
        if max_back + 1 >= *best {
            return;
        }
        if placed == g.n() {
            *best = max_back + 1;
            return;
        }
        for v in 0..g.n() {
            if chosen[v] {
                continue;
            }
            let back = g.neighbours(v).iter().filter(|&&u| chosen[u]).count();
            chosen[v] = true;
            go(g, chosen, placed + 1, max_back.max(back), best);
            chosen[v] = false;
        }
    }
    go(g, &mut chosen, 0, 0, &mut best);
    best.max(1)
}

/// Directs every edge from the later vertex to the earlier one. The
/// result is acyclic with out-degrees below the ordering's bound.
pub fn orient_down(g: &FiniteGraph, ordering: &ColOrdering) -> Result<FiniteDigraph, GraphError> {
    if ordering.order().len() != g.n() {
        return Err(GraphError::IncompleteOrdering);
    }
    let positions = ordering.positions();
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if positions[u] < positions[v] {
                (v, u)
            } else {
                (u, v)
            }
        })
        .collect();
    let d = FiniteDigraph::new(g.n(), arcs)?;
    debug_assert!(d.is_acyclic());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_needs_n() {
        let (k, ord) = colouring_number(&FiniteGraph::complete(4));
        assert_eq!(k, 4);
        assert_eq!(ord.bound(), 4);
        assert_eq!(colouring_number_brute(&FiniteGraph::complete(4)), 4);
    }

    #[test]
    fn five_cycle_needs_three() {
        let c5 = FiniteGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let (k, _) = colouring_number(&c5);
        assert_eq!(k, 3);
        assert_eq!(colouring_number_brute(&c5), 3);
    }

    #[test]
    fn edgeless_graph_needs_one() {
        let (k, _) = colouring_number(&FiniteGraph::empty(5));
        assert_eq!(k, 1);
        assert_eq!(colouring_number_brute(&FiniteGraph::empty(5)), 1);
    }

    #[test]
    fn orient_down_triangle() {
        let k3 = FiniteGraph::complete(3);
        let ord = ColOrdering::new(&k3, vec![0, 1, 2], 3).unwrap();
        let d = orient_down(&k3, &ord).unwrap();
        assert!(d.has_arc(1, 0) && d.has_arc(2, 0) && d.has_arc(2, 1));
        assert!(d.is_acyclic());
    }

    #[test]
    fn orient_down_respects_bound() {
        let petersen = FiniteGraph::new(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        let (k, ord) = colouring_number(&petersen);
        assert_eq!(k, 4); // degeneracy 3
        let d = orient_down(&petersen, &ord).unwrap();
        assert!(d.is_acyclic());
        for v in 0..10 {
            assert!(d.out_set(v).len() < k);
        }
    }

    #[test]
    fn ordering_validation_rejects_partial() {
        let g = FiniteGraph::complete(3);
        assert!(matches!(
            ColOrdering::new(&g, vec![0, 1], 3),
            Err(GraphError::IncompleteOrdering)
        ));
        assert!(matches!(
            ColOrdering::new(&g, vec![0, 1, 2], 2),
            Err(GraphError::InvalidOrdering(_))
        ));
    }
}
