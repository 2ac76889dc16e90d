//! Redirecting a downward orientation so that chosen vertices realize
//! prescribed out-sets.
//!
//! Starting from `orient_down`, each target set `C_i` gets a vertex
//! `x_i` picked under six admissibility conditions; the arcs from
//! `x_i` to its remaining down-neighbours are then reversed, leaving
//! `N_z(x_i) = C_i`. The conditions guarantee that reversal sets stay
//! pairwise disjoint, no arrow is reversed twice, and no directed
//! cycle appears; all three are re-checked at run time.

use std::collections::BTreeSet;

use crate::graphs::colouring::{orient_down, ColOrdering};
use crate::graphs::{FiniteDigraph, FiniteGraph, GraphError};

/// One redirection step: the index, the chosen vertex, and the arcs
/// reversed (in their pre-reversal direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalEntry {
    pub step: usize,
    pub vertex: usize,
    pub reversed: Vec<(usize, usize)>,
}

/// Log of all reversals; no edge may appear in two entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReversalLog {
    pub entries: Vec<ReversalEntry>,
}

impl ReversalLog {
    /// Checks that no edge occurs in two entries, in either direction.
    pub fn no_edge_reversed_twice(&self) -> bool {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            for &(u, v) in &e.reversed {
                if !seen.insert((u.min(v), u.max(v))) {
                    return false;
                }
            }
        }
        true
    }
}

/// Which way the third admissibility condition scopes its subtraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cond3Reading {
    /// Subtract the current target from each reachability set.
    #[default]
    PerTerm,
    /// Subtract the current target from the index set of the union.
    FromIndex,
}

/// Result of a redirection run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedirectOutcome {
    pub digraph: FiniteDigraph,
    pub chosen: Vec<usize>,
    pub log: ReversalLog,
}

/// Error carrying the partial state up to the failing step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoAdmissibleVertex {
    pub step: usize,
    pub partial: RedirectOutcome,
}

pub fn redirect(
    g: &FiniteGraph,
    ordering: &ColOrdering,
    targets: &[BTreeSet<usize>],
    reading: Cond3Reading,
) -> Result<RedirectOutcome, GraphError> {
    for c in targets {
        if let Some(&v) = c.iter().find(|&&v| v >= g.n()) {
            return Err(GraphError::MalformedGraph(format!(
                "target vertex {v} out of range"
            )));
        }
    }
    let positions = ordering.positions();
    // Static down-neighbourhoods with respect to the well-ordering.
    let down: Vec<BTreeSet<usize>> = (0..g.n())
        .map(|v| {
            g.neighbours(v)
                .into_iter()
                .filter(|&u| positions[u] < positions[v])
                .collect()
        })
        .collect();

    let mut digraph = orient_down(g, ordering)?;
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_set: BTreeSet<usize> = BTreeSet::new();
    let mut prev_down_union: BTreeSet<usize> = BTreeSet::new();
    let mut log = ReversalLog::default();

    for (step, target) in targets.iter().enumerate() {
        // Reachability along decreasing paths in the current digraph,
        // recomputed each step because earlier reversals change it.
        let mut forbidden: BTreeSet<usize> = BTreeSet::new();
        for c in targets.iter().take(step + 1) {
            for &beta in c {
                match reading {
                    Cond3Reading::PerTerm => {
                        forbidden.extend(digraph.reachable_from(beta).difference(target));
                    }
                    Cond3Reading::FromIndex => {
                        if !target.contains(&beta) {
                            forbidden.extend(digraph.reachable_from(beta));
                        }
                    }
                }
            }
        }

        let admissible = |v: usize| -> bool {
            let nbrs = g.neighbours(v);
            // 1. not chosen before
            !chosen_set.contains(&v)
                // 2. the target lies inside the down-neighbourhood
                && target.is_subset(&down[v])
                // 3. no neighbour reaches back into earlier targets
                && nbrs.is_disjoint(&forbidden)
                // 4. surplus neighbours avoid earlier reversal material
                && nbrs
                    .difference(target)
                    .all(|u| !prev_down_union.contains(u))
                // 5. the vertex itself avoids earlier reversal material
                && !prev_down_union.contains(&v)
                // 6. no neighbour among earlier choices outside the target
                && nbrs
                    .iter()
                    .all(|u| !chosen_set.contains(u) || target.contains(u))
        };

        let x = match (0..g.n()).find(|&v| admissible(v)) {
            Some(x) => x,
            None => {
                return Err(GraphError::NoAdmissibleVertex(Box::new(NoAdmissibleVertex {
                    step,
                    partial: RedirectOutcome {
                        digraph,
                        chosen,
                        log,
                    },
                })))
            }
        };

        let reversed: Vec<(usize, usize)> = down[x]
            .difference(target)
            .map(|&c| (x, c))
            .collect();
        for &(u, v) in &reversed {
            digraph.reverse_arc(u, v)?;
        }
        log.entries.push(ReversalEntry {
            step,
            vertex: x,
            reversed,
        });

        // Claim shadows, enforced as runtime checks.
        if !log.no_edge_reversed_twice() {
            return Err(GraphError::ClaimViolated(
                "an arrow was reversed twice".into(),
            ));
        }
        if !digraph.is_acyclic() {
            return Err(GraphError::ClaimViolated(
                "redirection produced a directed cycle".into(),
            ));
        }

        prev_down_union.extend(down[x].iter().copied());
        chosen_set.insert(x);
        chosen.push(x);
    }

    // Realized out-sets must equal the targets.
    for (i, (&x, c)) in chosen.iter().zip(targets.iter()).enumerate() {
        if digraph.out_set(x) != *c {
            return Err(GraphError::ClaimViolated(format!(
                "out-set of x_{i} differs from its target"
            )));
        }
    }

    Ok(RedirectOutcome {
        digraph,
        chosen,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::bit::bit_graph_on;
    use crate::graphs::colouring::colouring_number;

    #[test]
    fn no_targets_is_orient_down() {
        let (g, _) = bit_graph_on(&(0..8).collect::<Vec<_>>());
        let (_, ord) = colouring_number(&g);
        let out = redirect(&g, &ord, &[], Cond3Reading::PerTerm).unwrap();
        assert_eq!(out.digraph, orient_down(&g, &ord).unwrap());
        assert!(out.log.entries.is_empty());
    }

    #[test]
    fn single_target_realized_on_bit_segment() {
        let (g, _) = bit_graph_on(&(0..64).collect::<Vec<_>>());
        let (_, ord) = colouring_number(&g);
        let target = BTreeSet::from([0, 1]);
        let out = redirect(&g, &ord, &[target.clone()], Cond3Reading::PerTerm).unwrap();
        let x = out.chosen[0];
        assert_eq!(out.digraph.out_set(x), target);
        assert!(out.digraph.is_acyclic());
    }

    #[test]
    fn edgeless_graph_has_no_admissible_vertex() {
        let g = FiniteGraph::empty(4);
        let (_, ord) = colouring_number(&g);
        let err = redirect(&g, &ord, &[BTreeSet::from([0])], Cond3Reading::PerTerm);
        match err {
            Err(GraphError::NoAdmissibleVertex(info)) => {
                assert_eq!(info.step, 0);
                assert!(info.partial.log.entries.is_empty());
            }
            other => panic!("expected NoAdmissibleVertex, got {other:?}"),
        }
    }

    #[test]
    fn repeated_target_gets_distinct_vertices() {
        let (g, _) = bit_graph_on(&(0..32).collect::<Vec<_>>());
        let (_, ord) = colouring_number(&g);
        let targets = vec![BTreeSet::from([1, 2]), BTreeSet::from([1, 2])];
        let out = redirect(&g, &ord, &targets, Cond3Reading::PerTerm).unwrap();
        assert_ne!(out.chosen[0], out.chosen[1]);
        for (x, c) in out.chosen.iter().zip(targets.iter()) {
            assert_eq!(out.digraph.out_set(*x), *c);
        }
    }

    #[test]
    fn cond3_readings_diverge() {
        // The per-term reading also forbids reaching back into the
        // current target's own reachability sets; the index-side
        // reading is weaker and admits more vertices.
        let (g, _) = bit_graph_on(&(0..32).collect::<Vec<_>>());
        let (_, ord) = colouring_number(&g);
        let targets = vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4])];
        let a = redirect(&g, &ord, &targets, Cond3Reading::PerTerm).unwrap();
        for (x, c) in a.chosen.iter().zip(targets.iter()) {
            assert_eq!(a.digraph.out_set(*x), *c);
        }
        assert!(redirect(&g, &ord, &targets, Cond3Reading::FromIndex).is_err());
    }

    #[test]
    fn weak_cond3_reading_trips_the_cycle_guard() {
        // With the index-side reading, an admissible-looking vertex
        // can close a directed cycle; the claim check must catch it
        // rather than return a cyclic digraph.
        let (g, _) = bit_graph_on(&(0..32).collect::<Vec<_>>());
        let (_, ord) = colouring_number(&g);
        let targets = vec![BTreeSet::from([3]), BTreeSet::from([5, 6])];
        match redirect(&g, &ord, &targets, Cond3Reading::FromIndex) {
            Err(GraphError::ClaimViolated(msg)) => assert!(msg.contains("cycle")),
            other => panic!("expected the cycle guard, got {other:?}"),
        }
    }
}
